/*
 * Copyright 2026 The tunebench Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef TUNEBENCH_SRC_INGESTION_HPP_
#define TUNEBENCH_SRC_INGESTION_HPP_

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dataset.hpp"

namespace tunebench {

struct PlaylistRef {
  std::string id;
  Label label = Label::kLiked;
};

// One audio-feature object as delivered, in canonical column order.
struct RawFeatureRecord {
  std::string track_id;
  std::array<double, kFeatureCount> values{};
};

struct HttpResponse {
  int status = 0;
  std::string body;
  // Parsed Retry-After header, in seconds.
  std::optional<double> retry_after;
};

class HttpTransport {
 public:
  virtual ~HttpTransport() = default;
  // `target` is a path with query string, e.g. "/v1/audio-features?ids=a,b".
  // Connection failures throw Error(kNetwork).
  virtual HttpResponse get(const std::string& target, const std::string& bearer_token) = 0;
};

// HTTPS (or plain HTTP, for local tests) client for the given base URL.
std::unique_ptr<HttpTransport> make_http_transport(
    const std::string& base_url = "https://api.spotify.com");

struct RetryPolicy {
  int max_retries = 5;
  // Delay before retry n (0-based) is initial_backoff * 2^n seconds unless
  // the server sends Retry-After.
  double initial_backoff = 1.0;
};

struct FetchConfig {
  // Directory with <playlist>.features.json files; empty means live mode.
  std::string fixture_dir;
  std::string token;
  std::size_t batch_size = 100;
  RetryPolicy retry;
  // Injectable for tests; defaults to a real sleep.
  std::function<void(double seconds)> sleep;

  bool live() const { return fixture_dir.empty(); }
};

// Throws kInvalidArgument for batch_size outside 1..100 and kAuth for a
// missing token in live mode.
void validate_fetch_config(const FetchConfig& cfg);

struct FetchResult {
  std::vector<RawFeatureRecord> records;
  // Tracks without features (null objects or missing ids), by playlist position.
  std::vector<std::string> skipped;
  std::vector<std::string> warnings;
};

// Parses a fixture or endpoint body: a bare array of audio-feature objects or
// {"audio_features": [...]}. Null entries are skipped and reported.
FetchResult parse_feature_objects(std::string_view json_text, std::string_view source);

// Fixture mode never touches the transport.
FetchResult fetch_playlist_features(const PlaylistRef& ref, const FetchConfig& cfg,
                                    HttpTransport& transport);

// Validates every record (errors name the track id) and merges the two
// playlists, liked block first. A track id present in both is an error.
Dataset assemble_dataset(const std::vector<RawFeatureRecord>& liked,
                         const std::vector<RawFeatureRecord>& disliked, std::string name,
                         std::vector<std::string>* warnings = nullptr);

}  // namespace tunebench

#endif  // TUNEBENCH_SRC_INGESTION_HPP_
