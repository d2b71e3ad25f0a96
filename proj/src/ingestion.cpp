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

#include "ingestion.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "errors.hpp"
#include "httplib.h"
#include "json.hpp"

namespace tunebench {
namespace {

using nlohmann::json;

constexpr std::size_t kMaxBatch = 100;
constexpr std::size_t kPageLimit = 100;

class HttplibTransport final : public HttpTransport {
 public:
  explicit HttplibTransport(const std::string& base_url) : client_(base_url) {
    client_.set_connection_timeout(10);
    client_.set_read_timeout(30);
  }

  HttpResponse get(const std::string& target, const std::string& bearer_token) override {
    httplib::Headers headers;
    if (!bearer_token.empty()) headers.emplace("Authorization", "Bearer " + bearer_token);
    auto res = client_.Get(target, headers);
    if (!res) {
      throw Error(ErrorCode::kNetwork,
                  "request " + target + " failed: " + httplib::to_string(res.error()));
    }
    HttpResponse out;
    out.status = res->status;
    out.body = res->body;
    if (res->has_header("Retry-After")) {
      const auto value = res->get_header_value("Retry-After");
      char* end = nullptr;
      const double seconds = std::strtod(value.c_str(), &end);
      if (end != value.c_str() && std::isfinite(seconds) && seconds >= 0.0) {
        out.retry_after = seconds;
      }
    }
    return out;
  }

 private:
  httplib::Client client_;
};

void check_playlist_id(const std::string& id) {
  if (id.empty()) throw Error(ErrorCode::kInvalidArgument, "playlist id is empty");
  for (char c : id) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') {
      throw Error(ErrorCode::kInvalidArgument,
                  "playlist id \"" + id + "\" has characters outside [A-Za-z0-9_-]");
    }
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kNotFound, "cannot open fixture " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// GET with retries on 429, 5xx and connection failures.
std::string fetch_with_retry(HttpTransport& transport, const std::string& target,
                             const FetchConfig& cfg, std::string_view what) {
  std::string last_problem;
  for (int attempt = 0;; ++attempt) {
    std::optional<double> wait;
    std::optional<HttpResponse> res;
    try {
      res = transport.get(target, cfg.token);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNetwork) throw;
      last_problem = e.what();
    }
    if (res) {
      if (res->status == 200) return std::move(res->body);
      if (res->status == 401 || res->status == 403) {
        throw Error(ErrorCode::kAuth, std::string(what) + ": HTTP " +
                                          std::to_string(res->status) +
                                          " (check SPOTIFY_TOKEN)");
      }
      if (res->status == 404) {
        throw Error(ErrorCode::kNotFound, std::string(what) + ": not found (HTTP 404)");
      }
      if (res->status != 429 && res->status < 500) {
        throw Error(ErrorCode::kNetwork,
                    std::string(what) + ": unexpected HTTP " + std::to_string(res->status));
      }
      last_problem = "HTTP " + std::to_string(res->status);
      wait = res->retry_after;
    }
    if (attempt >= cfg.retry.max_retries) {
      throw Error(ErrorCode::kNetwork, std::string(what) + ": retry budget exhausted after " +
                                           std::to_string(attempt + 1) +
                                           " attempts (last: " + last_problem + ")");
    }
    const double delay = wait ? *wait : cfg.retry.initial_backoff * std::ldexp(1.0, attempt);
    if (cfg.sleep) {
      cfg.sleep(delay);
    } else {
      std::this_thread::sleep_for(std::chrono::duration<double>(delay));
    }
  }
}

json parse_json(std::string_view text, std::string_view source) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, "malformed JSON in " + std::string(source) + ": " + e.what());
  }
}

std::string strip_origin(const std::string& url) {
  const auto scheme = url.find("://");
  if (scheme == std::string::npos) return url;
  const auto path = url.find('/', scheme + 3);
  return path == std::string::npos ? "/" : url.substr(path);
}

std::string join(const std::vector<std::string>& ids, std::size_t begin, std::size_t end) {
  std::string out;
  for (std::size_t i = begin; i < end; ++i) {
    if (i > begin) out += ',';
    out += ids[i];
  }
  return out;
}

// Track ids of a playlist in order; entries without a track id are reported.
std::vector<std::string> fetch_track_ids(const PlaylistRef& ref, const FetchConfig& cfg,
                                         HttpTransport& transport, FetchResult& result) {
  std::vector<std::string> ids;
  std::string target = "/v1/playlists/" + ref.id +
                       "/tracks?fields=items(track(id)),next&limit=" +
                       std::to_string(kPageLimit) + "&offset=0";
  std::size_t position = 0;
  while (!target.empty()) {
    const auto page = parse_json(
        fetch_with_retry(transport, target, cfg, "playlist " + ref.id), "playlist " + ref.id);
    if (!page.is_object() || !page.contains("items") || !page["items"].is_array()) {
      throw Error(ErrorCode::kParse, "playlist " + ref.id + ": response has no items array");
    }
    for (const auto& item : page["items"]) {
      const json* track = item.is_object() && item.contains("track") ? &item["track"] : nullptr;
      if (track && track->is_object() && track->contains("id") && (*track)["id"].is_string()) {
        ids.push_back((*track)["id"].get<std::string>());
      } else {
        result.skipped.push_back("playlist position " + std::to_string(position));
      }
      ++position;
    }
    const auto next = page.find("next");
    target = (next != page.end() && next->is_string()) ? strip_origin(next->get<std::string>())
                                                       : std::string();
  }
  return ids;
}

}  // namespace

std::unique_ptr<HttpTransport> make_http_transport(const std::string& base_url) {
  return std::make_unique<HttplibTransport>(base_url);
}

void validate_fetch_config(const FetchConfig& cfg) {
  if (cfg.batch_size < 1 || cfg.batch_size > kMaxBatch) {
    throw Error(ErrorCode::kInvalidArgument, "batch size must be between 1 and 100");
  }
  if (cfg.retry.max_retries < 0 || !(cfg.retry.initial_backoff >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "retry policy must be nonnegative");
  }
  if (cfg.live() && cfg.token.empty()) {
    throw Error(ErrorCode::kAuth,
                "live mode needs an access token; set SPOTIFY_TOKEN or pass --token");
  }
}

FetchResult parse_feature_objects(std::string_view json_text, std::string_view source) {
  const auto doc = parse_json(json_text, source);
  const json* list = &doc;
  if (doc.is_object()) {
    const auto it = doc.find("audio_features");
    if (it == doc.end()) {
      throw Error(ErrorCode::kParse, std::string(source) + ": expected \"audio_features\"");
    }
    list = &*it;
  }
  if (!list->is_array()) {
    throw Error(ErrorCode::kParse, std::string(source) + ": expected an array of features");
  }
  FetchResult result;
  for (std::size_t i = 0; i < list->size(); ++i) {
    const auto& obj = (*list)[i];
    if (obj.is_null()) {
      result.skipped.push_back(std::string(source) + " entry " + std::to_string(i));
      continue;
    }
    const std::string where = std::string(source) + " entry " + std::to_string(i);
    if (!obj.is_object() || !obj.contains("id") || !obj["id"].is_string()) {
      throw Error(ErrorCode::kParse, where + ": missing track id");
    }
    RawFeatureRecord r;
    r.track_id = obj["id"].get<std::string>();
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
      const auto it = obj.find(std::string(kFeatureNames[f]));
      if (it == obj.end() || !it->is_number()) {
        throw Error(ErrorCode::kParse, where + " (track " + r.track_id + "): field \"" +
                                           std::string(kFeatureNames[f]) +
                                           "\" missing or not a number");
      }
      r.values[f] = it->get<double>();
    }
    result.records.push_back(std::move(r));
  }
  return result;
}

FetchResult fetch_playlist_features(const PlaylistRef& ref, const FetchConfig& cfg,
                                    HttpTransport& transport) {
  validate_fetch_config(cfg);
  check_playlist_id(ref.id);

  FetchResult result;
  if (!cfg.live()) {
    const auto path = std::filesystem::path(cfg.fixture_dir) / (ref.id + ".features.json");
    result = parse_feature_objects(read_file(path), path.filename().string());
  } else {
    const auto ids = fetch_track_ids(ref, cfg, transport, result);
    for (std::size_t begin = 0; begin < ids.size(); begin += cfg.batch_size) {
      const auto end = std::min(ids.size(), begin + cfg.batch_size);
      const auto body =
          fetch_with_retry(transport, "/v1/audio-features?ids=" + join(ids, begin, end), cfg,
                           "audio features for playlist " + ref.id);
      auto batch = parse_feature_objects(body, "audio features for playlist " + ref.id);
      for (auto& r : batch.records) result.records.push_back(std::move(r));
      for (auto& s : batch.skipped) result.skipped.push_back(std::move(s));
    }
  }
  if (result.records.empty()) {
    result.warnings.push_back("playlist " + ref.id + " has no tracks with audio features");
  }
  if (!result.skipped.empty()) {
    result.warnings.push_back("playlist " + ref.id + ": skipped " +
                              std::to_string(result.skipped.size()) +
                              " track(s) without audio features");
  }
  return result;
}

Dataset assemble_dataset(const std::vector<RawFeatureRecord>& liked,
                         const std::vector<RawFeatureRecord>& disliked, std::string name,
                         std::vector<std::string>* warnings) {
  auto convert = [&](const std::vector<RawFeatureRecord>& records, std::string_view side) {
    std::vector<UnlabeledTrack> tracks;
    tracks.reserve(records.size());
    for (const auto& r : records) {
      if (r.track_id.empty() ||
          r.track_id.find_first_of(",\"\r\n") != std::string::npos) {
        throw Error(ErrorCode::kValidation,
                    "track id \"" + r.track_id + "\" in " + std::string(side) +
                        " playlist is empty or contains CSV delimiters");
      }
      FeatureVerdict verdict;
      const auto f = features_from_values(r.values, verdict);
      if (!verdict.acceptable()) {
        std::string msg = "track " + r.track_id + " (" + std::string(side) + "):";
        for (const auto& v : verdict.violations) msg += " " + v.field + " " + v.message + ";";
        msg.pop_back();
        throw Error(ErrorCode::kValidation, msg);
      }
      if (warnings) {
        for (const auto& w : verdict.warnings) {
          warnings->push_back("track " + r.track_id + ": " + w.field + " " + w.message);
        }
      }
      tracks.push_back({r.track_id, f});
    }
    return tracks;
  };
  const std::set<std::string> liked_ids = [&] {
    std::set<std::string> s;
    for (const auto& r : liked) s.insert(r.track_id);
    return s;
  }();
  for (const auto& r : disliked) {
    if (liked_ids.count(r.track_id)) {
      throw Error(ErrorCode::kValidation,
                  "track " + r.track_id + " is in both the liked and the disliked playlist");
    }
  }
  const auto l = convert(liked, "liked");
  const auto d = convert(disliked, "disliked");
  return merge_labeled(l, d, std::move(name));
}

}  // namespace tunebench
