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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <thread>

#include "errors.hpp"
#include "httplib.h"
#include "json.hpp"

namespace tunebench {
namespace {

using nlohmann::json;

json feature_object(const std::string& id, double t) {
  return {{"id", id},           {"danceability", t},      {"energy", 1 - t},
          {"key", 5},           {"loudness", -7.5},       {"mode", 1},
          {"speechiness", 0.05}, {"acousticness", t / 2}, {"instrumentalness", 0.001},
          {"liveness", 0.12},   {"valence", t},           {"tempo", 100 + 40 * t},
          {"time_signature", 4}, {"type", "audio_features"}};
}

std::vector<std::string> split_ids(const std::string& target) {
  const auto q = target.find("ids=");
  std::vector<std::string> ids;
  std::string rest = target.substr(q + 4);
  std::size_t start = 0;
  while (start <= rest.size()) {
    const auto comma = rest.find(',', start);
    ids.push_back(rest.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return ids;
}

// Serves a playlist of `n` tracks in pages of 100 plus the feature endpoint.
// Scripted responses can be queued per path prefix to inject failures.
class FakeSpotify final : public HttpTransport {
 public:
  explicit FakeSpotify(std::size_t n_tracks, std::string prefix = "trk")
      : n_tracks_(n_tracks), prefix_(std::move(prefix)) {}

  HttpResponse get(const std::string& target, const std::string& token) override {
    requests.push_back(target);
    tokens.push_back(token);
    for (auto& [key, queue] : scripted) {
      if (target.rfind(key, 0) == 0 && !queue.empty()) {
        auto r = queue.front();
        queue.erase(queue.begin());
        if (r.status < 0) throw Error(ErrorCode::kNetwork, "connection refused");
        return r;
      }
    }
    if (target.rfind("/v1/audio-features", 0) == 0) {
      json list = json::array();
      for (const auto& id : split_ids(target)) {
        if (null_ids.count(id)) {
          list.push_back(nullptr);
        } else {
          list.push_back(feature_object(id, 0.5));
        }
      }
      return {200, json{{"audio_features", list}}.dump(), std::nullopt};
    }
    if (target.rfind("/v1/playlists/", 0) == 0) {
      std::size_t offset = 0;
      const auto at = target.find("offset=");
      if (at != std::string::npos) offset = std::stoul(target.substr(at + 7));
      json items = json::array();
      for (std::size_t i = offset; i < std::min(n_tracks_, offset + 100); ++i) {
        items.push_back({{"track", {{"id", prefix_ + std::to_string(i)}}}});
      }
      json page = {{"items", items}, {"next", nullptr}};
      if (offset + 100 < n_tracks_) {
        page["next"] = "https://api.spotify.com/v1/playlists/pl/tracks?offset=" +
                       std::to_string(offset + 100) + "&limit=100";
      }
      return {200, page.dump(), std::nullopt};
    }
    return {404, "", std::nullopt};
  }

  std::size_t feature_requests() const {
    std::size_t n = 0;
    for (const auto& r : requests) n += r.rfind("/v1/audio-features", 0) == 0;
    return n;
  }

  std::vector<std::string> requests;
  std::vector<std::string> tokens;
  std::map<std::string, std::vector<HttpResponse>> scripted;
  std::set<std::string> null_ids;

 private:
  std::size_t n_tracks_;
  std::string prefix_;
};

class ThrowingTransport final : public HttpTransport {
 public:
  HttpResponse get(const std::string&, const std::string&) override {
    ADD_FAILURE() << "transport used in fixture mode";
    return {500, "", std::nullopt};
  }
};

FetchConfig live_config(std::vector<double>* sleeps = nullptr) {
  FetchConfig cfg;
  cfg.token = "secret";
  cfg.sleep = [sleeps](double s) {
    if (sleeps) sleeps->push_back(s);
  };
  return cfg;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

TEST(LiveFetch, PagesAndBatchesInPlaylistOrder) {
  FakeSpotify api(120);
  const auto r = fetch_playlist_features({"pl", Label::kLiked}, live_config(), api);
  ASSERT_EQ(r.records.size(), 120u);
  for (std::size_t i = 0; i < 120; ++i) EXPECT_EQ(r.records[i].track_id, "trk" + std::to_string(i));
  EXPECT_EQ(api.feature_requests(), 2u);
  EXPECT_EQ(api.requests.size(), 4u);
  EXPECT_EQ(api.requests[1].find("https://"), std::string::npos);
  for (const auto& t : api.tokens) EXPECT_EQ(t, "secret");
  EXPECT_TRUE(r.warnings.empty());
}

TEST(LiveFetch, BatchSizeControlsFeatureRequests) {
  FakeSpotify api(120);
  auto cfg = live_config();
  cfg.batch_size = 25;
  fetch_playlist_features({"pl", Label::kLiked}, cfg, api);
  EXPECT_EQ(api.feature_requests(), 5u);
  cfg.batch_size = 0;
  EXPECT_EQ(code_of([&] { fetch_playlist_features({"pl", Label::kLiked}, cfg, api); }),
            ErrorCode::kInvalidArgument);
  cfg.batch_size = 101;
  EXPECT_EQ(code_of([&] { validate_fetch_config(cfg); }), ErrorCode::kInvalidArgument);
}

TEST(LiveFetch, HonorsRetryAfterThenBacksOff) {
  FakeSpotify api(3);
  api.scripted["/v1/audio-features"] = {{429, "", 2.5}, {503, "", std::nullopt}};
  std::vector<double> sleeps;
  auto cfg = live_config(&sleeps);
  cfg.retry.initial_backoff = 0.5;
  const auto r = fetch_playlist_features({"pl", Label::kLiked}, cfg, api);
  EXPECT_EQ(r.records.size(), 3u);
  EXPECT_EQ(sleeps, (std::vector<double>{2.5, 1.0}));
  EXPECT_EQ(api.feature_requests(), 3u);
}

TEST(LiveFetch, ConnectionFailuresAreRetried) {
  FakeSpotify api(2);
  api.scripted["/v1/playlists"] = {{-1, "", std::nullopt}};
  std::vector<double> sleeps;
  const auto r = fetch_playlist_features({"pl", Label::kLiked}, live_config(&sleeps), api);
  EXPECT_EQ(r.records.size(), 2u);
  EXPECT_EQ(sleeps.size(), 1u);
}

TEST(LiveFetch, RetryBudgetExhausted) {
  FakeSpotify api(2);
  api.scripted["/v1/playlists"] = std::vector<HttpResponse>(10, {429, "", 0.0});
  auto cfg = live_config();
  cfg.retry.max_retries = 3;
  try {
    fetch_playlist_features({"pl", Label::kLiked}, cfg, api);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNetwork);
    EXPECT_NE(std::string(e.what()).find("retry budget exhausted"), std::string::npos);
  }
  EXPECT_EQ(api.requests.size(), 4u);
}

TEST(LiveFetch, AuthAndNotFoundAreNotRetried) {
  for (int status : {401, 403}) {
    FakeSpotify api(2);
    api.scripted["/v1/playlists"] = {{status, "", std::nullopt}};
    EXPECT_EQ(code_of([&] { fetch_playlist_features({"pl", Label::kLiked}, live_config(), api); }),
              ErrorCode::kAuth);
    EXPECT_EQ(api.requests.size(), 1u);
  }
  FakeSpotify api(2);
  api.scripted["/v1/playlists"] = {{404, "", std::nullopt}};
  EXPECT_EQ(code_of([&] { fetch_playlist_features({"pl", Label::kLiked}, live_config(), api); }),
            ErrorCode::kNotFound);
}

TEST(LiveFetch, MissingTokenIsAnAuthError) {
  FakeSpotify api(2);
  FetchConfig cfg;
  try {
    fetch_playlist_features({"pl", Label::kLiked}, cfg, api);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kAuth);
    EXPECT_NE(std::string(e.what()).find("SPOTIFY_TOKEN"), std::string::npos);
  }
  EXPECT_TRUE(api.requests.empty());
}

TEST(LiveFetch, NullFeaturesAreSkippedWithWarning) {
  FakeSpotify api(5);
  api.null_ids = {"trk1", "trk3"};
  const auto r = fetch_playlist_features({"pl", Label::kLiked}, live_config(), api);
  ASSERT_EQ(r.records.size(), 3u);
  EXPECT_EQ(r.records[1].track_id, "trk2");
  EXPECT_EQ(r.skipped.size(), 2u);
  ASSERT_EQ(r.warnings.size(), 1u);
  EXPECT_NE(r.warnings[0].find("skipped 2"), std::string::npos);
}

TEST(LiveFetch, EmptyPlaylistWarns) {
  FakeSpotify api(0);
  const auto r = fetch_playlist_features({"pl", Label::kDisliked}, live_config(), api);
  EXPECT_TRUE(r.records.empty());
  ASSERT_EQ(r.warnings.size(), 1u);
  EXPECT_NE(r.warnings[0].find("no tracks"), std::string::npos);
  EXPECT_EQ(api.feature_requests(), 0u);
}

TEST(LiveFetch, RejectsOddPlaylistIds) {
  FakeSpotify api(1);
  for (const char* id : {"", "a/b", "x?y=1", "../etc"}) {
    EXPECT_EQ(code_of([&] { fetch_playlist_features({id, Label::kLiked}, live_config(), api); }),
              ErrorCode::kInvalidArgument)
        << id;
  }
}

class FixtureDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("tunebench-fixtures-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "-" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  void write(const std::string& name, const std::string& text) {
    std::ofstream(dir_ / name) << text;
  }
  FetchConfig config() const {
    FetchConfig cfg;
    cfg.fixture_dir = dir_.string();
    return cfg;
  }
  std::filesystem::path dir_;
};

TEST_F(FixtureDir, ReadsBareArrayAndWrappedForms) {
  json arr = json::array({feature_object("a", 0.1), feature_object("b", 0.2),
                          feature_object("c", 0.3)});
  write("liked.features.json", arr.dump());
  write("disliked.features.json", json{{"audio_features", arr}}.dump());
  ThrowingTransport none;
  const auto a = fetch_playlist_features({"liked", Label::kLiked}, config(), none);
  const auto b = fetch_playlist_features({"disliked", Label::kDisliked}, config(), none);
  ASSERT_EQ(a.records.size(), 3u);
  EXPECT_EQ(b.records.size(), 3u);
  EXPECT_EQ(a.records[2].track_id, "c");
  EXPECT_EQ(a.records[0].values[0], 0.1);
  EXPECT_EQ(a.records[0].values[10], 104.0);
}

TEST_F(FixtureDir, ErrorsAreTyped) {
  ThrowingTransport none;
  EXPECT_EQ(code_of([&] { fetch_playlist_features({"missing", Label::kLiked}, config(), none); }),
            ErrorCode::kNotFound);
  write("bad.features.json", "[{\"id\": \"x\"");
  EXPECT_EQ(code_of([&] { fetch_playlist_features({"bad", Label::kLiked}, config(), none); }),
            ErrorCode::kParse);
  auto incomplete = feature_object("trackX", 0.5);
  incomplete.erase("tempo");
  write("partial.features.json", json::array({incomplete}).dump());
  try {
    fetch_playlist_features({"partial", Label::kLiked}, config(), none);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    EXPECT_NE(std::string(e.what()).find("trackX"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("tempo"), std::string::npos);
  }
}

std::vector<RawFeatureRecord> records(const std::string& prefix, std::size_t n) {
  std::vector<RawFeatureRecord> out;
  for (std::size_t i = 0; i < n; ++i) {
    RawFeatureRecord r;
    r.track_id = prefix + std::to_string(i);
    const auto j = feature_object(r.track_id, static_cast<double>(i % 10) / 10);
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
      r.values[f] = j.at(std::string(kFeatureNames[f])).get<double>();
    }
    out.push_back(r);
  }
  return out;
}

TEST(Assemble, MergesLikedFirst) {
  const auto d = assemble_dataset(records("L", 50), records("D", 75), "mix");
  ASSERT_EQ(d.size(), 125u);
  EXPECT_EQ(d.count(Label::kLiked), 50u);
  EXPECT_EQ(d.instances[0].id, "L0");
  EXPECT_EQ(d.instances[50].id, "D0");
  EXPECT_EQ(d.instances[50].liked, Label::kDisliked);
  const auto back = parse_dataset(write_dataset(d), "mix");
  EXPECT_EQ(write_dataset(back), write_dataset(d));
}

TEST(Assemble, DuplicateAcrossPlaylistsNamesTheTrack) {
  auto liked = records("L", 3);
  auto disliked = records("D", 3);
  disliked[1].track_id = "L2";
  try {
    assemble_dataset(liked, disliked, "dup");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kValidation);
    EXPECT_NE(std::string(e.what()).find("L2"), std::string::npos);
  }
}

TEST(Assemble, InvalidValuesNameTheTrack) {
  auto liked = records("L", 3);
  liked[2].values[0] = 1.7;  // danceability above 1
  try {
    assemble_dataset(liked, records("D", 3), "bad");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kValidation);
    EXPECT_NE(std::string(e.what()).find("L2"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("danceability"), std::string::npos);
  }
  auto comma = records("L", 2);
  comma[0].track_id = "a,b";
  EXPECT_EQ(code_of([&] { assemble_dataset(comma, records("D", 2), "x"); }),
            ErrorCode::kValidation);
}

TEST(Assemble, EmptyPlaylistIsRejected) {
  EXPECT_EQ(code_of([&] { assemble_dataset({}, records("D", 2), "x"); }),
            ErrorCode::kInvalidArgument);
}

// The real client against a loopback server.
TEST(HttpTransportTest, TalksToLocalServer) {
  httplib::Server server;
  int calls = 0;
  server.Get("/v1/audio-features", [&](const httplib::Request& req, httplib::Response& res) {
    if (++calls == 1) {
      res.status = 429;
      res.set_header("Retry-After", "0");
      return;
    }
    EXPECT_EQ(req.get_header_value("Authorization"), "Bearer tok");
    res.set_content(json{{"audio_features", json::array({feature_object("z", 0.4)})}}.dump(),
                    "application/json");
  });
  server.Get(R"(/v1/playlists/(\w+)/tracks)", [&](const httplib::Request& req,
                                                  httplib::Response& res) {
    if (req.matches[1] == "nope") {
      res.status = 404;
      return;
    }
    res.set_content(json{{"items", json::array({{{"track", {{"id", "z"}}}}})}, {"next", nullptr}}
                        .dump(),
                    "application/json");
  });
  const int port = server.bind_to_any_port("127.0.0.1");
  ASSERT_GT(port, 0);
  std::thread worker([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  auto transport = make_http_transport("http://127.0.0.1:" + std::to_string(port));
  std::vector<double> sleeps;
  FetchConfig cfg;
  cfg.token = "tok";
  cfg.sleep = [&](double s) { sleeps.push_back(s); };
  const auto r = fetch_playlist_features({"abc", Label::kLiked}, cfg, *transport);
  ASSERT_EQ(r.records.size(), 1u);
  EXPECT_EQ(r.records[0].track_id, "z");
  EXPECT_EQ(sleeps, std::vector<double>{0.0});
  EXPECT_EQ(code_of([&] { fetch_playlist_features({"nope", Label::kLiked}, cfg, *transport); }),
            ErrorCode::kNotFound);

  server.stop();
  worker.join();

  cfg.retry.max_retries = 1;
  EXPECT_EQ(code_of([&] { fetch_playlist_features({"abc", Label::kLiked}, cfg, *transport); }),
            ErrorCode::kNetwork);
}

}  // namespace
}  // namespace tunebench
