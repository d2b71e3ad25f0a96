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

#include "cli_config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <filesystem>

namespace tunebench::cli {
namespace {

using json = nlohmann::ordered_json;

constexpr std::string_view kAllTags[] = {"lr", "nb", "smo", "mlp", "knn", "rf"};

class LineParser {
 public:
  LineParser(std::string_view text, std::size_t line) : s_(text), line_(line) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("config line " + std::to_string(line_) + ": " + what);
  }

  void skip_space() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }

  bool at_end_or_comment() {
    skip_space();
    return pos_ >= s_.size() || s_[pos_] == '#';
  }

  bool consume(char c) {
    skip_space();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string key() {
    skip_space();
    if (pos_ < s_.size() && s_[pos_] == '"') return quoted();
    const auto start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' ||
            s_[pos_] == '-')) {
      ++pos_;
    }
    if (start == pos_) fail("expected a key");
    return std::string(s_.substr(start, pos_ - start));
  }

  json value() {
    skip_space();
    if (pos_ >= s_.size()) fail("missing value");
    const char c = s_[pos_];
    if (c == '"') return quoted();
    if (c == '[') {
      ++pos_;
      json arr = json::array();
      if (consume(']')) return arr;
      while (true) {
        auto v = value();
        if (v.is_array()) fail("nested arrays are not supported");
        arr.push_back(std::move(v));
        if (consume(']')) return arr;
        if (!consume(',')) fail("expected ',' or ']' in array");
        if (consume(']')) return arr;
      }
    }
    const auto start = pos_;
    while (pos_ < s_.size() && s_[pos_] != ',' && s_[pos_] != ']' && s_[pos_] != '#' &&
           s_[pos_] != ' ' && s_[pos_] != '\t') {
      ++pos_;
    }
    const auto word = s_.substr(start, pos_ - start);
    if (word == "true") return true;
    if (word == "false") return false;
    std::int64_t i = 0;
    auto [p, ec] = std::from_chars(word.data(), word.data() + word.size(), i);
    if (ec == std::errc() && p == word.data() + word.size()) return i;
    double d = 0.0;
    auto [q, ec2] = std::from_chars(word.data(), word.data() + word.size(), d);
    if (ec2 == std::errc() && q == word.data() + word.size()) return d;
    fail("cannot read value \"" + std::string(word) + "\"");
  }

 private:
  std::string quoted() {
    ++pos_;  // opening quote
    std::string out;
    while (pos_ < s_.size() && s_[pos_] != '"') {
      char c = s_[pos_++];
      if (c == '\\') {
        if (pos_ >= s_.size()) break;
        const char e = s_[pos_++];
        switch (e) {
          case 'n': c = '\n'; break;
          case 't': c = '\t'; break;
          case '"': c = '"'; break;
          case '\\': c = '\\'; break;
          default: fail(std::string("unknown escape \\") + e);
        }
      }
      out += c;
    }
    if (pos_ >= s_.size()) fail("unterminated string");
    ++pos_;
    return out;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t line_;
};

std::size_t as_count(const json& v, const char* key) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    throw ConfigError(std::string(key) + " must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

std::vector<std::string> string_list(const json& v, const char* key) {
  if (v.is_string()) return {v.get<std::string>()};
  if (!v.is_array()) throw ConfigError(std::string(key) + " must be a string or a list");
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string()) throw ConfigError(std::string(key) + " entries must be strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

}  // namespace

json parse_config_text(std::string_view text) {
  json doc = json::object();
  json* section = &doc;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view() : text.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    LineParser p(line, line_no);
    if (p.at_end_or_comment()) continue;
    if (p.consume('[')) {
      section = &doc;
      do {
        const auto name = p.key();
        auto& next = (*section)[name];
        if (next.is_null()) next = json::object();
        if (!next.is_object()) p.fail("section \"" + name + "\" clashes with a key");
        section = &next;
      } while (p.consume('.'));
      if (!p.consume(']')) p.fail("expected ']'");
      if (!p.at_end_or_comment()) p.fail("unexpected text after section header");
      continue;
    }
    const auto key = p.key();
    if (!p.consume('=')) p.fail("expected '=' after \"" + key + "\"");
    auto v = p.value();
    if (!p.at_end_or_comment()) p.fail("unexpected text after value");
    if (section->contains(key)) p.fail("duplicate key \"" + key + "\"");
    (*section)[key] = std::move(v);
  }
  return doc;
}

CliConfig apply_config(const json& doc, CliConfig base) {
  for (const auto& [key, v] : doc.items()) {
    if (key == "folds" || key == "k") {
      base.folds = as_count(v, "folds");
    } else if (key == "seed") {
      if (!v.is_number_integer()) throw ConfigError("seed must be an integer");
      base.seed = v.get<std::uint64_t>();
    } else if (key == "standardize") {
      if (!v.is_boolean()) throw ConfigError("standardize must be true or false");
      base.standardize = v.get<bool>();
    } else if (key == "out_dir") {
      if (!v.is_string()) throw ConfigError("out_dir must be a string");
      base.out_dir = v.get<std::string>();
    } else if (key == "formats") {
      base.formats = string_list(v, "formats");
    } else if (key == "algorithms") {
      std::string joined;
      for (const auto& a : string_list(v, "algorithms")) {
        joined += (joined.empty() ? "" : ",") + a;
      }
      base.algorithms = parse_algorithm_list(joined);
    } else if (key == "datasets") {
      if (!v.is_object()) throw ConfigError("[datasets] must be a section of name = path");
      base.datasets.clear();
      for (const auto& [name, path] : v.items()) {
        if (!path.is_string()) throw ConfigError("dataset " + name + " needs a path string");
        base.datasets.emplace_back(name, path.get<std::string>());
      }
    } else if (key == "spec") {
      if (!v.is_object()) throw ConfigError("[spec.<algorithm>] sections expected");
      for (const auto& [tag, fields] : v.items()) {
        if (std::find(std::begin(kAllTags), std::end(kAllTags), tag) == std::end(kAllTags)) {
          throw ConfigError("unknown algorithm section [spec." + tag + "]");
        }
        if (!fields.is_object()) throw ConfigError("[spec." + tag + "] must be a section");
        base.spec_overrides[tag] = nlohmann::json(fields);
      }
    } else {
      throw ConfigError("unknown config key \"" + key + "\"");
    }
  }
  return base;
}

std::vector<std::string> parse_algorithm_list(std::string_view text) {
  std::vector<std::string> out;
  while (true) {
    const auto comma = text.find(',');
    auto item = text.substr(0, comma);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (item == "all") {
      for (auto t : kAllTags) {
        if (std::find(out.begin(), out.end(), t) == out.end()) out.emplace_back(t);
      }
    } else if (std::find(std::begin(kAllTags), std::end(kAllTags), item) !=
               std::end(kAllTags)) {
      if (std::find(out.begin(), out.end(), item) == out.end()) out.emplace_back(item);
    } else {
      throw ConfigError("unknown algorithm \"" + std::string(item) +
                        "\" (expected all or a list of lr, nb, smo, mlp, knn, rf)");
    }
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

std::pair<std::string, std::string> parse_dataset_arg(std::string_view text) {
  const auto eq = text.find('=');
  if (eq != std::string_view::npos && eq > 0) {
    return {std::string(text.substr(0, eq)), std::string(text.substr(eq + 1))};
  }
  const std::string path(text);
  return {std::filesystem::path(path).stem().string(), path};
}

}  // namespace tunebench::cli
