// Copyright 2026 The lbayes Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lbayes/proposer/llm_client.hpp"

#include <httplib.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <json.hpp>
#include <mutex>
#include <thread>

#include "lbayes/error.hpp"

namespace lbayes {

namespace {

struct Endpoint {
  std::string base;  // scheme://host[:port]
  std::string path;
};

Endpoint split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw Error(ErrorCode::kInvalidConfig, "endpoint '" + url + "' has no scheme");
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

bool is_timeout(httplib::Error e) {
  return e == httplib::Error::Read || e == httplib::Error::Write || e == httplib::Error::ConnectionTimeout;
}

std::string extract_content(const std::string& body, std::size_t index) {
  const auto json = nlohmann::json::parse(body, nullptr, false);
  std::string request = "request " + std::to_string(index);
  if (json.is_object() && json.contains("id") && json["id"].is_string()) {
    request += " (id " + json["id"].get<std::string>() + ")";
  }
  if (json.is_discarded()) throw Error(ErrorCode::kBadResponse, request + ": body is not JSON");
  const auto* content = [&]() -> const nlohmann::json* {
    if (!json.is_object() || !json.contains("choices") || !json["choices"].is_array() || json["choices"].empty()) {
      return nullptr;
    }
    const auto& choice = json["choices"][0];
    if (!choice.is_object() || !choice.contains("message") || !choice["message"].is_object()) return nullptr;
    const auto& message = choice["message"];
    if (!message.contains("content") || !message["content"].is_string()) return nullptr;
    return &message["content"];
  }();
  if (content == nullptr) throw Error(ErrorCode::kBadResponse, request + ": missing choices[0].message.content");
  return content->get<std::string>();
}

}  // namespace

LlmProposal llm_propose(const ProposerConfig& cfg, const std::vector<ChatMessage>& messages, int n,
                        const LogFn& log) {
  cfg.check();
  httplib::Headers headers;
  if (!cfg.api_key_env.empty()) {
    const char* key = std::getenv(cfg.api_key_env.c_str());
    if (key == nullptr || *key == '\0') {
      throw Error(ErrorCode::kMissingApiKey, "environment variable " + cfg.api_key_env + " is not set");
    }
    headers.emplace("Authorization", std::string("Bearer ") + key);
  }
  const Endpoint endpoint = split_url(cfg.endpoint_url);

  nlohmann::ordered_json request;
  request["model"] = cfg.model_name;
  request["messages"] = nlohmann::ordered_json::array();
  for (const auto& m : messages) request["messages"].push_back({{"role", m.role}, {"content", m.content}});
  request["temperature"] = cfg.temperature;
  const std::string body = request.dump();

  const auto count = static_cast<std::size_t>(std::max(n, 0));
  LlmProposal out;
  out.sources.resize(count);
  out.retries.assign(count, 0);
  std::vector<std::exception_ptr> errors(count);
  std::mutex log_mutex;
  const auto say = [&](const std::string& line) {
    if (!log) return;
    const std::lock_guard<std::mutex> lock(log_mutex);
    log(line);
  };

  const auto run_one = [&](httplib::Client& client, std::size_t i) {
    for (int attempt = 0;; ++attempt) {
      std::string failure;
      ErrorCode code = ErrorCode::kHttp;
      auto res = client.Post(endpoint.path, headers, body, "application/json");
      if (!res) {
        if (!is_timeout(res.error())) {
          throw Error(ErrorCode::kHttp, "request " + std::to_string(i) + ": " + httplib::to_string(res.error()));
        }
        code = ErrorCode::kTimeout;
        failure = "timed out (" + httplib::to_string(res.error()) + ")";
      } else if (res->status >= 500) {
        failure = "HTTP " + std::to_string(res->status);
      } else if (res->status < 200 || res->status >= 300) {
        throw Error(ErrorCode::kHttp, "request " + std::to_string(i) + ": HTTP " + std::to_string(res->status));
      } else {
        out.sources[i] = {source_id(i), "request " + std::to_string(i), extract_content(res->body, i)};
        out.retries[i] = attempt;
        if (attempt > 0) say("request " + std::to_string(i) + " succeeded after " + std::to_string(attempt) + " retries");
        return;
      }
      if (attempt >= cfg.max_retries) {
        throw Error(code, "request " + std::to_string(i) + ": " + failure + " after " + std::to_string(attempt) +
                              " retries");
      }
      const int delay = cfg.backoff_ms << attempt;
      say("request " + std::to_string(i) + ": " + failure + "; retry " + std::to_string(attempt + 1) + "/" +
          std::to_string(cfg.max_retries) + " in " + std::to_string(delay) + " ms");
      std::this_thread::sleep_for(std::chrono::milliseconds(delay));
    }
  };

  std::atomic<std::size_t> next{0};
  const auto worker = [&]() {
    httplib::Client client(endpoint.base);
    client.set_connection_timeout(cfg.request_timeout_s, 0);
    client.set_read_timeout(cfg.request_timeout_s, 0);
    client.set_write_timeout(cfg.request_timeout_s, 0);
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        run_one(client, i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const auto workers = std::min<std::size_t>(count, static_cast<std::size_t>(cfg.max_in_flight));
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace lbayes
