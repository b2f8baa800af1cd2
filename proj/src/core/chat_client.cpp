/* Copyright 2026 The Dataforge Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#include "dataforge/core/chat_client.hpp"

#include <algorithm>
#include <chrono>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "dataforge/core/errors.hpp"

namespace dataforge {

ChatClient::ChatClient(ChatEndpointConfig config) : config_(std::move(config)) {
  const auto scheme_end = config_.url.find("://");
  const auto host_start = scheme_end == std::string::npos ? 0 : scheme_end + 3;
  const auto slash = config_.url.find('/', host_start);
  host_ = config_.url.substr(0, slash);
  path_ = slash == std::string::npos ? "/" : config_.url.substr(slash);
  const int slots = std::clamp(config_.max_in_flight, 1, 1024);
  in_flight_ = std::make_unique<std::counting_semaphore<1024>>(slots);
}

ChatClient::~ChatClient() = default;

std::string ChatClient::complete(const std::string& system,
                                 const std::string& user,
                                 double temperature) const {
  if (config_.offline) {
    throw NetworkError("network disabled by offline mode");
  }
  if (config_.url.empty()) throw NetworkError("no endpoint url configured");

  nlohmann::json body{{"system", system}, {"user", user}, {"temperature", temperature}};
  if (!config_.model.empty()) body["model"] = config_.model;
  const std::string payload = body.dump();

  in_flight_->acquire();
  struct Release {
    std::counting_semaphore<1024>* s;
    ~Release() { s->release(); }
  } release{in_flight_.get()};

  httplib::Client client(host_);
  const auto timeout = std::chrono::milliseconds(config_.timeout_ms);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);

  std::string last_error;
  int backoff = config_.backoff_ms;
  for (int attempt = 0; attempt <= config_.retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(std::chrono::milliseconds(backoff));
      backoff *= 2;
    }
    auto res = client.Post(path_, payload, "application/json");
    if (!res) {
      last_error = "request failed: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status == 429 || res->status >= 500) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) {
      throw NetworkError("HTTP " + std::to_string(res->status) + " from " +
                         config_.url);
    }
    const auto reply = nlohmann::json::parse(res->body, nullptr, false);
    if (reply.is_discarded() || !reply.is_object() || !reply.contains("text") ||
        !reply["text"].is_string()) {
      throw ResponseFormatError(res->body);
    }
    return reply["text"].get<std::string>();
  }
  throw NetworkError("giving up on " + config_.url + " after " +
                     std::to_string(config_.retries + 1) +
                     " attempt(s): " + last_error);
}

}  // namespace dataforge
