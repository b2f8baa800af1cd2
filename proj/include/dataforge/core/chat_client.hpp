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
#ifndef DATAFORGE_CORE_CHAT_CLIENT_HPP_
#define DATAFORGE_CORE_CHAT_CLIENT_HPP_

#include <memory>
#include <semaphore>
#include <string>

namespace dataforge {

struct ChatEndpointConfig {
  std::string url;      // http://host:port/path
  std::string model;    // sent only when non-empty
  int timeout_ms = 30000;
  int retries = 3;      // additional attempts after the first
  int backoff_ms = 200; // doubled after every failed attempt
  int max_in_flight = 4;
  bool offline = false;
};

// Minimal chat-completion transport.
//
//   POST <url>  {"system": ..., "user": ..., "temperature": ...[, "model": ...]}
//   200         {"text": ...}
//
// Connection failures, HTTP 429 and 5xx are retried with exponential backoff.
// Other statuses fail immediately. Thread-safe; concurrent calls are bounded
// by max_in_flight.
class ChatClient {
 public:
  explicit ChatClient(ChatEndpointConfig config);
  ~ChatClient();

  // Throws NetworkError (including in offline mode) or ResponseFormatError
  // when the body is not {"text": string}.
  std::string complete(const std::string& system, const std::string& user,
                       double temperature) const;

  const ChatEndpointConfig& config() const { return config_; }

 private:
  ChatEndpointConfig config_;
  std::string host_;  // scheme://host:port
  std::string path_;
  std::unique_ptr<std::counting_semaphore<1024>> in_flight_;
};

}  // namespace dataforge

#endif  // DATAFORGE_CORE_CHAT_CLIENT_HPP_
