// Copyright 2026 The ValueCompass Authors
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
#include <httplib.h>

#include <cstdlib>
#include <regex>

#include "valuecompass/gateway.hpp"

namespace valuecompass {

HttpBackend::HttpBackend(const ModelConfig& config) {
  config.validate();
  static const std::regex kUrl(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch match;
  if (config.endpoint_url.empty() || !std::regex_match(config.endpoint_url, match, kUrl)) {
    throw ConfigError("endpoint_url must look like http(s)://host[:port][/path]");
  }
  scheme_host_port_ = match[1].str();
  base_path_ = match[2].str();
  while (base_path_.ends_with('/')) base_path_.pop_back();

  const char* token = std::getenv(config.credential_ref.c_str());
  if (config.credential_ref.empty() || token == nullptr || *token == '\0') {
    throw CredentialError("credential variable '" + config.credential_ref + "' is not set");
  }
  token_ = token;
}

TransportResult HttpBackend::send(const Prompt& prompt, const ModelConfig& config) {
  httplib::Client client(scheme_host_port_);
  auto timeout = std::chrono::duration<double>(config.timeout_seconds);
  auto micros = std::chrono::duration_cast<std::chrono::microseconds>(timeout).count();
  client.set_connection_timeout(micros / 1000000, micros % 1000000);
  client.set_read_timeout(micros / 1000000, micros % 1000000);
  client.set_write_timeout(micros / 1000000, micros % 1000000);

  httplib::Headers headers{{"Authorization", "Bearer " + token_}};
  auto response = client.Post(base_path_ + "/chat/completions", headers,
                              build_chat_request(prompt, config), "application/json");

  TransportResult result;
  if (!response) {
    result.status = TransportResult::Status::transport_error;
    result.error = httplib::to_string(response.error());
    return result;
  }
  result.http_status = response->status;
  result.body = response->body;
  if (response->status >= 200 && response->status < 300) {
    result.status = TransportResult::Status::ok;
    return result;
  }
  result.status = TransportResult::Status::http_error;
  if (response->has_header("Retry-After")) {
    try {
      result.retry_after_seconds = std::stod(response->get_header_value("Retry-After"));
    } catch (const std::exception&) {
      // HTTP-date form; fall back to exponential backoff
    }
  }
  return result;
}

}  // namespace valuecompass
