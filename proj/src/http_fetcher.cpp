// Copyright 2025 The GeoDiff Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include "geodiff/availability.hpp"

namespace geodiff {

namespace {

std::string substitute_package(std::string url, const std::string& package) {
  const std::string placeholder = "{package}";
  std::size_t pos;
  while ((pos = url.find(placeholder)) != std::string::npos) {
    url.replace(pos, placeholder.size(), package);
  }
  return url;
}

}  // namespace

FetchResult HttpFetcher::fetch(const std::string& region,
                               const std::string& package) {
  FetchResult result;
  auto it = url_by_region_.find(region);
  if (it == url_by_region_.end() || it->second.empty()) {
    result.error = "no url configured for region " + region;
    return result;
  }
  std::string url = substitute_package(it->second, package);

  std::size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    result.error = "url without scheme: " + url;
    return result;
  }
  std::size_t path_start = url.find('/', scheme_end + 3);
  std::string origin = path_start == std::string::npos ? url : url.substr(0, path_start);
  std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);

  httplib::Client client(origin);
  client.set_connection_timeout(0, timeout_ms_ * 1000L);
  client.set_read_timeout(0, timeout_ms_ * 1000L);
  client.set_follow_location(true);

  httplib::Result response = client.Get(path);
  if (!response) {
    result.error = httplib::to_string(response.error());
    return result;
  }
  result.ok = true;
  result.status = response->status;
  result.body.assign(response->body.begin(), response->body.end());
  return result;
}

}  // namespace geodiff
