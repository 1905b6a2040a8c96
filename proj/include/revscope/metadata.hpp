// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revscope contributors

#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace revscope {

struct EndpointConfig {
    std::string base_url = "https://api.crossref.org";
    std::chrono::milliseconds min_delay{1000};
    int max_retries = 3;
    std::chrono::milliseconds timeout{30000};
    std::string user_agent = "revscope/0.1";
    std::string mailto;  // appended to User-Agent as "(mailto:...)" when set
};

struct HttpResponse {
    int status = 0;  // 0 means the request never completed
    std::string body;
};

/// Performs one GET for a path relative to the configured base URL.
using HttpGet = std::function<HttpResponse(const std::string& path)>;

HttpGet make_http_transport(const EndpointConfig& config);

struct WorkMetadata {
    std::string title;
    std::optional<std::string> abstract;

    bool operator==(const WorkMetadata&) const = default;
};

using MetadataMap = std::map<std::string, WorkMetadata>;

class FetchError : public std::runtime_error {
public:
    FetchError(std::vector<std::string> unresolved, MetadataMap partial);

    const std::vector<std::string>& unresolved() const noexcept { return unresolved_; }
    const MetadataMap& partial() const noexcept { return partial_; }

private:
    std::vector<std::string> unresolved_;
    MetadataMap partial_;
};

/// Parses a works response. Accepts a flat {"title", "abstract"} object or a
/// Crossref-style {"message": {"title": [...], "abstract": ...}} envelope.
std::optional<WorkMetadata> parse_work(const std::string& body);

std::string work_path(const std::string& id);

/// Resolves titles and abstracts one id at a time via GET {base}/works/{id},
/// waiting at least `config.min_delay` between requests. 404s are omitted
/// from the result. Network failures, 429 and 5xx are retried up to
/// `config.max_retries` times; ids still failing after that, or answered
/// with an unusable body, are reported together in a FetchError.
MetadataMap fetch_metadata(std::span<const std::string> ids, const EndpointConfig& config,
                           HttpGet transport = {});

}  // namespace revscope
