// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revscope contributors

#include "revscope/metadata.hpp"

#include <cctype>
#include <thread>

#include <httplib.h>
#include <json.hpp>

namespace revscope {

namespace {

std::string join_ids(const std::vector<std::string>& ids) {
    std::string out;
    for (const auto& id : ids) {
        if (!out.empty()) out += ", ";
        out += id;
    }
    return out;
}

bool retryable(int status) { return status == 0 || status == 429 || status >= 500; }

}  // namespace

FetchError::FetchError(std::vector<std::string> unresolved, MetadataMap partial)
    : std::runtime_error("unresolved ids: " + join_ids(unresolved)),
      unresolved_(std::move(unresolved)),
      partial_(std::move(partial)) {}

HttpGet make_http_transport(const EndpointConfig& config) {
    // Split "scheme://host[:port]/prefix" so the prefix can be prepended to paths.
    std::string origin = config.base_url;
    std::string prefix;
    if (auto scheme = origin.find("://"); scheme != std::string::npos) {
        if (auto slash = origin.find('/', scheme + 3); slash != std::string::npos) {
            prefix = origin.substr(slash);
            origin.resize(slash);
        }
    }
    while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();

    std::string agent = config.user_agent;
    if (!config.mailto.empty()) agent += " (mailto:" + config.mailto + ")";

    auto client = std::make_shared<httplib::Client>(origin);
    const auto secs = config.timeout.count() / 1000;
    const auto usecs = (config.timeout.count() % 1000) * 1000;
    client->set_connection_timeout(secs, usecs);
    client->set_read_timeout(secs, usecs);
    client->set_follow_location(true);
    httplib::Headers headers{{"User-Agent", agent}, {"Accept", "application/json"}};

    return [client, prefix, headers](const std::string& path) -> HttpResponse {
        auto res = client->Get(prefix + path, headers);
        if (!res) return {};
        return {res->status, res->body};
    };
}

std::optional<WorkMetadata> parse_work(const std::string& body) {
    auto j = nlohmann::json::parse(body, nullptr, false);
    if (j.is_discarded() || !j.is_object()) return std::nullopt;
    if (auto msg = j.find("message"); msg != j.end() && msg->is_object()) j = *msg;

    WorkMetadata work;
    auto title = j.find("title");
    if (title == j.end()) return std::nullopt;
    if (title->is_string()) {
        work.title = title->get<std::string>();
    } else if (title->is_array() && !title->empty() && title->front().is_string()) {
        work.title = title->front().get<std::string>();
    } else if (!(title->is_array() && title->empty())) {
        return std::nullopt;
    }
    if (auto a = j.find("abstract"); a != j.end() && a->is_string()) work.abstract = a->get<std::string>();
    return work;
}

std::string work_path(const std::string& id) {
    // DOIs keep their slash; everything outside the unreserved set is escaped.
    static constexpr char hex[] = "0123456789ABCDEF";
    std::string path = "/works/";
    for (unsigned char c : id) {
        if (std::isalnum(c) || c == '-' || c == '.' || c == '_' || c == '~' || c == '/') {
            path += static_cast<char>(c);
        } else {
            path += '%';
            path += hex[c >> 4];
            path += hex[c & 0xF];
        }
    }
    return path;
}

MetadataMap fetch_metadata(std::span<const std::string> ids, const EndpointConfig& config, HttpGet transport) {
    MetadataMap result;
    if (ids.empty()) return result;
    if (!transport) transport = make_http_transport(config);

    std::vector<std::string> unresolved;
    std::optional<std::chrono::steady_clock::time_point> last_request;
    auto throttled_get = [&](const std::string& path) {
        if (last_request) std::this_thread::sleep_until(*last_request + config.min_delay);
        last_request = std::chrono::steady_clock::now();
        return transport(path);
    };

    for (const auto& id : ids) {
        const auto path = work_path(id);
        HttpResponse res = throttled_get(path);
        for (int attempt = 0; retryable(res.status) && attempt < config.max_retries; ++attempt)
            res = throttled_get(path);

        if (res.status == 404) continue;
        if (res.status >= 200 && res.status < 300) {
            if (auto work = parse_work(res.body)) {
                result.emplace(id, std::move(*work));
                continue;
            }
        }
        unresolved.push_back(id);
    }
    if (!unresolved.empty()) throw FetchError(std::move(unresolved), std::move(result));
    return result;
}

}  // namespace revscope
