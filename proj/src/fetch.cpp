#include "artifact_sieve/fetch.hpp"

#include <chrono>
#include <ctime>
#include <thread>

#include "httplib.h"
#include "json.hpp"

#include "artifact_sieve/error.hpp"
#include "artifact_sieve/text.hpp"

using json = nlohmann::json;

namespace sieve {

namespace {

struct Endpoint {
  std::string origin;  // scheme://host[:port]
  std::string base;    // path prefix without trailing slash
};

Endpoint parse_endpoint(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw Error("endpoint must be an absolute URL: " + url);
  const auto path_start = url.find('/', scheme_end + 3);
  Endpoint e;
  e.origin = url.substr(0, path_start);
  e.base = path_start == std::string::npos ? "" : url.substr(path_start);
  while (!e.base.empty() && e.base.back() == '/') e.base.pop_back();
  return e;
}

std::string format_reset(const std::string& reset) {
  try {
    const std::time_t t = static_cast<std::time_t>(std::stoll(reset));
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return std::string(buf) + " (epoch " + reset + ")";
  } catch (const std::exception&) {
    return reset;
  }
}

std::string id_string(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  return {};
}

std::optional<Document> to_document(const json& issue, const std::string& project) {
  if (!issue.is_object() || issue.contains("pull_request")) return std::nullopt;
  Document d;
  d.kind = DocumentKind::IssueTicket;
  d.project = project;
  if (auto n = issue.find("number"); n != issue.end()) d.id = id_string(*n);
  if (d.id.empty()) {
    if (auto n = issue.find("id"); n != issue.end()) d.id = id_string(*n);
  }
  if (d.id.empty()) return std::nullopt;
  if (!project.empty()) d.id = project + "#" + d.id;
  if (auto b = issue.find("body"); b != issue.end() && b->is_string())
    d.body = sanitize_utf8(b->get<std::string>());
  if (auto ls = issue.find("labels"); ls != issue.end() && ls->is_array()) {
    for (const auto& l : *ls) {
      if (l.is_string()) d.labels.insert(l.get<std::string>());
      else if (l.is_object() && l.contains("name") && l["name"].is_string())
        d.labels.insert(l["name"].get<std::string>());
    }
  }
  return d;
}

}  // namespace

std::vector<Document> fetch_issues(const FetchOptions& options) {
  const Endpoint ep = parse_endpoint(options.endpoint);
  httplib::Client client(ep.origin);
  client.set_connection_timeout(std::chrono::seconds(10));
  client.set_read_timeout(std::chrono::seconds(30));
  client.set_follow_location(true);

  httplib::Headers headers{{"Accept", "application/json"}};
  if (options.auth_token && !options.auth_token->empty())
    headers.emplace("Authorization", "token " + *options.auth_token);

  std::string csv;
  for (const auto& l : options.labels) {
    if (!csv.empty()) csv += ',';
    csv += l;
  }

  std::vector<Document> docs;
  for (int page = 1;; ++page) {
    httplib::Params params{{"page", std::to_string(page)}, {"per_page", std::to_string(options.per_page)}};
    if (!csv.empty()) params.emplace("labels", csv);
    const std::string path = httplib::append_query_params(ep.base + "/issues", params);

    httplib::Result res;
    int attempt = 0;
    for (;;) {
      ++attempt;
      res = client.Get(path, headers);
      const bool retryable = !res || res->status >= 500;
      if (!retryable || attempt > options.max_retries) break;
      std::this_thread::sleep_for(std::chrono::milliseconds(100 * attempt));
    }
    if (!res)
      throw Error("network failure fetching " + ep.origin + path + " (retries exhausted after " +
                  std::to_string(attempt) + " attempts): " + httplib::to_string(res.error()));
    if (res->status == 403 && (res->get_header_value("X-RateLimit-Remaining") == "0" ||
                               res->has_header("X-RateLimit-Reset"))) {
      throw Error("rate limit exceeded at " + options.endpoint + "; resets at " +
                  format_reset(res->get_header_value("X-RateLimit-Reset")));
    }
    if (res->status != 200)
      throw Error("HTTP " + std::to_string(res->status) + " fetching " + ep.origin + path);

    json items = json::parse(res->body, nullptr, false);
    if (items.is_discarded() || !items.is_array())
      throw Error("expected a JSON array of issues from " + ep.origin + path);

    for (const auto& issue : items) {
      auto d = to_document(issue, options.project);
      if (d) docs.push_back(std::move(*d));
    }
    if (items.size() < static_cast<std::size_t>(options.per_page)) break;
  }

  if (!options.labels.empty()) docs = filter_by_labels(docs, options.labels);
  if (!options.snapshot.empty()) write_issue_export(options.snapshot, docs);
  return docs;
}

}  // namespace sieve
