#include "artifact_sieve/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unordered_set>

#include "json.hpp"

#include "artifact_sieve/error.hpp"
#include "artifact_sieve/text.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace sieve {

namespace {

void warn(Warnings* warnings, std::string message) {
  if (warnings) {
    warnings->push_back(std::move(message));
  } else {
    std::cerr << "warning: " << message << '\n';
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error("cannot read " + path.string());
  return buf.str();
}

std::vector<fs::path> collect_files(const fs::path& root, std::string_view extension) {
  std::vector<fs::path> files;
  std::error_code ec;
  for (fs::recursive_directory_iterator it(root, ec), end; it != end; it.increment(ec)) {
    if (ec) break;
    if (it->is_regular_file() && it->path().extension() == extension) files.push_back(it->path());
  }
  if (ec) throw Error("cannot read " + root.string() + ": " + ec.message());
  std::sort(files.begin(), files.end());
  return files;
}

std::vector<Document> load_markdown(const fs::path& path) {
  std::vector<Document> docs;
  auto make = [](const fs::path& file, const fs::path& rel, std::string project) {
    Document d;
    d.id = "doc:" + rel.generic_string();
    d.kind = DocumentKind::DocumentationFile;
    d.project = std::move(project);
    d.body = sanitize_utf8(read_file(file));
    return d;
  };
  if (fs::is_regular_file(path)) {
    docs.push_back(make(path, path.filename(), path.parent_path().filename().string()));
    return docs;
  }
  const std::string root_name = fs::absolute(path).lexically_normal().parent_path().filename().string();
  for (const auto& file : collect_files(path, ".md")) {
    const fs::path rel = file.lexically_relative(path);
    std::string project = std::distance(rel.begin(), rel.end()) > 1 ? rel.begin()->string()
                          : path.filename().empty() ? root_name
                                                    : path.filename().string();
    docs.push_back(make(file, rel, std::move(project)));
  }
  return docs;
}

}  // namespace

std::set<std::string> default_bug_labels() { return {"bug", "defect", "regression"}; }

std::vector<Document> parse_issue_export(std::string_view content, std::string_view source,
                                         Warnings* warnings) {
  std::vector<Document> docs;
  std::size_t record = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    std::size_t eol = content.find('\n', pos);
    if (eol == std::string_view::npos) eol = content.size();
    std::string_view raw = content.substr(pos, eol - pos);
    pos = eol + 1;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    if (is_blank(raw)) continue;
    const std::size_t index = ++record;  // 1-based, blank lines not counted
    auto reject = [&](const std::string& why) {
      warn(warnings, std::string(source) + ": skipping record " + std::to_string(index) + ": " + why);
    };
    json j = json::parse(sanitize_utf8(raw), nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      reject("not a JSON object");
      continue;
    }
    auto id = j.find("id");
    auto body = j.find("body");
    if (id == j.end() || !id->is_string() || id->get_ref<const std::string&>().empty()) {
      reject("missing or empty \"id\"");
      continue;
    }
    if (body == j.end() || !body->is_string()) {
      reject("missing \"body\"");
      continue;
    }
    Document d;
    d.id = id->get<std::string>();
    d.body = body->get<std::string>();
    d.kind = DocumentKind::IssueTicket;
    if (auto p = j.find("project"); p != j.end() && p->is_string()) d.project = p->get<std::string>();
    bool labels_ok = true;
    if (auto l = j.find("labels"); l != j.end()) {
      if (!l->is_array()) {
        labels_ok = false;
      } else {
        for (const auto& label : *l) {
          if (!label.is_string()) {
            labels_ok = false;
            break;
          }
          d.labels.insert(label.get<std::string>());
        }
      }
    }
    if (!labels_ok) {
      reject("\"labels\" must be an array of strings");
      continue;
    }
    docs.push_back(std::move(d));
  }
  return docs;
}

std::string format_issue_export(std::span<const Document> docs) {
  std::string out;
  for (const auto& d : docs) {
    json j;
    j["id"] = d.id;
    j["project"] = d.project;
    j["labels"] = json::array();
    for (const auto& l : d.labels) j["labels"].push_back(l);
    j["body"] = d.body;
    out += j.dump();
    out += '\n';
  }
  return out;
}

void write_issue_export(const fs::path& path, std::span<const Document> docs) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << format_issue_export(docs);
  if (!out) throw Error("cannot write " + path.string());
}

std::vector<Document> load_documents(const fs::path& path, DocumentKind kind, Warnings* warnings) {
  std::error_code ec;
  if (!fs::exists(path, ec)) throw Error("cannot read " + path.string() + ": no such file or directory");

  std::vector<Document> loaded;
  if (kind == DocumentKind::DocumentationFile) {
    loaded = load_markdown(path);
  } else {
    std::vector<fs::path> files;
    if (fs::is_directory(path)) {
      files = collect_files(path, ".jsonl");
    } else {
      files.push_back(path);
    }
    for (const auto& file : files) {
      auto part = parse_issue_export(read_file(file), file.string(), warnings);
      std::move(part.begin(), part.end(), std::back_inserter(loaded));
    }
  }

  std::vector<Document> docs;
  std::unordered_set<std::string> seen;
  for (auto& d : loaded) {
    if (!seen.insert(d.id).second) {
      warn(warnings, "duplicate document id " + d.id + " skipped");
      continue;
    }
    docs.push_back(std::move(d));
  }
  return docs;
}

std::vector<Document> filter_by_labels(std::span<const Document> docs,
                                       const std::set<std::string>& wanted) {
  std::vector<Document> out;
  for (const auto& d : docs) {
    if (d.kind == DocumentKind::DocumentationFile) {
      out.push_back(d);
      continue;
    }
    bool hit = std::any_of(d.labels.begin(), d.labels.end(),
                           [&](const std::string& l) { return wanted.contains(l); });
    if (hit) out.push_back(d);
  }
  return out;
}

std::vector<std::string> split_text_lines(std::string_view body) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  std::size_t i = 0;
  while (i < body.size()) {
    const char c = body[i];
    if (c == '\n' || c == '\r') {
      lines.emplace_back(body.substr(start, i - start));
      i += (c == '\r' && i + 1 < body.size() && body[i + 1] == '\n') ? 2 : 1;
      start = i;
    } else {
      ++i;
    }
  }
  if (start < body.size() || lines.empty()) lines.emplace_back(body.substr(start));
  return lines;
}

std::vector<RawLine> split_lines(const Document& doc) {
  std::vector<RawLine> out;
  auto texts = split_text_lines(doc.body);
  out.reserve(texts.size());
  for (std::size_t i = 0; i < texts.size(); ++i) {
    out.push_back(RawLine{doc.id, i, std::move(texts[i])});
  }
  return out;
}

}  // namespace sieve
