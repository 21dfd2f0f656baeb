#include "doctest.h"

#include "artifact_sieve/baseline.hpp"
#include "artifact_sieve/rules.hpp"
#include "support.hpp"

using namespace sieve;

namespace {

constexpr Label A = Label::Artifact;
constexpr Label N = Label::NaturalLanguage;

Document doc(std::string body) { return {"d", std::move(body), DocumentKind::IssueTicket, "p", {"bug"}}; }

}  // namespace

TEST_SUITE("baseline") {

TEST_CASE("line rules") {
  CHECK(classify_line_regex("at com.example.Foo.bar(Foo.java:42)") == A);
  CHECK(classify_line_regex("The build fails on Windows.") == N);
  CHECK(classify_line_regex("    indented") == A);
  CHECK(classify_line_regex("| a | b |") == A);
  // discard rules and quotes cannot drop lines here
  CHECK(classify_line_regex("- OS: Windows 10") == N);
  CHECK(classify_line_regex("> quoted") == N);
  CHECK(classify_line_regex("```") == N);
}

TEST_CASE("fence context overrides content") {
  auto out = classify_document_regex(doc("Intro text.\n```\nThe build fails.\n```\n\nOutro."));
  REQUIRE(out.size() == 6);
  CHECK(out[0].label == N);
  CHECK(out[1].label == A);
  CHECK(out[2].label == A);
  CHECK(out[3].label == A);
  CHECK(out[4].blank);
  CHECK(out[5].label == N);
}

TEST_CASE("documents without fences match the line baseline") {
  std::mt19937_64 g(4);
  for (int i = 0; i < 200; ++i) {
    std::string body;
    for (int k = 0; k < 10; ++k) {
      std::string line = test::random_line(g, 40);
      if (rules::is_fence_delimiter(line)) continue;
      body += line + "\n";
    }
    for (const auto& l : classify_document_regex(doc(body))) {
      if (!l.blank) CHECK(l.label == classify_line_regex(l.text));
    }
  }
}

TEST_CASE("document mode never marks fewer artifacts than the fences") {
  std::mt19937_64 g(8);
  const std::vector<std::string> pieces = {"```", "prose here", "int x;", "~~~java", "more words", ""};
  for (int i = 0; i < 200; ++i) {
    std::string body;
    for (int k = 0; k < 12; ++k) body += pieces[g() % pieces.size()] + "\n";
    auto out = classify_document_regex(doc(body));
    bool in_fence = false;
    for (const auto& l : out) {
      const bool fence = rules::is_fence_delimiter(l.text);
      if ((fence || in_fence) && !l.blank) CHECK(l.label == A);
      if (fence) in_fence = !in_fence;
    }
  }
}

TEST_CASE("baseline_predict rebuilds documents from dataset lines") {
  Dataset ds;
  ds.push_back({"The build fails.", N, "b", 2, Provenance::Manual});
  ds.push_back({"```", A, "b", 1, Provenance::Manual});
  ds.push_back({"```", A, "b", 3, Provenance::Manual});
  ds.push_back({"Text.", N, "a", 0, Provenance::Manual});
  auto line = baseline_predict(ds, BaselineMode::Line);
  auto document = baseline_predict(ds, BaselineMode::Document);
  CHECK(line == std::vector<Label>{N, N, N, N});
  CHECK(document == std::vector<Label>{A, A, A, N});
}

}
