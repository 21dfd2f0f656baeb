#pragma once

// Shared helpers for the unit and acceptance tests: scratch directories,
// random generators and brute-force metric oracles that deliberately share
// no code with the library.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "artifact_sieve/autolabel.hpp"

namespace sieve::test {

inline std::filesystem::path fixture_dir() { return FIXTURE_DIR; }

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("artifact-sieve-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& p, const std::string& content) {
  std::filesystem::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary);
  f << content;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// ---- oracles ----

// Fraction of (artifact, natural) pairs ranked correctly, ties counting half.
inline double auc_pairs(const std::vector<double>& scores, const std::vector<Label>& truth) {
  double good = 0;
  double pairs = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (truth[i] != Label::Artifact) continue;
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (truth[j] != Label::NaturalLanguage) continue;
      pairs += 1;
      if (scores[i] > scores[j]) good += 1;
      else if (scores[i] == scores[j]) good += 0.5;
    }
  }
  return good / pairs;
}

struct Table2x2 {
  // cell[t][p], index 1 = artifact
  long cell[2][2] = {{0, 0}, {0, 0}};
};

inline Table2x2 contingency(const std::vector<Label>& a, const std::vector<Label>& b) {
  Table2x2 t;
  for (std::size_t i = 0; i < a.size(); ++i) {
    t.cell[a[i] == Label::Artifact][b[i] == Label::Artifact] += 1;
  }
  return t;
}

// Exact rational, reduced after every operation; converted with a single
// rounding so the oracles pin down the correctly rounded metric value.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Fraction(std::int64_t n = 0, std::int64_t d = 1) : num(n), den(d) {
    if (den < 0) num = -num, den = -den;
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) num /= g, den /= g;
  }
  friend Fraction operator+(Fraction a, Fraction b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
  friend Fraction operator-(Fraction a, Fraction b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
  friend Fraction operator*(Fraction a, Fraction b) { return {a.num * b.num, a.den * b.den}; }
  friend Fraction operator/(Fraction a, Fraction b) { return {a.num * b.den, a.den * b.num}; }
  friend bool operator==(Fraction a, Fraction b) { return a.num == b.num && a.den == b.den; }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// p_o and p_e straight from the contingency table.
inline double kappa_formula(const std::vector<Label>& a, const std::vector<Label>& b) {
  auto t = contingency(a, b);
  const auto n = static_cast<std::int64_t>(a.size());
  const Fraction po(t.cell[0][0] + t.cell[1][1], n);
  const Fraction a1(t.cell[1][0] + t.cell[1][1], n);
  const Fraction b1(t.cell[0][1] + t.cell[1][1], n);
  const Fraction pe = a1 * b1 + (Fraction(1) - a1) * (Fraction(1) - b1);
  if (pe == Fraction(1)) return po == Fraction(1) ? 1.0 : 0.0;
  return ((po - pe) / (Fraction(1) - pe)).value();
}

// Per-class harmonic mean of precision and recall, averaged over classes.
inline double f1_formula(const std::vector<Label>& truth, const std::vector<Label>& pred) {
  auto t = contingency(truth, pred);
  Fraction sum(0);
  for (int c = 0; c < 2; ++c) {
    const std::int64_t tp = t.cell[c][c];
    const std::int64_t fp = t.cell[1 - c][c];
    const std::int64_t fn = t.cell[c][1 - c];
    if (tp == 0) continue;  // precision or recall is 0 (or undefined)
    const Fraction precision(tp, tp + fp);
    const Fraction recall(tp, tp + fn);
    sum = sum + Fraction(2) * precision * recall / (precision + recall);
  }
  return (sum / Fraction(2)).value();
}

// ---- generators ----

inline std::string random_line(std::mt19937_64& g, std::size_t max_len = 80) {
  static const std::string alphabet =
      "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_  \t"
      "!\"#$%&'()*+,-./:;<=>?@[\\]^`{|}~";
  static const std::vector<std::string> pieces = {
      "getUserName", "foo_bar", "42", "Jdot", "Jlinestart", "x", "The", "\xC3\xA9", "\xE2\x82\xAC",
      "HTTPServer", "a1B2", "_private", "__init__", ";", "    ", "\t\t"};
  std::string s;
  const std::size_t len = g() % (max_len + 1);
  while (s.size() < len) {
    if (g() % 4 == 0) {
      s += pieces[g() % pieces.size()];
    } else {
      s += alphabet[g() % alphabet.size()];
    }
  }
  return s;
}

inline std::vector<Label> random_labels(std::mt19937_64& g, std::size_t n, unsigned artifact_pct = 50) {
  std::vector<Label> out(n);
  for (auto& l : out) l = g() % 100 < artifact_pct ? Label::Artifact : Label::NaturalLanguage;
  return out;
}

}  // namespace sieve::test
