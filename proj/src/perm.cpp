#include "segc/perm.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "segc/error.hpp"

namespace segc {

Perm::Perm(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (auto v : images_) {
    if (v >= images_.size() || seen[v])
      fail("parse", "permutation image table is not a bijection");
    seen[v] = true;
  }
}

Perm Perm::identity(int degree) {
  std::vector<Point> img(degree);
  std::iota(img.begin(), img.end(), 0);
  return Perm(std::move(img));
}

Perm Perm::inverse() const {
  std::vector<Point> img(images_.size());
  for (size_t i = 0; i < images_.size(); ++i) img[images_[i]] = static_cast<Point>(i);
  return Perm(std::move(img));
}

bool Perm::is_identity() const {
  for (size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

long long Perm::order() const {
  long long ord = 1;
  std::vector<bool> seen(images_.size(), false);
  for (size_t i = 0; i < images_.size(); ++i) {
    if (seen[i]) continue;
    long long len = 0;
    size_t j = i;
    while (!seen[j]) {
      seen[j] = true;
      j = images_[j];
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return ord;
}

Perm operator*(const Perm& a, const Perm& b) {
  if (a.degree() != b.degree()) fail("parse", "permutation degree mismatch");
  std::vector<Perm::Point> img(a.degree());
  for (int x = 0; x < a.degree(); ++x) img[x] = a(b(static_cast<Perm::Point>(x)));
  return Perm(std::move(img));
}

std::string cycle_string(const Perm& p) {
  std::ostringstream os;
  std::vector<bool> seen(p.degree(), false);
  bool any = false;
  for (int i = 0; i < p.degree(); ++i) {
    if (seen[i] || p(static_cast<Perm::Point>(i)) == i) continue;
    any = true;
    os << '(';
    int j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) os << ' ';
      os << (j + 1);
      first = false;
      j = p(static_cast<Perm::Point>(j));
    }
    os << ')';
  }
  if (!any) return "()";
  return os.str();
}

namespace {

// Splits on commas at parenthesis depth zero.
std::vector<std::string> split_generators(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth < 0) fail("parse", "unbalanced ')' in cycle notation");
    if (c == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (depth != 0) fail("parse", "unbalanced '(' in cycle notation");
  parts.push_back(cur);
  return parts;
}

std::vector<std::vector<int>> parse_cycles(const std::string& text) {
  std::vector<std::vector<int>> cycles;
  size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') fail("parse", "expected '(' in cycle notation");
    ++i;
    std::vector<int> cyc;
    skip_ws();
    while (i < text.size() && text[i] != ')') {
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        fail("parse", "expected point number in cycle");
      int v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + (text[i] - '0');
        if (v > 65535) fail("parse", "point out of range");
        ++i;
      }
      if (v < 1) fail("parse", "points are 1-based");
      cyc.push_back(v);
      skip_ws();
    }
    if (i >= text.size()) fail("parse", "unterminated cycle");
    ++i;  // ')'
    for (size_t a = 0; a < cyc.size(); ++a)
      for (size_t b = a + 1; b < cyc.size(); ++b)
        if (cyc[a] == cyc[b]) fail("parse", "repeated point inside a cycle");
    if (!cyc.empty()) cycles.push_back(cyc);
    skip_ws();
  }
  return cycles;
}

}  // namespace

std::vector<Perm> parse_cycle_generators(const std::string& text, int min_degree) {
  std::string trimmed;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)) || true) trimmed.push_back(c);
  bool blank = true;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) blank = false;

  std::vector<std::vector<std::vector<int>>> gens_cycles;
  int degree = min_degree;
  if (!blank) {
    for (const auto& part : split_generators(text)) {
      auto cycles = parse_cycles(part);
      for (const auto& c : cycles)
        for (int v : c) degree = std::max(degree, v);
      gens_cycles.push_back(cycles);
    }
  }

  std::vector<Perm> out;
  for (const auto& cycles : gens_cycles) {
    std::vector<Perm::Point> img(degree);
    std::iota(img.begin(), img.end(), 0);
    // Juxtaposed cycles compose left to right: the leftmost acts first.
    for (const auto& cyc : cycles) {
      std::vector<Perm::Point> step(degree);
      std::iota(step.begin(), step.end(), 0);
      for (size_t k = 0; k < cyc.size(); ++k) {
        int from = cyc[k] - 1;
        int to = cyc[(k + 1) % cyc.size()] - 1;
        step[from] = static_cast<Perm::Point>(to);
      }
      for (int x = 0; x < degree; ++x) img[x] = step[img[x]];
    }
    out.emplace_back(std::move(img));
  }
  return out;
}

}  // namespace segc
