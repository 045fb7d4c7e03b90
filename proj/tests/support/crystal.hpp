#pragma once

// Littelmann path model for B(lambda), used as an independent oracle for
// string parametrizations. Paths are piecewise linear, stored as vertex lists
// in fundamental-weight coordinates starting at 0.

#include "nok/rootsys.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace oracle {

using nok::Mat;
using nok::Rational;
using nok::Vec;
using nok::operator+;
using nok::operator-;
using nok::operator*;

class PathCrystal {
 public:
  using Path = std::vector<Vec>;

  explicit PathCrystal(const nok::RootSystem& rs) : rs_(rs) {}

  Path straight(const Vec& lambda) const { return {nok::zeros(rs_.rank()), lambda}; }

  int epsilon(const Path& p, std::size_t i) const { return -to_int(min_h(p, i)); }
  int phi(const Path& p, std::size_t i) const { return to_int(p.back()[i] - min_h(p, i)); }

  std::optional<Path> e(Path p, std::size_t i) const {
    Rational q = min_h(p, i);
    if (q > -1) return std::nullopt;
    std::size_t j1 = 0;
    while (p[j1][i] != q) ++j1;
    // Last point before j1 where h = q + 1.
    std::size_t j = j1;
    while (true) {
      if (p[j - 1][i] >= q + 1) break;
      --j;
    }
    // Segment (j-1, j) crosses level q + 1.
    std::size_t j0 = split(p, j - 1, q + 1, i);
    if (j0 != j - 1) ++j1;
    return normalize(transform(p, j0, j1, i, +1));
  }

  std::optional<Path> f(Path p, std::size_t i) const {
    Rational q = min_h(p, i);
    if (p.back()[i] - q < 1) return std::nullopt;
    std::size_t j0 = p.size() - 1;
    while (p[j0][i] != q) --j0;
    std::size_t j = j0;
    while (p[j + 1][i] < q + 1) ++j;
    std::size_t j1 = split(p, j, q + 1, i);
    return normalize(transform(p, j0, j1, i, -1));
  }

  /// All paths of B(lambda), generated from the straight path by f-operators.
  std::vector<Path> crystal(const Vec& lambda) const {
    std::set<Path> seen{straight(lambda)};
    std::vector<Path> queue{straight(lambda)};
    for (std::size_t head = 0; head < queue.size(); ++head)
      for (std::size_t i = 0; i < rs_.rank(); ++i)
        if (auto n = f(queue[head], i); n && seen.insert(*n).second) queue.push_back(*n);
    return queue;
  }

  /// String parametrization along a word (1-based letters).
  std::vector<long long> string(Path p, const std::vector<int>& word) const {
    std::vector<long long> out;
    for (int letter : word) {
      std::size_t i = static_cast<std::size_t>(letter - 1);
      int a = epsilon(p, i);
      out.push_back(a);
      for (int k = 0; k < a; ++k) p = *e(p, i);
    }
    return out;
  }

 private:
  static int to_int(const Rational& q) {
    if (q.get_den() != 1) throw std::runtime_error("non-integral path height");
    return static_cast<int>(q.get_num().get_si());
  }

  Rational min_h(const Path& p, std::size_t i) const {
    Rational q = 0;
    for (const auto& v : p) q = std::min(q, v[i]);
    return q;
  }

  // Ensures a vertex at the point of segment (j, j+1) where h_i = level;
  // returns its index.
  static std::size_t split(Path& p, std::size_t j, const Rational& level, std::size_t i) {
    const Vec& a = p[j];
    const Vec& b = p[j + 1];
    if (a[i] == level) return j;
    if (b[i] == level) return j + 1;
    Rational s = (level - a[i]) / (b[i] - a[i]);
    Vec mid = a + s * (b - a);
    p.insert(p.begin() + static_cast<std::ptrdiff_t>(j + 1), mid);
    return j + 1;
  }

  Vec root(std::size_t i) const { return rs_.simple_root(i); }

  Path transform(Path p, std::size_t j0, std::size_t j1, std::size_t i, int sign) const {
    Vec alpha = root(i);
    Vec base = p[j0];
    for (std::size_t j = j0 + 1; j < p.size(); ++j) {
      if (j <= j1) {
        Vec d = p[j] - base;
        p[j] = base + (d - d[i] * alpha);
      } else {
        p[j] = p[j] + Rational(sign) * alpha;
      }
    }
    return p;
  }

  static Path normalize(const Path& p) {
    Path out{p.front()};
    for (std::size_t j = 1; j < p.size(); ++j) {
      if (p[j] == out.back()) continue;
      if (out.size() >= 2) {
        Vec d1 = out.back() - out[out.size() - 2];
        Vec d2 = p[j] - out.back();
        if (nok::primitive(d1) == nok::primitive(d2)) {
          out.back() = p[j];
          continue;
        }
      }
      out.push_back(p[j]);
    }
    return out;
  }

  const nok::RootSystem& rs_;
};

/// Set of strings of B(lambda) along a word.
inline std::set<std::vector<long long>> strings_of(const nok::RootSystem& rs, const Vec& lambda,
                                                   const std::vector<int>& word) {
  PathCrystal pc(rs);
  std::set<std::vector<long long>> out;
  for (const auto& p : pc.crystal(lambda)) out.insert(pc.string(p, word));
  return out;
}

}  // namespace oracle
