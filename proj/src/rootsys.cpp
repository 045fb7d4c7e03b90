#include "nok/rootsys.hpp"

#include "nok/linalg.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>

namespace nok {

Integer PositiveRoot::height() const {
  Rational h = 0;
  for (const auto& x : simple) h += x;
  return h.get_num();
}

namespace {

Mat cartan_matrix(char family, std::size_t n) {
  auto from = [](std::vector<std::vector<long long>> rows) {
    Mat m;
    for (auto& r : rows) m.push_back(to_vec(r));
    return m;
  };
  switch (family) {
    case 'A': {
      Mat a(n, zeros(n));
      for (std::size_t i = 0; i < n; ++i) {
        a[i][i] = 2;
        if (i + 1 < n) a[i][i + 1] = a[i + 1][i] = -1;
      }
      return a;
    }
    case 'B':
      return from({{2, -1}, {-2, 2}});
    case 'C':
      return from({{2, -2}, {-1, 2}});
    case 'G':
      return from({{2, -3}, {-1, 2}});
  }
  throw ValidationError("unsupported root system type");
}

// Coefficient of alpha_i^vee pairing: <beta, alpha_i^vee> for beta in simple coordinates.
Rational simple_pairing(const Mat& a, std::size_t i, const Vec& beta) {
  Rational s = 0;
  for (std::size_t j = 0; j < beta.size(); ++j) s += a[i][j] * beta[j];
  return s;
}

Vec reflect_simple(const Mat& a, std::size_t i, Vec beta) {
  beta[i] -= simple_pairing(a, i, beta);
  return beta;
}

bool nonnegative(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x >= 0; });
}

}  // namespace

RootSystem::RootSystem(char family, std::size_t rank) : family_(family), rank_(rank) {
  if (family == 'A') {
    if (rank < 1) throw ValidationError("type A needs rank >= 1");
  } else if (family == 'B' || family == 'C' || family == 'G') {
    if (rank != 2) throw ValidationError(std::string("only rank 2 is supported for type ") + family);
  } else {
    throw ValidationError(std::string("unsupported root system type '") + family + "'");
  }
  label_ = std::string(1, family) + std::to_string(rank);
  cartan_ = cartan_matrix(family, rank);

  // Symmetrizer d with d_i A_ij = d_j A_ji; (alpha_i, alpha_j) = d_i A_ij.
  Vec d(rank, Rational(0));
  d[0] = 1;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < rank; ++i)
      for (std::size_t j = 0; j < rank; ++j)
        if (d[i] != 0 && d[j] == 0 && cartan_[i][j] != 0) {
          d[j] = d[i] * cartan_[i][j] / cartan_[j][i];
          changed = true;
        }
  }
  auto norm2 = [&](const Vec& beta) {
    Rational s = 0;
    for (std::size_t i = 0; i < rank; ++i)
      for (std::size_t j = 0; j < rank; ++j) s += beta[i] * beta[j] * d[i] * cartan_[i][j];
    return s;
  };

  std::set<Vec> seen;
  std::vector<Vec> queue;
  for (std::size_t i = 0; i < rank; ++i) {
    Vec e = zeros(rank);
    e[i] = 1;
    seen.insert(e);
    queue.push_back(e);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (std::size_t i = 0; i < rank; ++i) {
      Vec r = reflect_simple(cartan_, i, queue[head]);
      if (nonnegative(r) && !is_zero(r) && seen.insert(r).second) queue.push_back(r);
    }
  }
  for (const auto& beta : queue) {
    PositiveRoot pr;
    pr.simple = beta;
    pr.weight = nok::apply(cartan_, beta);
    Rational n2 = norm2(beta);
    pr.coroot = zeros(rank);
    for (std::size_t j = 0; j < rank; ++j) pr.coroot[j] = beta[j] * 2 * d[j] / n2;
    positive_.push_back(std::move(pr));
  }
  std::sort(positive_.begin(), positive_.end(), [](const PositiveRoot& a, const PositiveRoot& b) {
    if (a.height() != b.height()) return a.height() < b.height();
    return a.simple > b.simple;
  });

  // <lambda, rho^vee> = 1^T A^{-1} lambda.
  Mat at = transpose(cartan_);
  rho_coweight_ = *linalg::solve(at, Vec(rank, Rational(1)), rank);
}

Vec RootSystem::simple_root(std::size_t i) const {
  Vec out(rank_);
  for (std::size_t r = 0; r < rank_; ++r) out[r] = cartan_[r][i];
  return out;
}

Mat RootSystem::simple_roots() const {
  Mat out;
  for (std::size_t i = 0; i < rank_; ++i) out.push_back(simple_root(i));
  return out;
}

RootSystem build_root_system(std::string_view label) {
  if (label.size() < 2 || !std::isupper(static_cast<unsigned char>(label[0])))
    throw ValidationError("malformed root system label '" + std::string(label) + "'");
  std::size_t rank = 0;
  for (char ch : label.substr(1)) {
    if (!std::isdigit(static_cast<unsigned char>(ch)) || rank > 1000)
      throw ValidationError("malformed root system label '" + std::string(label) + "'");
    rank = rank * 10 + static_cast<std::size_t>(ch - '0');
  }
  return RootSystem(label[0], rank);
}

Rational pairing(const RootSystem& rs, const Vec& lambda, const PositiveRoot& alpha) {
  if (lambda.size() != rs.rank()) throw ValidationError("weight length does not match rank");
  return dot(lambda, alpha.coroot);
}

bool is_dominant(const Vec& lambda) { return nonnegative(lambda); }
bool is_integral_weight(const Vec& lambda) { return is_integral(lambda); }

Integer weyl_dim(const RootSystem& rs, const Vec& lambda) {
  if (lambda.size() != rs.rank()) throw ValidationError("weight length does not match rank");
  if (!is_dominant(lambda) || !is_integral(lambda))
    throw ValidationError("weyl_dim needs a dominant integral weight");
  Vec shifted = lambda + rs.rho();
  Rational num = 1, den = 1;
  for (const auto& a : rs.positive_roots()) {
    num *= pairing(rs, shifted, a);
    den *= pairing(rs, rs.rho(), a);
  }
  Rational q = num / den;
  if (q.get_den() != 1) throw IntegrityError("Weyl dimension formula gave a non-integer");
  return q.get_num();
}

Vec reflect(const RootSystem& rs, std::size_t i, const Vec& xi) {
  if (i >= rs.rank()) throw ValidationError("simple reflection index out of range");
  Vec out = xi;
  Rational p = xi[i];
  for (std::size_t r = 0; r < rs.rank(); ++r) out[r] -= p * rs.cartan()[r][i];
  return out;
}

std::vector<std::vector<int>> reduced_words(const RootSystem& rs) {
  const std::size_t m = rs.num_positive();
  if (rs.rank() > 2) {
    std::vector<int> word;
    for (int k = 1; k <= static_cast<int>(rs.rank()); ++k)
      for (int j = k; j >= 1; --j) word.push_back(j);
    return {word};
  }
  std::vector<std::vector<int>> out;
  std::vector<int> word;
  // Grow w on the left: s_i w is longer iff <w rho, alpha_i^vee> > 0.
  std::function<void(const Vec&)> rec = [&](const Vec& mu) {
    if (word.size() == m) {
      out.emplace_back(word.rbegin(), word.rend());
      return;
    }
    for (std::size_t i = 0; i < rs.rank(); ++i) {
      if (mu[i] <= 0) continue;
      word.push_back(static_cast<int>(i) + 1);
      rec(reflect(rs, i, mu));
      word.pop_back();
    }
  };
  rec(rs.rho());
  std::sort(out.begin(), out.end());
  return out;
}

bool validate_word(const RootSystem& rs, const std::vector<int>& letters) {
  if (letters.size() != rs.num_positive()) return false;
  Vec mu = rs.rho();
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
    if (*it < 1 || *it > static_cast<int>(rs.rank())) return false;
    std::size_t i = static_cast<std::size_t>(*it - 1);
    if (mu[i] <= 0) return false;
    mu = reflect(rs, i, mu);
  }
  return true;
}

void require_word(const RootSystem& rs, const std::vector<int>& letters) {
  if (!validate_word(rs, letters)) {
    std::string w;
    for (int l : letters) w += (w.empty() ? "" : ",") + std::to_string(l);
    throw ValidationError("(" + w + ") is not a reduced word for the longest element of " +
                          rs.label());
  }
}

std::size_t inversion_count(const RootSystem& rs, const std::vector<int>& letters) {
  std::size_t count = 0;
  for (const auto& a : rs.positive_roots()) {
    Vec beta = a.simple;
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
      if (*it < 1 || *it > static_cast<int>(rs.rank()))
        throw ValidationError("letter out of range");
      beta = reflect_simple(rs.cartan(), static_cast<std::size_t>(*it - 1), beta);
    }
    if (!nonnegative(beta)) ++count;
  }
  return count;
}

Vec dominant_representative(const RootSystem& rs, const Vec& xi) {
  if (xi.size() != rs.rank()) throw ValidationError("weight length does not match rank");
  Vec out = xi;
  while (true) {
    auto it = std::find_if(out.begin(), out.end(), [](const Rational& x) { return x < 0; });
    if (it == out.end()) return out;
    out = reflect(rs, static_cast<std::size_t>(it - out.begin()), out);
  }
}

std::vector<int> face_of(const RootSystem& rs, const Vec& lambda) {
  if (lambda.size() != rs.rank()) throw ValidationError("weight length does not match rank");
  if (!is_dominant(lambda)) throw ValidationError("face_of needs a dominant weight");
  std::vector<int> out;
  for (std::size_t i = 0; i < lambda.size(); ++i)
    if (lambda[i] == 0) out.push_back(static_cast<int>(i) + 1);
  return out;
}

}  // namespace nok
