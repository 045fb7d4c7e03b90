#include "nok/rational.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

namespace nok {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s.empty()) throw ValidationError("empty rational literal");
  if (s.front() == '+') s.erase(s.begin());
  auto valid = [](const std::string& part) {
    if (part.empty()) return false;
    std::size_t i = (part[0] == '-') ? 1 : 0;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid(num) || !valid(den) || den[0] == '-')
    throw ValidationError("malformed rational literal '" + std::string(text) + "'");
  Integer d(den);
  if (d == 0) throw ValidationError("zero denominator in '" + std::string(text) + "'");
  Rational q{Integer(num), d};
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const Integer& z) { return z.get_str(); }

Rational dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw ValidationError("dot product of vectors with different lengths");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
  return s;
}

Vec operator+(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vec operator-(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vec operator*(const Rational& s, const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

Vec zeros(std::size_t n) { return Vec(n, Rational(0)); }

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

bool is_integral(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.get_den() == 1; });
}

Integer denominator_lcm(const Vec& v) {
  Integer l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  return l;
}

Vec primitive(const Vec& v) {
  if (is_zero(v)) return v;
  Integer l = denominator_lcm(v);
  Integer g = 0;
  std::vector<Integer> ints(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rational scaled = v[i] * l;
    ints[i] = scaled.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints[i].get_mpz_t());
  }
  Vec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rational(ints[i] / g);
  return r;
}

Mat transpose(const Mat& m) {
  if (m.empty()) return {};
  Mat t(m[0].size(), Vec(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

Vec apply(const Mat& m, const Vec& v) {
  Vec r(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) r[i] = dot(m[i], v);
  return r;
}

Mat identity(std::size_t n) {
  Mat m(n, zeros(n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Vec to_vec(const std::vector<long long>& xs) {
  Vec v;
  v.reserve(xs.size());
  for (long long x : xs) v.emplace_back(static_cast<long>(x));
  return v;
}

std::vector<long long> to_int64(const Vec& v) {
  std::vector<long long> out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (x.get_den() != 1) throw ValidationError("expected an integral vector");
    if (!x.get_num().fits_slong_p()) throw ValidationError("integer coordinate out of range");
    out.push_back(x.get_num().get_si());
  }
  return out;
}

}  // namespace nok
