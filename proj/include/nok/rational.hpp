#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nok {

using Integer = mpz_class;
using Rational = mpq_class;

/// Dense rational vector / row-major rational matrix.
using Vec = std::vector<Rational>;
using Mat = std::vector<Vec>;

/// Base for every error the workbench raises. `kind()` is the machine-readable
/// tag used in CLI error objects.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

/// Bad input: violated precondition, malformed data, unsupported type.
class ValidationError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "validation"; }
};

/// Numerical breakdown in the flow integrator or extrapolation.
class NumericalError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "numerical"; }
};

/// Internal consistency violated by supplied data (e.g. a corrupted family).
class IntegrityError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "integrity"; }
};

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

Rational dot(const Vec& a, const Vec& b);
Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator*(const Rational& s, const Vec& a);
Vec zeros(std::size_t n);
bool is_zero(const Vec& v);
bool is_integral(const Vec& v);

/// Scales v to the unique primitive integer vector on the same ray
/// (positive multiple). The zero vector is returned unchanged.
Vec primitive(const Vec& v);

/// Least common multiple of the denominators of v.
Integer denominator_lcm(const Vec& v);

Mat transpose(const Mat& m);
Vec apply(const Mat& m, const Vec& v);
Mat identity(std::size_t n);

Vec to_vec(const std::vector<long long>& xs);
std::vector<long long> to_int64(const Vec& v);

}  // namespace nok
