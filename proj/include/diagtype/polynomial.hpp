#pragma once

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace diagtype::linalg {

/// Raised by divide_exact when the remainder is nonzero.
class InexactDivision : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Polynomial in t with arbitrary-precision integer coefficients; index is
/// the degree, trailing zeros are trimmed, the zero polynomial is empty.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<long> coeffs);
  explicit Polynomial(std::vector<mpz_class> coeffs);
  static Polynomial from_longs(const std::vector<long>& coeffs);
  static Polynomial monomial(long coeff, int degree);
  /// (t + c)^k
  static Polynomial linear_power(long c, int k);

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  mpz_class coeff(int i) const;
  const std::vector<mpz_class>& coeffs() const { return c_; }
  std::vector<long> to_longs() const;

  mpz_class evaluate(const mpz_class& t) const;
  /// Coefficient list reads the same backwards (for the zero polynomial: true).
  bool is_palindromic() const;
  bool has_nonnegative_coeffs() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const mpz_class& s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator*(Polynomial a, const mpz_class& s) { return a *= s; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  /// Human form such as "1 + 4t + t^2".
  std::string to_string() const;

 private:
  void trim();
  std::vector<mpz_class> c_;
};

/// Quotient p / q; throws InexactDivision when q does not divide p and
/// std::invalid_argument when q is zero.
Polynomial divide_exact(const Polynomial& p, const Polynomial& q);

/// First r+1 coefficients of p(t) * (1-t)^k.
std::vector<mpz_class> series_expand_product(const Polynomial& p, int k, int r);
/// First r+1 coefficients of the power series p(t) / (1-t)^k.
std::vector<mpz_class> series_divide(const Polynomial& p, int k, int r);

}  // namespace diagtype::linalg
