#include "diagtype/polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace diagtype::linalg {

Polynomial::Polynomial(std::initializer_list<long> coeffs) {
  for (long v : coeffs) c_.emplace_back(v);
  trim();
}

Polynomial::Polynomial(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::from_longs(const std::vector<long>& coeffs) {
  std::vector<mpz_class> c(coeffs.begin(), coeffs.end());
  return Polynomial(std::move(c));
}

Polynomial Polynomial::monomial(long coeff, int degree) {
  std::vector<mpz_class> c(static_cast<std::size_t>(degree + 1), 0);
  c.back() = coeff;
  return Polynomial(std::move(c));
}

Polynomial Polynomial::linear_power(long c, int k) {
  Polynomial out{1};
  const Polynomial lin{c, 1};
  for (int i = 0; i < k; ++i) out *= lin;
  return out;
}

void Polynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

mpz_class Polynomial::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
  return c_[static_cast<std::size_t>(i)];
}

std::vector<long> Polynomial::to_longs() const {
  std::vector<long> out;
  for (const auto& v : c_) {
    if (!v.fits_slong_p()) throw std::overflow_error("polynomial coefficient exceeds long");
    out.push_back(v.get_si());
  }
  return out;
}

mpz_class Polynomial::evaluate(const mpz_class& t) const {
  mpz_class acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

bool Polynomial::is_palindromic() const { return std::equal(c_.begin(), c_.end(), c_.rbegin()); }

bool Polynomial::has_nonnegative_coeffs() const {
  return std::all_of(c_.begin(), c_.end(), [](const mpz_class& v) { return v >= 0; });
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  if (c_.empty() || o.c_.empty()) {
    c_.clear();
    return *this;
  }
  std::vector<mpz_class> r(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  c_ = std::move(r);
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const mpz_class& s) {
  for (auto& v : c_) v *= s;
  trim();
  return *this;
}

std::string Polynomial::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    const mpz_class& v = c_[i];
    if (v == 0) continue;
    mpz_class mag = abs(v);
    if (first) {
      if (v < 0) out << '-';
    } else {
      out << (v < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0 || mag != 1) out << mag.get_str();
    if (i >= 1) out << 't';
    if (i >= 2) out << '^' << i;
  }
  return out.str();
}

Polynomial divide_exact(const Polynomial& p, const Polynomial& q) {
  if (q.is_zero()) throw std::invalid_argument("division by the zero polynomial");
  if (p.is_zero()) return {};
  if (p.degree() < q.degree()) throw InexactDivision("divisor degree exceeds dividend degree");
  std::vector<mpz_class> rem = p.coeffs();
  const auto& d = q.coeffs();
  const mpz_class& lead = d.back();
  const std::size_t dq = d.size() - 1;
  std::vector<mpz_class> quot(rem.size() - dq, 0);
  for (std::size_t k = quot.size(); k-- > 0;) {
    const mpz_class& top = rem[k + dq];
    if (top % lead != 0) throw InexactDivision("non-integral quotient coefficient");
    quot[k] = top / lead;
    for (std::size_t j = 0; j <= dq; ++j) rem[k + j] -= quot[k] * d[j];
  }
  if (std::any_of(rem.begin(), rem.end(), [](const mpz_class& v) { return v != 0; })) {
    throw InexactDivision("nonzero remainder");
  }
  return Polynomial(std::move(quot));
}

std::vector<mpz_class> series_expand_product(const Polynomial& p, int k, int r) {
  if (r < 0) return {};
  std::vector<mpz_class> s(static_cast<std::size_t>(r + 1), 0);
  for (int i = 0; i <= r; ++i) s[static_cast<std::size_t>(i)] = p.coeff(i);
  // Multiply by (1-t) k times; each pass is a backward difference.
  for (int pass = 0; pass < k; ++pass) {
    for (int i = r; i >= 1; --i) s[static_cast<std::size_t>(i)] -= s[static_cast<std::size_t>(i - 1)];
  }
  return s;
}

std::vector<mpz_class> series_divide(const Polynomial& p, int k, int r) {
  if (r < 0) return {};
  std::vector<mpz_class> s(static_cast<std::size_t>(r + 1), 0);
  for (int i = 0; i <= r; ++i) s[static_cast<std::size_t>(i)] = p.coeff(i);
  // 1/(1-t) is a running sum.
  for (int pass = 0; pass < k; ++pass) {
    for (int i = 1; i <= r; ++i) s[static_cast<std::size_t>(i)] += s[static_cast<std::size_t>(i - 1)];
  }
  return s;
}

}  // namespace diagtype::linalg
