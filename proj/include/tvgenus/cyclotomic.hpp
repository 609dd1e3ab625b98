#pragma once

// Exact arithmetic in Q(zeta), zeta = exp(i*pi/r), with elements stored as
// rational polynomials of degree < phi(2r) reduced modulo the cyclotomic
// polynomial Phi_{2r}.

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace tvgenus {

/// Level r >= 3 of the root of unity q = exp(i*pi/r). Colours are the
/// twice-spins 0..r-2.
class Level {
 public:
  explicit Level(int r) : r_(r) {
    if (r < 3) throw std::invalid_argument("level r must be >= 3, got " + std::to_string(r));
  }
  int r() const { return r_; }
  int color_count() const { return r_ - 1; }
  int max_color() const { return r_ - 2; }
  bool contains(int color) const { return color >= 0 && color <= r_ - 2; }
  bool operator==(const Level&) const = default;

 private:
  int r_;
};

namespace detail {

// Integer polynomial helpers, coefficients low degree first.
using IntPoly = std::vector<long long>;

inline IntPoly exact_divide(IntPoly num, const IntPoly& den) {
  const std::size_t dn = den.size() - 1;
  if (num.size() < den.size()) return {0};
  IntPoly quot(num.size() - dn, 0);
  for (std::size_t k = num.size(); k-- > dn;) {
    const long long lead = num[k];
    if (lead == 0) continue;
    // cyclotomic polynomials are monic
    const long long c = lead / den[dn];
    quot[k - dn] = c;
    for (std::size_t j = 0; j <= dn; ++j) num[k - dn + j] -= c * den[j];
  }
  return quot;
}

inline IntPoly cyclotomic_polynomial(int n) {
  // x^n - 1 = prod_{d | n} Phi_d(x)
  IntPoly p(static_cast<std::size_t>(n) + 1, 0);
  p[0] = -1;
  p[static_cast<std::size_t>(n)] = 1;
  for (int d = 1; d < n; ++d)
    if (n % d == 0) p = exact_divide(p, cyclotomic_polynomial(d));
  return p;
}

}  // namespace detail

/// The field Q(zeta_{2r}) and its reduction data. Shared, immutable.
class CyclotomicField {
 public:
  explicit CyclotomicField(int r) : r_(r) {
    if (r < 2) throw std::invalid_argument("cyclotomic level must be >= 2");
    const auto phi = detail::cyclotomic_polynomial(2 * r);
    degree_ = static_cast<int>(phi.size()) - 1;
    // zeta^k for k = 0 .. 2r-1, each reduced to length degree_.
    powers_.assign(static_cast<std::size_t>(2 * r), std::vector<long>(static_cast<std::size_t>(degree_), 0));
    std::vector<long> cur(static_cast<std::size_t>(degree_), 0);
    cur[0] = 1;
    for (int k = 0; k < 2 * r; ++k) {
      powers_[static_cast<std::size_t>(k)] = cur;
      // multiply by x, reduce x^degree = -sum phi_j x^j
      const long top = cur[static_cast<std::size_t>(degree_ - 1)];
      for (int j = degree_ - 1; j > 0; --j) cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)];
      cur[0] = 0;
      for (int j = 0; j < degree_; ++j) cur[static_cast<std::size_t>(j)] -= top * phi[static_cast<std::size_t>(j)];
    }
  }

  int r() const { return r_; }
  int degree() const { return degree_; }

  /// Reduced coefficients of zeta^k for any integer k.
  const std::vector<long>& power(long long k) const {
    const long long m = 2LL * r_;
    return powers_[static_cast<std::size_t>(((k % m) + m) % m)];
  }

  std::complex<double> zeta() const { return std::polar(1.0, std::numbers::pi / r_); }

 private:
  int r_;
  int degree_ = 0;
  std::vector<std::vector<long>> powers_;
};

/// Shared field instance for level r (cached, thread-safe).
inline std::shared_ptr<const CyclotomicField> cyclotomic_field(int r) {
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const CyclotomicField>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[r];
  if (!slot) slot = std::make_shared<const CyclotomicField>(r);
  return slot;
}

/// Exact element of Q(zeta), zeta = exp(i*pi/r).
class CycNumber {
 public:
  CycNumber() = default;

  explicit CycNumber(std::shared_ptr<const CyclotomicField> field)
      : field_(std::move(field)), coeffs_(static_cast<std::size_t>(field_->degree())) {}

  CycNumber(std::shared_ptr<const CyclotomicField> field, const mpq_class& value) : CycNumber(std::move(field)) {
    coeffs_[0] = value;
    coeffs_[0].canonicalize();
  }

  static CycNumber zeta_power(std::shared_ptr<const CyclotomicField> field, long long k) {
    CycNumber out(field);
    const auto& p = field->power(k);
    for (std::size_t j = 0; j < p.size(); ++j) out.coeffs_[j] = p[j];
    return out;
  }

  const CyclotomicField& field() const { return *field_; }
  const std::shared_ptr<const CyclotomicField>& field_ptr() const { return field_; }
  int level() const { return field_->r(); }
  const std::vector<mpq_class>& coefficients() const { return coeffs_; }
  bool valid() const { return static_cast<bool>(field_); }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (c != 0) return false;
    return true;
  }

  CycNumber& operator+=(const CycNumber& o) {
    check_same(o);
    for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] += o.coeffs_[j];
    return *this;
  }
  CycNumber& operator-=(const CycNumber& o) {
    check_same(o);
    for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] -= o.coeffs_[j];
    return *this;
  }
  CycNumber& operator*=(const CycNumber& o) {
    *this = *this * o;
    return *this;
  }
  CycNumber& operator*=(mpq_class s) {
    s.canonicalize();
    for (auto& c : coeffs_) c *= s;
    return *this;
  }

  friend CycNumber operator+(CycNumber a, const CycNumber& b) { return a += b; }
  friend CycNumber operator-(CycNumber a, const CycNumber& b) { return a -= b; }
  friend CycNumber operator-(CycNumber a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }
  friend CycNumber operator*(CycNumber a, const mpq_class& s) { return a *= s; }
  friend std::ostream& operator<<(std::ostream& os, const CycNumber& x) { return os << x.to_string(); }

  friend CycNumber operator*(const CycNumber& a, const CycNumber& b) {
    a.check_same(b);
    const int d = a.field_->degree();
    std::vector<mpq_class> raw(static_cast<std::size_t>(2 * d - 1));
    mpq_class tmp;
    for (int i = 0; i < d; ++i) {
      const auto& ai = a.coeffs_[static_cast<std::size_t>(i)];
      if (ai == 0) continue;
      for (int j = 0; j < d; ++j) {
        const auto& bj = b.coeffs_[static_cast<std::size_t>(j)];
        if (bj == 0) continue;
        mpq_mul(tmp.get_mpq_t(), ai.get_mpq_t(), bj.get_mpq_t());
        raw[static_cast<std::size_t>(i + j)] += tmp;
      }
    }
    CycNumber out(a.field_);
    for (int k = 0; k < d; ++k) out.coeffs_[static_cast<std::size_t>(k)] = raw[static_cast<std::size_t>(k)];
    for (int k = d; k < 2 * d - 1; ++k) {
      const auto& rk = raw[static_cast<std::size_t>(k)];
      if (rk == 0) continue;
      const auto& p = a.field_->power(k);
      for (int j = 0; j < d; ++j)
        if (p[static_cast<std::size_t>(j)] != 0) out.coeffs_[static_cast<std::size_t>(j)] += rk * p[static_cast<std::size_t>(j)];
    }
    return out;
  }

  /// Multiplicative inverse. Throws std::domain_error on zero.
  CycNumber inverse() const {
    if (is_zero()) throw std::domain_error("attempt to invert zero in Q(zeta_" + std::to_string(2 * level()) + ")");
    // Solve M x = e_0 where column j of M is this * zeta^j.
    const int d = field_->degree();
    const auto n = static_cast<std::size_t>(d);
    std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(n + 1));
    for (int j = 0; j < d; ++j) {
      const CycNumber col = *this * zeta_power(field_, j);
      for (std::size_t i = 0; i < n; ++i) m[i][static_cast<std::size_t>(j)] = col.coeffs_[i];
    }
    m[0][n] = 1;
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t piv = c;
      while (piv < n && m[piv][c] == 0) ++piv;
      if (piv == n) throw std::domain_error("singular multiplication matrix in cyclotomic inverse");
      std::swap(m[piv], m[c]);
      const mpq_class inv = 1 / m[c][c];
      for (std::size_t k = c; k <= n; ++k) m[c][k] *= inv;
      for (std::size_t i = 0; i < n; ++i) {
        if (i == c || m[i][c] == 0) continue;
        const mpq_class f = m[i][c];
        for (std::size_t k = c; k <= n; ++k) m[i][k] -= f * m[c][k];
      }
    }
    CycNumber out(field_);
    for (std::size_t i = 0; i < n; ++i) out.coeffs_[i] = m[i][n];
    return out;
  }

  friend CycNumber operator/(const CycNumber& a, const CycNumber& b) { return a * b.inverse(); }

  /// Complex conjugate: zeta -> zeta^{-1}.
  CycNumber conjugate() const {
    CycNumber out(field_);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      if (coeffs_[k] == 0) continue;
      const auto& p = field_->power(-static_cast<long long>(k));
      for (std::size_t j = 0; j < p.size(); ++j)
        if (p[j] != 0) out.coeffs_[j] += coeffs_[k] * p[j];
    }
    return out;
  }

  /// True iff the value is fixed by complex conjugation (imaginary part exactly 0).
  bool is_real() const { return conjugate() == *this; }

  std::complex<double> to_complex() const {
    const auto z = field_->zeta();
    std::complex<double> acc = 0, zk = 1;
    for (const auto& c : coeffs_) {
      acc += c.get_d() * zk;
      zk *= z;
    }
    return acc;
  }

  double to_double() const { return to_complex().real(); }

  friend bool operator==(const CycNumber& a, const CycNumber& b) {
    if (a.field_ != b.field_ && (!a.field_ || !b.field_ || a.field_->r() != b.field_->r())) return false;
    return a.coeffs_ == b.coeffs_;
  }

  /// Reduced polynomial in z = exp(i*pi/r), e.g. "-1 + 2*z^2 - 1/3*z^3".
  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      const auto& c = coeffs_[k];
      if (c == 0) continue;
      mpq_class mag = abs(c);
      if (first) {
        if (c < 0) os << '-';
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      first = false;
      const bool unit = (mag == 1);
      if (k == 0) {
        os << mag.get_str();
      } else {
        if (!unit) os << mag.get_str() << '*';
        os << 'z';
        if (k > 1) os << '^' << k;
      }
    }
    if (first) os << '0';
    return os.str();
  }

 private:
  void check_same(const CycNumber& o) const {
    if (!field_ || !o.field_ || field_->r() != o.field_->r())
      throw std::invalid_argument("cyclotomic operands from different fields");
  }

  std::shared_ptr<const CyclotomicField> field_;
  std::vector<mpq_class> coeffs_;
};

}  // namespace tvgenus
