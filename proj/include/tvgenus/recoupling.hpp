#pragma once

// Temperley-Lieb recoupling data at q = exp(i*pi/r): quantum integers,
// signed quantum dimensions, theta nets and tetrahedral nets, in exact
// cyclotomic arithmetic or in double precision.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "tvgenus/cyclotomic.hpp"

namespace tvgenus {

/// Sign convention for quantum dimensions. kauffman_lins gives
/// Delta_i = (-1)^i [i+1], the convention the square-root-free state sum
/// relies on. unsigned_dimension drops the sign (theta and Tet keep
/// theirs); identities and anchors fail under it.
enum class SignConvention { kauffman_lins, unsigned_dimension };

/// Exact arithmetic policy: values in Q(zeta_{2r}).
class ExactArithmetic {
 public:
  using value_type = CycNumber;
  static constexpr bool is_exact = true;

  explicit ExactArithmetic(Level level) : level_(level), field_(cyclotomic_field(level.r())) {}

  const Level& level() const { return level_; }
  value_type zero() const { return CycNumber(field_); }
  value_type one() const { return from_integer(1); }
  value_type from_integer(long v) const { return CycNumber(field_, mpq_class(v)); }

  /// [n] = zeta^{n-1} + zeta^{n-3} + ... + zeta^{-(n-1)}
  value_type quantum_integer(int n) const {
    CycNumber out(field_);
    for (int k = 0; k < n; ++k) out += CycNumber::zeta_power(field_, n - 1 - 2 * k);
    return out;
  }

  value_type inverse(const value_type& v) const { return v.inverse(); }
  bool is_zero(const value_type& v) const { return v.is_zero(); }
  double to_double(const value_type& v) const { return v.to_double(); }

 private:
  Level level_;
  std::shared_ptr<const CyclotomicField> field_;
};

/// Double-precision policy evaluated at zeta = exp(i*pi/r).
class FloatArithmetic {
 public:
  using value_type = double;
  static constexpr bool is_exact = false;

  explicit FloatArithmetic(Level level) : level_(level) {}

  const Level& level() const { return level_; }
  value_type zero() const { return 0.0; }
  value_type one() const { return 1.0; }
  value_type from_integer(long v) const { return static_cast<double>(v); }

  /// (zeta^n - zeta^{-n}) / (zeta - zeta^{-1}), real part.
  value_type quantum_integer(int n) const {
    if (n % level_.r() == 0) return 0.0;
    const std::complex<double> z = std::polar(1.0, std::numbers::pi / level_.r());
    const std::complex<double> zn = std::polar(1.0, std::numbers::pi * n / level_.r());
    const auto v = (zn - std::conj(zn)) / (z - std::conj(z));
    return v.real();
  }

  value_type inverse(const value_type& v) const {
    if (v == 0.0) throw std::domain_error("attempt to invert zero");
    return 1.0 / v;
  }
  bool is_zero(const value_type& v) const { return v == 0.0; }
  double to_double(const value_type& v) const { return v; }

 private:
  Level level_;
};

/// True iff (i, j, k) can colour the edges of a triangle at level r.
inline bool admissible(int i, int j, int k, const Level& level) {
  if (!level.contains(i) || !level.contains(j) || !level.contains(k)) return false;
  if ((i + j + k) % 2 != 0) return false;
  if (k < std::abs(i - j) || k > i + j) return false;
  return i + j + k <= 2 * level.r() - 4;
}

/// Recoupling symbols for one level and arithmetic. Quantum factorials
/// are cached; theta and Tet are computed on demand (see SymbolTable for
/// the memoized form).
template <class Arith>
class Recoupling {
 public:
  using value_type = typename Arith::value_type;

  explicit Recoupling(Level level, SignConvention convention = SignConvention::kauffman_lins)
      : arith_(level), convention_(convention) {
    const int r = level.r();
    qint_.reserve(static_cast<std::size_t>(r) + 1);
    for (int n = 0; n <= r; ++n) qint_.push_back(arith_.quantum_integer(n));
    // [n]! for n up to 2r keeps the Tet sums in range; [n]! = 0 for n >= r.
    qfact_.reserve(static_cast<std::size_t>(2 * r) + 1);
    qfact_.push_back(arith_.one());
    for (int n = 1; n <= 2 * r; ++n) qfact_.push_back(n <= r ? qfact_.back() * qint_[static_cast<std::size_t>(n)] : arith_.zero());
  }

  const Arith& arithmetic() const { return arith_; }
  const Level& level() const { return arith_.level(); }
  SignConvention convention() const { return convention_; }

  value_type quantum_integer(int n) const {
    if (n < 0) throw std::invalid_argument("quantum integer of negative argument");
    if (n <= level().r()) return qint_[static_cast<std::size_t>(n)];
    return arith_.quantum_integer(n);
  }

  value_type quantum_factorial(int n) const {
    if (n < 0) throw std::invalid_argument("quantum factorial of negative argument");
    if (n >= static_cast<int>(qfact_.size())) return arith_.zero();
    return qfact_[static_cast<std::size_t>(n)];
  }

  /// Delta_i = (-1)^i [i+1] under the Kauffman-Lins convention.
  value_type qdim(int color) const {
    check_color(color);
    value_type v = qint_[static_cast<std::size_t>(color + 1)];
    if (convention_ == SignConvention::kauffman_lins && color % 2 == 1) v = -v;
    return v;
  }

  /// Sum over colours of Delta_i^2.
  value_type global_dim() const {
    value_type sum = arith_.zero();
    for (int i = 0; i <= level().max_color(); ++i) {
      const value_type d = qdim(i);
      sum += d * d;
    }
    return sum;
  }

  bool admissible(int a, int b, int c) const { return tvgenus::admissible(a, b, c, level()); }

  value_type theta(int a, int b, int c) const {
    if (!admissible(a, b, c))
      throw std::invalid_argument("theta of inadmissible triple (" + std::to_string(a) + "," + std::to_string(b) + "," +
                                  std::to_string(c) + ")");
    const int m = (a + b - c) / 2;
    const int n = (b + c - a) / 2;
    const int p = (a + c - b) / 2;
    value_type num = fact(m + n + p + 1) * fact(m) * fact(n) * fact(p);
    const value_type den = fact(m + n) * fact(n + p) * fact(m + p);
    value_type out = num * arith_.inverse(den);
    if ((m + n + p) % 2 == 1) out = -out;
    return out;
  }

  /// Tetrahedral net with faces (A,B,E), (C,D,E), (A,D,F), (B,C,F); the
  /// opposite edge pairs are (A,C), (B,D), (E,F).
  value_type tet(int A, int B, int C, int D, int E, int F) const {
    if (!admissible(A, B, E) || !admissible(C, D, E) || !admissible(A, D, F) || !admissible(B, C, F))
      throw std::invalid_argument("tetrahedral symbol with an inadmissible face");
    const std::array<int, 4> a{(A + B + E) / 2, (C + D + E) / 2, (A + D + F) / 2, (B + C + F) / 2};
    const std::array<int, 3> b{(B + D + E + F) / 2, (A + C + E + F) / 2, (A + B + C + D) / 2};
    value_type prefactor = arith_.one();
    for (int ai : a)
      for (int bj : b) prefactor *= fact(bj - ai);
    const value_type denom = fact(A) * fact(B) * fact(C) * fact(D) * fact(E) * fact(F);
    prefactor *= arith_.inverse(denom);

    const int lo = *std::max_element(a.begin(), a.end());
    const int hi = *std::min_element(b.begin(), b.end());
    value_type sum = arith_.zero();
    for (int s = lo; s <= hi; ++s) {
      value_type term = fact(s + 1);
      value_type below = arith_.one();
      for (int ai : a) below *= fact(s - ai);
      for (int bj : b) below *= fact(bj - s);
      // [s+1]! vanishes once s+1 >= r
      if (arith_.is_zero(term)) continue;
      term *= arith_.inverse(below);
      if (s % 2 == 1) term = -term;
      sum += term;
    }
    return prefactor * sum;
  }

 private:
  value_type fact(int n) const { return quantum_factorial(n); }

  void check_color(int color) const {
    if (!level().contains(color))
      throw std::out_of_range("colour " + std::to_string(color) + " outside 0.." + std::to_string(level().max_color()));
  }

  Arith arith_;
  SignConvention convention_;
  std::vector<value_type> qint_;
  std::vector<value_type> qfact_;
};

/// Memoized Delta, theta^{-1} and Tet over every admissible tuple of a level.
template <class Arith>
class SymbolTable {
 public:
  using value_type = typename Arith::value_type;

  explicit SymbolTable(Level level, SignConvention convention = SignConvention::kauffman_lins)
      : recoupling_(level, convention), n_(level.color_count()) {
    const auto n = static_cast<std::size_t>(n_);
    for (int i = 0; i < n_; ++i) qdim_.push_back(recoupling_.qdim(i));
    admissible_.assign(n * n * n, 0);
    theta_inverse_.assign(n * n * n, recoupling_.arithmetic().zero());
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b)
        for (int c = 0; c < n_; ++c) {
          if (!recoupling_.admissible(a, b, c)) continue;
          const auto idx = triple_index(a, b, c);
          admissible_[idx] = 1;
          theta_inverse_[idx] = recoupling_.arithmetic().inverse(recoupling_.theta(a, b, c));
        }
    tet_index_.assign(n * n * n * n * n * n, -1);
    for (int A = 0; A < n_; ++A)
      for (int B = 0; B < n_; ++B)
        for (int E = 0; E < n_; ++E) {
          if (!is_admissible(A, B, E)) continue;
          for (int C = 0; C < n_; ++C)
            for (int D = 0; D < n_; ++D) {
              if (!is_admissible(C, D, E)) continue;
              for (int F = 0; F < n_; ++F) {
                if (!is_admissible(A, D, F) || !is_admissible(B, C, F)) continue;
                tet_index_[six_index(A, B, C, D, E, F)] = static_cast<std::int32_t>(tet_values_.size());
                tet_values_.push_back(recoupling_.tet(A, B, C, D, E, F));
              }
            }
        }
    global_dim_ = recoupling_.global_dim();
  }

  const Recoupling<Arith>& recoupling() const { return recoupling_; }
  const Level& level() const { return recoupling_.level(); }
  int color_count() const { return n_; }

  bool is_admissible(int a, int b, int c) const { return admissible_[triple_index(a, b, c)] != 0; }
  const value_type& qdim(int i) const { return qdim_[static_cast<std::size_t>(i)]; }
  const value_type& theta_inverse(int a, int b, int c) const { return theta_inverse_[triple_index(a, b, c)]; }
  const value_type& global_dim() const { return global_dim_; }

  /// Requires all four faces admissible.
  const value_type& tet(int A, int B, int C, int D, int E, int F) const {
    const auto slot = tet_index_[six_index(A, B, C, D, E, F)];
    if (slot < 0) throw std::invalid_argument("tetrahedral symbol lookup with an inadmissible face");
    return tet_values_[static_cast<std::size_t>(slot)];
  }

  std::size_t tet_entry_count() const { return tet_values_.size(); }

 private:
  std::size_t triple_index(int a, int b, int c) const {
    return (static_cast<std::size_t>(a) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(b)) *
               static_cast<std::size_t>(n_) +
           static_cast<std::size_t>(c);
  }
  std::size_t six_index(int A, int B, int C, int D, int E, int F) const {
    std::size_t idx = 0;
    for (int v : {A, B, C, D, E, F}) idx = idx * static_cast<std::size_t>(n_) + static_cast<std::size_t>(v);
    return idx;
  }

  Recoupling<Arith> recoupling_;
  int n_;
  std::vector<value_type> qdim_;
  std::vector<char> admissible_;
  std::vector<value_type> theta_inverse_;
  std::vector<std::int32_t> tet_index_;
  std::vector<value_type> tet_values_;
  value_type global_dim_;
};

// Convenience wrappers returning exact values.

inline CycNumber quantum_integer(int n, const Level& level) { return ExactArithmetic(level).quantum_integer(n); }

inline CycNumber quantum_factorial(int n, const Level& level) {
  if (n < 0) throw std::invalid_argument("quantum factorial of negative argument");
  const ExactArithmetic arith(level);
  CycNumber out = arith.one();
  for (int k = 1; k <= n; ++k) out *= arith.quantum_integer(k);
  return out;
}

inline CycNumber qdim(int color, const Level& level) { return Recoupling<ExactArithmetic>(level).qdim(color); }
inline CycNumber global_dim(const Level& level) { return Recoupling<ExactArithmetic>(level).global_dim(); }
inline CycNumber theta(int a, int b, int c, const Level& level) { return Recoupling<ExactArithmetic>(level).theta(a, b, c); }
inline CycNumber tet_symbol(int A, int B, int C, int D, int E, int F, const Level& level) {
  return Recoupling<ExactArithmetic>(level).tet(A, B, C, D, E, F);
}

}  // namespace tvgenus
