#pragma once

// First homology of a closed triangulation via Smith normal form over Z.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tvgenus/triangulation.hpp"

namespace tvgenus {

/// Dense integer matrix with arbitrary-precision entries.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  mpz_class& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const mpz_class& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  void swap_rows(std::size_t i, std::size_t k) {
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(i, j), (*this)(k, j));
  }
  void swap_cols(std::size_t j, std::size_t k) {
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, j), (*this)(i, k));
  }
  /// row i += f * row k
  void add_row(std::size_t i, std::size_t k, const mpz_class& f) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) += f * (*this)(k, j);
  }
  void add_col(std::size_t j, std::size_t k, const mpz_class& f) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) += f * (*this)(i, k);
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<mpz_class> a_;
};

/// Nonzero diagonal of the Smith normal form, positive and ascending, each
/// dividing the next. Its length is the rank of the matrix.
inline std::vector<mpz_class> smith_normal_form(IntMatrix m) {
  std::vector<mpz_class> diag;
  const std::size_t rows = m.rows(), cols = m.cols();
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // pivot: nonzero entry of least magnitude in the remaining block
    std::size_t pi = rows, pj = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (m(i, j) != 0 && (pi == rows || abs(m(i, j)) < abs(m(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi == rows) break;
    m.swap_rows(t, pi);
    m.swap_cols(t, pj);
    while (true) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m(i, t) == 0) continue;
        const mpz_class q = m(i, t) / m(t, t);  // truncating division
        m.add_row(i, t, -q);
        if (m(i, t) != 0) {
          clean = false;
          if (abs(m(i, t)) < abs(m(t, t))) m.swap_rows(t, i);
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m(t, j) == 0) continue;
        const mpz_class q = m(t, j) / m(t, t);
        m.add_col(j, t, -q);
        if (m(t, j) != 0) {
          clean = false;
          if (abs(m(t, j)) < abs(m(t, t))) m.swap_cols(t, j);
        }
      }
      if (!clean) continue;
      // the pivot must divide the rest of the block
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (m(i, j) % m(t, t) != 0) {
            m.add_row(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    diag.push_back(abs(m(t, t)));
  }
  return diag;
}

/// Finitely generated abelian group Z^betti + Z_{t1} + ... with t1 | t2 | ...
struct H1Summary {
  int betti = 0;
  std::vector<mpz_class> torsion;  ///< invariant factors > 1, ascending

  /// Size of a minimal generating set.
  int min_generators() const { return betti + static_cast<int>(torsion.size()); }

  bool operator==(const H1Summary& o) const { return betti == o.betti && torsion == o.torsion; }

  /// "0", "Z", "3 Z", "2 Z_2 + Z_4", "Z + 2 Z_2".
  std::string to_string() const {
    std::vector<std::string> parts;
    if (betti == 1) parts.emplace_back("Z");
    if (betti > 1) parts.push_back(std::to_string(betti) + " Z");
    for (std::size_t i = 0; i < torsion.size();) {
      std::size_t k = i;
      while (k < torsion.size() && torsion[k] == torsion[i]) ++k;
      const std::string group = "Z_" + torsion[i].get_str();
      parts.push_back(k - i == 1 ? group : std::to_string(k - i) + " " + group);
      i = k;
    }
    if (parts.empty()) return "0";
    std::string out = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) out += " + " + parts[i];
    return out;
  }

  /// Inverse of to_string. Throws std::invalid_argument on malformed text or
  /// torsion that is not a divisibility chain.
  static H1Summary parse(std::string_view text) {
    H1Summary h;
    auto trim = [](std::string_view s) {
      while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
      while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
      return s;
    };
    const std::string_view all = trim(text);
    if (all == "0") return h;
    auto bad = [&] { return std::invalid_argument("malformed homology summary '" + std::string(text) + "'"); };
    auto digits = [](std::string_view s) {
      return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    std::size_t start = 0;
    while (start <= all.size()) {
      std::size_t plus = all.find('+', start);
      if (plus == std::string_view::npos) plus = all.size();
      std::string_view part = trim(all.substr(start, plus - start));
      start = plus + 1;
      long mult = 1;
      if (const auto sp = part.find(' '); sp != std::string_view::npos) {
        if (!digits(part.substr(0, sp))) throw bad();
        mult = std::stol(std::string(part.substr(0, sp)));
        part = trim(part.substr(sp + 1));
        if (mult < 2) throw bad();
      }
      if (part == "Z") {
        if (!h.torsion.empty() || h.betti != 0) throw bad();
        h.betti = static_cast<int>(mult);
      } else if (part.size() > 2 && part.substr(0, 2) == "Z_" && digits(part.substr(2))) {
        const mpz_class n(std::string(part.substr(2)));
        if (n < 2) throw bad();
        if (!h.torsion.empty() && (n <= h.torsion.back() || n % h.torsion.back() != 0)) throw bad();
        for (long i = 0; i < mult; ++i) h.torsion.push_back(n);
      } else {
        throw bad();
      }
      if (plus == all.size()) break;
    }
    return h;
  }
};

/// Boundary matrices of the cellular chain complex: d1 is vertices x edges,
/// d2 is edges x faces. Edges carry their orbit direction (tail -> head),
/// faces the ascending vertex order of their first side.
inline std::pair<IntMatrix, IntMatrix> boundary_matrices(const Triangulation& tri) {
  IntMatrix d1(static_cast<std::size_t>(tri.vertex_count()), static_cast<std::size_t>(tri.edge_count()));
  for (int e = 0; e < tri.edge_count(); ++e) {
    const EdgeOrbit& eo = tri.edge_orbits()[static_cast<std::size_t>(e)];
    d1(static_cast<std::size_t>(eo.head), static_cast<std::size_t>(e)) += 1;
    d1(static_cast<std::size_t>(eo.tail), static_cast<std::size_t>(e)) -= 1;
  }
  IntMatrix d2(static_cast<std::size_t>(tri.edge_count()), static_cast<std::size_t>(tri.face_count()));
  constexpr int face_coeff[3] = {1, -1, 1};  // [v0 v1] - [v0 v2] + [v1 v2]
  for (int f = 0; f < tri.face_count(); ++f) {
    const FaceOrbit& fo = tri.face_orbits()[static_cast<std::size_t>(f)];
    for (std::size_t k = 0; k < 3; ++k)
      d2(static_cast<std::size_t>(fo.edges[k]), static_cast<std::size_t>(f)) += face_coeff[k] * fo.edge_signs[k];
  }
  return {std::move(d1), std::move(d2)};
}

inline H1Summary h1(const Triangulation& tri) {
  auto [d1, d2] = boundary_matrices(tri);
  const auto snf1 = smith_normal_form(std::move(d1));
  const auto snf2 = smith_normal_form(std::move(d2));
  H1Summary h;
  h.betti = tri.edge_count() - static_cast<int>(snf1.size()) - static_cast<int>(snf2.size());
  for (const auto& d : snf2)
    if (d > 1) h.torsion.push_back(d);
  return h;
}

}  // namespace tvgenus
