#pragma once

// Exhaustive exact self-checks of the recoupling data at one level.

#include <array>
#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tvgenus/recoupling.hpp"

namespace tvgenus {

struct IdentityCheck {
  IdentityCheck() = default;
  explicit IdentityCheck(std::string n) : name(std::move(n)) {}
  std::string name;
  bool passed = true;
  std::uint64_t cases = 0;
  std::string witness;  ///< first counterexample, empty when passed
};

struct IdentityReport {
  int r = 0;
  std::vector<IdentityCheck> checks;
  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
};

namespace identities_detail {

using Exact = SymbolTable<ExactArithmetic>;

/// Tet of the tetrahedron (a,b,c,d) inside a vertex-pair labelling.
template <class Label>
const CycNumber& tet_of(const Exact& t, const Label& l, int a, int b, int c, int d) {
  return t.tet(l(a, b), l(b, c), l(c, d), l(a, d), l(a, c), l(b, d));
}

inline std::string tuple_str(std::initializer_list<int> xs) {
  std::ostringstream os;
  os << '(';
  bool first = true;
  for (int x : xs) {
    if (!first) os << ',';
    os << x;
    first = false;
  }
  os << ')';
  return os.str();
}

inline void fail(IdentityCheck& c, const std::string& witness) {
  if (c.passed) {
    c.passed = false;
    c.witness = witness;
  }
}

}  // namespace identities_detail

/// Checks, in exact arithmetic over every admissible tuple:
/// theta(a,a,0) = Delta_a; symmetry of theta; tetrahedral symmetry of Tet;
/// orthogonality of the recoupling matrices; and the Biedenharn-Elliott
/// identity in its 2-3 form. Failures are reported, never thrown.
inline IdentityReport verify_identities(const Level& level, SignConvention convention = SignConvention::kauffman_lins) {
  using namespace identities_detail;
  const Exact table(level, convention);
  const int n = table.color_count();
  const auto& rec = table.recoupling();
  IdentityReport report;
  report.r = level.r();

  IdentityCheck theta_dim("theta(a,a,0) = Delta_a");
  for (int a = 0; a < n; ++a) {
    ++theta_dim.cases;
    if (rec.theta(a, a, 0) != table.qdim(a)) fail(theta_dim, "a=" + std::to_string(a));
  }
  report.checks.push_back(theta_dim);

  IdentityCheck theta_sym("theta symmetry");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        if (!table.is_admissible(a, b, c)) continue;
        ++theta_sym.cases;
        const auto& v = table.theta_inverse(a, b, c);
        if (v != table.theta_inverse(b, a, c) || v != table.theta_inverse(a, c, b) || v != table.theta_inverse(c, b, a))
          fail(theta_sym, tuple_str({a, b, c}));
      }
  report.checks.push_back(theta_sym);

  IdentityCheck tet_sym("tetrahedral symmetry");
  {
    std::array<std::array<int, 4>, 4> lab{};
    auto l = [&](int i, int j) { return lab[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; };
    std::array<int, 6> e{};
    for (e[0] = 0; e[0] < n; ++e[0])
      for (e[1] = 0; e[1] < n; ++e[1])
        for (e[2] = 0; e[2] < n; ++e[2])
          for (e[3] = 0; e[3] < n; ++e[3])
            for (e[4] = 0; e[4] < n; ++e[4])
              for (e[5] = 0; e[5] < n; ++e[5]) {
                // e indexes vertex pairs 01,02,03,12,13,23
                constexpr int pairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
                for (int k = 0; k < 6; ++k) {
                  lab[pairs[k][0]][pairs[k][1]] = e[static_cast<std::size_t>(k)];
                  lab[pairs[k][1]][pairs[k][0]] = e[static_cast<std::size_t>(k)];
                }
                if (!table.is_admissible(l(0, 1), l(1, 2), l(0, 2)) || !table.is_admissible(l(0, 1), l(1, 3), l(0, 3)) ||
                    !table.is_admissible(l(0, 2), l(2, 3), l(0, 3)) || !table.is_admissible(l(1, 2), l(2, 3), l(1, 3)))
                  continue;
                ++tet_sym.cases;
                const CycNumber& base = tet_of(table, l, 0, 1, 2, 3);
                // generators of S4 acting on the vertex labels
                for (const auto& s : {std::array<int, 4>{1, 0, 2, 3}, std::array<int, 4>{1, 2, 3, 0}}) {
                  if (tet_of(table, l, s[0], s[1], s[2], s[3]) != base)
                    fail(tet_sym, tuple_str({e[0], e[1], e[2], e[3], e[4], e[5]}));
                }
              }
  }
  report.checks.push_back(tet_sym);

  // sum_E Delta_E Tet(A,B,C,D,E,F) Tet(A,B,C,D,E,F') / (theta(A,B,E) theta(C,D,E))
  //   = delta_{F,F'} theta(A,D,F) theta(B,C,F) / Delta_F
  IdentityCheck ortho("orthogonality");
  const CycNumber zero = ExactArithmetic(level).zero();
  const CycNumber one = ExactArithmetic(level).one();
  for (int A = 0; A < n; ++A)
    for (int B = 0; B < n; ++B)
      for (int C = 0; C < n; ++C)
        for (int D = 0; D < n; ++D)
          for (int F = 0; F < n; ++F) {
            if (!table.is_admissible(A, D, F) || !table.is_admissible(B, C, F)) continue;
            for (int G = 0; G < n; ++G) {
              if (!table.is_admissible(A, D, G) || !table.is_admissible(B, C, G)) continue;
              CycNumber sum = zero;
              for (int E = 0; E < n; ++E) {
                if (!table.is_admissible(A, B, E) || !table.is_admissible(C, D, E)) continue;
                sum += table.qdim(E) * table.tet(A, B, C, D, E, F) * table.tet(A, B, C, D, E, G) *
                       table.theta_inverse(A, B, E) * table.theta_inverse(C, D, E);
              }
              ++ortho.cases;
              const CycNumber lhs = sum * table.qdim(F) * table.theta_inverse(A, D, F) * table.theta_inverse(B, C, F);
              if (lhs != (F == G ? one : zero)) fail(ortho, "A,B,C,D,F,F'=" + tuple_str({A, B, C, D, F, G}));
            }
          }
  report.checks.push_back(ortho);

  // Two tetrahedra 0123 and 1234 on face 123 versus three around edge 04.
  IdentityCheck be("Biedenharn-Elliott");
  {
    std::array<std::array<int, 5>, 5> lab{};
    auto l = [&](int i, int j) { return lab[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; };
    auto set = [&](int i, int j, int v) {
      lab[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
      lab[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = v;
    };
    for (int l12 = 0; l12 < n; ++l12)
      for (int l13 = 0; l13 < n; ++l13)
        for (int l23 = 0; l23 < n; ++l23) {
          if (!table.is_admissible(l12, l13, l23)) continue;
          set(1, 2, l12);
          set(1, 3, l13);
          set(2, 3, l23);
          const CycNumber& theta123 = table.theta_inverse(l12, l13, l23);
          for (int l01 = 0; l01 < n; ++l01)
            for (int l02 = 0; l02 < n; ++l02) {
              if (!table.is_admissible(l01, l02, l12)) continue;
              for (int l03 = 0; l03 < n; ++l03) {
                if (!table.is_admissible(l01, l03, l13) || !table.is_admissible(l02, l03, l23)) continue;
                set(0, 1, l01);
                set(0, 2, l02);
                set(0, 3, l03);
                const CycNumber before0 = tet_of(table, l, 0, 1, 2, 3) * theta123;
                for (int l14 = 0; l14 < n; ++l14)
                  for (int l24 = 0; l24 < n; ++l24) {
                    if (!table.is_admissible(l12, l14, l24)) continue;
                    for (int l34 = 0; l34 < n; ++l34) {
                      if (!table.is_admissible(l13, l14, l34) || !table.is_admissible(l23, l24, l34)) continue;
                      set(1, 4, l14);
                      set(2, 4, l24);
                      set(3, 4, l34);
                      const CycNumber before = before0 * tet_of(table, l, 1, 2, 3, 4);
                      CycNumber after = zero;
                      for (int x = 0; x < n; ++x) {
                        if (!table.is_admissible(l01, l14, x) || !table.is_admissible(l02, l24, x) ||
                            !table.is_admissible(l03, l34, x))
                          continue;
                        set(0, 4, x);
                        after += table.qdim(x) * tet_of(table, l, 0, 1, 2, 4) * tet_of(table, l, 0, 2, 3, 4) *
                                 tet_of(table, l, 0, 1, 3, 4) * table.theta_inverse(l01, l14, x) *
                                 table.theta_inverse(l02, l24, x) * table.theta_inverse(l03, l34, x);
                      }
                      ++be.cases;
                      if (after != before)
                        fail(be, "01,02,03,12,13,23,14,24,34=" +
                                     tuple_str({l01, l02, l03, l12, l13, l23, l14, l24, l34}));
                    }
                  }
              }
            }
        }
  }
  report.checks.push_back(be);
  return report;
}

}  // namespace tvgenus
