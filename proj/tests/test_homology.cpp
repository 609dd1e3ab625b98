#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>

#include "tvgenus/fixtures.hpp"
#include "tvgenus/homology.hpp"
#include "tvgenus/isosig.hpp"
#include "support/snf_oracle.hpp"

using namespace tvgenus;

namespace {

IntMatrix random_matrix(std::mt19937& rng) {
  std::uniform_int_distribution<int> dim(1, 5), val(-6, 6), sparse(0, 3);
  IntMatrix m(static_cast<std::size_t>(dim(rng)), static_cast<std::size_t>(dim(rng)));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = sparse(rng) == 0 ? 0 : val(rng);
  return m;
}

}  // namespace

TEST(SmithNormalForm, MatchesDeterminantalDivisors) {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const IntMatrix m = random_matrix(rng);
    const auto snf = smith_normal_form(m);
    EXPECT_EQ(snf, oracle::invariant_factors(m)) << "trial " << trial;
    for (std::size_t i = 0; i + 1 < snf.size(); ++i) {
      EXPECT_GT(snf[i], 0);
      EXPECT_EQ(snf[i + 1] % snf[i], 0);
    }
    // invariant under row and column permutations
    std::vector<std::size_t> rp(m.rows()), cp(m.cols());
    std::iota(rp.begin(), rp.end(), 0);
    std::iota(cp.begin(), cp.end(), 0);
    std::shuffle(rp.begin(), rp.end(), rng);
    std::shuffle(cp.begin(), cp.end(), rng);
    IntMatrix p(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) p(i, j) = m(rp[i], cp[j]);
    EXPECT_EQ(smith_normal_form(p), snf);
  }
}

TEST(SmithNormalForm, KnownCases) {
  IntMatrix m(2, 2);
  m(0, 0) = 2;
  m(1, 1) = 3;
  EXPECT_EQ(smith_normal_form(m), (std::vector<mpz_class>{1, 6}));
  IntMatrix z(3, 2);
  EXPECT_TRUE(smith_normal_form(z).empty());
  EXPECT_TRUE(smith_normal_form(IntMatrix()).empty());
}

TEST(H1Summary, FormattingAndParsing) {
  for (const char* s : {"0", "Z", "3 Z", "Z_2", "2 Z_2 + Z_4", "Z + 2 Z_2", "Z + Z_3", "Z_12", "2 Z + 3 Z_2 + Z_6"})
    EXPECT_EQ(H1Summary::parse(s).to_string(), s);
  const H1Summary h = H1Summary::parse("Z + 2 Z_2 + Z_4");
  EXPECT_EQ(h.betti, 1);
  EXPECT_EQ(h.min_generators(), 4);
  EXPECT_EQ(H1Summary::parse("0").min_generators(), 0);
  for (const char* s : {"", "Q", "Z_1", "Z_2 + Z_3", "Z_4 + Z_2", "Z_2 + Z", "1 Z", "x Z_2", "Z +", "Z_"})
    EXPECT_THROW(H1Summary::parse(s), std::invalid_argument) << s;
}

TEST(Homology, Fixtures) {
  for (const auto& f : fixtures()) EXPECT_EQ(h1(f.triangulation()).to_string(), f.h1) << f.name;
}

TEST(Homology, CensusReference) {
  std::ifstream in(std::string(TVGENUS_TEST_DATA) + "/census_reference.txt");
  ASSERT_TRUE(in);
  std::string line;
  int count = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> f;
    for (std::size_t start = 0;;) {
      const auto semi = line.find(" ; ", start);
      f.push_back(line.substr(start, semi - start));
      if (semi == std::string::npos) break;
      start = semi + 3;
    }
    EXPECT_EQ(h1(decode_isosig(f.at(1))).to_string(), f.at(2)) << f[0];
    ++count;
  }
  EXPECT_GE(count, 200);
}

TEST(Homology, InvariantUnderRelabelingAndPachnerMoves) {
  for (const auto& f : fixtures()) {
    const Triangulation tri = f.triangulation();
    const H1Summary h = h1(tri);
    const int n = tri.size();
    // odd vertex permutations reverse every edge and face orientation convention
    std::vector<int> tet_map(static_cast<std::size_t>(n));
    std::iota(tet_map.begin(), tet_map.end(), 0);
    std::vector<Perm4> odd(static_cast<std::size_t>(n), Perm4::parse("1023"));
    EXPECT_EQ(h1(tri.relabeled(tet_map, odd)), h) << f.name;
    for (int fo = 0; fo < tri.face_count(); ++fo) {
      const auto& orbit = tri.face_orbits()[static_cast<std::size_t>(fo)];
      if (orbit.sides[0].tet == orbit.sides[1].tet) continue;
      EXPECT_EQ(h1(pachner_23(tri, fo)), h) << f.name << " face " << fo;
    }
  }
}
