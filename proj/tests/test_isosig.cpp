#include <gtest/gtest.h>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "tvgenus/fixtures.hpp"
#include "tvgenus/isosig.hpp"

using namespace tvgenus;

namespace {

std::vector<std::vector<std::string>> read_rows(const std::string& file) {
  std::ifstream in(std::string(TVGENUS_TEST_DATA) + "/" + file);
  EXPECT_TRUE(in) << file;
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const auto semi = line.find(" ; ", start);
      fields.push_back(line.substr(start, semi - start));
      if (semi == std::string::npos) break;
      start = semi + 3;
    }
    rows.push_back(fields);
  }
  return rows;
}

}  // namespace

TEST(IsoSig, CorpusRoundTrips) {
  const auto rows = read_rows("isosig_corpus.txt");
  ASSERT_GE(rows.size(), 300u);
  for (const auto& row : rows) {
    const std::string& sig = row.at(1);
    const Triangulation tri = decode_isosig(sig, row[0]);
    EXPECT_TRUE(tri.orientable()) << row[0];
    EXPECT_EQ(encode_isosig(tri), sig) << row[0];
  }
}

TEST(IsoSig, DecodedGluingsMatchReference) {
  const auto rows = read_rows("isosig_gluings.txt");
  ASSERT_GE(rows.size(), 50u);
  for (const auto& row : rows) {
    const Triangulation tri = decode_isosig(row.at(0));
    std::istringstream expected(row.at(1));
    for (int t = 0; t < tri.size(); ++t) {
      for (int f = 0; f < 4; ++f) {
        int j;
        std::string p;
        expected >> j >> p;
        EXPECT_EQ(tri.tetrahedron(t).faces[static_cast<std::size_t>(f)].tet, j) << row[0];
        EXPECT_EQ(tri.tetrahedron(t).faces[static_cast<std::size_t>(f)].perm.str(), p) << row[0] << " tet " << t;
      }
      std::string bar;
      if (t + 1 < tri.size()) {
        expected >> bar;
        EXPECT_EQ(bar, "|");
      }
    }
  }
}

TEST(IsoSig, InvariantUnderRelabeling) {
  for (const auto& f : fixtures()) {
    const Triangulation tri = f.triangulation();
    const std::string sig = encode_isosig(tri);
    if (!f.isosig.empty()) {
      EXPECT_EQ(sig, f.isosig);
    }
    const int n = tri.size();
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<int> tet_map(static_cast<std::size_t>(n));
      std::vector<Perm4> maps;
      for (int t = 0; t < n; ++t) {
        tet_map[static_cast<std::size_t>(t)] = (t + trial) % n;
        maps.push_back(Perm4::from_ordered_index((5 * t + 11 * trial + 3) % 24));
      }
      EXPECT_EQ(encode_isosig(tri.relabeled(tet_map, maps)), sig) << f.name;
    }
  }
}

TEST(IsoSig, KnownSignatures) {
  EXPECT_EQ(encode_isosig(fixture("s3").triangulation()), "cPcbbbaaa");
  EXPECT_EQ(encode_isosig(fixture("s2xs1").triangulation()), "cMcabbjaj");
  EXPECT_EQ(encode_isosig(fixture("rp3").triangulation()), "cMcabbgqw");
  EXPECT_EQ(encode_isosig(fixture("l31").triangulation()), "cMcabbgaj");
}

TEST(IsoSig, DisconnectedInputGivesSortedComponents) {
  const Triangulation a = fixture("l31").triangulation();
  const Triangulation b = fixture("s3").triangulation();
  std::vector<Tetrahedron> tets = b.tetrahedra();
  for (auto t : a.tetrahedra()) {
    for (auto& g : t.faces) g.tet += b.size();
    tets.push_back(t);
  }
  const Triangulation both(tets);
  EXPECT_EQ(both.component_count(), 2);
  EXPECT_EQ(encode_isosig(both), "cMcabbgaj" + std::string("cPcbbbaaa"));
  EXPECT_EQ(decode_isosig(encode_isosig(both)).component_count(), 2);
}

TEST(IsoSig, MalformedInputIsRejected) {
  EXPECT_THROW(decode_isosig(""), IsoSigError);
  EXPECT_THROW(decode_isosig("cMcab*bgaj"), IsoSigError);
  EXPECT_THROW(decode_isosig("cMcabbga"), IsoSigError);  // truncated
  EXPECT_THROW(decode_isosig("cMcabbgajj"), IsoSigError);  // trailing garbage starts a bad component
  EXPECT_THROW(decode_isosig("baaa"), IsoSigError);  // boundary faces
  EXPECT_THROW(decode_isosig("bkaaz9"), IsoSigError);  // permutation index out of range
  try {
    decode_isosig("cMcab!bgaj");
    FAIL();
  } catch (const IsoSigError& e) {
    EXPECT_NE(std::string(e.what()).find("position 5"), std::string::npos);
  }
}
