#pragma once

// Small closed orientable triangulations with known invariants.

#include <algorithm>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tvgenus/isosig.hpp"
#include "tvgenus/triangulation.hpp"

namespace tvgenus {

struct Fixture {
  std::string name;
  std::string description;
  std::string gluings;  ///< gluing-file text, empty when built from `isosig`
  std::string isosig;
  std::string h1;       ///< first homology in summary notation
  int heegaard_genus;

  Triangulation triangulation() const {
    return gluings.empty() ? decode_isosig(isosig, name) : parse_gluing_file(gluings, name);
  }
};

inline const std::vector<Fixture>& fixtures() {
  static const std::vector<Fixture> all{
      {"s3", "3-sphere, two tetrahedra glued by the identity",
       "tets 2\n0: 1 0123 1 0123 1 0123 1 0123\n1: 0 0123 0 0123 0 0123 0 0123\n", "", "0", 0},
      {"s2xs1", "S2 x S1", "tets 2\n0: 0 1230 0 3012 1 0123 1 0123\n1: 1 1230 1 3012 0 0123 0 0123\n", "", "Z", 1},
      {"rp3", "real projective space L(2,1)",
       "tets 2\n0: 0 1023 0 1023 1 0123 1 2301\n1: 1 3201 0 2301 0 0123 1 2310\n", "", "Z_2", 1},
      {"l31", "lens space L(3,1)", "tets 2\n0: 0 1023 0 1023 1 0123 1 0123\n1: 1 1230 1 3012 0 0123 0 0123\n", "",
       "Z_3", 1},
      {"l41", "lens space L(4,1)", "", "bkaajj", "Z_4", 1},
      {"t3", "3-torus", "", "gvLQQedfedffrwawrhh", "3 Z", 3},
      {"rp3#rp3", "RP3 # RP3", "", "eLAkccbddimcen", "2 Z_2", 2},
      {"rp3#l31", "RP3 # L(3,1)", "", "eLMkabcddjfoxk", "Z_6", 2},
      {"l31#l31", "L(3,1) # L(3,1)", "", "eLPkabdcdbjajb", "2 Z_3", 2},
      {"l31#l41", "L(3,1) # L(4,1)", "", "fLLQcaedcdebiajbj", "Z_12", 2},
      {"l31#s2xs1", "L(3,1) # S2 x S1", "", "fLLQcaeecedbdtjfb", "Z + Z_3", 2},
      {"l41#l52", "L(4,1) # L(5,2)", "", "gLAPPacceeffnjjjjpk", "Z_20", 2},
  };
  return all;
}

inline const Fixture& fixture(std::string_view name) {
  const auto& all = fixtures();
  const auto it = std::find_if(all.begin(), all.end(), [&](const Fixture& f) { return f.name == name; });
  if (it == all.end()) {
    std::string known;
    for (const auto& f : all) known += (known.empty() ? "" : ", ") + f.name;
    throw std::invalid_argument("unknown fixture '" + std::string(name) + "' (known: " + known + ")");
  }
  return *it;
}

}  // namespace tvgenus
