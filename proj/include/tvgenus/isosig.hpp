#pragma once

// Isomorphism signatures for 3-dimensional triangulations, in the published
// base-64 scheme used by the closed-manifold censuses. encode_isosig picks
// the lexicographically smallest signature over every starting
// tetrahedron and vertex labelling, so it is invariant under relabelling.

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tvgenus/perm4.hpp"
#include "tvgenus/triangulation.hpp"

namespace tvgenus {

class IsoSigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace isosig_detail {

inline char encode_single(unsigned v) {
  if (v < 26) return static_cast<char>('a' + v);
  if (v < 52) return static_cast<char>('A' + (v - 26));
  if (v < 62) return static_cast<char>('0' + (v - 52));
  return v == 62 ? '+' : '-';
}

inline int decode_single(char c) {
  if (c >= 'a' && c <= 'z') return c - 'a';
  if (c >= 'A' && c <= 'Z') return c - 'A' + 26;
  if (c >= '0' && c <= '9') return c - '0' + 52;
  if (c == '+') return 62;
  if (c == '-') return 63;
  return -1;
}

inline void encode_int(std::string& s, std::size_t v, unsigned nchars) {
  for (unsigned i = 0; i < nchars; ++i) {
    s += encode_single(static_cast<unsigned>(v & 0x3F));
    v >>= 6;
  }
}

inline void encode_trits(std::string& s, const std::vector<char>& trits) {
  std::size_t i = 0;
  for (; i + 2 < trits.size(); i += 3)
    s += encode_single(static_cast<unsigned>(trits[i] | (trits[i + 1] << 2) | (trits[i + 2] << 4)));
  if (trits.size() - i == 2)
    s += encode_single(static_cast<unsigned>(trits[i] | (trits[i + 1] << 2)));
  else if (trits.size() - i == 1)
    s += encode_single(static_cast<unsigned>(trits[i]));
}

/// Signature of the component containing `start`, with `start` labelled 0
/// and its vertices relabelled by `vertices` (new label of old vertex v is
/// vertices.inverse()[v]).
inline std::string signature_from(const Triangulation& tri, int start, Perm4 vertices) {
  const auto n = static_cast<std::size_t>(tri.size());
  std::vector<long> image(n, -1);
  std::vector<long> pre_image(n, -1);
  std::vector<Perm4> vertex_map(n);
  std::vector<char> facet_action;
  std::vector<std::size_t> join_dest;
  std::vector<int> join_gluing;

  image[static_cast<std::size_t>(start)] = 0;
  vertex_map[static_cast<std::size_t>(start)] = vertices.inverse();
  pre_image[0] = start;
  std::size_t next_unused = 1;
  std::size_t simp_img = 0;
  for (; simp_img < n; ++simp_img) {
    const long src = pre_image[simp_img];
    if (src < 0) break;
    const auto s = static_cast<std::size_t>(src);
    for (int facet_img = 0; facet_img < 4; ++facet_img) {
      const int facet_src = vertex_map[s].pre_image_of(facet_img);
      const Gluing& g = tri.tetrahedron(static_cast<int>(src)).faces[static_cast<std::size_t>(facet_src)];
      const auto dest = static_cast<std::size_t>(g.tet);
      if (image[dest] >= 0) {
        // already written from the other side
        if (image[dest] < static_cast<long>(simp_img) ||
            (image[dest] == static_cast<long>(simp_img) && vertex_map[s][g.perm[facet_src]] < facet_img))
          continue;
      }
      if (image[dest] < 0) {
        image[dest] = static_cast<long>(next_unused);
        pre_image[next_unused] = static_cast<long>(dest);
        vertex_map[dest] = vertex_map[s] * g.perm.inverse();
        ++next_unused;
        facet_action.push_back(1);
        continue;
      }
      facet_action.push_back(2);
      join_dest.push_back(static_cast<std::size_t>(image[dest]));
      join_gluing.push_back((vertex_map[dest] * g.perm * vertex_map[s].inverse()).ordered_index());
    }
  }

  std::string out;
  const std::size_t comp_size = simp_img;
  unsigned nchars = 1;
  if (comp_size >= 63) {
    nchars = 0;
    for (std::size_t tmp = comp_size; tmp > 0; tmp >>= 6) ++nchars;
    out += encode_single(63);
    out += encode_single(nchars);
  }
  encode_int(out, comp_size, nchars);
  encode_trits(out, facet_action);
  for (std::size_t d : join_dest) encode_int(out, d, nchars);
  for (int gidx : join_gluing) encode_int(out, static_cast<std::size_t>(gidx), 1);
  return out;
}

}  // namespace isosig_detail

/// Canonical isomorphism signature of a triangulation.
inline std::string encode_isosig(const Triangulation& tri) {
  // group tetrahedra by connected component
  const int n = tri.size();
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<int>> members;
  for (int s = 0; s < n; ++s) {
    if (comp[static_cast<std::size_t>(s)] >= 0) continue;
    const int id = static_cast<int>(members.size());
    members.emplace_back();
    std::vector<int> stack{s};
    comp[static_cast<std::size_t>(s)] = id;
    while (!stack.empty()) {
      const int t = stack.back();
      stack.pop_back();
      members.back().push_back(t);
      for (const auto& g : tri.tetrahedron(t).faces)
        if (comp[static_cast<std::size_t>(g.tet)] < 0) {
          comp[static_cast<std::size_t>(g.tet)] = id;
          stack.push_back(g.tet);
        }
    }
  }
  std::vector<std::string> sigs;
  for (const auto& m : members) {
    std::string best;
    bool first = true;
    for (int t : m)
      for (int p = 0; p < kPerm4Count; ++p) {
        std::string cur = isosig_detail::signature_from(tri, t, Perm4::from_ordered_index(p));
        if (first || cur < best) {
          best.swap(cur);
          first = false;
        }
      }
    sigs.push_back(std::move(best));
  }
  std::sort(sigs.begin(), sigs.end());
  std::string out;
  for (const auto& s : sigs) out += s;
  return out;
}

/// Decodes an isomorphism signature. Throws IsoSigError on malformed input
/// and TriangulationError if the result is not a closed 3-manifold.
inline Triangulation decode_isosig(std::string_view sig, std::string name = {}) {
  using isosig_detail::decode_single;
  if (sig.empty()) throw IsoSigError("empty isomorphism signature");
  for (std::size_t i = 0; i < sig.size(); ++i)
    if (decode_single(sig[i]) < 0)
      throw IsoSigError("invalid character '" + std::string(1, sig[i]) + "' at position " + std::to_string(i));

  std::size_t pos = 0;
  auto need = [&](std::size_t k) {
    if (pos + k > sig.size()) throw IsoSigError("truncated isomorphism signature");
  };
  auto read_int = [&](unsigned nchars) {
    need(nchars);
    std::size_t v = 0;
    for (unsigned i = 0; i < nchars; ++i) v |= static_cast<std::size_t>(decode_single(sig[pos + i])) << (6 * i);
    pos += nchars;
    return v;
  };

  std::vector<Tetrahedron> tets;
  while (pos < sig.size()) {
    const std::size_t comp_start = tets.size();
    std::size_t n = read_int(1);
    unsigned nchars = 1;
    if (n == 63) {
      nchars = static_cast<unsigned>(read_int(1));
      if (nchars == 0 || nchars > 8) throw IsoSigError("invalid integer width in isomorphism signature");
      n = read_int(nchars);
    }
    if (n == 0) throw IsoSigError("empty component in isomorphism signature");
    if (n > (1u << 24)) throw IsoSigError("component too large");

    std::vector<char> actions;
    std::size_t nfacets = 0;
    std::size_t njoins = 0;
    while (nfacets < 4 * n) {
      need(1);
      const int v = decode_single(sig[pos++]);
      for (int j = 0; j < 3; ++j) {
        const char trit = static_cast<char>((v >> (2 * j)) & 3);
        if (nfacets == 4 * n) {
          if (trit != 0) throw IsoSigError("nonzero padding in facet actions");
          continue;
        }
        if (trit == 0)
          ++nfacets;
        else if (trit == 1)
          nfacets += 2;
        else if (trit == 2) {
          nfacets += 2;
          ++njoins;
        } else
          throw IsoSigError("invalid facet action");
        if (nfacets > 4 * n) throw IsoSigError("facet actions overrun the tetrahedron count");
        actions.push_back(trit);
      }
    }
    std::vector<std::size_t> dest(njoins);
    for (auto& d : dest) d = read_int(nchars);
    std::vector<int> gluing(njoins);
    for (auto& g : gluing) {
      g = static_cast<int>(read_int(1));
      if (g >= kPerm4Count) throw IsoSigError("invalid permutation index " + std::to_string(g));
    }

    tets.resize(comp_start + n);
    std::size_t action_pos = 0, next_unused = 1, join_pos = 0;
    for (std::size_t j = 0; j < n; ++j)
      for (int k = 0; k < 4; ++k) {
        Tetrahedron& tj = tets[comp_start + j];
        if (tj.faces[static_cast<std::size_t>(k)].tet >= 0) continue;
        if (action_pos >= actions.size()) throw IsoSigError("facet actions exhausted");
        const char act = actions[action_pos++];
        if (act == 0) throw IsoSigError("signature describes a boundary face; only closed triangulations are supported");
        if (act == 1) {
          if (next_unused >= n) throw IsoSigError("facet action refers past the last tetrahedron");
          const auto other = comp_start + next_unused++;
          tj.faces[static_cast<std::size_t>(k)] = {static_cast<int>(other), Perm4()};
          tets[other].faces[static_cast<std::size_t>(k)] = {static_cast<int>(comp_start + j), Perm4()};
        } else {
          const Perm4 p = Perm4::from_ordered_index(gluing[join_pos]);
          const std::size_t d = dest[join_pos];
          ++join_pos;
          if (d >= next_unused) throw IsoSigError("join to a tetrahedron that is not yet introduced");
          Tetrahedron& td = tets[comp_start + d];
          if (td.faces[static_cast<std::size_t>(p[k])].tet >= 0) throw IsoSigError("join onto a face that is already glued");
          if (d == j && p[k] == k) throw IsoSigError("face glued to itself");
          tj.faces[static_cast<std::size_t>(k)] = {static_cast<int>(comp_start + d), p};
          td.faces[static_cast<std::size_t>(p[k])] = {static_cast<int>(comp_start + j), p.inverse()};
        }
      }
  }
  return Triangulation(std::move(tets), std::move(name));
}

}  // namespace tvgenus
