#pragma once

// Closed 3-manifold triangulations given by face gluings, with vertex,
// edge and face orbits computed eagerly at construction.

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tvgenus/perm4.hpp"

namespace tvgenus {

class TriangulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public TriangulationError {
 public:
  ParseError(int line, int column, const std::string& what)
      : TriangulationError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Tetrahedron edges in lexicographic vertex-pair order: 01,02,03,12,13,23.
inline constexpr std::array<std::array<int, 2>, 6> kEdgeVertices{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

constexpr int edge_index(int a, int b) {
  if (a > b) std::swap(a, b);
  constexpr int table[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
  return table[a][b];
}

/// Vertices of face f (the face opposite vertex f), ascending.
constexpr std::array<int, 3> face_vertices(int f) {
  std::array<int, 3> out{};
  int k = 0;
  for (int v = 0; v < 4; ++v)
    if (v != f) out[static_cast<std::size_t>(k++)] = v;
  return out;
}

struct Gluing {
  int tet = -1;  ///< -1 means the face is unglued
  Perm4 perm;    ///< maps this tetrahedron's vertices to the target's
  bool operator==(const Gluing&) const = default;
};

struct Tetrahedron {
  std::array<Gluing, 4> faces;
  bool operator==(const Tetrahedron&) const = default;
};

struct EdgeIncidence {
  int tet;
  int edge;  ///< 0..5, see kEdgeVertices
  int sign;  ///< +1 when the tetrahedron's low->high direction matches the orbit direction
};

struct EdgeOrbit {
  std::vector<EdgeIncidence> incidences;  ///< in cyclic order around the edge
  int tail = -1;                          ///< vertex orbit at the start of the orbit direction
  int head = -1;
  int degree() const { return static_cast<int>(incidences.size()); }
};

struct FaceIncidence {
  int tet;
  int face;
  int sign;  ///< +1 when the sorted-vertex orientation matches the orbit orientation
};

struct FaceOrbit {
  std::array<FaceIncidence, 2> sides;
  /// Edge orbits of the first side's triangle for vertex pairs (v0v1, v0v2, v1v2)
  /// of its ascending vertices, with the matching direction signs.
  std::array<int, 3> edges{};
  std::array<int, 3> edge_signs{};
};

struct VertexOrbit {
  std::vector<std::pair<int, int>> incidences;  ///< (tet, vertex)
};

class Triangulation {
 public:
  /// Validates the gluings and computes orbits. Throws TriangulationError.
  explicit Triangulation(std::vector<Tetrahedron> tets, std::string name = {})
      : tets_(std::move(tets)), name_(std::move(name)) {
    validate_gluings();
    compute_vertex_orbits();
    compute_edge_orbits();
    compute_face_orbits();
    compute_orientation();
    const long long chi = euler_characteristic();
    if (chi != 0)
      throw TriangulationError("not a closed 3-manifold: V - E + F - T = " + std::to_string(chi));
  }

  int size() const { return static_cast<int>(tets_.size()); }
  const std::vector<Tetrahedron>& tetrahedra() const { return tets_; }
  const Tetrahedron& tetrahedron(int i) const { return tets_.at(static_cast<std::size_t>(i)); }
  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  const std::vector<VertexOrbit>& vertex_orbits() const { return vertices_; }
  const std::vector<EdgeOrbit>& edge_orbits() const { return edges_; }
  const std::vector<FaceOrbit>& face_orbits() const { return faces_; }
  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int face_count() const { return static_cast<int>(faces_.size()); }

  int vertex_of(int tet, int v) const { return tet_vertex_[idx4(tet, v)]; }
  int edge_of(int tet, int e) const { return tet_edge_[idx6(tet, e)]; }
  int edge_sign(int tet, int e) const { return tet_edge_sign_[idx6(tet, e)]; }
  int face_of(int tet, int f) const { return tet_face_[idx4(tet, f)]; }

  long long euler_characteristic() const {
    return static_cast<long long>(vertex_count()) - edge_count() + face_count() - size();
  }

  bool orientable() const { return orientable_; }
  /// +1/-1 orientation of each tetrahedron when orientable.
  int orientation(int tet) const { return orientation_[static_cast<std::size_t>(tet)]; }

  int component_count() const { return components_; }

  /// Relabels tetrahedra (new index = tet_map[old]) and vertices
  /// (vertex_maps[old] sends old vertex labels to new ones).
  Triangulation relabeled(const std::vector<int>& tet_map, const std::vector<Perm4>& vertex_maps) const {
    const auto n = tets_.size();
    if (tet_map.size() != n || vertex_maps.size() != n)
      throw std::invalid_argument("relabelling size mismatch");
    std::vector<Tetrahedron> out(n);
    for (std::size_t t = 0; t < n; ++t) {
      const Perm4& vt = vertex_maps[t];
      for (int f = 0; f < 4; ++f) {
        const Gluing& g = tets_[t].faces[static_cast<std::size_t>(f)];
        Gluing ng;
        ng.tet = tet_map[static_cast<std::size_t>(g.tet)];
        ng.perm = vertex_maps[static_cast<std::size_t>(g.tet)] * g.perm * vt.inverse();
        out[static_cast<std::size_t>(tet_map[t])].faces[static_cast<std::size_t>(vt[f])] = ng;
      }
    }
    return Triangulation(std::move(out), name_);
  }

 private:
  std::size_t idx4(int t, int k) const { return static_cast<std::size_t>(t) * 4 + static_cast<std::size_t>(k); }
  std::size_t idx6(int t, int k) const { return static_cast<std::size_t>(t) * 6 + static_cast<std::size_t>(k); }

  void validate_gluings() {
    const int n = size();
    if (n == 0) throw TriangulationError("triangulation has no tetrahedra");
    for (int t = 0; t < n; ++t)
      for (int f = 0; f < 4; ++f) {
        const Gluing& g = tets_[static_cast<std::size_t>(t)].faces[static_cast<std::size_t>(f)];
        const std::string where = "face " + std::to_string(f) + " of tetrahedron " + std::to_string(t);
        if (g.tet == -1) throw TriangulationError("non-closed complex: " + where + " is unglued");
        if (g.tet < 0 || g.tet >= n)
          throw TriangulationError("dangling gluing: " + where + " refers to tetrahedron " + std::to_string(g.tet));
        const int target_face = g.perm[f];
        if (g.tet == t && target_face == f) throw TriangulationError("invalid self-gluing: " + where + " is glued to itself");
        const Gluing& back = tets_[static_cast<std::size_t>(g.tet)].faces[static_cast<std::size_t>(target_face)];
        if (back.tet != t || back.perm != g.perm.inverse())
          throw TriangulationError("non-involutive gluing: " + where + " -> face " + std::to_string(target_face) +
                                   " of tetrahedron " + std::to_string(g.tet) + " is not glued back");
      }
  }

  void compute_vertex_orbits() {
    const int n = size();
    tet_vertex_.assign(static_cast<std::size_t>(n) * 4, -1);
    for (int t = 0; t < n; ++t)
      for (int v = 0; v < 4; ++v) {
        if (tet_vertex_[idx4(t, v)] >= 0) continue;
        const int id = static_cast<int>(vertices_.size());
        vertices_.emplace_back();
        std::vector<std::pair<int, int>> stack{{t, v}};
        tet_vertex_[idx4(t, v)] = id;
        while (!stack.empty()) {
          const auto [ct, cv] = stack.back();
          stack.pop_back();
          vertices_.back().incidences.emplace_back(ct, cv);
          for (int f = 0; f < 4; ++f) {
            if (f == cv) continue;
            const Gluing& g = tets_[static_cast<std::size_t>(ct)].faces[static_cast<std::size_t>(f)];
            const int nv = g.perm[cv];
            if (tet_vertex_[idx4(g.tet, nv)] < 0) {
              tet_vertex_[idx4(g.tet, nv)] = id;
              stack.emplace_back(g.tet, nv);
            }
          }
        }
      }
  }

  void compute_edge_orbits() {
    const int n = size();
    tet_edge_.assign(static_cast<std::size_t>(n) * 6, -1);
    tet_edge_sign_.assign(static_cast<std::size_t>(n) * 6, 0);
    for (int t = 0; t < n; ++t)
      for (int e = 0; e < 6; ++e) {
        if (tet_edge_[idx6(t, e)] >= 0) continue;
        const int id = static_cast<int>(edges_.size());
        EdgeOrbit orbit;
        // Walk around the edge carrying (tet, ordered endpoints a->b, exit face).
        int ct = t;
        int a = kEdgeVertices[static_cast<std::size_t>(e)][0];
        int b = kEdgeVertices[static_cast<std::size_t>(e)][1];
        int exit_face = -1;
        for (int v = 0; v < 4; ++v)
          if (v != a && v != b) exit_face = v;
        const int start_exit = exit_face;
        while (true) {
          const int ce = edge_index(a, b);
          const int sign = a < b ? 1 : -1;
          tet_edge_[idx6(ct, ce)] = id;
          tet_edge_sign_[idx6(ct, ce)] = sign;
          orbit.incidences.push_back({ct, ce, sign});
          if (orbit.incidences.size() == 1) {
            orbit.tail = vertex_of(ct, a);
            orbit.head = vertex_of(ct, b);
          }
          const Gluing& g = tets_[static_cast<std::size_t>(ct)].faces[static_cast<std::size_t>(exit_face)];
          const int entry_face = 6 - a - b - exit_face;
          ct = g.tet;
          a = g.perm[a];
          b = g.perm[b];
          exit_face = g.perm[entry_face];
          const int ne = edge_index(a, b);
          if (ct == t && ne == e) {
            if (a > b) throw TriangulationError("edge identified with itself in reverse (tetrahedron " + std::to_string(t) + ")");
            if (exit_face != start_exit) throw TriangulationError("edge link is not a circle (tetrahedron " + std::to_string(t) + ")");
            break;
          }
          if (tet_edge_[idx6(ct, ne)] >= 0)
            throw TriangulationError("edge identified with itself in reverse (tetrahedron " + std::to_string(ct) + ")");
        }
        edges_.push_back(std::move(orbit));
      }
  }

  void compute_face_orbits() {
    const int n = size();
    tet_face_.assign(static_cast<std::size_t>(n) * 4, -1);
    for (int t = 0; t < n; ++t)
      for (int f = 0; f < 4; ++f) {
        if (tet_face_[idx4(t, f)] >= 0) continue;
        const Gluing& g = tets_[static_cast<std::size_t>(t)].faces[static_cast<std::size_t>(f)];
        const int id = static_cast<int>(faces_.size());
        const int tf = g.perm[f];
        FaceOrbit orbit;
        const auto fv = face_vertices(f);
        // orientation of the image of (v0,v1,v2) relative to the target's ascending order
        const std::array<int, 3> img{g.perm[fv[0]], g.perm[fv[1]], g.perm[fv[2]]};
        int inversions = 0;
        for (int i = 0; i < 3; ++i)
          for (int j = i + 1; j < 3; ++j)
            if (img[static_cast<std::size_t>(i)] > img[static_cast<std::size_t>(j)]) ++inversions;
        orbit.sides[0] = {t, f, 1};
        orbit.sides[1] = {g.tet, tf, inversions % 2 == 0 ? 1 : -1};
        const std::array<std::array<int, 2>, 3> pairs{{{fv[0], fv[1]}, {fv[0], fv[2]}, {fv[1], fv[2]}}};
        for (std::size_t k = 0; k < 3; ++k) {
          const int e = edge_index(pairs[k][0], pairs[k][1]);
          orbit.edges[k] = edge_of(t, e);
          orbit.edge_signs[k] = edge_sign(t, e);
        }
        tet_face_[idx4(t, f)] = id;
        tet_face_[idx4(g.tet, tf)] = id;
        faces_.push_back(orbit);
      }
  }

  void compute_orientation() {
    const int n = size();
    orientation_.assign(static_cast<std::size_t>(n), 0);
    orientable_ = true;
    components_ = 0;
    for (int s = 0; s < n; ++s) {
      if (orientation_[static_cast<std::size_t>(s)] != 0) continue;
      ++components_;
      orientation_[static_cast<std::size_t>(s)] = 1;
      std::vector<int> stack{s};
      while (!stack.empty()) {
        const int t = stack.back();
        stack.pop_back();
        for (int f = 0; f < 4; ++f) {
          const Gluing& g = tets_[static_cast<std::size_t>(t)].faces[static_cast<std::size_t>(f)];
          // an orientation-consistent gluing between like-oriented tetrahedra is odd
          const int want = -g.perm.sign() * orientation_[static_cast<std::size_t>(t)];
          int& o = orientation_[static_cast<std::size_t>(g.tet)];
          if (o == 0) {
            o = want;
            stack.push_back(g.tet);
          } else if (o != want) {
            orientable_ = false;
          }
        }
      }
    }
  }

  std::vector<Tetrahedron> tets_;
  std::string name_;
  std::vector<VertexOrbit> vertices_;
  std::vector<EdgeOrbit> edges_;
  std::vector<FaceOrbit> faces_;
  std::vector<int> tet_vertex_;
  std::vector<int> tet_edge_;
  std::vector<int> tet_edge_sign_;
  std::vector<int> tet_face_;
  std::vector<int> orientation_;
  bool orientable_ = true;
  int components_ = 0;
};

namespace detail {

struct LineCursor {
  std::string_view line;
  int line_no;
  std::size_t pos = 0;

  void skip_space() {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
  }
  bool at_end() {
    skip_space();
    return pos >= line.size();
  }
  int column() const { return static_cast<int>(pos) + 1; }
  std::string_view token() {
    skip_space();
    const std::size_t start = pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' && line[pos] != '\r' && line[pos] != ':') ++pos;
    return line.substr(start, pos - start);
  }
  long long integer(const char* what) {
    skip_space();
    const int col = column();
    const auto tok = token();
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
      throw ParseError(line_no, col, std::string("expected ") + what + ", found '" + std::string(tok) + "'");
    return v;
  }
};

}  // namespace detail

/// Parses the text gluing format:
///
///     tets <N>
///     i: j0 p0 j1 p1 j2 p2 j3 p3
///
/// Face k of tetrahedron i is glued to tetrahedron jk by the permutation pk,
/// written as the four images of vertices 0123. '#' starts a comment.
inline Triangulation parse_gluing_file(std::string_view text, std::string name = {}) {
  std::vector<Tetrahedron> tets;
  std::vector<bool> seen;
  std::optional<int> count;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    start = end + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    detail::LineCursor cur{line, line_no};
    if (cur.at_end()) {
      if (end == text.size()) break;
      continue;
    }
    if (!count) {
      const int col = cur.column();
      if (cur.token() != "tets") throw ParseError(line_no, col, "expected header 'tets <N>'");
      const long long n = cur.integer("tetrahedron count");
      if (n <= 0 || n > 1'000'000) throw ParseError(line_no, col, "tetrahedron count out of range");
      if (!cur.at_end()) throw ParseError(line_no, cur.column(), "trailing text after header");
      count = static_cast<int>(n);
      tets.assign(static_cast<std::size_t>(n), Tetrahedron{});
      seen.assign(static_cast<std::size_t>(n), false);
    } else {
      const int col = cur.column();
      const long long i = cur.integer("tetrahedron index");
      if (i < 0 || i >= *count) throw ParseError(line_no, col, "tetrahedron index " + std::to_string(i) + " out of range");
      if (seen[static_cast<std::size_t>(i)]) throw ParseError(line_no, col, "duplicate line for tetrahedron " + std::to_string(i));
      cur.skip_space();
      if (cur.pos >= cur.line.size() || cur.line[cur.pos] != ':') throw ParseError(line_no, cur.column(), "expected ':'");
      ++cur.pos;
      for (int f = 0; f < 4; ++f) {
        const int jcol = (cur.skip_space(), cur.column());
        const long long j = cur.integer("target tetrahedron");
        if (j < 0 || j >= *count)
          throw ParseError(line_no, jcol, "dangling gluing: tetrahedron " + std::to_string(j) + " does not exist");
        const int pcol = (cur.skip_space(), cur.column());
        const auto ptok = cur.token();
        Perm4 p;
        try {
          p = Perm4::parse(ptok);
        } catch (const std::invalid_argument& e) {
          throw ParseError(line_no, pcol, e.what());
        }
        tets[static_cast<std::size_t>(i)].faces[static_cast<std::size_t>(f)] = {static_cast<int>(j), p};
      }
      if (!cur.at_end()) throw ParseError(line_no, cur.column(), "trailing text after gluing line");
      seen[static_cast<std::size_t>(i)] = true;
    }
    if (end == text.size()) break;
  }
  if (!count) throw ParseError(line_no, 1, "missing header 'tets <N>'");
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (!seen[i]) throw ParseError(line_no, 1, "no gluing line for tetrahedron " + std::to_string(i));
  return Triangulation(std::move(tets), std::move(name));
}

/// Writes the gluing format accepted by parse_gluing_file.
inline std::string to_gluing_text(const Triangulation& tri) {
  std::ostringstream os;
  if (!tri.name().empty()) os << "# " << tri.name() << '\n';
  os << "tets " << tri.size() << '\n';
  for (int t = 0; t < tri.size(); ++t) {
    os << t << ':';
    for (const auto& g : tri.tetrahedron(t).faces) os << ' ' << g.tet << ' ' << g.perm.str();
    os << '\n';
  }
  return os.str();
}

/// 2-3 move across a face orbit shared by two distinct tetrahedra. The two
/// tetrahedra are replaced by three arranged around a new edge joining
/// their apexes; the result has one more tetrahedron and one more edge.
inline Triangulation pachner_23(const Triangulation& tri, int face_orbit) {
  if (face_orbit < 0 || face_orbit >= tri.face_count()) throw std::out_of_range("face orbit index out of range");
  const FaceOrbit& fo = tri.face_orbits()[static_cast<std::size_t>(face_orbit)];
  const int t0 = fo.sides[0].tet;
  const int f0 = fo.sides[0].face;
  const Gluing shared = tri.tetrahedron(t0).faces[static_cast<std::size_t>(f0)];
  const int t1 = shared.tet;
  if (t1 == t0) throw TriangulationError("2-3 move needs two distinct tetrahedra across the face");
  const Perm4 p = shared.perm;
  const auto u = face_vertices(f0);  // triangle vertices in t0
  const int a0 = f0;
  const int a1 = p[f0];

  const int n = tri.size();
  // old tetrahedron -> new index for the untouched ones
  std::vector<int> keep(static_cast<std::size_t>(n), -1);
  int next = 0;
  for (int t = 0; t < n; ++t)
    if (t != t0 && t != t1) keep[static_cast<std::size_t>(t)] = next++;
  const int base = next;  // new tetrahedra base + k, k = 0,1,2

  struct Target {
    int tet;
    int face;
    Perm4 map;  // old vertex -> new vertex
  };
  // For old (t, f): where that face lives in the new triangulation.
  auto remap = [&](int t, int f) -> Target {
    if (t != t0 && t != t1) return {keep[static_cast<std::size_t>(t)], f, Perm4()};
    for (int k = 0; k < 3; ++k) {
      const int uk = u[static_cast<std::size_t>(k)];
      const int uk1 = u[static_cast<std::size_t>((k + 1) % 3)];
      const int uk2 = u[static_cast<std::size_t>((k + 2) % 3)];
      if (t == t0 && f == uk) {
        // new tet vertices: 0 = a0, 1 = a1 (stands at uk's slot), 2 = uk1, 3 = uk2
        std::array<int, 4> img{};
        img[static_cast<std::size_t>(a0)] = 0;
        img[static_cast<std::size_t>(uk)] = 1;
        img[static_cast<std::size_t>(uk1)] = 2;
        img[static_cast<std::size_t>(uk2)] = 3;
        return {base + k, 1, Perm4(img[0], img[1], img[2], img[3])};
      }
      if (t == t1 && f == p[uk]) {
        std::array<int, 4> img{};
        img[static_cast<std::size_t>(p[uk])] = 0;
        img[static_cast<std::size_t>(a1)] = 1;
        img[static_cast<std::size_t>(p[uk1])] = 2;
        img[static_cast<std::size_t>(p[uk2])] = 3;
        return {base + k, 0, Perm4(img[0], img[1], img[2], img[3])};
      }
    }
    throw TriangulationError("2-3 move: internal face lookup failed");
  };

  std::vector<Tetrahedron> out(static_cast<std::size_t>(n + 1));
  for (int t = 0; t < n; ++t)
    for (int f = 0; f < 4; ++f) {
      if ((t == t0 && f == f0) || (t == t1 && f == a1)) continue;
      const Gluing& g = tri.tetrahedron(t).faces[static_cast<std::size_t>(f)];
      const Target src = remap(t, f);
      const Target dst = remap(g.tet, g.perm[f]);
      out[static_cast<std::size_t>(src.tet)].faces[static_cast<std::size_t>(src.face)] = {dst.tet, dst.map * g.perm * src.map.inverse()};
    }
  // internal faces around the new edge a0-a1
  const Perm4 swap23(0, 1, 3, 2);
  for (int k = 0; k < 3; ++k) {
    const int nk = base + k;
    const int nnext = base + (k + 1) % 3;
    const int nprev = base + (k + 2) % 3;
    out[static_cast<std::size_t>(nk)].faces[2] = {nnext, swap23};
    out[static_cast<std::size_t>(nk)].faces[3] = {nprev, swap23};
  }
  return Triangulation(std::move(out), tri.name());
}

}  // namespace tvgenus
