#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hurwitz/core.hpp"
#include "hurwitz/permutation.hpp"

namespace hurwitz {

class MapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rotation system on darts 0..2E-1. alpha pairs darts into edges, sigma
/// lists the darts around each vertex counterclockwise, faces are the cycles
/// of sigma * alpha.
class CombinatorialMap {
 public:
  /// Throws MapError unless alpha is a fixed-point-free involution of the
  /// same degree as sigma.
  CombinatorialMap(Perm alpha, Perm sigma);

  const Perm& alpha() const noexcept { return alpha_; }
  const Perm& sigma() const noexcept { return sigma_; }
  int darts() const noexcept { return static_cast<int>(alpha_.size()); }
  int edges() const noexcept { return darts() / 2; }
  int vertices() const;
  int face_count() const;
  Perm face_perm() const { return compose(sigma_, alpha_); }
  Partition vertex_degrees() const { return cycle_type(sigma_); }
  bool connected() const;
  /// From V - E + F = 2 - 2g; requires a connected map.
  int genus() const;

 private:
  Perm alpha_;
  Perm sigma_;
};

/// Face degrees (cycle lengths of sigma * alpha), largest first.
std::vector<int> faces(const CombinatorialMap& map);

/// Inserts a white vertex in the middle of every edge. Darts d < 2E keep
/// their black vertex; dart d + 2E sits at the midpoint of the edge of d.
/// Face cycles double in length, so half of each is the dessin face degree.
CombinatorialMap subdivide_to_bipartite(const CombinatorialMap& map);

/// (vertex degrees, (2^E), face degrees, 2E, 0). Throws MapError on a
/// disconnected or non-planar map and DatumError on a trivial partition.
BranchDatum map_to_datum(const CombinatorialMap& map);

/// Which divisibility patterns of the planar graph corollaries a map meets
/// for face modulus k and vertex modulus l. The dual reading (vertices
/// modulo k, faces modulo l) is reported separately.
struct GraphReport {
  int k = 2;
  int l = 2;
  std::vector<int> bad_faces;     // face degrees not divisible by k
  std::vector<int> bad_vertices;  // vertex degrees not divisible by l
  /// Descriptions of the patterns that hold, forbidden or not.
  std::vector<std::string> patterns;
  /// True when some forbidden pattern holds (impossible for a real map).
  bool forbidden = false;
  /// True when check_t1_bad certifies map_to_datum (also impossible).
  bool t1_certified = false;
};

GraphReport check_graph_hypotheses(const CombinatorialMap& map, int k, int l);

/// Text format: "v: d1 d2 ..." per vertex in rotation order and "e: a b"
/// per edge; dart labels are arbitrary integers; '#' starts a comment.
CombinatorialMap parse_map(std::string_view text);
CombinatorialMap load_map(const std::string& path);
std::string format_map(const CombinatorialMap& map);

/// Every connected planar map with 1..max_edges edges (loops and multiple
/// edges allowed), one per orientation-preserving isomorphism class.
std::vector<CombinatorialMap> planar_maps(int max_edges);

/// Lexicographically least relabelling code over all roots.
std::vector<int> canonical_code(const CombinatorialMap& map);

/// Small named maps: "edge", "loop", "triangle", "tetrahedron", "cycle<N>", "star<N>".
CombinatorialMap named_map(const std::string& name);

}  // namespace hurwitz
