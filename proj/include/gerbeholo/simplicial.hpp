#pragma once

// Oriented simplicial 2- and 3-complexes carrying a simplicial involution,
// their lift selections, refinement moves and validation. The built-in
// carriers are the 2-torus with k -> -k (4 fixed vertices) and the 3-torus
// with k -> -k (8 fixed vertices) together with a fundamental-domain
// decomposition.

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace gh {

struct ComplexDiagnostics {
  struct Item {
    std::string what;
    std::string where;
  };
  std::vector<Item> violations;
  bool ok() const { return violations.empty(); }
};

struct InvolutiveComplex {
  int dim = 2; // 2 or 3

  std::vector<std::array<double, 3>> vertex_pos;
  std::vector<std::array<int, 2>> edges;        // (tail, head)
  std::vector<std::array<int, 3>> face_vertices; // oriented triple
  std::vector<std::array<int, 3>> face_edges;    // edge k runs fv[k] -> fv[k+1]
  std::vector<std::array<int, 4>> tet_vertices;  // oriented 4-tuple (dim 3)
  std::vector<std::array<int, 4>> tet_faces;     // face k opposite vertex k

  std::vector<int> inv_vertex, inv_edge, inv_face, inv_tet;
  std::vector<int> fixed_vertices; // sorted ids

  std::vector<uint8_t> edge_selected, face_selected, tet_selected;

  int num_vertices() const { return static_cast<int>(vertex_pos.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }
  int num_faces() const { return static_cast<int>(face_vertices.size()); }
  int num_tets() const { return static_cast<int>(tet_vertices.size()); }

  bool vertex_fixed(int v) const { return inv_vertex[v] == v; }

  // +1 if edge e's stored orientation agrees with the boundary orientation
  // induced by face f, -1 otherwise. e must bound f.
  int edge_orientation_in_face(int e, int f) const;

  // +1 if the involution maps e's stored orientation onto the stored
  // orientation of inv_edge[e].
  int edge_flip_under_involution(int e) const;

  // +1 if the involution maps f's stored orientation onto the stored
  // orientation of inv_face[f] (even permutation of the vertex triple).
  int face_flip_under_involution(int f) const;

  // parity of the involution on tet t (+1 even permutation / -1 odd)
  int tet_flip_under_involution(int t) const;

  // the two faces bounding edge e (closed surface); dim 2 only
  std::array<int, 2> faces_of_edge(int e) const;

  // find edge id by unordered endpoints; -1 if absent
  int find_edge(int a, int b) const;
};

// Ordered star of a vertex on a closed oriented surface. faces[j] and
// faces[j+1] share edges[j]; edges[j] is the edge of faces[j] at v on which
// v is the head under the face-induced orientation. edges.size() ==
// faces.size(); edges.back() leads back to faces.front().
struct VertexStar {
  std::vector<int> faces;
  std::vector<int> edges;
};
VertexStar surface_vertex_star(const InvolutiveComplex& cx, int v);

struct DomainDecomposition3 {
  InvolutiveComplex parent;
  std::vector<int> domain_tets; // tet ids of the closure F
  InvolutiveComplex boundary;   // closed oriented involutive surface
  // maps from boundary simplices to parent simplices
  std::vector<int> bnd_vertex_parent;
  std::vector<int> bnd_edge_parent;
  std::vector<int> bnd_edge_flip; // +1 if orientations agree
  std::vector<int> bnd_face_parent;
  std::vector<int> bnd_face_flip;
};

// Triangulated T^2 = R^2/(2 pi Z^2) on the n x n grid k_j = -pi + 2 pi j / n,
// split along main diagonals (equivariant under k -> -k), n even >= 4.
InvolutiveComplex build_torus2(int n);

// Tetrahedralized T^3 (Freudenthal pattern) with the orientation-reversing
// involution k -> -k and F = closure of {k_axis in [0, pi]}; cut_axis in
// {1,2,3}.
DomainDecomposition3 build_torus3_with_domain(int n, int cut_axis);

enum class PachnerMove { FaceSplit, EdgeSplit };

struct RefinementResult {
  InvolutiveComplex refined;
  // old simplex -> new simplices
  std::vector<std::vector<int>> face_children; // per old face
  std::vector<std::vector<int>> edge_children; // per old edge (1 or 2)
  std::vector<int> vertex_map;                 // old vertex id -> new id
  // new vertices with provenance
  std::vector<int> new_vertices;
  std::vector<int> new_vertex_source; // old face id (FaceSplit) or edge id
};

// Applies the move simultaneously to the target simplex and its involution
// image (surface complexes only). Throws std::invalid_argument when the move
// is incompatible with the fixed-point structure.
RefinementResult pachner_refine(const InvolutiveComplex& cx, PachnerMove move,
                                int target);

ComplexDiagnostics validate(const InvolutiveComplex& cx);

// JSON serialization (schema "complex-v1")
std::string complex_to_json(const InvolutiveComplex& cx);
InvolutiveComplex complex_from_json(const std::string& text);

} // namespace gh
