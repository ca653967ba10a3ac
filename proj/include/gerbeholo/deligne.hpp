#pragma once

// Exact combinatorial engine for gerbe local data pulled back along a map:
// cocycle checkers, holonomy, square-root holonomy, 3d-index, boundary data
// and the conversion between equivariant-structure data and
// equivariant-extension data.
//
// All fields are stored as integrated quantities attached to
// (simplex, index-tuple) incidences, so every identity is a finite exact
// relation testable to machine precision. Indices live in
// {-q, ..., -1, 1, ..., q} with the involution i -> -i.

#include <array>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gerbeholo/numerics.hpp"
#include "gerbeholo/simplicial.hpp"

namespace gh {

struct DeligneDiagnostics {
  struct Item {
    std::string kind;
    std::string where;
    double residual = 0.0;
  };
  std::vector<Item> items;
  bool ok() const { return items.empty(); }
  void flag(std::string kind, std::string where, double residual) {
    items.push_back({std::move(kind), std::move(where), residual});
  }
};

using Key2 = std::array<int, 2>;
using Key3 = std::array<int, 3>;

struct DeligneSample {
  int q = 2;

  // admissible indices per simplex, sorted; Theta-compatible samples satisfy
  // adm(theta s) = -adm(s)
  std::vector<std::vector<int>> adm_v, adm_e, adm_f, adm_t;

  std::vector<std::map<int, double>> Bint;    // [face][i]        = int_c B_i
  std::vector<std::map<Key2, double>> Aint;   // [edge][(i1,i2)]  = int_b A_i1i2
  std::vector<std::map<Key3, double>> dargG;  // [edge][(i1,i2,i3)] arg-lift of
                                              // g_i1i2i3(head)/g_i1i2i3(tail)
  std::vector<std::map<Key3, cd>> g;          // [vertex][(i1,i2,i3)]

  bool has_oracle = false;
  cd oracle_holonomy{1.0, 0.0};

  static bool admissible(const std::vector<int>& adm, int i);
};

struct EquivariantSample {
  DeligneSample d;

  std::vector<std::map<int, double>> Piint;      // [edge][i] = int_b Pi_i
  std::vector<std::map<Key2, cd>> chi;           // [vertex][(i1,i2)]
  std::vector<std::map<int, cd>> f;              // [vertex][i]
  std::vector<std::map<Key2, double>> dargChi;   // [edge][(i1,i2)]
  std::vector<std::map<int, double>> dargF;      // [edge][i]

  // fields on the fixed locus (empty maps away from fixed vertices)
  std::vector<std::map<int, double>> aprime;
  std::vector<std::map<Key2, cd>> hprime;
  std::vector<std::map<int, cd>> lprime;
  std::vector<std::map<int, cd>> sqrt_lprime;
  std::vector<int> fixed_component; // per vertex; -1 when not fixed
};

struct Assignment {
  std::vector<int> vertex_index, edge_index, face_index, tet_index;
};

// ---------------------------------------------------------------------------
// checkers

DeligneDiagnostics check_cocycle(const InvolutiveComplex& cx,
                                 const DeligneSample& d);

DeligneDiagnostics check_equivariant(const InvolutiveComplex& cx,
                                     const EquivariantSample& e);

// ---------------------------------------------------------------------------
// generators (exact synthetic data with closed-form oracles)

struct IndexConfig {
  int q = 2;            // index pairs +-1 .. +-q
  int max_per_cell = 2; // admissible indices drawn per top-cell orbit
  int extras = 1;       // extra indices unioned in per lower-dim orbit
};

// Plain sample on any closed oriented surface complex (involution ignored):
// random potentials over a random global face field; the closed-form
// holonomy exp(i sum W) is recorded as oracle.
DeligneSample generate_exact(const InvolutiveComplex& cx,
                             const IndexConfig& cfg, uint64_t seed);

// Equivariant generator. Retains its potentials so samples can be re-emitted
// after refinement moves with naturally restricted data.
class EquivariantGenerator {
 public:
  static EquivariantGenerator random(const InvolutiveComplex& cx,
                                     const IndexConfig& cfg, uint64_t seed,
                                     bool trivial = false);

  const InvolutiveComplex& complex() const { return cx_; }
  EquivariantSample emit() const;
  Assignment random_assignment(uint64_t seed) const;

  // applies the move to the complex and extends the potentials; when
  // fresh_potentials is false the new simplices get neutral (zero) potentials
  void refine(PachnerMove move, int target, bool fresh_potentials,
              uint64_t seed = 0);

  // flips the stored square-root sign at a fixed vertex
  void flip_sqrt_sign(int fixed_vertex);

 private:
  InvolutiveComplex cx_;
  IndexConfig cfg_;
  bool trivial_ = false;
  // potentials
  std::vector<double> W_;                          // per face
  std::vector<double> xi_;                         // per vertex, odd
  std::vector<std::map<int, double>> R_;           // per edge per index
  std::vector<std::map<Key2, double>> mu_;         // per vertex, antisym keys
  std::vector<std::map<int, double>> nu_;          // per vertex per index
  std::vector<int> sqrt_sign_;                     // per vertex (+-1, fixed only)

  void generate_admissibility(std::mt19937_64& rng);
  std::vector<std::vector<int>> adm_v_, adm_e_, adm_f_, adm_t_;

  double mu(int v, int i, int j) const;
  friend struct EquivariantGeneratorAccess;
};

// ---------------------------------------------------------------------------
// evaluators

// Gerbe holonomy from local data on a closed oriented surface complex.
cd holonomy(const InvolutiveComplex& cx, const DeligneSample& d,
            const Assignment& a);

struct SqrtOptions {
  int star_rotation = 0;        // rotate the vertex-star start (associativity)
  bool prefer_theta_lift = false; // use the other reference lift off Sigma'
};

// Square-root holonomy of an equivariant sample over an involutive surface
// complex with lift selection; the product over selected lifts of the
// Z2-graded local data.
cd sqrt_holonomy(const InvolutiveComplex& cx, const EquivariantSample& e,
                 const Assignment& a, const SqrtOptions& opt = {});

// Integrated curvature of one tetrahedron: sum of face B-integrals over the
// boundary of t with induced orientations, using index i (admissible on t).
double tet_curvature(const InvolutiveComplex& cx3, const DeligneSample& d,
                     int t, int i);

struct Index3dResult {
  int sign = 0;       // +1 or -1
  double raw_phase = 0.0;
  double residue = 0.0; // distance of raw phase to {0, pi}
};

struct NotQuantized : NumericsError {
  double residue;
  NotQuantized(const std::string& m, double r) : NumericsError(m), residue(r) {}
};

// 3d-index from local data: exp(-i/2 sum_h H_per_tet) times the square-root
// holonomy of the boundary restriction. H_per_tet is indexed by parent tet id
// (entries required for every tet of the domain).
Index3dResult index3d(const DomainDecomposition3& dd,
                      const EquivariantSample& e3,
                      const std::map<int, double>& H_per_tet,
                      const Assignment& a3, const SqrtOptions& opt = {});

// Restriction of an equivariant sample (and assignment) on the parent
// 3-complex to the boundary surface of a domain decomposition.
std::pair<EquivariantSample, Assignment> restrict_to_boundary(
    const DomainDecomposition3& dd, const EquivariantSample& e3,
    const Assignment& a3);

// ---------------------------------------------------------------------------
// graded extension data (conversion equivariant structure <-> extension)

// Z2-graded local data table: composite index (i, z), z in {+1,-1}.
struct GradedSample {
  int q = 2;
  // value tables keyed by (i, z) tuples flattened as pairs
  std::vector<std::map<std::array<int, 4>, double>> Bt;   // [face][(i,z)] pads 0
  std::vector<std::map<std::array<int, 4>, double>> At;   // [edge][(i1,z1,i2,z2)]
  std::vector<std::map<std::array<int, 6>, cd>> gt;       // [vertex][(i,z)x3]
  std::vector<std::map<std::array<int, 6>, double>> dargGt; // [edge][(i,z)x3]
};

// Builds the graded table from an equivariant sample (imposed-relation form).
GradedSample extension_from_structure(const InvolutiveComplex& cx,
                                      const EquivariantSample& e);

// Checks the graded cocycle relations of the extension table.
DeligneDiagnostics check_graded(const InvolutiveComplex& cx,
                                const GradedSample& gs,
                                const EquivariantSample& e);

// Extracts (Pi, chi, f) back from a graded table; used for the round-trip
// identity.
struct ExtractedStructure {
  std::vector<std::map<int, double>> Piint;
  std::vector<std::map<Key2, cd>> chi;
};
ExtractedStructure structure_from_extension(const InvolutiveComplex& cx,
                                            const GradedSample& gs);

// ---------------------------------------------------------------------------
// serialization (schema "deligne-v1"): bundle of complex + sample (+
// equivariant fields) + assignment

std::string deligne_bundle_to_json(const InvolutiveComplex& cx,
                                   const EquivariantSample& e,
                                   const Assignment& a, bool equivariant);

struct DeligneBundle {
  InvolutiveComplex cx;
  EquivariantSample e;
  Assignment a;
  bool equivariant = false;
};
DeligneBundle deligne_bundle_from_json(const std::string& text);

} // namespace gh
