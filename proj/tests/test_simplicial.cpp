#include "doctest.h"

#include <set>
#include <stdexcept>

#include "gerbeholo/simplicial.hpp"

using namespace gh;

TEST_CASE("build_torus2 basic counts and invariants") {
  auto cx = build_torus2(4);
  CHECK(cx.num_vertices() == 16);
  CHECK(cx.num_faces() == 32);
  CHECK(cx.fixed_vertices.size() == 4);
  // Euler characteristic of the torus
  CHECK(cx.num_vertices() - cx.num_edges() + cx.num_faces() == 0);
  CHECK(validate(cx).ok());
  CHECK_THROWS_AS(build_torus2(5), std::invalid_argument);
}

TEST_CASE("build_torus2(6) orbit counts") {
  auto cx = build_torus2(6);
  CHECK(cx.fixed_vertices.size() == 4);
  std::set<int> orbits;
  for (int v = 0; v < cx.num_vertices(); ++v)
    orbits.insert(std::min(v, cx.inv_vertex[v]));
  CHECK(static_cast<int>(orbits.size()) == (cx.num_vertices() - 4) / 2 + 4);
  CHECK(validate(cx).ok());
}

TEST_CASE("vertex stars close on the torus") {
  auto cx = build_torus2(4);
  for (int v = 0; v < cx.num_vertices(); ++v) {
    auto star = surface_vertex_star(cx, v);
    CHECK(star.faces.size() == 6); // grid diagonal triangulation: valence 6
    CHECK(star.edges.size() == star.faces.size());
  }
  // at a fixed vertex the involution rotates the star by half a turn
  const int v0 = cx.fixed_vertices[0];
  auto star = surface_vertex_star(cx, v0);
  const size_t k = star.edges.size();
  for (size_t j = 0; j < k; ++j)
    CHECK(cx.inv_edge[star.edges[j]] == star.edges[(j + k / 2) % k]);
}

TEST_CASE("validate flags corrupted complexes") {
  auto cx = build_torus2(4);
  auto good = validate(cx);
  CHECK(good.ok());

  auto bad = cx;
  std::swap(bad.inv_vertex[0], bad.inv_vertex[1]);
  CHECK_FALSE(validate(bad).ok());

  auto bad2 = cx;
  bad2.face_selected[0] = bad2.face_selected[bad2.inv_face[0]];
  CHECK_FALSE(validate(bad2).ok());
}

TEST_CASE("pachner face split counts") {
  auto cx = build_torus2(4);
  const int f = 0;
  auto rr = pachner_refine(cx, PachnerMove::FaceSplit, f);
  CHECK(rr.refined.num_faces() == cx.num_faces() + 4);
  CHECK(validate(rr.refined).ok());
  // Euler characteristic preserved
  CHECK(rr.refined.num_vertices() - rr.refined.num_edges() +
            rr.refined.num_faces() ==
        0);
  CHECK(rr.face_children[f].size() == 3);
}

TEST_CASE("pachner edge split counts") {
  auto cx = build_torus2(4);
  const int e = 0;
  auto rr = pachner_refine(cx, PachnerMove::EdgeSplit, e);
  // two adjacent faces per lift split in two: +4 faces
  CHECK(rr.refined.num_faces() == cx.num_faces() + 4);
  CHECK(rr.refined.num_vertices() == cx.num_vertices() + 2);
  CHECK(validate(rr.refined).ok());
  CHECK(rr.edge_children[e].size() == 2);
  CHECK(rr.refined.num_vertices() - rr.refined.num_edges() +
            rr.refined.num_faces() ==
        0);
}

TEST_CASE("pachner refinements on disjoint orbits commute on counts") {
  auto cx = build_torus2(6);
  auto a = pachner_refine(cx, PachnerMove::FaceSplit, 0);
  auto ab = pachner_refine(a.refined, PachnerMove::FaceSplit, 5);
  auto b = pachner_refine(cx, PachnerMove::FaceSplit, 5);
  auto ba = pachner_refine(b.refined, PachnerMove::FaceSplit, 0);
  CHECK(ab.refined.num_faces() == ba.refined.num_faces());
  CHECK(ab.refined.num_edges() == ba.refined.num_edges());
  CHECK(validate(ab.refined).ok());
  CHECK(validate(ba.refined).ok());
}

TEST_CASE("build_torus3_with_domain structure") {
  for (int axis : {1, 3}) {
    auto dd = build_torus3_with_domain(4, axis);
    CHECK(dd.parent.fixed_vertices.size() == 8);
    CHECK(static_cast<int>(dd.domain_tets.size()) == dd.parent.num_tets() / 2);
    CHECK(validate(dd.parent).ok());
    // boundary: two involutive tori
    auto diag = validate(dd.boundary);
    for (const auto& v : diag.violations) INFO(v.what << " " << v.where);
    CHECK(diag.ok());
    CHECK(dd.boundary.fixed_vertices.size() == 8); // 4 TRIMs per torus
    CHECK(dd.boundary.num_vertices() - dd.boundary.num_edges() +
              dd.boundary.num_faces() ==
          0); // disjoint tori
  }
}

TEST_CASE("complex json round trip") {
  auto cx = build_torus2(4);
  auto text = complex_to_json(cx);
  auto back = complex_from_json(text);
  CHECK(back.num_vertices() == cx.num_vertices());
  CHECK(back.num_edges() == cx.num_edges());
  CHECK(back.num_faces() == cx.num_faces());
  CHECK(back.face_vertices == cx.face_vertices);
  CHECK(back.inv_vertex == cx.inv_vertex);
  CHECK(std::equal(back.edge_selected.begin(), back.edge_selected.end(),
                   cx.edge_selected.begin()));
  CHECK(validate(back).ok());
}
