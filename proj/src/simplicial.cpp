#include "gerbeholo/simplicial.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "gerbeholo/numerics.hpp"
#include "json.hpp"

namespace gh {

namespace {

using Pair = std::array<int, 2>;
using Triple = std::array<int, 3>;

Pair sorted_pair(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

Triple sorted_triple(int a, int b, int c) {
  Triple t{a, b, c};
  std::sort(t.begin(), t.end());
  return t;
}

// parity of the permutation taking `from` to `to` (same 3 elements)
int triple_parity(const Triple& from, const Triple& to) {
  Triple f = from;
  int sign = 1;
  for (int i = 0; i < 3; ++i) {
    if (f[i] == to[i]) continue;
    for (int j = i + 1; j < 3; ++j)
      if (f[j] == to[i]) {
        std::swap(f[i], f[j]);
        sign = -sign;
        break;
      }
  }
  return (f == to) ? sign : 0;
}

int quad_parity(std::array<int, 4> from, const std::array<int, 4>& to) {
  int sign = 1;
  for (int i = 0; i < 4; ++i) {
    if (from[i] == to[i]) continue;
    for (int j = i + 1; j < 4; ++j)
      if (from[j] == to[i]) {
        std::swap(from[i], from[j]);
        sign = -sign;
        break;
      }
  }
  return (from == to) ? sign : 0;
}

// Assembles edges, involution permutations, fixed sets and canonical
// selections from vertices + oriented faces (+ tets for dim 3).
InvolutiveComplex assemble(int dim,
                           std::vector<std::array<double, 3>> positions,
                           std::vector<int> inv_vertex,
                           std::vector<Triple> faces,
                           std::vector<std::array<int, 4>> tets = {}) {
  InvolutiveComplex cx;
  cx.dim = dim;
  cx.vertex_pos = std::move(positions);
  cx.inv_vertex = std::move(inv_vertex);
  cx.face_vertices = std::move(faces);
  cx.tet_vertices = std::move(tets);

  std::map<Pair, int> edge_id;
  auto get_edge = [&](int a, int b) {
    const Pair key = sorted_pair(a, b);
    auto it = edge_id.find(key);
    if (it != edge_id.end()) return it->second;
    const int id = static_cast<int>(cx.edges.size());
    cx.edges.push_back({key[0], key[1]});
    edge_id.emplace(key, id);
    return id;
  };

  cx.face_edges.resize(cx.face_vertices.size());
  for (size_t f = 0; f < cx.face_vertices.size(); ++f) {
    const auto& fv = cx.face_vertices[f];
    for (int k = 0; k < 3; ++k)
      cx.face_edges[f][k] = get_edge(fv[k], fv[(k + 1) % 3]);
  }

  std::map<Triple, int> face_id;
  for (size_t f = 0; f < cx.face_vertices.size(); ++f)
    face_id[sorted_triple(cx.face_vertices[f][0], cx.face_vertices[f][1],
                          cx.face_vertices[f][2])] = static_cast<int>(f);

  if (dim == 3) {
    cx.tet_faces.resize(cx.tet_vertices.size());
    for (size_t t = 0; t < cx.tet_vertices.size(); ++t) {
      const auto& w = cx.tet_vertices[t];
      for (int k = 0; k < 4; ++k) {
        Triple tri;
        int idx = 0;
        for (int j = 0; j < 4; ++j)
          if (j != k) tri[idx++] = w[j];
        auto it = face_id.find(sorted_triple(tri[0], tri[1], tri[2]));
        if (it == face_id.end())
          throw std::runtime_error("assemble: tet face missing");
        cx.tet_faces[t][k] = it->second;
      }
      for (int k = 0; k < 4; ++k)
        for (int j = 0; j < 3; ++j) get_edge(w[k], w[(k + j + 1) % 4]);
    }
  }

  const auto& iv = cx.inv_vertex;
  cx.inv_edge.resize(cx.edges.size());
  for (size_t e = 0; e < cx.edges.size(); ++e) {
    auto it = edge_id.find(sorted_pair(iv[cx.edges[e][0]], iv[cx.edges[e][1]]));
    if (it == edge_id.end())
      throw std::runtime_error("assemble: involution not simplicial on edges");
    cx.inv_edge[e] = it->second;
  }
  cx.inv_face.resize(cx.face_vertices.size());
  for (size_t f = 0; f < cx.face_vertices.size(); ++f) {
    const auto& fv = cx.face_vertices[f];
    auto it = face_id.find(sorted_triple(iv[fv[0]], iv[fv[1]], iv[fv[2]]));
    if (it == face_id.end())
      throw std::runtime_error("assemble: involution not simplicial on faces");
    cx.inv_face[f] = it->second;
  }
  if (dim == 3) {
    std::map<std::array<int, 4>, int> tet_id;
    for (size_t t = 0; t < cx.tet_vertices.size(); ++t) {
      auto w = cx.tet_vertices[t];
      std::sort(w.begin(), w.end());
      tet_id[w] = static_cast<int>(t);
    }
    cx.inv_tet.resize(cx.tet_vertices.size());
    for (size_t t = 0; t < cx.tet_vertices.size(); ++t) {
      std::array<int, 4> w = {iv[cx.tet_vertices[t][0]], iv[cx.tet_vertices[t][1]],
                              iv[cx.tet_vertices[t][2]], iv[cx.tet_vertices[t][3]]};
      std::sort(w.begin(), w.end());
      auto it = tet_id.find(w);
      if (it == tet_id.end())
        throw std::runtime_error("assemble: involution not simplicial on tets");
      cx.inv_tet[t] = it->second;
    }
  }

  for (int v = 0; v < cx.num_vertices(); ++v)
    if (iv[v] == v) cx.fixed_vertices.push_back(v);

  cx.edge_selected.assign(cx.edges.size(), 0);
  for (size_t e = 0; e < cx.edges.size(); ++e)
    if (static_cast<int>(e) <= cx.inv_edge[e]) cx.edge_selected[e] = 1;
  cx.face_selected.assign(cx.face_vertices.size(), 0);
  for (size_t f = 0; f < cx.face_vertices.size(); ++f)
    if (static_cast<int>(f) <= cx.inv_face[f]) cx.face_selected[f] = 1;
  if (dim == 3) {
    cx.tet_selected.assign(cx.tet_vertices.size(), 0);
    for (size_t t = 0; t < cx.tet_vertices.size(); ++t)
      if (static_cast<int>(t) <= cx.inv_tet[t]) cx.tet_selected[t] = 1;
  }
  return cx;
}

} // namespace

int InvolutiveComplex::edge_orientation_in_face(int e, int f) const {
  const auto& fv = face_vertices[f];
  for (int k = 0; k < 3; ++k) {
    if (face_edges[f][k] != e) continue;
    return (edges[e][0] == fv[k] && edges[e][1] == fv[(k + 1) % 3]) ? 1 : -1;
  }
  throw std::runtime_error("edge_orientation_in_face: edge not on face");
}

int InvolutiveComplex::edge_flip_under_involution(int e) const {
  const int ie = inv_edge[e];
  return (inv_vertex[edges[e][0]] == edges[ie][0]) ? 1 : -1;
}

int InvolutiveComplex::face_flip_under_involution(int f) const {
  const int jf = inv_face[f];
  const Triple img{inv_vertex[face_vertices[f][0]],
                   inv_vertex[face_vertices[f][1]],
                   inv_vertex[face_vertices[f][2]]};
  return triple_parity(img, face_vertices[jf]);
}

int InvolutiveComplex::tet_flip_under_involution(int t) const {
  const int jt = inv_tet[t];
  const std::array<int, 4> img{
      inv_vertex[tet_vertices[t][0]], inv_vertex[tet_vertices[t][1]],
      inv_vertex[tet_vertices[t][2]], inv_vertex[tet_vertices[t][3]]};
  return quad_parity(img, tet_vertices[jt]);
}

std::array<int, 2> InvolutiveComplex::faces_of_edge(int e) const {
  std::array<int, 2> out{-1, -1};
  int found = 0;
  for (int f = 0; f < num_faces(); ++f)
    for (int k = 0; k < 3; ++k)
      if (face_edges[f][k] == e) {
        if (found < 2) out[found] = f;
        ++found;
      }
  if (found != 2)
    throw std::runtime_error("faces_of_edge: edge does not bound two faces");
  return out;
}

int InvolutiveComplex::find_edge(int a, int b) const {
  for (int e = 0; e < num_edges(); ++e) {
    if ((edges[e][0] == a && edges[e][1] == b) ||
        (edges[e][0] == b && edges[e][1] == a))
      return e;
  }
  return -1;
}

VertexStar surface_vertex_star(const InvolutiveComplex& cx, int v) {
  // local adjacency: edge -> faces
  std::map<int, std::array<int, 2>> efaces;
  std::vector<int> incident;
  for (int f = 0; f < cx.num_faces(); ++f) {
    bool touches = false;
    for (int k = 0; k < 3; ++k)
      if (cx.face_vertices[f][k] == v) touches = true;
    if (touches) incident.push_back(f);
    for (int k = 0; k < 3; ++k) {
      const int e = cx.face_edges[f][k];
      auto [it, fresh] = efaces.try_emplace(e, std::array<int, 2>{f, -1});
      if (!fresh && it->second[1] < 0 && it->second[0] != f) it->second[1] = f;
    }
  }
  if (incident.empty()) throw std::runtime_error("vertex_star: isolated vertex");

  auto head_edge = [&](int f) {
    const auto& fv = cx.face_vertices[f];
    for (int k = 0; k < 3; ++k)
      if (fv[k] == v) return cx.face_edges[f][(k + 2) % 3];
    throw std::runtime_error("vertex_star: face lost the vertex");
  };

  VertexStar star;
  const int f0 = *std::min_element(incident.begin(), incident.end());
  int f = f0;
  do {
    star.faces.push_back(f);
    const int e = head_edge(f);
    star.edges.push_back(e);
    const auto& pair = efaces.at(e);
    f = (pair[0] == f) ? pair[1] : pair[0];
    if (f < 0) throw std::runtime_error("vertex_star: open edge at vertex");
    if (star.faces.size() > incident.size())
      throw std::runtime_error("vertex_star: star does not close");
  } while (f != f0);
  if (star.faces.size() != incident.size())
    throw std::runtime_error("vertex_star: disconnected star");
  return star;
}

// ---------------------------------------------------------------------------
// builders

InvolutiveComplex build_torus2(int n) {
  if (n % 2 != 0 || n < 4)
    throw std::invalid_argument("build_torus2: n must be even and >= 4");

  auto vid = [n](int a, int b) {
    return ((a % n + n) % n) * n + ((b % n + n) % n);
  };
  std::vector<std::array<double, 3>> pos(static_cast<size_t>(n) * n);
  std::vector<int> inv(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      pos[vid(a, b)] = {-kPi + kTwoPi * a / n, -kPi + kTwoPi * b / n, 0.0};
      inv[vid(a, b)] = vid(-a, -b);
    }

  std::vector<Triple> faces;
  faces.reserve(static_cast<size_t>(2) * n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      faces.push_back({vid(a, b), vid(a + 1, b), vid(a + 1, b + 1)});
      faces.push_back({vid(a, b), vid(a + 1, b + 1), vid(a, b + 1)});
    }
  return assemble(2, std::move(pos), std::move(inv), std::move(faces));
}

DomainDecomposition3 build_torus3_with_domain(int n, int cut_axis) {
  if (n % 2 != 0 || n < 4)
    throw std::invalid_argument("build_torus3_with_domain: n even >= 4");
  if (cut_axis < 1 || cut_axis > 3)
    throw std::invalid_argument("build_torus3_with_domain: axis in {1,2,3}");

  auto vid = [n](int a, int b, int c) {
    const int aa = (a % n + n) % n, bb = (b % n + n) % n, cc = (c % n + n) % n;
    return (aa * n + bb) * n + cc;
  };
  const int nv = n * n * n;
  std::vector<std::array<double, 3>> pos(nv);
  std::vector<int> inv(nv);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        pos[vid(a, b, c)] = {-kPi + kTwoPi * a / n, -kPi + kTwoPi * b / n,
                             -kPi + kTwoPi * c / n};
        inv[vid(a, b, c)] = vid(-a, -b, -c);
      }

  static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                  {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  static const int psign[6] = {1, -1, -1, 1, 1, -1};

  std::vector<std::array<int, 4>> tets;
  std::vector<int> tet_in_domain;
  tets.reserve(static_cast<size_t>(6) * nv);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        const int corner[3] = {a, b, c};
        const int axis_idx = corner[cut_axis - 1];
        const bool in_domain = axis_idx >= n / 2;
        for (int p = 0; p < 6; ++p) {
          int q[3] = {a, b, c};
          std::array<int, 4> w;
          w[0] = vid(q[0], q[1], q[2]);
          for (int s = 0; s < 3; ++s) {
            q[perms[p][s]] += 1;
            w[s + 1] = vid(q[0], q[1], q[2]);
          }
          if (psign[p] < 0) std::swap(w[2], w[3]);
          tets.push_back(w);
          tet_in_domain.push_back(in_domain ? 1 : 0);
        }
      }

  std::vector<Triple> faces;
  {
    std::set<Triple> seen;
    for (const auto& w : tets)
      for (int k = 0; k < 4; ++k) {
        Triple tri;
        int idx = 0;
        for (int j = 0; j < 4; ++j)
          if (j != k) tri[idx++] = w[j];
        const Triple key = sorted_triple(tri[0], tri[1], tri[2]);
        if (seen.insert(key).second) faces.push_back(key);
      }
  }

  DomainDecomposition3 dd;
  dd.parent = assemble(3, std::move(pos), std::move(inv), std::move(faces),
                       std::move(tets));
  for (size_t t = 0; t < tet_in_domain.size(); ++t)
    if (tet_in_domain[t]) dd.domain_tets.push_back(static_cast<int>(t));

  // ---- boundary surface: faces incident to exactly one domain tet
  const auto& par = dd.parent;
  std::vector<int> face_count(par.num_faces(), 0);
  std::vector<int> face_owner(par.num_faces(), -1); // domain tet owning it
  std::vector<int> owner_slot(par.num_faces(), -1);
  for (int t : dd.domain_tets)
    for (int k = 0; k < 4; ++k) {
      const int c = par.tet_faces[t][k];
      face_count[c]++;
      face_owner[c] = t;
      owner_slot[c] = k;
    }

  std::vector<int> bfaces;
  for (int c = 0; c < par.num_faces(); ++c)
    if (face_count[c] == 1) bfaces.push_back(c);

  std::vector<int> v_new(par.num_vertices(), -1);
  std::vector<std::array<double, 3>> bpos;
  std::vector<int> bvert_parent;
  auto bvid = [&](int v) {
    if (v_new[v] < 0) {
      v_new[v] = static_cast<int>(bpos.size());
      bpos.push_back(par.vertex_pos[v]);
      bvert_parent.push_back(v);
    }
    return v_new[v];
  };

  std::vector<Triple> btris;
  std::vector<int> btri_parent;
  std::vector<int> btri_flip;
  for (int c : bfaces) {
    const int t = face_owner[c];
    const int k = owner_slot[c];
    const auto& w = par.tet_vertices[t];
    Triple tri;
    int idx = 0;
    for (int j = 0; j < 4; ++j)
      if (j != k) tri[idx++] = w[j];
    if (k % 2 == 1) std::swap(tri[1], tri[2]); // boundary orientation sign
    const int flip = triple_parity(tri, par.face_vertices[c]);
    btri_parent.push_back(c);
    btri_flip.push_back(flip);
    btris.push_back({bvid(tri[0]), bvid(tri[1]), bvid(tri[2])});
  }

  std::vector<int> binv(bpos.size());
  for (size_t v = 0; v < bpos.size(); ++v) {
    const int pv = par.inv_vertex[bvert_parent[v]];
    if (v_new[pv] < 0)
      throw std::runtime_error("boundary extraction: involution leaves surface");
    binv[v] = v_new[pv];
  }

  dd.boundary = assemble(2, std::move(bpos), std::move(binv), std::move(btris));
  dd.bnd_vertex_parent = std::move(bvert_parent);
  dd.bnd_face_parent = std::move(btri_parent);
  dd.bnd_face_flip = std::move(btri_flip);

  dd.bnd_edge_parent.resize(dd.boundary.num_edges());
  dd.bnd_edge_flip.resize(dd.boundary.num_edges());
  for (int e = 0; e < dd.boundary.num_edges(); ++e) {
    const int pa = dd.bnd_vertex_parent[dd.boundary.edges[e][0]];
    const int pb = dd.bnd_vertex_parent[dd.boundary.edges[e][1]];
    const int pe = par.find_edge(pa, pb);
    if (pe < 0) throw std::runtime_error("boundary extraction: edge missing");
    dd.bnd_edge_parent[e] = pe;
    dd.bnd_edge_flip[e] = (par.edges[pe][0] == pa) ? 1 : -1;
  }

  // inherit parent lift selection on the boundary
  for (int e = 0; e < dd.boundary.num_edges(); ++e)
    dd.boundary.edge_selected[e] = par.edge_selected[dd.bnd_edge_parent[e]];
  for (int f = 0; f < dd.boundary.num_faces(); ++f)
    dd.boundary.face_selected[f] = par.face_selected[dd.bnd_face_parent[f]];

  return dd;
}

// ---------------------------------------------------------------------------
// refinement

namespace {

std::array<double, 3> periodic_combination(
    const InvolutiveComplex& cx, const std::vector<int>& verts) {
  // base point plus the average of wrapped displacements
  const auto& base = cx.vertex_pos[verts[0]];
  std::array<double, 3> acc{0.0, 0.0, 0.0};
  for (size_t i = 1; i < verts.size(); ++i)
    for (int d = 0; d < 3; ++d)
      acc[d] += wrap_angle(cx.vertex_pos[verts[i]][d] - base[d]);
  std::array<double, 3> out;
  for (int d = 0; d < 3; ++d) {
    out[d] = base[d] + acc[d] / static_cast<double>(verts.size());
    out[d] = wrap_angle(out[d]);
    if (out[d] == -kPi) out[d] = kPi;
  }
  return out;
}

} // namespace

RefinementResult pachner_refine(const InvolutiveComplex& cx, PachnerMove move,
                                int target) {
  if (cx.dim != 2)
    throw std::invalid_argument("pachner_refine: surface complexes only");

  std::vector<std::array<double, 3>> pos = cx.vertex_pos;
  std::vector<int> invv = cx.inv_vertex;
  std::vector<int> new_vertices, new_vertex_source;

  // oriented face triples of the refined complex, with provenance
  std::vector<Triple> tris;
  std::vector<int> tri_parent;

  if (move == PachnerMove::FaceSplit) {
    if (target < 0 || target >= cx.num_faces())
      throw std::invalid_argument("pachner_refine: bad face target");
    const int f = target, jf = cx.inv_face[f];
    if (f == jf)
      throw std::invalid_argument(
          "pachner_refine: move incompatible with fixed-point structure");
    std::map<int, int> centroid;
    for (int g : {f, jf}) {
      const auto& fv = cx.face_vertices[g];
      const int w = static_cast<int>(pos.size());
      pos.push_back(periodic_combination(cx, {fv[0], fv[1], fv[2]}));
      invv.push_back(-1);
      centroid[g] = w;
      new_vertices.push_back(w);
      new_vertex_source.push_back(g);
    }
    invv[centroid[f]] = centroid[jf];
    invv[centroid[jf]] = centroid[f];

    for (int g = 0; g < cx.num_faces(); ++g) {
      const auto& fv = cx.face_vertices[g];
      if (g == f || g == jf) {
        const int w = centroid.at(g);
        for (int k = 0; k < 3; ++k) {
          tris.push_back({fv[k], fv[(k + 1) % 3], w});
          tri_parent.push_back(g);
        }
      } else {
        tris.push_back(fv);
        tri_parent.push_back(g);
      }
    }
  } else {
    if (target < 0 || target >= cx.num_edges())
      throw std::invalid_argument("pachner_refine: bad edge target");
    const int e = target, je = cx.inv_edge[e];
    if (e == je)
      throw std::invalid_argument(
          "pachner_refine: move incompatible with fixed-point structure");
    std::map<int, int> midpoint;
    for (int h : {e, je}) {
      const int w = static_cast<int>(pos.size());
      pos.push_back(periodic_combination(cx, {cx.edges[h][0], cx.edges[h][1]}));
      invv.push_back(-1);
      midpoint[h] = w;
      new_vertices.push_back(w);
      new_vertex_source.push_back(h);
    }
    invv[midpoint[e]] = midpoint[je];
    invv[midpoint[je]] = midpoint[e];

    for (int g = 0; g < cx.num_faces(); ++g) {
      const auto& fv = cx.face_vertices[g];
      int split_k = -1, split_edge = -1, nsplit = 0;
      for (int k = 0; k < 3; ++k) {
        const int ge = cx.face_edges[g][k];
        if (ge == e || ge == je) {
          split_k = k;
          split_edge = ge;
          ++nsplit;
        }
      }
      if (nsplit > 1)
        throw std::invalid_argument(
            "pachner_refine: target orbit shares a face; refine elsewhere first");
      if (nsplit == 0) {
        tris.push_back(fv);
        tri_parent.push_back(g);
      } else {
        const int a = fv[split_k], b = fv[(split_k + 1) % 3],
                  c = fv[(split_k + 2) % 3];
        const int m = midpoint.at(split_edge);
        tris.push_back({a, m, c});
        tri_parent.push_back(g);
        tris.push_back({m, b, c});
        tri_parent.push_back(g);
      }
    }
  }

  RefinementResult rr;
  rr.refined = assemble(2, std::move(pos), std::move(invv), std::move(tris));
  rr.new_vertices = std::move(new_vertices);
  rr.new_vertex_source = std::move(new_vertex_source);
  rr.vertex_map.resize(cx.num_vertices());
  for (int v = 0; v < cx.num_vertices(); ++v) rr.vertex_map[v] = v;

  rr.face_children.resize(cx.num_faces());
  for (size_t t = 0; t < tri_parent.size(); ++t)
    rr.face_children[tri_parent[t]].push_back(static_cast<int>(t));

  rr.edge_children.resize(cx.num_edges());
  for (int e = 0; e < cx.num_edges(); ++e) {
    const int a = cx.edges[e][0], b = cx.edges[e][1];
    const int direct = rr.refined.find_edge(a, b);
    if (direct >= 0) {
      rr.edge_children[e].push_back(direct);
    } else {
      // split edge: find the midpoint as common neighbor among new vertices
      for (size_t i = 0; i < rr.new_vertices.size(); ++i) {
        const int m = rr.new_vertices[i];
        const int ea = rr.refined.find_edge(a, m);
        const int eb = rr.refined.find_edge(m, b);
        if (ea >= 0 && eb >= 0 && rr.new_vertex_source[i] == e) {
          rr.edge_children[e].push_back(ea);
          rr.edge_children[e].push_back(eb);
          break;
        }
      }
      if (rr.edge_children[e].empty())
        throw std::runtime_error("pachner_refine: lost an edge");
    }
  }

  // keep parent lift selections where they carry over
  auto& out = rr.refined;
  for (int f = 0; f < cx.num_faces(); ++f)
    for (int child : rr.face_children[f]) {
      out.face_selected[child] = cx.face_selected[f];
      out.face_selected[out.inv_face[child]] =
          static_cast<uint8_t>(cx.face_selected[f] ? 0 : 1);
    }
  for (int e = 0; e < cx.num_edges(); ++e)
    for (int child : rr.edge_children[e]) {
      out.edge_selected[child] = cx.edge_selected[e];
      out.edge_selected[out.inv_edge[child]] =
          static_cast<uint8_t>(cx.edge_selected[e] ? 0 : 1);
    }
  return rr;
}

// ---------------------------------------------------------------------------
// validation

ComplexDiagnostics validate(const InvolutiveComplex& cx) {
  ComplexDiagnostics d;
  auto flag = [&](std::string what, std::string where) {
    d.violations.push_back({std::move(what), std::move(where)});
  };

  for (int v = 0; v < cx.num_vertices(); ++v)
    if (cx.inv_vertex[cx.inv_vertex[v]] != v)
      flag("involution not an involution on vertices", "v" + std::to_string(v));
  for (int e = 0; e < cx.num_edges(); ++e) {
    if (cx.inv_edge[cx.inv_edge[e]] != e)
      flag("involution not an involution on edges", "e" + std::to_string(e));
    const int ie = cx.inv_edge[e];
    const auto img = sorted_pair(cx.inv_vertex[cx.edges[e][0]],
                                 cx.inv_vertex[cx.edges[e][1]]);
    if (img != sorted_pair(cx.edges[ie][0], cx.edges[ie][1]))
      flag("involution not simplicial on edges", "e" + std::to_string(e));
    if (ie == e)
      flag("fixed simplex of dimension 1", "e" + std::to_string(e));
  }
  for (int f = 0; f < cx.num_faces(); ++f) {
    if (cx.inv_face[cx.inv_face[f]] != f)
      flag("involution not an involution on faces", "f" + std::to_string(f));
    if (cx.inv_face[f] == f)
      flag("fixed simplex of dimension 2", "f" + std::to_string(f));
  }

  if (cx.dim == 2) {
    if (cx.fixed_vertices.size() % 2 != 0)
      flag("odd number of fixed vertices on a surface", "global");
    // closed surface: every edge borders exactly two faces, with opposite
    // induced orientations
    std::vector<int> count(cx.num_edges(), 0);
    std::vector<int> orsum(cx.num_edges(), 0);
    for (int f = 0; f < cx.num_faces(); ++f)
      for (int k = 0; k < 3; ++k) {
        const int e = cx.face_edges[f][k];
        count[e]++;
        orsum[e] += cx.edge_orientation_in_face(e, f);
      }
    for (int e = 0; e < cx.num_edges(); ++e) {
      if (count[e] != 2)
        flag("edge does not border exactly two faces", "e" + std::to_string(e));
      else if (orsum[e] != 0)
        flag("incoherent face orientations at edge", "e" + std::to_string(e));
    }
    for (int f = 0; f < cx.num_faces(); ++f)
      if (cx.face_flip_under_involution(f) != 1)
        flag("involution not orientation-preserving on faces",
             "f" + std::to_string(f));
  } else {
    // closed oriented 3-complex: every face borders exactly two tets
    std::vector<int> count(cx.num_faces(), 0);
    for (int t = 0; t < cx.num_tets(); ++t)
      for (int k = 0; k < 4; ++k) count[cx.tet_faces[t][k]]++;
    for (int c = 0; c < cx.num_faces(); ++c)
      if (count[c] != 2)
        flag("face does not border exactly two tets", "c" + std::to_string(c));
    for (int t = 0; t < cx.num_tets(); ++t) {
      if (cx.inv_tet[cx.inv_tet[t]] != t)
        flag("involution not an involution on tets", "t" + std::to_string(t));
      if (cx.inv_tet[t] == t)
        flag("fixed simplex of dimension 3", "t" + std::to_string(t));
      if (cx.tet_flip_under_involution(t) != -1)
        flag("involution not orientation-reversing on tets",
             "t" + std::to_string(t));
    }
  }

  // lift selection partitions non-fixed orbits
  for (int e = 0; e < cx.num_edges(); ++e) {
    const int ie = cx.inv_edge[e];
    if (ie == e) continue;
    if (cx.edge_selected[e] + cx.edge_selected[ie] != 1)
      flag("edge orbit without exactly one selected lift",
           "e" + std::to_string(e));
  }
  for (int f = 0; f < cx.num_faces(); ++f) {
    const int jf = cx.inv_face[f];
    if (jf == f) continue;
    if (cx.face_selected[f] + cx.face_selected[jf] != 1)
      flag("face orbit without exactly one selected lift",
           "f" + std::to_string(f));
  }
  return d;
}

// ---------------------------------------------------------------------------
// JSON

std::string complex_to_json(const InvolutiveComplex& cx) {
  nlohmann::ordered_json j;
  j["schema"] = "complex-v1";
  j["dim"] = cx.dim;
  j["vertex_pos"] = cx.vertex_pos;
  j["edges"] = cx.edges;
  j["face_vertices"] = cx.face_vertices;
  j["tet_vertices"] = cx.tet_vertices;
  j["inv_vertex"] = cx.inv_vertex;
  j["edge_selected"] = std::vector<int>(cx.edge_selected.begin(),
                                        cx.edge_selected.end());
  j["face_selected"] = std::vector<int>(cx.face_selected.begin(),
                                        cx.face_selected.end());
  j["tet_selected"] = std::vector<int>(cx.tet_selected.begin(),
                                       cx.tet_selected.end());
  return j.dump(1);
}

InvolutiveComplex complex_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  if (j.at("schema").get<std::string>() != "complex-v1")
    throw std::invalid_argument("complex_from_json: unknown schema");
  const int dim = j.at("dim").get<int>();
  auto pos = j.at("vertex_pos").get<std::vector<std::array<double, 3>>>();
  auto invv = j.at("inv_vertex").get<std::vector<int>>();
  auto fv = j.at("face_vertices").get<std::vector<Triple>>();
  std::vector<std::array<int, 4>> tv;
  if (j.contains("tet_vertices"))
    tv = j.at("tet_vertices").get<std::vector<std::array<int, 4>>>();
  InvolutiveComplex cx = assemble(dim, std::move(pos), std::move(invv),
                                  std::move(fv), std::move(tv));
  // assemble() regenerates edges in the same order (dedup over faces/tets in
  // file order), so stored selections can be applied directly.
  if (j.contains("edge_selected")) {
    auto es = j.at("edge_selected").get<std::vector<int>>();
    if (es.size() == static_cast<size_t>(cx.num_edges()))
      for (size_t i = 0; i < es.size(); ++i)
        cx.edge_selected[i] = static_cast<uint8_t>(es[i]);
  }
  if (j.contains("face_selected")) {
    auto fs = j.at("face_selected").get<std::vector<int>>();
    if (fs.size() == static_cast<size_t>(cx.num_faces()))
      for (size_t i = 0; i < fs.size(); ++i)
        cx.face_selected[i] = static_cast<uint8_t>(fs[i]);
  }
  return cx;
}

} // namespace gh
