#include "doctest.h"

#include <random>

#include "gerbeholo/numerics.hpp"

using namespace gh;

namespace {

ComplexMatrix random_hermitian(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ComplexMatrix h(n, n);
  for (int i = 0; i < n; ++i) {
    h(i, i) = u(rng);
    for (int j = i + 1; j < n; ++j) {
      const cd z(u(rng), u(rng));
      h(i, j) = z;
      h(j, i) = std::conj(z);
    }
  }
  return h;
}

ComplexMatrix random_unitary(int n, std::mt19937_64& rng) {
  return exp_i_hermitian(random_hermitian(n, rng), 1.0);
}

ComplexMatrix random_antisymmetric(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ComplexMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const cd z(u(rng), u(rng));
      a(i, j) = z;
      a(j, i) = -z;
    }
  return a;
}

// independent oracle: roots of det(H - x I) located by sign-change bisection
std::vector<double> charpoly_bisection_eigs(const ComplexMatrix& h) {
  const int n = h.rows();
  auto p = [&](double x) {
    ComplexMatrix m = h;
    for (int i = 0; i < n; ++i) m(i, i) -= x;
    return determinant(m).real();
  };
  const double r = n * h.norm_max() + 1.0;
  const int grid = 20000;
  std::vector<double> roots;
  double prev = p(-r);
  double xprev = -r;
  for (int k = 1; k <= grid; ++k) {
    const double x = -r + 2.0 * r * k / grid;
    const double val = p(x);
    if ((prev < 0 && val > 0) || (prev > 0 && val < 0)) {
      double lo = xprev, hi = x, flo = prev;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = p(mid);
        if ((flo < 0 && fm < 0) || (flo > 0 && fm > 0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    prev = val;
    xprev = x;
  }
  return roots;
}

} // namespace

TEST_CASE("hermitian_eig identity and sigma_x") {
  ComplexMatrix id = ComplexMatrix::identity(2);
  auto es = hermitian_eig(id);
  CHECK(es.eigenvalues[0] == doctest::Approx(1.0));
  CHECK(es.eigenvalues[1] == doctest::Approx(1.0));

  ComplexMatrix sx(2, 2);
  sx(0, 1) = 1.0;
  sx(1, 0) = 1.0;
  es = hermitian_eig(sx);
  CHECK(es.eigenvalues[0] == doctest::Approx(-1.0));
  CHECK(es.eigenvalues[1] == doctest::Approx(1.0));
}

TEST_CASE("hermitian_eig matches char-poly bisection oracle on random 4x4") {
  std::mt19937_64 rng(12345);
  ComplexMatrix h = random_hermitian(4, rng);
  auto es = hermitian_eig(h);
  auto oracle = charpoly_bisection_eigs(h);
  REQUIRE(oracle.size() == 4);
  for (int i = 0; i < 4; ++i)
    CHECK(std::abs(es.eigenvalues[i] - oracle[i]) < 1e-9);
}

TEST_CASE("eigensystem invariants: residual, orthonormality, reconstruction") {
  std::mt19937_64 rng(99);
  for (int n : {2, 4, 7}) {
    ComplexMatrix h = random_hermitian(n, rng);
    auto es = hermitian_eig(h);
    const auto& v = es.eigenvectors;
    // H V = V diag
    ComplexMatrix hv = h * v;
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        hv(i, j) -= es.eigenvalues[j] * v(i, j);
    CHECK(hv.norm_max() <= 1e-11 * std::max(1.0, h.norm_max()));
    ComplexMatrix vv = v.adjoint() * v;
    vv -= ComplexMatrix::identity(n);
    CHECK(vv.norm_max() <= 1e-12);
    // V diag V' = H
    ComplexMatrix rec(n, n);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          rec(i, j) += v(i, k) * es.eigenvalues[k] * std::conj(v(j, k));
    rec -= h;
    CHECK(rec.norm_max() <= 1e-10);
    // ascending order
    for (int i = 1; i < n; ++i)
      CHECK(es.eigenvalues[i] >= es.eigenvalues[i - 1]);
  }
}

TEST_CASE("hermitian_eig rejects bad input") {
  CHECK_THROWS_AS(hermitian_eig(ComplexMatrix(2, 3)), NumericsError);
  ComplexMatrix m(2, 2);
  m(0, 1) = cd(1.0, 0.0);
  m(1, 0) = cd(0.5, 0.0); // not Hermitian
  CHECK_THROWS_AS(hermitian_eig(m), NumericsError);
}

TEST_CASE("unitary_log_branch basics") {
  // u = I, eps = -pi -> h = 0 (phi = 0 in (-pi, pi))
  ComplexMatrix id = ComplexMatrix::identity(2);
  ComplexMatrix h = unitary_log_branch(id, -kPi);
  CHECK(h.norm_max() <= 1e-12);

  // 1x1 u = i: round trip e^{-2 pi i h} = u
  ComplexMatrix u(1, 1);
  u(0, 0) = cd(0.0, 1.0);
  h = unitary_log_branch(u, -kPi);
  ComplexMatrix r = exp_i_hermitian(h, -kTwoPi);
  CHECK(std::abs(r(0, 0) - u(0, 0)) < 1e-12);

  // u = -I at eps = -pi sits on the cut
  ComplexMatrix mi = ComplexMatrix::identity(2) * cd(-1.0, 0.0);
  CHECK_THROWS_AS(unitary_log_branch(mi, -kPi), CutCollision);
}

TEST_CASE("unitary_log_branch round trip on random unitaries") {
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 5; ++rep) {
    ComplexMatrix u = random_unitary(4, rng);
    bool done = false;
    for (double eps : {-kPi, -kPi / 2, -1.7}) {
      try {
        ComplexMatrix h = unitary_log_branch(u, eps, 1e-3);
        CHECK(h.is_hermitian(1e-10));
        ComplexMatrix r = exp_i_hermitian(h, -kTwoPi);
        r -= u;
        CHECK(r.norm_max() < 1e-10);
        done = true;
        break;
      } catch (const CutCollision&) {
      }
    }
    CHECK(done);
  }
}

TEST_CASE("pfaffian small cases and oracle") {
  ComplexMatrix a(2, 2);
  a(0, 1) = cd(2.0, 1.0);
  a(1, 0) = -a(0, 1);
  CHECK(std::abs(pfaffian(a) - cd(2.0, 1.0)) < 1e-14);

  CHECK(std::abs(pfaffian(ComplexMatrix(4, 4))) == 0.0);
  CHECK_THROWS_AS(pfaffian(ComplexMatrix(3, 3)), NumericsError);

  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 10; ++rep) {
    ComplexMatrix m = random_antisymmetric(4, rng);
    const cd oracle = m(0, 1) * m(2, 3) - m(0, 2) * m(1, 3) + m(0, 3) * m(1, 2);
    CHECK(std::abs(pfaffian(m) - oracle) < 1e-12);
  }
}

TEST_CASE("pfaffian squared equals determinant, permutation sign rule") {
  std::mt19937_64 rng(41);
  for (int n : {4, 6}) {
    ComplexMatrix a = random_antisymmetric(n, rng);
    const cd pf = pfaffian(a);
    const cd det = determinant(a);
    CHECK(std::abs(pf * pf - det) <= 1e-8 * std::abs(det));

    // random permutation P: Pf(P^T A P) = det(P) Pf(A)
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    ComplexMatrix p(n, n);
    for (int i = 0; i < n; ++i) p(perm[i], i) = 1.0;
    ComplexMatrix pap = p.transpose() * a * p;
    const cd dp = determinant(p);
    CHECK(std::abs(pfaffian(pap) - dp * pf) < 1e-10);
  }
}

TEST_CASE("det_phase_winding") {
  // constant loop
  std::vector<ComplexMatrix> loop(8, ComplexMatrix::identity(2));
  CHECK(det_phase_winding(loop) == 0);

  // 1x1 loop winding once
  const int m = 24;
  loop.clear();
  for (int j = 0; j <= m; ++j) {
    ComplexMatrix u(1, 1);
    u(0, 0) = std::exp(cd(0.0, kTwoPi * j / m));
    loop.push_back(u);
  }
  CHECK(det_phase_winding(loop) == 1);

  // cyclic rotation invariance
  std::rotate(loop.begin(), loop.begin() + 5, loop.end());
  CHECK(det_phase_winding(loop) == 1);
}

TEST_CASE("pairwise_sum and angle helpers") {
  std::vector<double> v{1.0, 2.0, 3.0, 4.0, 5.0};
  CHECK(pairwise_sum(v) == doctest::Approx(15.0));
  CHECK(wrap_angle(3 * kPi) == doctest::Approx(kPi));
  CHECK(angle_dist(0.1, -0.1) == doctest::Approx(0.2));
}
