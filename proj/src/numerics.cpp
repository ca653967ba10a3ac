#include "gerbeholo/numerics.hpp"

#include <algorithm>
#include <numeric>

namespace gh {

Tolerances& tolerances() {
  static Tolerances t;
  return t;
}

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix ComplexMatrix::identity(int n) {
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

ComplexMatrix ComplexMatrix::conj() const {
  ComplexMatrix r(rows_, cols_);
  for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = std::conj(a_[k]);
  return r;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& o) const {
  ComplexMatrix r = *this;
  r += o;
  return r;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& o) const {
  ComplexMatrix r = *this;
  r -= o;
  return r;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  for (size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
  return *this;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& o) const {
  ComplexMatrix r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int k = 0; k < cols_; ++k) {
      const cd aik = (*this)(i, k);
      if (aik == cd(0.0, 0.0)) continue;
      for (int j = 0; j < o.cols_; ++j) r(i, j) += aik * o(k, j);
    }
  }
  return r;
}

ComplexMatrix ComplexMatrix::operator*(cd s) const {
  ComplexMatrix r = *this;
  for (auto& x : r.a_) x *= s;
  return r;
}

ComplexMatrix operator*(cd s, const ComplexMatrix& m) { return m * s; }

cd ComplexMatrix::trace() const {
  cd t = 0.0;
  for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::norm_max() const {
  double m = 0.0;
  for (const auto& x : a_) m = std::max(m, std::abs(x));
  return m;
}

bool ComplexMatrix::finite() const {
  for (const auto& x : a_)
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
  return true;
}

bool ComplexMatrix::is_hermitian(double tol) const {
  if (!square()) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = i; j < cols_; ++j)
      if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
  return true;
}

bool ComplexMatrix::is_unitary(double tol) const {
  if (!square()) return false;
  ComplexMatrix p = adjoint() * (*this);
  p -= identity(rows_);
  return p.norm_max() <= tol;
}

bool ComplexMatrix::is_antisymmetric(double tol) const {
  if (!square()) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = i; j < cols_; ++j)
      if (std::abs((*this)(i, j) + (*this)(j, i)) > tol) return false;
  return true;
}

std::vector<cd> ComplexMatrix::col(int j) const {
  std::vector<cd> v(rows_);
  for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void ComplexMatrix::set_col(int j, const std::vector<cd>& v) {
  for (int i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

// ---------------------------------------------------------------------------
// Hermitian eigensolver: cyclic Jacobi with complex rotations.

EigenSystem hermitian_eig(const ComplexMatrix& h_in) {
  if (!h_in.square()) throw NumericsError("hermitian_eig: non-square input");
  const int n = h_in.rows();
  if (!h_in.is_hermitian(tolerances().hermitian_input * std::max(1.0, h_in.norm_max())))
    throw NumericsError("hermitian_eig: input not Hermitian within tolerance");

  // symmetrize
  ComplexMatrix h(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      h(i, j) = 0.5 * (h_in(i, j) + std::conj(h_in(j, i)));

  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = std::max(h.norm_max(), 1e-300);
  const double stop = 1e-15 * scale;

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(h(p, q)));
    if (off <= stop) break;

    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cd z = h(p, q);
        const double az = std::abs(z);
        if (az <= stop * 1e-2) continue;
        const double app = h(p, p).real();
        const double aqq = h(q, q).real();
        const double tau = (aqq - app) / (2.0 * az);
        const double t = (tau >= 0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const cd w = z / az; // phase of the off-diagonal element

        // J = I except J(p,p)=c, J(p,q)=s w, J(q,p)=-s conj(w), J(q,q)=c
        // update h <- J^dagger h J, v <- v J
        for (int k = 0; k < n; ++k) {
          const cd hkp = h(k, p), hkq = h(k, q);
          h(k, p) = c * hkp - s * std::conj(w) * hkq;
          h(k, q) = s * w * hkp + c * hkq;
        }
        for (int k = 0; k < n; ++k) {
          const cd hpk = h(p, k), hqk = h(q, k);
          h(p, k) = c * hpk - s * w * hqk;
          h(q, k) = s * std::conj(w) * hpk + c * hqk;
        }
        for (int k = 0; k < n; ++k) {
          const cd vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * std::conj(w) * vkq;
          v(k, q) = s * w * vkp + c * vkq;
        }
        h(p, q) = 0.0;
        h(q, p) = 0.0;
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> lam(n);
  for (int i = 0; i < n; ++i) lam[i] = h(i, i).real();
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return lam[a] < lam[b]; });

  EigenSystem es;
  es.eigenvalues.resize(n);
  es.eigenvectors = ComplexMatrix(n, n);
  for (int j = 0; j < n; ++j) {
    es.eigenvalues[j] = lam[order[j]];
    for (int i = 0; i < n; ++i) es.eigenvectors(i, j) = v(i, order[j]);
  }
  return es;
}

ComplexMatrix exp_i_hermitian(const ComplexMatrix& h, double s) {
  EigenSystem es = hermitian_eig(h);
  const int n = h.rows();
  ComplexMatrix r(n, n);
  for (int k = 0; k < n; ++k) {
    const cd phase = std::exp(cd(0.0, s * es.eigenvalues[k]));
    for (int i = 0; i < n; ++i) {
      const cd vik = es.eigenvectors(i, k) * phase;
      for (int j = 0; j < n; ++j)
        r(i, j) += vik * std::conj(es.eigenvectors(j, k));
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Unitary eigendecomposition: two-stage via the commuting Hermitian parts
// (u + u')/2 and (u - u')/(2i).

UnitaryEigen unitary_eig(const ComplexMatrix& u) {
  if (!u.square()) throw NumericsError("unitary_eig: non-square input");
  if (!u.is_unitary(1e-8))
    throw NumericsError("unitary_eig: input not unitary within 1e-8");
  const int n = u.rows();
  ComplexMatrix re(n, n), im(n, n);
  const ComplexMatrix ud = u.adjoint();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      re(i, j) = 0.5 * (u(i, j) + ud(i, j));
      im(i, j) = cd(0.0, -0.5) * (u(i, j) - ud(i, j));
    }

  EigenSystem es = hermitian_eig(re);
  ComplexMatrix v = es.eigenvectors;

  // split eigenvalues of the real part into clusters, diagonalize the
  // imaginary part inside each cluster
  const double ctol = 1e-9 * std::max(1.0, re.norm_max());
  int start = 0;
  while (start < n) {
    int end = start + 1;
    while (end < n && es.eigenvalues[end] - es.eigenvalues[end - 1] < ctol) ++end;
    const int m = end - start;
    if (m > 1) {
      ComplexMatrix vc(n, m);
      for (int j = 0; j < m; ++j)
        for (int i = 0; i < n; ++i) vc(i, j) = v(i, start + j);
      ComplexMatrix bc = vc.adjoint() * (im * vc); // m x m Hermitian
      EigenSystem sub = hermitian_eig(bc);
      ComplexMatrix rot = vc * sub.eigenvectors;
      for (int j = 0; j < m; ++j)
        for (int i = 0; i < n; ++i) v(i, start + j) = rot(i, j);
    }
    start = end;
  }

  UnitaryEigen ue;
  ue.eigenvectors = v;
  ue.eigenvalues.resize(n);
  for (int k = 0; k < n; ++k) {
    cd lambda = 0.0;
    for (int i = 0; i < n; ++i) {
      cd uv = 0.0;
      for (int j = 0; j < n; ++j) uv += u(i, j) * v(j, k);
      lambda += std::conj(v(i, k)) * uv;
    }
    ue.eigenvalues[k] = lambda / std::abs(lambda);
  }
  return ue;
}

ComplexMatrix principal_log_unitary(const ComplexMatrix& u, double gap_tol) {
  UnitaryEigen ue = unitary_eig(u);
  const int n = u.rows();
  ComplexMatrix a(n, n);
  for (int k = 0; k < n; ++k) {
    const double phi = std::arg(ue.eigenvalues[k]);
    if (gap_tol > 0.0 && kPi - std::abs(phi) < gap_tol)
      throw CutCollision("principal_log_unitary: eigenvalue near -1", phi);
    for (int i = 0; i < n; ++i) {
      const cd vik = ue.eigenvectors(i, k) * phi;
      for (int j = 0; j < n; ++j)
        a(i, j) += vik * std::conj(ue.eigenvectors(j, k));
    }
  }
  return a;
}

ComplexMatrix unitary_log_branch(const ComplexMatrix& u, double epsilon,
                                 double gap_tol) {
  if (epsilon < -kTwoPi || epsilon >= 0.0)
    throw NumericsError("unitary_log_branch: epsilon outside [-2pi, 0)");
  if (gap_tol < 0.0) gap_tol = tolerances().gap_tol;
  UnitaryEigen ue = unitary_eig(u);
  const int n = u.rows();
  ComplexMatrix h(n, n);
  for (int k = 0; k < n; ++k) {
    // eigenvalue e^{-i phi} with phi in (epsilon, epsilon + 2 pi)
    double phi = -std::arg(ue.eigenvalues[k]); // in [-pi, pi)
    while (phi <= epsilon) phi += kTwoPi;
    while (phi > epsilon + kTwoPi) phi -= kTwoPi;
    const double clearance = std::min(phi - epsilon, epsilon + kTwoPi - phi);
    if (clearance < gap_tol)
      throw CutCollision("unitary_log_branch: eigenvalue on the branch cut",
                         phi);
    const double hval = phi / kTwoPi;
    for (int i = 0; i < n; ++i) {
      const cd vik = ue.eigenvectors(i, k) * hval;
      for (int j = 0; j < n; ++j)
        h(i, j) += vik * std::conj(ue.eigenvectors(j, k));
    }
  }
  return h;
}

// ---------------------------------------------------------------------------
// Pfaffian (Parlett-Reid with partial pivoting)

cd pfaffian(ComplexMatrix a) {
  if (!a.square()) throw NumericsError("pfaffian: non-square input");
  const int n = a.rows();
  if (n % 2 != 0) throw NumericsError("pfaffian: odd dimension");
  const double scale = std::max(1.0, a.norm_max());
  if (!a.is_antisymmetric(tolerances().antisymmetric_input * scale))
    throw NumericsError("pfaffian: input not antisymmetric within tolerance");
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const cd v = 0.5 * (a(i, j) - a(j, i));
      a(i, j) = v;
      a(j, i) = -v;
    }

  cd pf = 1.0;
  for (int k = 0; k + 1 < n; k += 2) {
    // pivot: largest |a(j,k)| for j > k
    int jmax = k + 1;
    double amax = std::abs(a(k + 1, k));
    for (int j = k + 2; j < n; ++j)
      if (std::abs(a(j, k)) > amax) {
        amax = std::abs(a(j, k));
        jmax = j;
      }
    if (amax < 1e-300) return 0.0;
    if (jmax != k + 1) {
      for (int j = 0; j < n; ++j) std::swap(a(k + 1, j), a(jmax, j));
      for (int i = 0; i < n; ++i) std::swap(a(i, k + 1), a(i, jmax));
      pf = -pf;
    }
    pf *= a(k, k + 1);
    const cd piv = a(k + 1, k); // = -a(k, k+1)
    for (int i = k + 2; i < n; ++i) {
      // eliminate a(i,k) with row/col k+1, then a(i,k+1) with row/col k
      const cd alpha = a(i, k) / piv;
      if (alpha != cd(0.0, 0.0)) {
        for (int j = 0; j < n; ++j) a(i, j) -= alpha * a(k + 1, j);
        for (int j = 0; j < n; ++j) a(j, i) -= alpha * a(j, k + 1);
      }
      const cd beta = a(i, k + 1) / a(k, k + 1);
      if (beta != cd(0.0, 0.0)) {
        for (int j = 0; j < n; ++j) a(i, j) -= beta * a(k, j);
        for (int j = 0; j < n; ++j) a(j, i) -= beta * a(j, k);
      }
    }
  }
  return pf;
}

cd determinant(ComplexMatrix a) {
  if (!a.square()) throw NumericsError("determinant: non-square input");
  const int n = a.rows();
  cd det = 1.0;
  for (int k = 0; k < n; ++k) {
    int imax = k;
    double amax = std::abs(a(k, k));
    for (int i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > amax) {
        amax = std::abs(a(i, k));
        imax = i;
      }
    if (amax < 1e-300) return 0.0;
    if (imax != k) {
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(imax, j));
      det = -det;
    }
    det *= a(k, k);
    for (int i = k + 1; i < n; ++i) {
      const cd f = a(i, k) / a(k, k);
      for (int j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

int det_phase_winding(const std::vector<ComplexMatrix>& loop) {
  if (loop.size() < 2)
    throw NumericsError("det_phase_winding: need at least 2 samples");
  const size_t m = loop.size();
  std::vector<cd> dets(m);
  for (size_t j = 0; j < m; ++j) dets[j] = determinant(loop[j]);
  double total = 0.0;
  for (size_t j = 0; j < m; ++j) {
    const cd ratio = dets[(j + 1) % m] / dets[j];
    if (std::abs(ratio - cd(1.0, 0.0)) >= 1.0)
      throw UnderResolved("det_phase_winding: consecutive ratio too large",
                          std::abs(ratio - cd(1.0, 0.0)));
    total += std::arg(ratio);
  }
  const double w = total / kTwoPi;
  const double rounded = std::round(w);
  const double residue = std::abs(w - rounded);
  if (residue >= tolerances().winding_residue)
    throw UnderResolved("det_phase_winding: rounding residue too large",
                        residue);
  return static_cast<int>(rounded);
}

// ---------------------------------------------------------------------------

double wrap_angle(double a) {
  a = std::fmod(a, kTwoPi);
  if (a > kPi) a -= kTwoPi;
  if (a <= -kPi) a += kTwoPi;
  return a;
}

double angle_dist(double a, double b) { return std::abs(wrap_angle(a - b)); }

double pairwise_sum(std::vector<double> v) {
  if (v.empty()) return 0.0;
  size_t n = v.size();
  while (n > 1) {
    const size_t h = (n + 1) / 2;
    for (size_t i = 0; i < n / 2; ++i) v[i] = v[2 * i] + v[2 * i + 1];
    if (n % 2 == 1) v[n / 2] = v[n - 1];
    n = h;
  }
  return v[0];
}

} // namespace gh
