#pragma once

// Dense complex linear algebra for small matrices (N <= ~16): Hermitian
// eigensolver, branch-cut unitary logarithm, Pfaffian, determinant phase
// tracking. Self-contained; no external linear-algebra dependency.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gh {

using cd = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Central tolerance record. Defaults are the ones used across the library;
// callers may tweak a copy and pass it down where an op accepts one.
struct Tolerances {
  double hermitian_input = 1e-10;    // symmetrize within this
  double antisymmetric_input = 1e-9; // antisymmetrize within this
  double eig_residual = 1e-11;       // ||H V - V diag|| / ||H||_max
  double eig_orthonormal = 1e-12;    // ||V'V - I||_max
  double unitary_check = 1e-10;
  double log_roundtrip = 1e-10;
  double gap_tol = 1e-6;        // angular clearance from a branch cut (rad)
  double winding_residue = 0.05; // det phase winding rounding residue
  double quantum_residue = 0.05; // WZ integral residue (units of a quantum)
  double mid_tol = 1e-3;         // midgap projector spectral clearance
  double equivariance = 1e-8;
  double cocycle = 1e-12;
};

Tolerances& tolerances(); // process-wide defaults (mutable)

// ---------------------------------------------------------------------------
// errors

struct NumericsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Eigenvalue of the argument sits on the branch cut.
struct CutCollision : NumericsError {
  double eigenphase; // offending phase (rad)
  CutCollision(const std::string& msg, double phase)
      : NumericsError(msg), eigenphase(phase) {}
};

// Sampling too coarse for a reliable discrete log / winding count.
struct UnderResolved : NumericsError {
  double residue;
  UnderResolved(const std::string& msg, double r)
      : NumericsError(msg), residue(r) {}
};

// ---------------------------------------------------------------------------
// ComplexMatrix: dense row-major N x M complex matrix, value semantics.

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

  static ComplexMatrix identity(int n);
  static ComplexMatrix zero(int n, int m) { return ComplexMatrix(n, m); }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  cd& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const cd& operator()(int i, int j) const {
    return a_[static_cast<size_t>(i) * cols_ + j];
  }

  const std::vector<cd>& data() const { return a_; }
  std::vector<cd>& data() { return a_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conj() const;

  ComplexMatrix operator+(const ComplexMatrix& o) const;
  ComplexMatrix operator-(const ComplexMatrix& o) const;
  ComplexMatrix operator*(const ComplexMatrix& o) const;
  ComplexMatrix operator*(cd s) const;
  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);

  cd trace() const;
  double norm_max() const; // max |a_ij|
  bool finite() const;

  bool is_hermitian(double tol) const;
  bool is_unitary(double tol) const;
  bool is_antisymmetric(double tol) const;

  // column access
  std::vector<cd> col(int j) const;
  void set_col(int j, const std::vector<cd>& v);

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<cd> a_;
};

ComplexMatrix operator*(cd s, const ComplexMatrix& m);

// ---------------------------------------------------------------------------
// EigenSystem of a Hermitian matrix.

struct EigenSystem {
  std::vector<double> eigenvalues; // ascending
  ComplexMatrix eigenvectors;      // columns, orthonormal
};

// Cyclic Jacobi diagonalization. Symmetrizes within tolerance; throws
// NumericsError for non-square or badly non-Hermitian input.
EigenSystem hermitian_eig(const ComplexMatrix& h);

// exp(i s H) for Hermitian H (exactly unitary via eigendecomposition).
ComplexMatrix exp_i_hermitian(const ComplexMatrix& h, double s);

// Eigendecomposition of a unitary (normal) matrix: u = V diag(lambda) V'.
struct UnitaryEigen {
  std::vector<cd> eigenvalues; // unit modulus
  ComplexMatrix eigenvectors;
};
UnitaryEigen unitary_eig(const ComplexMatrix& u);

// Principal matrix logarithm of a unitary divided by i: returns Hermitian A
// with u = exp(iA), eigenphases in (-pi, pi). Throws CutCollision if an
// eigenvalue sits within gap_tol of -1.
ComplexMatrix principal_log_unitary(const ComplexMatrix& u,
                                    double gap_tol = 0.0);

// Branch-cut effective-Hamiltonian kernel: h with u = exp(-2 pi i h), each
// eigenphase phi of u (written u ~ e^{-i phi}) placed in (epsilon,
// epsilon + 2 pi), eigenvalue of h equal to phi / (2 pi). epsilon in
// [-2 pi, 0). Throws CutCollision when an eigenvalue of u comes within
// gap_tol of the cut point e^{-i epsilon}.
ComplexMatrix unitary_log_branch(const ComplexMatrix& u, double epsilon,
                                 double gap_tol = -1.0);

// Pfaffian of an (even-dimensional) antisymmetric matrix by Parlett-Reid
// skew tridiagonalization with partial pivoting.
cd pfaffian(ComplexMatrix a);

// Determinant via LU with partial pivoting.
cd determinant(ComplexMatrix a);

// Winding number of det(u) along a closed sampled loop (last sample adjacent
// to the first). Throws UnderResolved if consecutive determinant ratios move
// too far or the winding does not round cleanly.
int det_phase_winding(const std::vector<ComplexMatrix>& loop);

// ---------------------------------------------------------------------------
// small helpers

// wrap to (-pi, pi]
double wrap_angle(double a);

// angular distance on the circle
double angle_dist(double a, double b);

// deterministic pairwise summation (order-independent reduction tree)
double pairwise_sum(std::vector<double> v);

} // namespace gh
