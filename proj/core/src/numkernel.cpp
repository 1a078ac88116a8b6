// Copyright 2026 The eigenmoduli Authors
// SPDX-License-Identifier: Apache-2.0

#include "eigenmoduli/numkernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "eigenmoduli/error.hpp"

namespace emod {

void TolerancePolicy::validate() const {
  if (!(relative > 0.0) || !std::isfinite(relative)) {
    throw InvalidArgument("relative rank tolerance must be positive");
  }
  if (!(absolute_floor > 0.0) || !std::isfinite(absolute_floor)) {
    throw InvalidArgument("absolute rank floor must be positive");
  }
}

double TolerancePolicy::threshold(double largest_singular_value) const {
  return std::max(relative * largest_singular_value, absolute_floor);
}

int SvdSpectrum::rank_at(const TolerancePolicy& policy) const {
  const double cut = policy.threshold(largest());
  return static_cast<int>(std::count_if(singular_values.begin(), singular_values.end(),
                                        [cut](double s) { return s > cut; }));
}

void require_finite(const ComplexMatrix& m, const char* what) {
  if (!m.allFinite()) throw NumericalError(std::string(what) + " has non-finite entries");
}

double hermiticity_defect(const ComplexMatrix& h) {
  if (h.rows() != h.cols()) return std::numeric_limits<double>::infinity();
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

void require_hermitian(const ComplexMatrix& h, const char* what, double rel_tol) {
  if (h.rows() != h.cols()) {
    throw DimensionMismatch(std::string(what) + " must be square, got " +
                            std::to_string(h.rows()) + "x" + std::to_string(h.cols()));
  }
  require_finite(h, what);
  if (h.size() == 0) return;
  const double scale = std::max(h.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
  const double defect = hermiticity_defect(h);
  if (defect > rel_tol * scale) {
    std::ostringstream os;
    os << what << " is not Hermitian: max |H - H^dagger| = " << defect;
    throw NumericalError(os.str());
  }
}

HermitianEigen hermitian_eig(const ComplexMatrix& h) {
  require_hermitian(h, "hermitian_eig input");
  if (h.size() == 0) throw InvalidArgument("hermitian_eig on an empty matrix");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) throw NumericalError("Hermitian eigensolver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

SymmetricEigen symmetric_eig(const RealMatrix& h) {
  if (h.rows() != h.cols() || h.size() == 0) {
    throw DimensionMismatch("symmetric_eig needs a non-empty square matrix");
  }
  if (!h.allFinite()) throw NumericalError("symmetric_eig input has non-finite entries");
  const double scale = std::max(h.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
  const double defect = (h - h.transpose()).cwiseAbs().maxCoeff();
  if (defect > 1e-12 * scale) {
    std::ostringstream os;
    os << "symmetric_eig input is not symmetric: max |H - H^T| = " << defect;
    throw NumericalError(os.str());
  }
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(h);
  if (solver.info() != Eigen::Success) throw NumericalError("symmetric eigensolver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

namespace {

void require_nonempty(const ComplexMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) throw InvalidArgument("zero-size matrix");
}

SvdSpectrum to_spectrum(const RealVector& s) {
  SvdSpectrum out;
  out.singular_values.assign(s.data(), s.data() + s.size());
  return out;
}

}  // namespace

SvdSpectrum svd_spectrum(const ComplexMatrix& m) {
  require_nonempty(m);
  require_finite(m, "svd input");
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return to_spectrum(svd.singularValues());
}

int numeric_rank(const ComplexMatrix& m, const TolerancePolicy& policy) {
  policy.validate();
  return svd_spectrum(m).rank_at(policy);
}

LeftNullspace left_nullspace_with_spectrum(const ComplexMatrix& m, const TolerancePolicy& policy) {
  policy.validate();
  require_nonempty(m);
  require_finite(m, "left_nullspace input");
  // eta^T M = 0  <=>  M^dagger conj(eta) = 0  <=>  conj(eta) in span of trailing U columns.
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU);
  LeftNullspace out;
  out.spectrum = to_spectrum(svd.singularValues());
  out.rank = out.spectrum.rank_at(policy);
  const auto rows = static_cast<int>(m.rows());
  const int dim = rows - out.rank;
  out.basis.resize(rows, dim);
  const ComplexMatrix& u = svd.matrixU();
  for (int j = 0; j < dim; ++j) out.basis.col(j) = u.col(rows - 1 - j).conjugate();
  return out;
}

ComplexMatrix left_nullspace(const ComplexMatrix& m, const TolerancePolicy& policy) {
  return left_nullspace_with_spectrum(m, policy).basis;
}

cplx determinant(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw DimensionMismatch("determinant of a non-square " + std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()) + " matrix");
  }
  if (m.size() == 0) return {1.0, 0.0};
  return m.partialPivLu().determinant();
}

double log_abs_determinant(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("log_abs_determinant of a non-square matrix");
  if (m.size() == 0) return 0.0;
  Eigen::PartialPivLU<ComplexMatrix> lu(m);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const double d = std::abs(lu.matrixLU()(i, i));
    if (d == 0.0) return -std::numeric_limits<double>::infinity();
    acc += std::log(d);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Random sampling
// ---------------------------------------------------------------------------

namespace {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t substream_seed(std::uint64_t master, std::uint64_t stream,
                             std::uint64_t index) noexcept {
  std::uint64_t x = splitmix64(master);
  x = splitmix64(x ^ splitmix64(stream + 0xA5A5A5A5ULL));
  x = splitmix64(x ^ splitmix64(index + 0x5A5A5A5A00000000ULL));
  return x;
}

ComplexMatrix random_complex_gaussian(int rows, int cols, Engine& engine) {
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  ComplexMatrix g(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const double re = gauss(engine);
      const double im = gauss(engine);
      g(i, j) = cplx(re, im);
    }
  }
  return g;
}

ComplexMatrix random_hermitian(int dim, Engine& engine) {
  if (dim < 1) throw InvalidArgument("random_hermitian needs dim >= 1");
  const ComplexMatrix g = random_complex_gaussian(dim, dim, engine);
  // Entry-wise this is exactly Hermitian: (a + conj b)/2 and (b + conj a)/2
  // are conjugates bit for bit.
  return (g + g.adjoint()) * 0.5;
}

ComplexMatrix random_hermitian(int dim, std::uint64_t seed) {
  Engine engine(seed);
  return random_hermitian(dim, engine);
}

ComplexVector random_state(int dim, Engine& engine) {
  if (dim < 1) throw InvalidArgument("random_state needs dim >= 1");
  ComplexVector v = random_complex_gaussian(dim, 1, engine).col(0);
  v /= v.norm();
  return v;
}

ComplexVector random_state(int dim, std::uint64_t seed) {
  Engine engine(seed);
  return random_state(dim, engine);
}

RealVector random_real_state(int dim, Engine& engine) {
  if (dim < 1) throw InvalidArgument("random_real_state needs dim >= 1");
  std::normal_distribution<double> gauss(0.0, 1.0);
  RealVector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = gauss(engine);
  v /= v.norm();
  return v;
}

}  // namespace emod
