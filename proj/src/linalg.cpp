// Copyright 2026 The qwv developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qwv/linalg.hpp"

#include <cmath>

namespace qwv {

Matrix identity(long n) { return Matrix::Identity(n, n); }

Matrix zeros(long rows, long cols) { return Matrix::Zero(rows, cols); }

Matrix dagger(const Matrix& a) { return a.adjoint(); }

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

bool all_finite(const Matrix& a) {
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j)
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag()))
        return false;
  return true;
}

double max_abs(const Matrix& a) {
  double m = 0.0;
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j)));
  return m;
}

bool approx_equal(const Matrix& a, const Matrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return max_abs(a - b) <= tol;
}

bool is_hermitian(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return max_abs(a - a.adjoint()) <= tol;
}

Matrix hermitian_part(const Matrix& a) { return 0.5 * (a + a.adjoint()); }

double operator_norm(const Matrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

std::pair<Eigen::VectorXd, Matrix> hermitian_eig(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(a));
  if (solver.info() != Eigen::Success)
    throw Error("hermitian eigendecomposition failed to converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double min_eigenvalue(const Matrix& hermitian) {
  return hermitian_eig(hermitian).first(0);
}

LoewnerVerdict loewner_leq(const Matrix& a, const Matrix& b, double tol,
                           double herm_tol) {
  if (a.rows() != a.cols() || b.rows() != b.cols())
    throw Error("loewner_leq: operands must be square");
  if (a.rows() != b.rows())
    throw Error("loewner_leq: dimension mismatch (" +
                std::to_string(a.rows()) + " vs " + std::to_string(b.rows()) +
                ")");
  if (!is_hermitian(a, herm_tol) || !is_hermitian(b, herm_tol))
    throw Error("loewner_leq: operands must be Hermitian");
  auto [vals, vecs] = hermitian_eig(b - a);
  LoewnerVerdict verdict;
  verdict.min_eig = vals(0);
  verdict.holds = vals(0) >= -tol;
  if (!verdict.holds) verdict.witness = Vector(vecs.col(0));
  return verdict;
}

Matrix clamp_eigenvalues(const Matrix& a, double lo, double hi) {
  auto [vals, vecs] = hermitian_eig(a);
  if (vals(0) >= lo && vals(vals.size() - 1) <= hi) return a;
  Eigen::VectorXd clipped = vals;
  for (long i = 0; i < clipped.size(); ++i)
    clipped(i) = std::min(hi, std::max(lo, clipped(i)));
  return vecs * clipped.cast<Complex>().asDiagonal() * vecs.adjoint();
}

Complex trace_of(const Matrix& a) { return a.trace(); }

Vector basis_ket(long dim, long k) {
  if (k < 0 || k >= dim) throw Error("basis_ket: index out of range");
  Vector v = Vector::Zero(dim);
  v(k) = 1.0;
  return v;
}

Matrix outer(const Vector& v) { return v * v.adjoint(); }

}  // namespace qwv
