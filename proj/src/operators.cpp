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

#include "qwv/operators.hpp"

#include <cmath>

namespace qwv {

QuantumPredicate make_predicate(Matrix mat, VarSpace space,
                                const Tolerances& tol) {
  if (mat.rows() != mat.cols()) throw Error("predicate must be square");
  if (mat.rows() != space.dim(tol.dim_cap))
    throw Error("predicate dimension " + std::to_string(mat.rows()) +
                " does not match its space (" +
                std::to_string(space.dim(tol.dim_cap)) + ")");
  if (!all_finite(mat)) throw Error("predicate has non-finite entries");
  if (!is_hermitian(mat, tol.herm))
    throw Error("predicate is not Hermitian within tolerance");
  auto [vals, vecs] = hermitian_eig(mat);
  (void)vecs;
  if (vals(0) < -tol.psd)
    throw Error("predicate has negative eigenvalue " +
                std::to_string(vals(0)));
  if (vals(vals.size() - 1) > 1.0 + tol.psd)
    throw Error("predicate exceeds identity: max eigenvalue " +
                std::to_string(vals(vals.size() - 1)));
  return QuantumPredicate{std::move(mat), std::move(space)};
}

DensityOperator make_density(Matrix mat, VarSpace space,
                             const Tolerances& tol) {
  if (mat.rows() != mat.cols()) throw Error("density operator must be square");
  if (mat.rows() != space.dim(tol.dim_cap))
    throw Error("density operator dimension does not match its space");
  if (!all_finite(mat)) throw Error("density operator has non-finite entries");
  if (!is_hermitian(mat, tol.herm))
    throw Error("density operator is not Hermitian within tolerance");
  if (min_eigenvalue(mat) < -tol.psd)
    throw Error("density operator is not positive");
  Complex tr = trace_of(mat);
  if (std::abs(tr.imag()) > tol.trace)
    throw Error("density operator has complex trace");
  if (tr.real() < -tol.trace || tr.real() > 1.0 + tol.trace)
    throw Error("density operator trace " + std::to_string(tr.real()) +
                " outside [0, 1]");
  return DensityOperator{std::move(mat), std::move(space)};
}

double expectation(const Matrix& a, const Matrix& rho, double tol) {
  if (a.rows() != a.cols() || rho.rows() != rho.cols())
    throw Error("expectation: operands must be square");
  if (a.rows() != rho.rows()) throw Error("expectation: dimension mismatch");
  Complex tr = (a * rho).trace();
  if (std::abs(tr.imag()) > tol)
    throw Error("expectation has imaginary part " +
                std::to_string(tr.imag()) + "; inputs are corrupted");
  return tr.real();
}

Superoperator Superoperator::from_kraus(std::vector<Matrix> kraus,
                                        const Tolerances& tol) {
  if (kraus.empty()) throw Error("superoperator needs at least one Kraus op");
  const long rows = kraus.front().rows();
  const long cols = kraus.front().cols();
  Matrix sum = Matrix::Zero(cols, cols);
  for (const auto& k : kraus) {
    if (k.rows() != rows || k.cols() != cols)
      throw Error("superoperator Kraus operators must share one shape");
    if (!all_finite(k)) throw Error("Kraus operator has non-finite entries");
    sum += k.adjoint() * k;
  }
  if (min_eigenvalue(qwv::identity(cols) - sum) < -tol.psd)
    throw Error("superoperator is not trace-non-increasing");
  return from_kraus_unchecked(std::move(kraus), tol.eq);
}

Superoperator Superoperator::from_kraus_unchecked(std::vector<Matrix> kraus,
                                                  double eq_tol) {
  Superoperator e;
  e.dim_out_ = kraus.front().rows();
  e.dim_in_ = kraus.front().cols();
  Matrix sum = Matrix::Zero(e.dim_in_, e.dim_in_);
  for (const auto& k : kraus) sum += k.adjoint() * k;
  e.trace_preserving_ = approx_equal(sum, qwv::identity(e.dim_in_), eq_tol);
  e.kraus_ = std::move(kraus);
  return e;
}

Superoperator Superoperator::identity(long dim) {
  return from_kraus_unchecked({qwv::identity(dim)});
}

Superoperator Superoperator::unitary(const Matrix& u) {
  if (u.rows() != u.cols()) throw Error("unitary channel: matrix not square");
  return from_kraus_unchecked({u});
}

Superoperator Superoperator::branch(const Matrix& m) {
  return from_kraus_unchecked({m});
}

Superoperator Superoperator::reset(long dim) {
  std::vector<Matrix> ks;
  ks.reserve(dim);
  for (long n = 0; n < dim; ++n) {
    Matrix k = Matrix::Zero(dim, dim);
    k(0, n) = 1.0;
    ks.push_back(std::move(k));
  }
  return from_kraus_unchecked(std::move(ks));
}

Matrix Superoperator::apply(const Matrix& rho) const {
  if (rho.rows() != dim_in_ || rho.cols() != dim_in_)
    throw Error("superoperator apply: dimension mismatch");
  Matrix out = Matrix::Zero(dim_out_, dim_out_);
  for (const auto& k : kraus_) out += k * rho * k.adjoint();
  return out;
}

Matrix Superoperator::dual_apply(const Matrix& a) const {
  if (a.rows() != dim_out_ || a.cols() != dim_out_)
    throw Error("superoperator dual_apply: dimension mismatch");
  Matrix out = Matrix::Zero(dim_in_, dim_in_);
  for (const auto& k : kraus_) out += k.adjoint() * a * k;
  return out;
}

Matrix Superoperator::dual_of_identity() const {
  return dual_apply(qwv::identity(dim_out_));
}

Superoperator Superoperator::embedded(const std::vector<std::string>& targets,
                                      const VarSpace& env) const {
  if (dim_in_ != dim_out_)
    throw Error("only square superoperators can be embedded");
  std::vector<Matrix> ks;
  ks.reserve(kraus_.size());
  for (const auto& k : kraus_) ks.push_back(embed(k, targets, env));
  return from_kraus_unchecked(std::move(ks));
}

Superoperator Superoperator::pruned(double drop_norm) const {
  std::vector<Matrix> ks;
  for (const auto& k : kraus_)
    if (operator_norm(k) >= drop_norm) ks.push_back(k);
  if (ks.empty()) ks.push_back(Matrix::Zero(dim_out_, dim_in_));
  return from_kraus_unchecked(std::move(ks));
}

DensityOperator apply(const Superoperator& e, const DensityOperator& rho,
                      const Tolerances& tol) {
  Matrix out = e.apply(rho.mat);
  double tr_in = trace_of(rho.mat).real();
  double tr_out = trace_of(out).real();
  if (tr_out > tr_in + tol.trace)
    throw Error("channel increased trace: " + std::to_string(tr_in) + " -> " +
                std::to_string(tr_out));
  return DensityOperator{std::move(out), rho.space};
}

Matrix dual_apply(const Superoperator& e, const Matrix& a) {
  if (!is_hermitian(a, 1e-9))
    throw Error("dual_apply expects a Hermitian observable");
  return e.dual_apply(a);
}

Superoperator compose(const Superoperator& e1, const Superoperator& e2) {
  if (e1.dim_out() != e2.dim_in())
    throw Error("compose: inner dimensions do not match");
  std::vector<Matrix> ks;
  ks.reserve(e1.kraus_count() * e2.kraus_count());
  for (const auto& f : e2.kraus())
    for (const auto& e : e1.kraus()) ks.push_back(f * e);
  return Superoperator::from_kraus_unchecked(std::move(ks));
}

bool same_action(const Superoperator& a, const Superoperator& b, double tol) {
  if (a.dim_in() != b.dim_in() || a.dim_out() != b.dim_out()) return false;
  const long d = a.dim_in();
  for (long i = 0; i < d; ++i) {
    for (long j = 0; j < d; ++j) {
      Matrix unit = Matrix::Zero(d, d);
      unit(i, j) = 1.0;
      if (!approx_equal(a.apply(unit), b.apply(unit), tol)) return false;
    }
  }
  return true;
}

}  // namespace qwv
