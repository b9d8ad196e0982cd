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

#include "qwv/sampling.hpp"

#include <cmath>

namespace qwv {

Matrix ginibre(long rows, long cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(rows, cols);
  for (long i = 0; i < rows; ++i)
    for (long j = 0; j < cols; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  return g;
}

Matrix random_density(long dim, Rng& rng) {
  Matrix g = ginibre(dim, dim, rng);
  Matrix rho = g * g.adjoint();
  return rho / trace_of(rho).real();
}

Matrix random_density_real(long dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(dim, dim);
  for (long i = 0; i < dim; ++i)
    for (long j = 0; j < dim; ++j) g(i, j) = Complex(normal(rng), 0.0);
  Matrix rho = g * g.adjoint();
  return rho / trace_of(rho).real();
}

Vector random_ket(long dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(dim);
  for (long i = 0; i < dim; ++i) v(i) = Complex(normal(rng), normal(rng));
  return v / v.norm();
}

Matrix random_unitary(long dim, Rng& rng) {
  Matrix g = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix phases so the distribution does not depend on the QR convention.
  for (long i = 0; i < dim; ++i) {
    Complex d = r(i, i);
    q.col(i) *= d == Complex(0.0, 0.0) ? Complex(1.0, 0.0) : d / std::abs(d);
  }
  return q;
}

Matrix random_hermitian(long dim, Rng& rng) {
  return hermitian_part(ginibre(dim, dim, rng));
}

Matrix random_predicate(long dim, Rng& rng) {
  Matrix h = random_hermitian(dim, rng);
  auto [vals, vecs] = hermitian_eig(h);
  double lo = vals(0), hi = vals(vals.size() - 1);
  if (hi - lo < 1e-12) return 0.5 * identity(dim);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double top = unit(rng);  // random maximum keeps the family heterogeneous
  return top * (h - lo * identity(dim)) / (hi - lo);
}

Superoperator random_channel(long dim, long kraus_count, bool trace_preserving,
                             Rng& rng) {
  std::vector<Matrix> ks;
  Matrix sum = Matrix::Zero(dim, dim);
  for (long i = 0; i < kraus_count; ++i) {
    ks.push_back(ginibre(dim, dim, rng));
    sum += ks.back().adjoint() * ks.back();
  }
  // Right-normalise by sum^(-1/2) so sum K^dag K = I exactly.
  auto [vals, vecs] = hermitian_eig(sum);
  Eigen::VectorXd inv_sqrt(vals.size());
  for (long i = 0; i < vals.size(); ++i)
    inv_sqrt(i) = vals(i) > 1e-14 ? 1.0 / std::sqrt(vals(i)) : 0.0;
  Matrix norm = vecs * inv_sqrt.cast<Complex>().asDiagonal() * vecs.adjoint();
  double scale = 1.0;
  if (!trace_preserving) {
    std::uniform_real_distribution<double> unit(0.1, 1.0);
    scale = std::sqrt(unit(rng));
  }
  for (auto& k : ks) k = scale * (k * norm);
  return Superoperator::from_kraus_unchecked(std::move(ks));
}

std::vector<Matrix> random_measurement(long dim, long outcomes, Rng& rng) {
  Superoperator channel = random_channel(dim, outcomes, true, rng);
  return channel.kraus();
}

}  // namespace qwv
