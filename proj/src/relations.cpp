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

#include "qwv/relations.hpp"

#include <cmath>

#include "qwv/space.hpp"

namespace qwv {

Matrix swap_operator(long d) {
  if (d < 1) throw Error("swap_operator: dimension must be positive");
  Matrix s = Matrix::Zero(d * d, d * d);
  for (long i = 0; i < d; ++i)
    for (long j = 0; j < d; ++j) s(j * d + i, i * d + j) = 1.0;
  return s;
}

Matrix symmetrizer(long d, int sign) {
  if (sign != 1 && sign != -1) throw Error("symmetrizer: sign must be +-1");
  return 0.5 * (identity(d * d) + static_cast<double>(sign) * swap_operator(d));
}

Matrix equality_pred(const Matrix& basis, double ortho_tol) {
  if (basis.rows() != basis.cols())
    throw Error("equality_pred: basis matrix must be square");
  const long d = basis.rows();
  if (!approx_equal(dagger(basis) * basis, identity(d), ortho_tol))
    throw Error("equality_pred: basis is not orthonormal");
  Vector psi = Vector::Zero(d * d);
  const double w = 1.0 / std::sqrt(static_cast<double>(d));
  for (long i = 0; i < d; ++i) {
    Vector bi = basis.col(i);
    for (long a = 0; a < d; ++a)
      for (long b = 0; b < d; ++b) psi(a * d + b) += w * bi(a) * bi(b);
  }
  return outer(psi);
}

namespace {

void check_relation_dims(const Matrix& a, const Matrix& b, long d1, long d2,
                         long d3) {
  if (d1 < 1 || d2 < 1 || d3 < 1)
    throw Error("relation composition: dimensions must be positive");
  if (a.rows() != d1 * d2 || a.cols() != d1 * d2)
    throw Error("relation composition: left operand is not on H1 (x) H2");
  if (b.rows() != d2 * d3 || b.cols() != d2 * d3)
    throw Error(
        "relation composition: right operand does not share the middle "
        "dimension");
}

}  // namespace

Matrix circle_comp(const Matrix& a, const Matrix& b, long d1, long d2,
                   long d3) {
  check_relation_dims(a, b, d1, d2, d3);
  Matrix out = Matrix::Zero(d1 * d3, d1 * d3);
  for (long a1 = 0; a1 < d1; ++a1)
    for (long b1 = 0; b1 < d1; ++b1)
      for (long a3 = 0; a3 < d3; ++a3)
        for (long b3 = 0; b3 < d3; ++b3) {
          Complex sum = 0.0;
          for (long i = 0; i < d2; ++i)
            sum += a(a1 * d2 + i, b1 * d2 + i) * b(i * d3 + a3, i * d3 + b3);
          out(a1 * d3 + a3, b1 * d3 + b3) = sum / static_cast<double>(d2);
        }
  return out;
}

Matrix bullet_comp(const Matrix& a, const Matrix& b, long d1, long d2,
                   long d3) {
  check_relation_dims(a, b, d1, d2, d3);
  Matrix out = Matrix::Zero(d1 * d3, d1 * d3);
  for (long a1 = 0; a1 < d1; ++a1)
    for (long b1 = 0; b1 < d1; ++b1)
      for (long a3 = 0; a3 < d3; ++a3)
        for (long b3 = 0; b3 < d3; ++b3) {
          Complex sum = 0.0;
          for (long i = 0; i < d2; ++i)
            for (long j = 0; j < d2; ++j)
              sum += a(a1 * d2 + i, b1 * d2 + j) * b(i * d3 + a3, j * d3 + b3);
          out(a1 * d3 + a3, b1 * d3 + b3) = sum / static_cast<double>(d2);
        }
  return out;
}

Matrix diamond_comp(const Matrix& a, const Matrix& b, long d1, long d2, long d3,
                    int sign) {
  check_relation_dims(a, b, d1, d2, d3);
  // Work on H1 (x) H2 (x) H2 (x) H3 and trace out the two middle factors.
  Matrix sv = symmetrizer(d2, sign);
  Matrix big = kron(a, b);  // index order (h1 h2), (h2 h3)
  Matrix svfull = kron(kron(identity(d1), sv), identity(d3));
  Matrix conj = svfull * big * svfull;
  VarSpace env({"h1", "m1", "m2", "h3"}, {d1, d2, d2, d3});
  return partial_trace(conj, {"m1", "m2"}, env);
}

}  // namespace qwv
