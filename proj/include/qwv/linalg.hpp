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

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace qwv {

using Complex = std::complex<double>;

/** Dense complex matrix, row-major, the carrier for all operators. */
using Matrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/** Complex column vector (kets, Loewner witnesses). */
using Vector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

/** All numeric thresholds in one place; every entry is CLI-overridable. */
struct Tolerances {
  double herm = 1e-9;          ///< entrywise Hermiticity slack
  double eq = 1e-9;            ///< entrywise operator equality
  double psd = 1e-8;           ///< eigenvalue slack for positivity / <= I
  double trace = 1e-9;         ///< trace bookkeeping slack
  double fix = 1e-10;          ///< entrywise wp fixed-point convergence
  long fix_budget = 10000;     ///< max wp fixed-point iterations
  long unroll = 10000;         ///< max loop unrollings in denotation
  double loop_residual = 1e-10;///< stop unrolling when live mass is below this
  double kraus_drop = 1e-12;   ///< drop Kraus branches below this operator norm
  long dim_cap = 4096;         ///< total Hilbert-space dimension cap
};

/** Error raised on contract violations (bad dimensions, invalid inputs). */
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

Matrix identity(long n);
Matrix zeros(long rows, long cols);
Matrix dagger(const Matrix& a);

/** Kronecker product with the left factor most significant. */
Matrix kron(const Matrix& a, const Matrix& b);

bool all_finite(const Matrix& a);
double max_abs(const Matrix& a);
bool approx_equal(const Matrix& a, const Matrix& b, double tol);
bool is_hermitian(const Matrix& a, double tol);

/** (A + A^dag)/2; absorbs round-off asymmetry before eigensolves. */
Matrix hermitian_part(const Matrix& a);

/** Largest singular value. */
double operator_norm(const Matrix& a);

/** Eigenvalues (ascending) and eigenvectors (columns) of a Hermitian matrix. */
std::pair<Eigen::VectorXd, Matrix> hermitian_eig(const Matrix& a);

double min_eigenvalue(const Matrix& hermitian);

struct LoewnerVerdict {
  bool holds = false;
  double min_eig = 0.0;
  /// Unit eigenvector of the most negative eigenvalue of B - A; only
  /// populated when the order fails.
  std::optional<Vector> witness;
};

/**
 * Decides A <= B in the Loewner order: B - A must have minimum eigenvalue
 * >= -tol. Inputs must be square, equal-sized and Hermitian within
 * herm_tol; the difference is symmetrised before the eigensolve.
 */
LoewnerVerdict loewner_leq(const Matrix& a, const Matrix& b, double tol,
                           double herm_tol = 1e-9);

/**
 * Projects eigenvalues of a Hermitian matrix into [lo, hi]. Returns the
 * input unchanged when all eigenvalues are already inside (keeps loop-free
 * arithmetic exact).
 */
Matrix clamp_eigenvalues(const Matrix& a, double lo, double hi);

Complex trace_of(const Matrix& a);

/** Ket |k> of dimension dim. */
Vector basis_ket(long dim, long k);

/** Rank-1 projector |v><v| (not normalised). */
Matrix outer(const Vector& v);

}  // namespace qwv
