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

#include <string>
#include <vector>

#include "qwv/linalg.hpp"
#include "qwv/space.hpp"

namespace qwv {

/**
 * A quantum predicate (effect): a Hermitian operator A with 0 <= A <= I
 * in the Loewner order. tr(A rho) is the degree to which state rho
 * satisfies A.
 */
struct QuantumPredicate {
  Matrix mat;
  VarSpace space;
};

/** A partial density operator: positive with trace at most 1. */
struct DensityOperator {
  Matrix mat;
  VarSpace space;
};

/** Throws unless `mat` is a valid predicate on `space`. */
QuantumPredicate make_predicate(Matrix mat, VarSpace space,
                                const Tolerances& tol = {});

/** Throws unless `mat` is a valid partial density operator on `space`. */
DensityOperator make_density(Matrix mat, VarSpace space,
                             const Tolerances& tol = {});

/**
 * Expected value of observable A in state rho: the real part of
 * tr(A rho). A non-negligible imaginary part signals corrupted inputs
 * and raises an error.
 */
double expectation(const Matrix& a, const Matrix& rho, double tol = 1e-9);

/**
 * A quantum operation in Kraus form: rho -> sum_i E_i rho E_i^dag.
 * Trace-non-increasing (sum_i E_i^dag E_i <= I) by construction; the
 * trace_preserving flag records whether the sum equals I.
 */
class Superoperator {
 public:
  /** Empty map of dimension zero; assign before use. */
  Superoperator() = default;

  /** Validates the Kraus list (nonempty, uniform shape, TNI). */
  static Superoperator from_kraus(std::vector<Matrix> kraus,
                                  const Tolerances& tol = {});

  /** Kraus list accepted as-is; for internal constructions known valid. */
  static Superoperator from_kraus_unchecked(std::vector<Matrix> kraus,
                                            double eq_tol = 1e-9);

  static Superoperator identity(long dim);
  static Superoperator unitary(const Matrix& u);
  /** Single measurement branch rho -> M rho M^dag. */
  static Superoperator branch(const Matrix& m);
  /** Reset channel onto basis state 0: Kraus {|0><n| : n < dim}. */
  static Superoperator reset(long dim);

  const std::vector<Matrix>& kraus() const { return kraus_; }
  long dim_in() const { return dim_in_; }
  long dim_out() const { return dim_out_; }
  bool trace_preserving() const { return trace_preserving_; }

  /** Schroedinger picture: sum_i E_i rho E_i^dag. */
  Matrix apply(const Matrix& rho) const;

  /** Heisenberg picture (dual): sum_i E_i^dag A E_i. */
  Matrix dual_apply(const Matrix& a) const;

  /** sum_i E_i^dag E_i; equals dual_apply(I). */
  Matrix dual_of_identity() const;

  /** Each Kraus operator cylindrically extended from targets to env. */
  Superoperator embedded(const std::vector<std::string>& targets,
                         const VarSpace& env) const;

  /** Drops Kraus branches with operator norm below the threshold. */
  Superoperator pruned(double drop_norm) const;

  size_t kraus_count() const { return kraus_.size(); }

 private:
  std::vector<Matrix> kraus_;
  long dim_in_ = 0;
  long dim_out_ = 0;
  bool trace_preserving_ = false;
};

DensityOperator apply(const Superoperator& e, const DensityOperator& rho,
                      const Tolerances& tol = {});
Matrix dual_apply(const Superoperator& e, const Matrix& a);

/** Sequential composition: applying the result equals applying e2 after e1. */
Superoperator compose(const Superoperator& e1, const Superoperator& e2);

/** True when both maps act identically on a full matrix-unit basis. */
bool same_action(const Superoperator& a, const Superoperator& b, double tol);

}  // namespace qwv
