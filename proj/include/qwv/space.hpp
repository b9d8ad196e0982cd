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

namespace qwv {

/**
 * An ordered list of named quantum variables with their dimensions. The
 * composite basis is ordered lexicographically over the declaration order,
 * first variable most significant.
 */
struct VarSpace {
  std::vector<std::string> names;
  std::vector<long> dims;

  VarSpace() = default;
  VarSpace(std::vector<std::string> ns, std::vector<long> ds);

  long size() const { return static_cast<long>(names.size()); }
  bool empty() const { return names.empty(); }

  /** Total dimension; throws past the configured cap. */
  long dim(long cap = 4096) const;

  bool contains(const std::string& name) const;
  long index_of(const std::string& name) const;  // throws if unknown
  long dim_of(const std::string& name) const;

  /** Subspace of the given variables, kept in this space's order. */
  VarSpace restrict_to(const std::vector<std::string>& vars) const;

  bool operator==(const VarSpace& other) const {
    return names == other.names && dims == other.dims;
  }
};

/** Splits a composite basis index into per-variable digits. */
std::vector<long> unpack_index(long index, const std::vector<long>& dims);
long pack_index(const std::vector<long>& digits, const std::vector<long>& dims);

/**
 * Cylindric extension: returns the operator acting as `op` on `targets`
 * (in the given order) and as the identity elsewhere, expressed in the
 * basis order of `env`. Targets may appear in any order relative to env;
 * the basis permutation is handled here.
 */
Matrix embed(const Matrix& op, const std::vector<std::string>& targets,
             const VarSpace& env);

/** Partial trace over `traced`; remaining factors keep env order. */
Matrix partial_trace(const Matrix& a, const std::vector<std::string>& traced,
                     const VarSpace& env);

}  // namespace qwv
