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

#include "qwv/space.hpp"

#include <algorithm>
#include <set>

namespace qwv {

VarSpace::VarSpace(std::vector<std::string> ns, std::vector<long> ds)
    : names(std::move(ns)), dims(std::move(ds)) {
  if (names.size() != dims.size())
    throw Error("VarSpace: name/dimension count mismatch");
  std::set<std::string> seen;
  for (const auto& n : names)
    if (!seen.insert(n).second) throw Error("VarSpace: duplicate variable " + n);
  for (long d : dims)
    if (d < 1) throw Error("VarSpace: dimensions must be positive");
}

long VarSpace::dim(long cap) const {
  long d = 1;
  for (long x : dims) {
    d *= x;
    if (d > cap)
      throw Error("total dimension exceeds cap of " + std::to_string(cap) +
                  "; reduce variable count or dimensions");
  }
  return d;
}

bool VarSpace::contains(const std::string& name) const {
  return std::find(names.begin(), names.end(), name) != names.end();
}

long VarSpace::index_of(const std::string& name) const {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw Error("unknown variable: " + name);
  return static_cast<long>(it - names.begin());
}

long VarSpace::dim_of(const std::string& name) const {
  return dims[index_of(name)];
}

VarSpace VarSpace::restrict_to(const std::vector<std::string>& vars) const {
  VarSpace out;
  for (long i = 0; i < size(); ++i) {
    if (std::find(vars.begin(), vars.end(), names[i]) != vars.end()) {
      out.names.push_back(names[i]);
      out.dims.push_back(dims[i]);
    }
  }
  return out;
}

std::vector<long> unpack_index(long index, const std::vector<long>& dims) {
  std::vector<long> digits(dims.size(), 0);
  for (long i = static_cast<long>(dims.size()) - 1; i >= 0; --i) {
    digits[i] = index % dims[i];
    index /= dims[i];
  }
  return digits;
}

long pack_index(const std::vector<long>& digits,
                const std::vector<long>& dims) {
  long index = 0;
  for (size_t i = 0; i < dims.size(); ++i) index = index * dims[i] + digits[i];
  return index;
}

Matrix embed(const Matrix& op, const std::vector<std::string>& targets,
             const VarSpace& env) {
  if (op.rows() != op.cols()) throw Error("embed: operator must be square");
  std::set<std::string> seen;
  for (const auto& t : targets) {
    if (!env.contains(t)) throw Error("embed: unknown variable " + t);
    if (!seen.insert(t).second) throw Error("embed: repeated target " + t);
  }
  std::vector<long> target_pos(targets.size());
  std::vector<long> target_dims(targets.size());
  long tdim = 1;
  for (size_t i = 0; i < targets.size(); ++i) {
    target_pos[i] = env.index_of(targets[i]);
    target_dims[i] = env.dims[target_pos[i]];
    tdim *= target_dims[i];
  }
  if (op.rows() != tdim)
    throw Error("embed: operator dimension " + std::to_string(op.rows()) +
                " does not match target space dimension " +
                std::to_string(tdim));

  const long full = env.dim();
  std::vector<bool> is_target(env.size(), false);
  for (long p : target_pos) is_target[p] = true;

  // Enumerate the non-target sub-basis once, then fill all (row, col)
  // pairs of the target factor for each of its configurations.
  std::vector<long> spectator_dims;
  std::vector<long> spectator_pos;
  for (long i = 0; i < env.size(); ++i) {
    if (!is_target[i]) {
      spectator_dims.push_back(env.dims[i]);
      spectator_pos.push_back(i);
    }
  }
  long sdim = 1;
  for (long d : spectator_dims) sdim *= d;

  Matrix out = Matrix::Zero(full, full);
  std::vector<long> env_digits_row(env.size()), env_digits_col(env.size());
  for (long s = 0; s < sdim; ++s) {
    std::vector<long> sdigits = unpack_index(s, spectator_dims);
    for (long tr = 0; tr < tdim; ++tr) {
      std::vector<long> trd = unpack_index(tr, target_dims);
      for (long tc = 0; tc < tdim; ++tc) {
        if (op(tr, tc) == Complex(0.0, 0.0)) continue;
        std::vector<long> tcd = unpack_index(tc, target_dims);
        for (size_t i = 0; i < spectator_pos.size(); ++i) {
          env_digits_row[spectator_pos[i]] = sdigits[i];
          env_digits_col[spectator_pos[i]] = sdigits[i];
        }
        for (size_t i = 0; i < target_pos.size(); ++i) {
          env_digits_row[target_pos[i]] = trd[i];
          env_digits_col[target_pos[i]] = tcd[i];
        }
        out(pack_index(env_digits_row, env.dims),
            pack_index(env_digits_col, env.dims)) = op(tr, tc);
      }
    }
  }
  return out;
}

Matrix partial_trace(const Matrix& a, const std::vector<std::string>& traced,
                     const VarSpace& env) {
  if (a.rows() != a.cols() || a.rows() != env.dim())
    throw Error("partial_trace: operator does not match the space");
  if (traced.empty()) return a;
  std::set<std::string> traced_set;
  for (const auto& t : traced) {
    if (!env.contains(t)) throw Error("partial_trace: unknown variable " + t);
    traced_set.insert(t);
  }
  std::vector<long> keep_pos, keep_dims, tr_pos, tr_dims;
  for (long i = 0; i < env.size(); ++i) {
    if (traced_set.count(env.names[i])) {
      tr_pos.push_back(i);
      tr_dims.push_back(env.dims[i]);
    } else {
      keep_pos.push_back(i);
      keep_dims.push_back(env.dims[i]);
    }
  }
  long kdim = 1, tdim = 1;
  for (long d : keep_dims) kdim *= d;
  for (long d : tr_dims) tdim *= d;

  Matrix out = Matrix::Zero(kdim, kdim);
  std::vector<long> row_digits(env.size()), col_digits(env.size());
  for (long kr = 0; kr < kdim; ++kr) {
    std::vector<long> krd = unpack_index(kr, keep_dims);
    for (long kc = 0; kc < kdim; ++kc) {
      std::vector<long> kcd = unpack_index(kc, keep_dims);
      Complex sum = 0.0;
      for (long t = 0; t < tdim; ++t) {
        std::vector<long> td = unpack_index(t, tr_dims);
        for (size_t i = 0; i < keep_pos.size(); ++i) {
          row_digits[keep_pos[i]] = krd[i];
          col_digits[keep_pos[i]] = kcd[i];
        }
        for (size_t i = 0; i < tr_pos.size(); ++i) {
          row_digits[tr_pos[i]] = td[i];
          col_digits[tr_pos[i]] = td[i];
        }
        sum += a(pack_index(row_digits, env.dims),
                 pack_index(col_digits, env.dims));
      }
      out(kr, kc) = sum;
    }
  }
  return out;
}

}  // namespace qwv
