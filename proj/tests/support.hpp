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

#include <cmath>
#include <string>

#include "qwv/linalg.hpp"
#include "qwv/space.hpp"

namespace qwv::test {

inline Vector ket(std::initializer_list<Complex> amps) {
  Vector v(static_cast<long>(amps.size()));
  long i = 0;
  for (Complex a : amps) v(i++) = a;
  return v;
}

inline Vector kron_kets(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (long i = 0; i < a.size(); ++i)
    for (long j = 0; j < b.size(); ++j) out(i * b.size() + j) = a(i) * b(j);
  return out;
}

inline Vector basis3(int a, int b, int c) {
  return kron_kets(kron_kets(basis_ket(2, a), basis_ket(2, b)),
                   basis_ket(2, c));
}

inline Vector plus_state() {
  const double r = 1.0 / std::sqrt(2.0);
  return ket({r, r});
}

inline Vector minus_state() {
  const double r = 1.0 / std::sqrt(2.0);
  return ket({r, -r});
}

inline Vector ghz() {
  Vector v = Vector::Zero(8);
  v(0) = v(7) = 1.0 / std::sqrt(2.0);
  return v;
}

inline Vector w_state() {
  Vector v = Vector::Zero(8);
  v(1) = v(2) = v(4) = 1.0 / std::sqrt(3.0);
  return v;
}

/** H^(x)3 |GHZ>: the even-parity uniform superposition. */
inline Vector phi_even_parity() {
  Vector v = Vector::Zero(8);
  v(0) = v(3) = v(5) = v(6) = 0.5;
  return v;
}

inline Vector bell00() {
  Vector v = Vector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return v;
}

/** Corrected amplitude-damping Kraus pair (E1 = sqrt(gamma) |0><1|). */
inline std::pair<Matrix, Matrix> damping_kraus(double gamma) {
  Matrix e0 = Matrix::Zero(2, 2);
  e0(0, 0) = 1.0;
  e0(1, 1) = std::sqrt(1.0 - gamma);
  Matrix e1 = Matrix::Zero(2, 2);
  e1(0, 1) = std::sqrt(gamma);
  return {e0, e1};
}

inline std::string corpus_dir() {
  const char* env = std::getenv("QWV_CORPUS");
  return env ? env : "corpus";
}

}  // namespace qwv::test
