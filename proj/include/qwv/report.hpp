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

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "qwv/linalg.hpp"

namespace qwv {

nlohmann::json witness_json(const Vector& v);
nlohmann::json matrix_json(const Matrix& m);

/**
 * Machine-readable run report. Every verdict carries its numeric
 * margin. The JSON rendering on stdout is byte-deterministic for fixed
 * inputs and seed; wall-clock time is reported on stderr and in the
 * text rendering only.
 */
class RunReport {
 public:
  RunReport(std::string command_echo, const Tolerances& tol,
            unsigned long long seed);

  void verdict(const std::string& name, bool holds, double margin,
               nlohmann::json extra = nlohmann::json::object());
  void info(const std::string& key, nlohmann::json value);

  bool all_hold() const { return all_hold_; }

  /** Writes the report; returns the process exit code (0 or 1). */
  int emit(bool json_mode, double wall_ms, std::ostream& out,
           std::ostream& err) const;

 private:
  nlohmann::json j_;
  bool all_hold_ = true;
};

}  // namespace qwv
