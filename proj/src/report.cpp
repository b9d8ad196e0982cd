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

#include "qwv/report.hpp"

#include <ostream>

namespace qwv {

nlohmann::json witness_json(const Vector& v) {
  nlohmann::json out = nlohmann::json::array();
  for (long i = 0; i < v.size(); ++i)
    out.push_back({v(i).real(), v(i).imag()});
  return out;
}

nlohmann::json matrix_json(const Matrix& m) {
  nlohmann::json out = nlohmann::json::array();
  for (long i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (long j = 0; j < m.cols(); ++j)
      row.push_back({m(i, j).real(), m(i, j).imag()});
    out.push_back(std::move(row));
  }
  return out;
}

RunReport::RunReport(std::string command_echo, const Tolerances& tol,
                     unsigned long long seed) {
  j_["schema"] = 1;
  j_["command"] = std::move(command_echo);
  j_["tolerances"] = {
      {"herm", tol.herm},          {"eq", tol.eq},
      {"psd", tol.psd},            {"trace", tol.trace},
      {"fix", tol.fix},            {"fix_budget", tol.fix_budget},
      {"unroll", tol.unroll},      {"loop_residual", tol.loop_residual},
      {"kraus_drop", tol.kraus_drop}};
  j_["seed"] = seed;
  j_["verdicts"] = nlohmann::json::array();
}

void RunReport::verdict(const std::string& name, bool holds, double margin,
                        nlohmann::json extra) {
  extra["name"] = name;
  extra["holds"] = holds;
  extra["margin"] = margin;
  j_["verdicts"].push_back(std::move(extra));
  if (!holds) all_hold_ = false;
}

void RunReport::info(const std::string& key, nlohmann::json value) {
  j_[key] = std::move(value);
}

int RunReport::emit(bool json_mode, double wall_ms, std::ostream& out,
                    std::ostream& err) const {
  nlohmann::json j = j_;
  j["ok"] = all_hold_;
  if (json_mode) {
    out << j.dump(2) << "\n";
    err << "wall_ms=" << wall_ms << "\n";
  } else {
    out << "command: " << j["command"].get<std::string>() << "\n";
    out << "seed: " << j["seed"] << "\n";
    for (const auto& v : j["verdicts"]) {
      out << (v["holds"].get<bool>() ? "PASS" : "FAIL") << "  "
          << v["name"].get<std::string>() << "  margin=" << v["margin"]
          << "\n";
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (it.key() == "name" || it.key() == "holds" || it.key() == "margin")
          continue;
        out << "      " << it.key() << ": " << it.value().dump() << "\n";
      }
    }
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.key() == "verdicts" || it.key() == "command" ||
          it.key() == "tolerances" || it.key() == "seed" || it.key() == "ok" ||
          it.key() == "schema")
        continue;
      out << it.key() << ": " << it.value().dump(2) << "\n";
    }
    out << "overall: " << (all_hold_ ? "ok" : "FAILED")
        << "  (wall_ms=" << wall_ms << ")\n";
  }
  return all_hold_ ? 0 : 1;
}

}  // namespace qwv
