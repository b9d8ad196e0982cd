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

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qwv/outline.hpp"
#include "qwv/parser.hpp"
#include "qwv/proof_text.hpp"
#include "qwv/relations.hpp"
#include "qwv/report.hpp"
#include "qwv/svts.hpp"

namespace {

using namespace qwv;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Options {
  Tolerances tol;
  double check_tol = 1e-9;
  long max_steps = 100000;
  unsigned long long seed = 20260101;
  bool json = true;
  Mode mode = Mode::Total;
  WpOptions wp_opts() const { return WpOptions{tol.fix, tol.fix_budget}; }
  DenoteOptions denote_opts() const {
    return DenoteOptions{tol.unroll, tol.loop_residual, tol.kraus_drop};
  }
};

std::string echo_of(int argc, char** argv) {
  std::string echo;
  for (int i = 0; i < argc; ++i) {
    if (i) echo += " ";
    echo += argv[i];
  }
  return echo;
}

nlohmann::json wp_json(const WpResult& wp) {
  return {{"converged", wp.converged},
          {"gap", wp.gap},
          {"iterations", wp.iterations},
          {"monotone", wp.monotone}};
}

int run_cmd_run(const Options& opt, RunReport& report, const Program& prog,
                const std::string& state_file) {
  Matrix rho = parse_state_file(read_file(state_file), prog.decls, opt.tol);
  RunResult rr = run_ensemble(prog.decls, prog.root, rho, opt.max_steps);
  report.info("terminated_trace", rr.terminated_trace);
  report.info("residual_trace", rr.residual_trace);
  report.info("steps", rr.steps);
  report.info("budget_exhausted", rr.budget_exhausted);
  report.info("output_state", matrix_json(rr.terminated_sum(prog.decls.vars.dim())));
  DenoteResult dn = denote(prog.decls, prog.root, opt.denote_opts());
  report.info("denotation_kraus_count", dn.op.kraus_count());
  report.info("denotation_loop_residual", dn.loop_residual);
  report.info("denotation_agrees",
              max_abs(dn.op.apply(rho) - rr.terminated_sum(prog.decls.vars.dim())));
  return 0;
}

void add_triple_verdict(RunReport& report, const std::string& name,
                        const TripleVerdict& v) {
  nlohmann::json extra;
  extra["wp"] = wp_json(v.wp);
  if (v.witness) {
    extra["witness"] = witness_json(*v.witness);
    extra["lhs_at_witness"] = v.lhs_at_witness;
    extra["rhs_at_witness"] = v.rhs_at_witness;
  }
  report.verdict(name, v.holds, v.min_eig, std::move(extra));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verifier for quantum while-programs"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  std::string prog_file, pre_file, post_file, state_file, theta_file;
  std::string derivation_file, loc_name, pred_file, obs_file, target_file;
  std::vector<std::string> rank_state_files;
  std::string relop = "circle";
  std::string dims_str;
  std::vector<std::string> operands;
  long max_len = 32, subset_budget = 16, sample_count = 16;
  long budget = 256, rank_reach = 4;
  double eps = 1e-3, eps_rank = 1e-3, term_tol = 1e-6;
  bool semantic = false, trace_soundness = false;
  std::string mode_str = "tot";

  app.add_option("--tol", opt.check_tol, "Loewner decision tolerance");
  app.add_option("--herm-tol", opt.tol.herm, "entrywise Hermiticity slack");
  app.add_option("--eq-tol", opt.tol.eq, "entrywise operator equality");
  app.add_option("--psd-tol", opt.tol.psd, "eigenvalue positivity slack");
  app.add_option("--trace-tol", opt.tol.trace, "trace bookkeeping slack");
  app.add_option("--fix-tol", opt.tol.fix, "wp fixed-point tolerance");
  app.add_option("--max-iters", opt.tol.fix_budget, "wp fixed-point budget");
  app.add_option("--max-steps", opt.max_steps, "ensemble step budget");
  app.add_option("--unroll", opt.tol.unroll, "loop unroll budget");
  app.add_option("--loop-residual", opt.tol.loop_residual,
                 "stop unrolling below this live mass");
  app.add_option("--seed", opt.seed, "RNG seed echoed in reports");
  auto* json_flag = app.add_flag("--json", "JSON report on stdout (default)");
  auto* text_flag = app.add_flag("--text", "human-readable report");
  app.add_option("--mode", mode_str, "par|tot correctness mode")
      ->check(CLI::IsMember({"par", "tot"}));

  auto* c_run = app.add_subcommand("run", "execute the ensemble semantics");
  c_run->add_option("program", prog_file)->required();
  c_run->add_option("--state", state_file)->required();

  auto* c_wp = app.add_subcommand("wp", "weakest precondition of a program");
  c_wp->add_option("program", prog_file)->required();
  c_wp->add_option("--post", post_file)->required();

  auto* c_check = app.add_subcommand("check", "check a Hoare triple or proof");
  c_check->add_option("program", prog_file);
  c_check->add_option("--pre", pre_file);
  c_check->add_option("--post", post_file);
  c_check->add_option("--derivation", derivation_file);
  c_check->add_flag("--semantic", semantic,
                    "cross-check every derivation node semantically");

  auto* c_outline = app.add_subcommand("outline", "check a proof outline");
  c_outline->add_option("program", prog_file)->required();
  c_outline->add_flag("--trace", trace_soundness,
                      "run the strong-soundness execution harness");
  c_outline->add_option("--state", state_file,
                        "input state for --trace (default: maximally mixed)");
  c_outline->add_option("--rank-obs", obs_file,
                        "ranking observable for total-mode loops");
  c_outline->add_option("--rank-eps", eps);
  c_outline->add_option("--rank-eps-rank", eps_rank);
  c_outline->add_option("--rank-state", rank_state_files,
                        "states for ranking evidence");
  c_outline->add_option("--rank-reach", rank_reach);

  auto* c_svts = app.add_subcommand("svts", "dump the control-flow SVTS");
  c_svts->add_option("program", prog_file)->required();
  c_svts->add_option("--theta", theta_file, "initial predicate");

  auto* c_inv = app.add_subcommand("invcheck", "bounded invariant check");
  c_inv->add_option("program", prog_file)->required();
  c_inv->add_option("--loc", loc_name)->required();
  c_inv->add_option("--pred", pred_file)->required();
  c_inv->add_option("--theta", theta_file);
  c_inv->add_option("--max-len", max_len);
  c_inv->add_option("--subsets", subset_budget);
  c_inv->add_option("--samples", sample_count);

  auto* c_rank = app.add_subcommand("rank", "check a ranking function");
  c_rank->add_option("program", prog_file)->required();
  c_rank->add_option("--obs", obs_file)->required();
  c_rank->add_option("--target", target_file)->required();
  c_rank->add_option("--eps", eps);
  c_rank->add_option("--eps-rank", eps_rank);
  c_rank->add_option("--state", rank_state_files)->required();
  c_rank->add_option("--reach", rank_reach);

  auto* c_term = app.add_subcommand("terminate", "termination analysis");
  c_term->add_option("program", prog_file)->required();
  c_term->add_option("--state", state_file)->required();
  c_term->add_option("--budget", budget, "loop unrollings to expand");
  c_term->add_option("--term-tol", term_tol);

  auto* c_rel = app.add_subcommand("relcompose", "compose quantum relations");
  c_rel->add_option("--op", relop)
      ->check(CLI::IsMember({"circle", "bullet", "diamond+", "diamond-"}));
  c_rel->add_option("--dims", dims_str, "d1,d2,d3")->required();
  c_rel->add_option("operands", operands, "two operand files")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? 2 : 0;
  }

  opt.json = !text_flag->count() || json_flag->count();
  if (text_flag->count() && !json_flag->count()) opt.json = false;
  opt.mode = mode_str == "par" ? Mode::Partial : Mode::Total;

  auto started = std::chrono::steady_clock::now();
  RunReport report(echo_of(argc, argv), opt.tol, opt.seed);

  try {
    if (c_run->parsed()) {
      Program prog = parse_program(read_file(prog_file), opt.tol);
      run_cmd_run(opt, report, prog, state_file);
    } else if (c_wp->parsed()) {
      Program prog = parse_program(read_file(prog_file), opt.tol);
      Matrix post = parse_predicate_file(read_file(post_file), prog.decls,
                                         opt.tol);
      WpResult wp = opt.mode == Mode::Total
                        ? wp_total(prog.decls, prog.root, post, opt.wp_opts())
                        : wp_partial_bound(prog.decls, prog.root, post,
                                           opt.wp_opts());
      report.info("wp", matrix_json(wp.wp));
      report.info("fixed_point", wp_json(wp));
    } else if (c_check->parsed()) {
      if (!derivation_file.empty()) {
        ProofFile pf = parse_proof_file(read_file(derivation_file), opt.tol);
        DerivationReport dr = verify_derivation(pf.decls, pf.derivation,
                                                semantic, opt.check_tol,
                                                opt.tol);
        for (const auto& node : dr.nodes) {
          nlohmann::json extra;
          extra["rule"] = node.rule;
          if (!node.violations.empty()) extra["violations"] = node.violations;
          extra["pre"] = matrix_json(node.formula.pre);
          extra["post"] = matrix_json(node.formula.post);
          double margin = 0.0;
          bool ok = node.ok;
          if (node.semantic) {
            extra["semantic_holds"] = node.semantic->holds;
            margin = node.semantic->min_eig;
            ok = ok && node.semantic->holds;
          }
          report.verdict("node " + node.name, ok, margin, std::move(extra));
        }
      } else {
        if (prog_file.empty() || pre_file.empty() || post_file.empty())
          throw Error("check needs a program with --pre/--post, or "
                      "--derivation");
        Program prog = parse_program(read_file(prog_file), opt.tol);
        Matrix pre =
            parse_predicate_file(read_file(pre_file), prog.decls, opt.tol);
        Matrix post =
            parse_predicate_file(read_file(post_file), prog.decls, opt.tol);
        CorrectnessFormula f{pre, prog.root, post, opt.mode};
        TripleVerdict v =
            check_triple(prog.decls, f, opt.check_tol, opt.wp_opts());
        add_triple_verdict(report, "triple", v);
      }
    } else if (c_outline->parsed()) {
      Program prog = parse_program(read_file(prog_file), opt.tol);
      if (!prog.annotated)
        throw Error("outline: the program carries no predicate annotations");
      std::map<const Stmt*, RankingSpec> rankings;
      std::vector<Matrix> rank_states;
      if (!obs_file.empty()) {
        RankingSpec spec;
        spec.observable =
            parse_predicate_file(read_file(obs_file), prog.decls, opt.tol);
        spec.eps = eps;
        spec.eps_rank = eps_rank;
        spec.target = Matrix::Zero(prog.decls.vars.dim(),
                                   prog.decls.vars.dim());
        for (const auto& [path, node] : subprograms(prog.root))
          if (node->kind == StmtKind::While) rankings[node.get()] = spec;
        for (const auto& f : rank_state_files)
          rank_states.push_back(
              parse_state_file(read_file(f), prog.decls, opt.tol));
      }
      StandardOutline outline =
          standardize(prog, opt.mode, opt.wp_opts(), rankings, opt.tol);
      VcGenResult vcs =
          vcgen(outline, opt.wp_opts(), rank_states, rank_reach, opt.tol);
      DischargeReport dr = discharge(vcs.vcs, opt.check_tol);
      for (const auto& v : dr.verdicts) {
        nlohmann::json extra;
        if (v.witness) extra["witness"] = witness_json(*v.witness);
        report.verdict("vc " + v.provenance, v.holds, v.min_eig,
                       std::move(extra));
      }
      for (const auto& ob : vcs.rankings) {
        nlohmann::json extra;
        extra["evidence_supplied"] = ob.evidence_supplied;
        if (ob.evidence_supplied && !ob.report.violation.empty())
          extra["violation"] = ob.report.violation;
        report.verdict("ranking " + ob.provenance,
                       ob.evidence_supplied && ob.report.pass, 0.0,
                       std::move(extra));
      }
      if (trace_soundness) {
        Matrix rho;
        if (!state_file.empty()) {
          rho = parse_state_file(read_file(state_file), prog.decls, opt.tol);
        } else {
          long d = prog.decls.vars.dim();
          rho = identity(d) / static_cast<double>(d);
        }
        SoundnessTraceReport tr =
            strong_soundness_trace(outline, rho, opt.max_steps, opt.check_tol);
        nlohmann::json extra;
        extra["steps"] = tr.steps;
        if (tr.violation) {
          extra["violation_step"] = tr.violation->step;
          extra["violation"] = tr.violation->what;
        }
        report.verdict("strong-soundness trace", tr.ok, tr.worst_margin,
                       std::move(extra));
      }
      report.info("formula_pre", matrix_json(outline.formula_pre));
      report.info("formula_post", matrix_json(outline.formula_post));
    } else if (c_svts->parsed()) {
      Program prog = parse_program(read_file(prog_file), opt.tol);
      Matrix theta =
          theta_file.empty()
              ? Matrix(identity(prog.decls.vars.dim()))
              : parse_predicate_file(read_file(theta_file), prog.decls,
                                     opt.tol);
      Svts svts = build_svts(prog.decls, prog.root, theta, opt.tol);
      if (opt.json) {
        nlohmann::json graph = nlohmann::json::array();
        for (const auto& t : svts.transitions)
          graph.push_back(
              {{"from", svts.location_names[t.from]},
               {"to", svts.location_names[t.to]},
               {"kraus_count", t.op.kraus_count()},
               {"trace_preserving_residual",
                svts.trace_preserving_residual(t.from)},
               {"tag", t.tag}});
        report.info("svts", std::move(graph));
      } else {
        std::cout << svts.dump();
      }
    } else if (c_inv->parsed()) {
      Program prog = parse_program(read_file(prog_file), opt.tol);
      Matrix theta =
          theta_file.empty()
              ? Matrix(identity(prog.decls.vars.dim()))
              : parse_predicate_file(read_file(theta_file), prog.decls,
                                     opt.tol);
      Matrix o =
          parse_predicate_file(read_file(pred_file), prog.decls, opt.tol);
      Svts svts = build_svts(prog.decls, prog.root, theta, opt.tol);
      int loc = -1;
      for (int i = 0; i < svts.locations; ++i)
        if (svts.location_names[i] == loc_name) loc = i;
      if (loc < 0) throw Error("unknown location " + loc_name);
      InvariantReport ir =
          check_invariant(svts, loc, o, max_len, subset_budget, sample_count,
                          opt.seed, opt.check_tol);
      nlohmann::json extra;
      extra["cutoff"] = ir.cutoff;
      extra["inconclusive_beyond_cutoff"] = ir.inconclusive_beyond_cutoff;
      extra["worst_subset"] = ir.worst_subset;
      extra["subsets_checked"] = ir.checks.size();
      if (ir.witness) extra["witness"] = witness_json(*ir.witness);
      report.verdict("invariant at " + loc_name + " (bounded, cutoff " +
                         std::to_string(ir.cutoff) + ")",
                     ir.holds_bounded, ir.worst_margin, std::move(extra));
    } else if (c_rank->parsed()) {
      Program prog = parse_program(read_file(prog_file), opt.tol);
      const Stmt* loop = nullptr;
      for (const auto& [path, node] : subprograms(prog.root))
        if (node->kind == StmtKind::While) {
          loop = node.get();
          break;
        }
      if (!loop) throw Error("rank: the program has no while loop");
      RankingSpec spec;
      spec.observable =
          parse_predicate_file(read_file(obs_file), prog.decls, opt.tol);
      spec.target =
          parse_predicate_file(read_file(target_file), prog.decls, opt.tol);
      spec.eps = eps;
      spec.eps_rank = eps_rank;
      std::vector<Matrix> states;
      for (const auto& f : rank_state_files)
        states.push_back(parse_state_file(read_file(f), prog.decls, opt.tol));
      RankingReport rr = ranking_check(
          prog.decls, StmtPtr(prog.root, loop), spec, states, rank_reach,
          opt.tol);
      nlohmann::json extra;
      extra["states_checked"] = rr.states_checked;
      extra["t_values"] = rr.t_values;
      if (!rr.violation.empty()) extra["violation"] = rr.violation;
      report.verdict("ranking conditions", rr.pass, 0.0, std::move(extra));
    } else if (c_term->parsed()) {
      Program prog = parse_program(read_file(prog_file), opt.tol);
      Matrix rho =
          parse_state_file(read_file(state_file), prog.decls, opt.tol);
      TerminateReport tr =
          terminate_report(prog.decls, prog.root, rho, budget, term_tol);
      nlohmann::json extra;
      extra["probabilities"] = tr.probabilities;
      extra["residual"] = tr.residual;
      extra["reason"] = tr.reason;
      extra["verdict"] =
          tr.verdict == TerminationVerdict::ConvergedCertain
              ? "converged >= 1 - tol"
              : tr.verdict == TerminationVerdict::ConvergedBelow
                    ? "converged < 1 - tol"
                    : "inconclusive";
      report.verdict("terminates with probability >= 1 - tol",
                     tr.verdict == TerminationVerdict::ConvergedCertain,
                     tr.final_probability, std::move(extra));
    } else if (c_rel->parsed()) {
      std::vector<long> dims;
      std::stringstream ds(dims_str);
      std::string piece;
      while (std::getline(ds, piece, ',')) dims.push_back(std::stol(piece));
      if (operands.size() != 2 || dims.size() != 3)
        throw Error("relcompose needs two operand files and --dims d1,d2,d3");
      Declarations empty;
      Parser pa(read_file(operands[0]), opt.tol);
      Matrix a = pa.parse_predexpr(empty);
      pa.expect_end();
      Parser pb(read_file(operands[1]), opt.tol);
      Matrix b = pb.parse_predexpr(empty);
      pb.expect_end();
      Matrix out;
      if (relop == "circle")
        out = circle_comp(a, b, dims[0], dims[1], dims[2]);
      else if (relop == "bullet")
        out = bullet_comp(a, b, dims[0], dims[1], dims[2]);
      else
        out = diamond_comp(a, b, dims[0], dims[1], dims[2],
                           relop == "diamond+" ? +1 : -1);
      report.info("result", matrix_json(out));
      report.info("hermitian", is_hermitian(out, opt.tol.herm));
      auto [vals, vecs] = hermitian_eig(out);
      report.info("min_eig", vals(0));
      report.info("max_eig", vals(vals.size() - 1));
      report.info("is_predicate",
                  vals(0) >= -opt.tol.psd && vals(vals.size() - 1) <= 1 + opt.tol.psd);
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  double wall_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - started)
                       .count();
  return report.emit(opt.json, wall_ms, std::cout, std::cerr);
}
