// Command-line front end: scenario runner, randomized certification batches,
// and direct tower-arithmetic queries with JSON/text report output.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "iwalab/scenarios.hpp"

namespace {

unsigned default_precision() {
  if (const char* env = std::getenv("IWASAWA_LAB_PRECISION")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 16 && v <= 4096) return static_cast<unsigned>(v);
  }
  return iwalab::kDefaultPrecision;
}

struct CommonOpts {
  unsigned precision = default_precision();
  unsigned long long seed = 1;
  long long p = 0;  // 0 = use the scenario default
  std::string out;
  std::string format = "json";
};

void add_common(CLI::App* cmd, CommonOpts& common) {
  cmd->add_option("--p", common.p, "prime (scenario default when omitted)");
  cmd->add_option("--precision", common.precision, "p-adic working precision");
  cmd->add_option("--seed", common.seed, "RNG seed");
  cmd->add_option("--out", common.out, "write the report to this path");
  cmd->add_option("--format", common.format, "report format: json or text")
      ->check(CLI::IsMember({"json", "text"}));
}

int finish(const iwalab::ScenarioReport& rep, const CommonOpts& common) {
  if (!common.out.empty())
    iwalab::emit_report(rep, common.out, common.format);
  else if (common.format == "text")
    std::cout << iwalab::render_text(rep);
  else
    std::cout << iwalab::render_json(rep);
  return rep.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthetic Iwasawa-module laboratory"};
  app.require_subcommand(1);

  CommonOpts common;

  // run <scenario>
  std::string scenario_id;
  iwalab::ScenarioArgs args;
  long long ell = 0, q = 0, q1 = 0, q2 = 0, m = 0, ell_a = 0, ell_b = 0, D = 0;
  std::vector<long long> primes;
  bool assert_yes = false, assert_no = false;
  auto* run = app.add_subcommand("run", "run one named scenario");
  run->add_option("scenario", scenario_id, "scenario id")->required();
  run->add_option("--ell", ell, "prime ell");
  run->add_option("--q", q, "auxiliary prime q");
  run->add_option("--q1", q1, "first prime");
  run->add_option("--q2", q2, "second prime");
  run->add_option("--m", m, "squarefree odd m");
  run->add_option("--ell-a", ell_a, "first factor of m");
  run->add_option("--ell-b", ell_b, "second factor of m");
  run->add_option("--D", D, "fundamental discriminant of the base field");
  run->add_option("--primes", primes, "tame prime list");
  run->add_flag("--assert-external", assert_yes,
                "affirm the cited external theorem's hypotheses");
  run->add_flag("--deny-external", assert_no,
                "deny the cited external theorem's hypotheses");
  run->add_option("--count", args.count, "batch size for simulate/verify-growth");
  add_common(run, common);

  // simulate
  auto* sim = app.add_subcommand("simulate", "randomized formula certification");
  sim->add_option("--count", args.count, "number of models");
  add_common(sim, common);

  // verify-growth
  auto* vg = app.add_subcommand("verify-growth", "randomized growth-formula batch");
  vg->add_option("--count", args.count, "number of modules");
  add_common(vg, common);

  // split
  long long split_ell = 0;
  unsigned split_nmax = 8;
  auto* split = app.add_subcommand("split", "prime splitting along the 2-tower");
  split->add_option("ell", split_ell, "odd prime")->required();
  split->add_option("--n-max", split_nmax, "deepest level");
  add_common(split, common);

  // xs-rank
  std::string xs_scenario;
  auto* xsr = app.add_subcommand("xs-rank", "closed-form tame module rank");
  xsr->add_option("scenario", xs_scenario, "case-a-odd-p | prop-q | prop-imag")
      ->required();
  xsr->add_option("--q1", q1, "first prime");
  xsr->add_option("--q2", q2, "second prime");
  xsr->add_option("--m", m, "squarefree odd m");
  xsr->add_option("--q", q, "auxiliary prime q");
  xsr->add_option("--primes", primes, "tame prime list");
  add_common(xsr, common);

  // residue-units
  long long ru_q = 0, ru_D = 0;
  unsigned ru_level = 0;
  auto* ru = app.add_subcommand("residue-units", "2-part of the residue units");
  ru->add_option("q", ru_q, "odd prime")->required();
  ru->add_option("--level", ru_level, "tower level");
  ru->add_option("--D", ru_D, "quadratic base discriminant (0 = rationals)");
  add_common(ru, common);

  CLI11_PARSE(app, argc, argv);

  args.precision = common.precision;
  args.seed = common.seed;
  if (common.p != 0) args.p = common.p;
  args.primes = primes;
  if (assert_yes) args.assert_flag = true;
  if (assert_no) args.assert_flag = false;
  auto set_opt = [&args](const char* key, long long v) {
    if (v != 0) args.opts[key] = v;
  };
  set_opt("ell", ell);
  set_opt("q", q);
  set_opt("q1", q1);
  set_opt("q2", q2);
  set_opt("m", m);
  set_opt("ell_a", ell_a);
  set_opt("ell_b", ell_b);
  set_opt("D", D);

  try {
    if (run->parsed()) return finish(iwalab::run_scenario(scenario_id, args), common);
    if (sim->parsed()) return finish(iwalab::run_scenario("simulate", args), common);
    if (vg->parsed())
      return finish(iwalab::run_scenario("verify-growth", args), common);

    if (split->parsed()) {
      iwalab::SplittingProfile prof =
          iwalab::splitting_profile(split_ell, split_nmax);
      iwalab::ScenarioReport rep;
      rep.scenario_id = "split";
      rep.precision = common.precision;
      rep.inputs = iwalab::json{{"ell", split_ell}, {"n_max", split_nmax}};
      rep.computed("counts", prof.counts);
      rep.computed("residue_orders", prof.residue_orders);
      rep.computed("stabilized", prof.stabilized);
      if (prof.stabilized) {
        rep.computed("r_inf", prof.stable_count);
        rep.computed("stable_from", prof.stable_from);
      }
      rep.finalize();
      return finish(rep, common);
    }

    if (xsr->parsed()) {
      iwalab::XsRankReport xs;
      if (xs_scenario == "case-a-odd-p")
        xs = iwalab::xs_rank_case_a(common.p != 0 ? common.p : 3, primes);
      else if (xs_scenario == "prop-q")
        xs = iwalab::xs_rank_prop_q(q1 != 0 ? q1 : 31, q2 != 0 ? q2 : 223);
      else if (xs_scenario == "prop-imag")
        xs = iwalab::xs_rank_prop_imag(m != 0 ? m : 1463, q != 0 ? q : 3);
      else
        throw iwalab::ConfigError("xs-rank: unknown scenario " + xs_scenario);
      iwalab::ScenarioReport rep;
      rep.scenario_id = "xs-rank/" + xs_scenario;
      rep.precision = common.precision;
      for (const auto& h : xs.hypotheses_checked)
        if (h.citation == "computed")
          rep.pass(h.fact);
        else
          rep.asserted(h.fact, h.citation);
      rep.computed("rank", xs.rank);
      rep.conclude(xs.detail);
      rep.finalize();
      return finish(rep, common);
    }

    if (ru->parsed()) {
      iwalab::ResidueUnitTwoPart part =
          iwalab::residue_unit_two_part(ru_q, ru_level, ru_D);
      iwalab::ScenarioReport rep;
      rep.scenario_id = "residue-units";
      rep.precision = common.precision;
      rep.inputs = iwalab::json{{"q", ru_q}, {"level", ru_level}, {"D", ru_D}};
      rep.computed("primes_below", part.primes_below);
      rep.computed("residue_degree", part.residue_degree);
      rep.computed("exponents", part.exponents);
      rep.finalize();
      return finish(rep, common);
    }
  } catch (const iwalab::HypothesisNotMet& e) {
    std::cerr << "hypothesis not met: " << e.what() << "\n";
    return 2;
  } catch (const iwalab::UnverifiedHypothesis& e) {
    std::cerr << "unverified assertion required: " << e.what() << "\n";
    return 3;
  } catch (const iwalab::PrecisionExhausted& e) {
    std::cerr << "precision exhausted: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
