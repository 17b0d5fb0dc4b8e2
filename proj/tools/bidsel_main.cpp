// Copyright 2026 the bidsel authors
// SPDX-License-Identifier: Apache-2.0
//
// bidsel: evaluate single-item auction formats, pick bidder subsets under
// capacity or invitation-cost constraints, and run the property suites.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bidsel/analysis.hpp"
#include "bidsel/auction.hpp"
#include "bidsel/capacity.hpp"
#include "bidsel/costs.hpp"
#include "bidsel/errors.hpp"
#include "bidsel/gen.hpp"
#include "bidsel/io.hpp"
#include "bidsel/report.hpp"
#include "bidsel/rng.hpp"
#include "bidsel/verify.hpp"

namespace {

using bidsel::Instance;
using bidsel::ReportRow;
using bidsel::RunReport;
using bidsel::Subset;

constexpr double kTinyDivisor = 1e-12;

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::invalid_argument("cannot open " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    throw std::invalid_argument("cannot write " + out_path);
  }
  out << text;
}

Subset subset_by_ids(const Instance& inst, const std::string& csv) {
  Subset s;
  std::stringstream ss(csv);
  std::string id;
  while (std::getline(ss, id, ',')) {
    bool found = false;
    for (int i = 0; i < inst.size(); ++i) {
      if (inst.id(i) == id) {
        s.push_back(i);
        found = true;
        break;
      }
    }
    if (!found) {
      throw std::invalid_argument("unknown bidder id: " + id);
    }
  }
  return s;
}

double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

std::string format_num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

struct GlobalOpts {
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "json";
  std::string oracle = "auto";
  int cap_subsets = 16;
};

std::string join_args(int argc, char** argv) {
  std::string cmd;
  for (int i = 1; i < argc; ++i) {
    if (i > 1) cmd += ' ';
    cmd += argv[i];
  }
  return cmd;
}

void finish_report(RunReport& report, const GlobalOpts& g) {
  report.seed = g.seed;
  report.generator = std::string(bidsel::kGeneratorName);
  report.threads = bidsel::thread_count_from_env();
}

void emit_report(const RunReport& report, const GlobalOpts& g) {
  emit(g.out, g.format == "csv" ? bidsel::report_to_csv(report)
                                : bidsel::report_to_json(report));
}

// ---------------------------------------------------------------- eval ----

int run_eval(const Instance& inst, const std::string& auction,
             std::optional<double> r,
             const std::optional<std::string>& subset_csv,
             const std::string& command, const GlobalOpts& g) {
  const Subset s =
      subset_csv.has_value() ? subset_by_ids(inst, *subset_csv) : inst.all();
  ReportRow row;
  row.algorithm = "eval-" + auction;
  row.n = inst.size();
  row.selected = inst.ids_of(s);
  row.mechanism.kind = auction;
  const auto start = std::chrono::steady_clock::now();
  if (auction == "ap") {
    if (r.has_value()) {
      row.revenue = bidsel::ap_revenue(inst, s, *r);
      row.mechanism.reserve = *r;
    } else {
      const bidsel::PriceOpt po = bidsel::ap_optimal(inst, s);
      row.revenue = po.revenue;
      row.mechanism.reserve = po.reserve;
    }
    row.mechanism.has_reserve = true;
  } else if (auction == "ar") {
    if (r.has_value()) {
      row.revenue = bidsel::ar_revenue(inst, s, *r);
      row.mechanism.reserve = *r;
    } else {
      const bidsel::PriceOpt po = bidsel::ar_optimal(inst, s);
      row.revenue = po.revenue;
      row.mechanism.reserve = po.reserve;
    }
    row.mechanism.has_reserve = true;
  } else if (auction == "spa") {
    if (r.has_value()) {
      throw std::invalid_argument("spa takes no --r (it is ar at reserve 0)");
    }
    row.revenue = bidsel::ar_revenue(inst, s, 0.0);
    row.mechanism.kind = "ar";
    row.mechanism.has_reserve = true;
    row.mechanism.reserve = 0.0;
  } else if (auction == "spp") {
    if (r.has_value()) {
      throw std::invalid_argument("spp uses personal prices, not --r");
    }
    const bidsel::SppResult res = bidsel::spp_optimal_fixed_order(inst, s);
    row.revenue = res.revenue;
    row.selected = inst.ids_of(res.plan.order);
    for (std::size_t k = 0; k < res.plan.order.size(); ++k) {
      row.mechanism.prices.emplace_back(inst.id(res.plan.order[k]),
                                        res.plan.prices[k]);
    }
  } else if (auction == "myer") {
    if (r.has_value()) {
      throw std::invalid_argument("myer takes no --r");
    }
    row.revenue = bidsel::myerson_revenue(inst, s);
  } else {
    throw std::invalid_argument("unknown auction format: " + auction);
  }
  row.profit = row.revenue;
  row.millis = ms_since(start);
  RunReport report;
  report.command = command;
  report.instance_digest = bidsel::instance_digest(inst);
  report.rows.push_back(std::move(row));
  finish_report(report, g);
  emit_report(report, g);
  return 0;
}

// -------------------------------------------------------------- select ----

// Returns the brute-force value, or nothing when the oracle is off or the
// instance is over the enumeration cap in auto mode.
template <typename Fn>
std::optional<double> run_oracle(const Instance& inst, const GlobalOpts& g,
                                 Fn&& fn) {
  if (g.oracle == "off") return std::nullopt;
  try {
    if (inst.size() > g.cap_subsets) {
      throw bidsel::CapExceeded("instance above --cap-subsets");
    }
    return fn();
  } catch (const bidsel::CapExceeded& e) {
    if (g.oracle == "strict") {
      throw std::invalid_argument(std::string("oracle unavailable: ") +
                                  e.what());
    }
    return std::nullopt;
  }
}

void attach_oracle(ReportRow& row, std::optional<double> oracle, double own) {
  if (!oracle.has_value()) return;
  row.oracle_value = *oracle;
  row.observed_factor = *oracle / std::max(own, kTinyDivisor);
}

int run_select(const Instance& inst, const std::string& model,
               const std::string& auction, std::optional<double> r,
               const std::string& order, const std::string& command,
               const GlobalOpts& g) {
  RunReport report;
  report.command = command;
  report.instance_digest = bidsel::instance_digest(inst);
  ReportRow row;
  row.n = inst.size();
  const auto start = std::chrono::steady_clock::now();

  if (model == "capacity") {
    if (inst.has_costs()) {
      throw std::invalid_argument(
          "model capacity requires an instance without costs");
    }
    const int m = inst.capacity().value_or(inst.size());
    row.m_or_deltastar = std::to_string(m);
    if (auction == "ap") {
      const bidsel::SelectionOutcome out =
          r.has_value() ? bidsel::select_ap_capacity(inst, *r)
                        : bidsel::select_ap_capacity_opt(inst);
      row.algorithm = "ap-capacity";
      row.revenue = out.revenue;
      row.claimed_factor = 1.0;
      row.selected = inst.ids_of(out.selected);
      row.mechanism = {"ap", true, out.reserve, {}};
      row.millis = ms_since(start);
      attach_oracle(row,
                    run_oracle(inst, g,
                               [&] {
                                 return bidsel::brute_force_capacity(
                                            inst, bidsel::Objective::kAp, r)
                                     .value;
                               }),
                    row.revenue);
    } else if (auction == "ar") {
      if (r.has_value()) {
        throw std::invalid_argument("--r only applies to auction ap");
      }
      const bidsel::SelectionOutcome out = bidsel::select_ar_capacity(inst);
      row.algorithm = "ar-capacity";
      row.revenue = out.revenue;
      row.claimed_factor = out.claimed_factor;
      row.selected = inst.ids_of(out.selected);
      row.mechanism = {"ar", true, out.reserve, {}};
      row.millis = ms_since(start);
      attach_oracle(row,
                    run_oracle(inst, g,
                               [&] {
                                 return bidsel::brute_force_capacity(
                                            inst, bidsel::Objective::kAr, {})
                                     .value;
                               }),
                    row.revenue);
    } else if (auction == "spp") {
      if (r.has_value()) {
        throw std::invalid_argument("--r only applies to auction ap");
      }
      const bidsel::SelectionOutcome out = bidsel::select_spp_capacity(inst);
      row.algorithm = "spp-capacity";
      row.revenue = out.revenue;
      row.selected = inst.ids_of(out.selected);
      row.mechanism.kind = "spp";
      for (std::size_t k = 0; k < out.plan.order.size(); ++k) {
        row.mechanism.prices.emplace_back(inst.id(out.plan.order[k]),
                                          out.plan.prices[k]);
      }
      const bool input_order = order == "input";
      row.claimed_factor = input_order ? 1.0 : 2.0;
      row.millis = ms_since(start);
      attach_oracle(row,
                    run_oracle(inst, g,
                               [&] {
                                 return bidsel::brute_force_capacity(
                                            inst,
                                            input_order
                                                ? bidsel::Objective::kSppFixedOrder
                                                : bidsel::Objective::kSpp,
                                            {})
                                     .value;
                               }),
                    row.revenue);
    } else if (auction == "myer") {
      if (r.has_value()) {
        throw std::invalid_argument("--r only applies to auction ap");
      }
      const bidsel::SelectionOutcome out = bidsel::select_myerson_greedy(inst);
      row.algorithm = "myer-greedy";
      row.revenue = out.revenue;
      row.claimed_factor = out.claimed_factor;
      row.selected = inst.ids_of(out.selected);
      row.mechanism.kind = "myer";
      row.millis = ms_since(start);
      attach_oracle(row,
                    run_oracle(inst, g,
                               [&] {
                                 return bidsel::brute_force_capacity(
                                            inst, bidsel::Objective::kMyer, {})
                                     .value;
                               }),
                    row.revenue);
    } else {
      throw std::invalid_argument("model capacity supports ap|ar|spp|myer");
    }
  } else if (model == "cost") {
    if (!inst.has_costs()) {
      throw std::invalid_argument("model cost requires per-bidder costs");
    }
    if (auction == "ap") {
      const bidsel::CostOutcome out =
          r.has_value() ? bidsel::select_apc_fixed_r(inst, *r)
                        : bidsel::select_apc(inst);
      row.algorithm = "apc";
      row.revenue = out.revenue;
      row.cost = out.cost;
      row.profit = out.profit;
      row.claimed_factor = out.claimed_factor;
      row.selected = inst.ids_of(out.selected);
      row.mechanism = {"ap", true, out.reserve, {}};
      row.millis = ms_since(start);
      attach_oracle(row,
                    run_oracle(inst, g,
                               [&] {
                                 return bidsel::brute_force_cost(
                                            inst, bidsel::CostObjective::kApc,
                                            r)
                                     .profit;
                               }),
                    row.profit);
    } else if (auction == "ar") {
      if (r.has_value()) {
        throw std::invalid_argument("--r only applies to auction ap");
      }
      const bidsel::ArcOutcome out = bidsel::select_arc(inst);
      row.algorithm = "arc";
      row.revenue = out.revenue_ar;
      row.cost = out.apc.cost;
      row.profit = out.profit_ar;
      row.claimed_factor = 0.0;  // depends on the optimum's surplus
      row.selected = inst.ids_of(out.apc.selected);
      row.mechanism = {"ar", true, out.apc.reserve, {}};
      row.millis = ms_since(start);
      const std::optional<double> oracle = run_oracle(inst, g, [&] {
        const bidsel::DeltaReport rep = bidsel::arc_delta_report(inst);
        // Sets the guarantee the bound theory implies for this instance.
        row.m_or_deltastar = format_num(rep.delta);
        row.claimed_factor = rep.implied_factor;
        return rep.opt.profit;
      });
      attach_oracle(row, oracle, row.profit);
    } else {
      throw std::invalid_argument("model cost supports ap|ar");
    }
  } else {
    throw std::invalid_argument("model must be capacity or cost");
  }

  report.rows.push_back(std::move(row));
  finish_report(report, g);
  emit_report(report, g);
  return 0;
}

// -------------------------------------------------------------- verify ----

int run_verify(const std::string& suite, int count, const std::string& command,
               const GlobalOpts& g) {
  const int threads = bidsel::thread_count_from_env();
  std::vector<std::string> names;
  if (suite == "all") {
    names = bidsel::suite_names();
  } else {
    names.push_back(suite);
  }
  std::vector<bidsel::CheckRow> rows;
  int failures = 0;
  for (const std::string& name : names) {
    const bidsel::SuiteResult result =
        bidsel::run_suite(name, count, g.seed, threads);
    failures += result.failures;
    rows.insert(rows.end(), result.rows.begin(), result.rows.end());
    std::fprintf(stderr, "suite %-10s checks %4zu failures %d\n",
                 result.suite.c_str(), result.rows.size(), result.failures);
  }
  if (g.format == "csv") {
    emit(g.out, bidsel::checks_to_csv(rows));
  } else {
    nlohmann::ordered_json root;
    root["command"] = command;
    root["seed"] = g.seed;
    root["generator"] = std::string(bidsel::kGeneratorName);
    root["threads"] = threads;
    root["failures"] = failures;
    root["checks"] = nlohmann::ordered_json::array();
    for (const bidsel::CheckRow& row : rows) {
      nlohmann::ordered_json jr;
      jr["suite"] = row.suite;
      jr["instance"] = row.instance;
      jr["check"] = row.check;
      jr["observed"] = row.observed;
      jr["bound"] = row.bound;
      jr["slack"] = row.slack;
      jr["pass"] = row.pass;
      root["checks"].push_back(std::move(jr));
    }
    emit(g.out, root.dump(2) + "\n");
  }
  return failures == 0 ? 0 : 1;
}

// ----------------------------------------------------------------- gen ----

int run_gen_random(int n, bool with_costs, bool regular,
                   std::optional<int> capacity, double cost_lo, double cost_hi,
                   std::uint64_t index, const GlobalOpts& g) {
  bidsel::RandomPoolParams params;
  params.n = n;
  params.with_costs = with_costs;
  params.regular_only = regular;
  params.capacity = capacity;
  params.cost_lo = cost_lo;
  params.cost_hi = cost_hi;
  const Instance inst = bidsel::gen_random_instance(params, g.seed, index);
  emit(g.out, bidsel::instance_to_json_text(inst));
  return 0;
}

// ---------------------------------------------------------------- bench ----

int run_bench(int count, int n, bool with_costs, const std::string& command,
              const GlobalOpts& g) {
  RunReport report;
  report.command = command;
  report.instance_digest = "-";
  for (int i = 0; i < count; ++i) {
    bidsel::RandomPoolParams params;
    params.n = n;
    params.with_costs = with_costs;
    if (!with_costs) params.capacity = (n + 1) / 2;
    const Instance inst =
        bidsel::gen_random_instance(params, g.seed, static_cast<std::uint64_t>(i));
    const std::string digest = bidsel::instance_digest(inst);
    auto add = [&](const std::string& algorithm, double revenue, double cost,
                   double profit, double claimed, double millis) {
      ReportRow row;
      row.algorithm = algorithm;
      row.n = n;
      row.m_or_deltastar =
          with_costs ? "-" : std::to_string(inst.capacity().value_or(n));
      row.revenue = revenue;
      row.cost = cost;
      row.profit = profit;
      row.claimed_factor = claimed;
      row.millis = millis;
      row.mechanism.kind = digest;  // keeps per-instance identity in JSON
      report.rows.push_back(std::move(row));
    };
    if (with_costs) {
      auto t0 = std::chrono::steady_clock::now();
      const bidsel::CostOutcome apc = bidsel::select_apc(inst);
      add("apc", apc.revenue, apc.cost, apc.profit, apc.claimed_factor,
          ms_since(t0));
      t0 = std::chrono::steady_clock::now();
      const bidsel::ArcOutcome arc = bidsel::select_arc(inst);
      add("arc", arc.revenue_ar, arc.apc.cost, arc.profit_ar, 0.0,
          ms_since(t0));
    } else {
      auto t0 = std::chrono::steady_clock::now();
      const bidsel::SelectionOutcome ap = bidsel::select_ap_capacity_opt(inst);
      add("ap-capacity", ap.revenue, 0.0, ap.revenue, 1.0, ms_since(t0));
      t0 = std::chrono::steady_clock::now();
      const bidsel::SelectionOutcome ar = bidsel::select_ar_capacity(inst);
      add("ar-capacity", ar.revenue, 0.0, ar.revenue, ar.claimed_factor,
          ms_since(t0));
      t0 = std::chrono::steady_clock::now();
      const bidsel::SelectionOutcome spp = bidsel::select_spp_capacity(inst);
      add("spp-capacity", spp.revenue, 0.0, spp.revenue, 2.0, ms_since(t0));
      t0 = std::chrono::steady_clock::now();
      const bidsel::SelectionOutcome my = bidsel::select_myerson_greedy(inst);
      add("myer-greedy", my.revenue, 0.0, my.revenue, my.claimed_factor,
          ms_since(t0));
    }
  }
  finish_report(report, g);
  emit_report(report, g);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bidder subset selection for single-item auctions"};
  app.require_subcommand(1);
  GlobalOpts g;
  app.add_option("--seed", g.seed, "generator seed")->capture_default_str();
  app.add_option("--out", g.out, "output path (default stdout)");
  app.add_option("--format", g.format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--oracle", g.oracle, "off|auto|strict")
      ->check(CLI::IsMember({"off", "auto", "strict"}))
      ->capture_default_str();
  app.add_option("--cap-subsets", g.cap_subsets,
                 "largest n brute-force oracles will enumerate")
      ->capture_default_str();

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate one auction format");
  eval->fallthrough();
  std::string eval_instance, eval_auction, eval_subset;
  double eval_r = 0.0;
  eval->add_option("--instance,-i", eval_instance, "instance JSON ('-' stdin)")
      ->required();
  eval->add_option("--auction,-a", eval_auction, "ap|ar|spa|spp|myer")
      ->required();
  CLI::Option* eval_r_opt = eval->add_option("--r", eval_r, "fixed price");
  CLI::Option* eval_subset_opt = eval->add_option(
      "--subset", eval_subset,
      "comma-separated bidder ids (empty string = empty subset)");

  // select
  auto* select = app.add_subcommand("select", "pick a bidder subset");
  select->fallthrough();
  std::string sel_instance, sel_model, sel_auction, sel_order = "all";
  double sel_r = 0.0;
  select->add_option("--instance,-i", sel_instance, "instance JSON ('-' stdin)")
      ->required();
  select->add_option("--model,-m", sel_model, "capacity|cost")->required();
  select->add_option("--auction,-a", sel_auction, "capacity: ap|ar|spp|myer; cost: ap|ar")
      ->required();
  CLI::Option* sel_r_opt = select->add_option("--r", sel_r, "fixed price (ap only)");
  select->add_option("--order", sel_order,
                     "spp oracle scope: input (fixed order) or all")
      ->check(CLI::IsMember({"input", "all"}));

  // verify
  auto* verify = app.add_subcommand("verify", "run a property suite");
  verify->fallthrough();
  std::string suite = "all";
  int count = 100;
  verify->add_option("suite", suite,
                     "sandwich|submodular|xos|apc2|arc-delta|partition|gap|all")
      ->capture_default_str();
  verify->add_option("--count", count, "instances per suite")
      ->capture_default_str();

  // gen
  auto* gen = app.add_subcommand("gen", "emit an instance as JSON");
  gen->fallthrough();
  gen->require_subcommand(1);
  auto* gen_random = gen->add_subcommand("random", "random instance pool");
  gen_random->fallthrough();
  int gr_n = 4;
  bool gr_costs = false, gr_regular = false;
  int gr_capacity = -1;
  double gr_cost_lo = 0.005, gr_cost_hi = 2.0;
  std::uint64_t gr_index = 0;
  gen_random->add_option("--n", gr_n, "bidders")->capture_default_str();
  gen_random->add_flag("--with-costs", gr_costs, "draw invitation costs");
  gen_random->add_flag("--regular", gr_regular, "regular distributions only");
  gen_random->add_option("--capacity", gr_capacity, "capacity constraint");
  gen_random->add_option("--cost-lo", gr_cost_lo, "cost range low")
      ->capture_default_str();
  gen_random->add_option("--cost-hi", gr_cost_hi, "cost range high")
      ->capture_default_str();
  gen_random->add_option("--index", gr_index, "pool index")
      ->capture_default_str();
  auto* gen_ss = gen->add_subcommand("subset-sum", "weight-encoding instance");
  gen_ss->fallthrough();
  std::vector<double> ss_weights;
  double ss_target = 0.0;
  gen_ss->add_option("--weights", ss_weights, "positive weights")
      ->required()
      ->delimiter(',');
  gen_ss->add_option("--W", ss_target, "target sum")->required();
  auto* gen_gap = gen->add_subcommand("gap", "separation family instance");
  gen_gap->fallthrough();
  int gg_n = 16, gg_grid = 256;
  gen_gap->add_option("--n", gg_n, "bidders")->capture_default_str();
  gen_gap->add_option("--grid", gg_grid, "price grid size")
      ->capture_default_str();

  // bench
  auto* bench = app.add_subcommand("bench", "time the selectors");
  bench->fallthrough();
  int bench_count = 5, bench_n = 8;
  bool bench_costs = false;
  bench->add_option("--count", bench_count, "instances")->capture_default_str();
  bench->add_option("--n", bench_n, "bidders per instance")
      ->capture_default_str();
  bench->add_flag("--with-costs", bench_costs, "bench the cost selectors");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string command = join_args(argc, argv);
  try {
    if (*eval) {
      const Instance inst =
          bidsel::instance_from_json_text(slurp(eval_instance));
      std::optional<double> r;
      if (eval_r_opt->count() > 0) r = eval_r;
      std::optional<std::string> subset;
      if (eval_subset_opt->count() > 0) subset = eval_subset;
      return run_eval(inst, eval_auction, r, subset, command, g);
    }
    if (*select) {
      const Instance inst = bidsel::instance_from_json_text(slurp(sel_instance));
      std::optional<double> r;
      if (sel_r_opt->count() > 0) r = sel_r;
      return run_select(inst, sel_model, sel_auction, r, sel_order, command, g);
    }
    if (*verify) {
      return run_verify(suite, count, command, g);
    }
    if (*gen) {
      if (*gen_random) {
        std::optional<int> cap;
        if (gr_capacity >= 0) cap = gr_capacity;
        return run_gen_random(gr_n, gr_costs, gr_regular, cap, gr_cost_lo,
                              gr_cost_hi, gr_index, g);
      }
      if (*gen_ss) {
        emit(g.out, bidsel::instance_to_json_text(
                        bidsel::subset_sum_instance(ss_weights, ss_target)));
        return 0;
      }
      if (*gen_gap) {
        emit(g.out, bidsel::instance_to_json_text(
                        bidsel::gap_instance(gg_n, gg_grid)));
        return 0;
      }
    }
    if (*bench) {
      return run_bench(bench_count, bench_n, bench_costs, command, g);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
