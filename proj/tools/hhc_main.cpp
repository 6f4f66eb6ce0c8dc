#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hhc/ga.hpp"
#include "hhc/gvns.hpp"
#include "hhc/instancegen.hpp"
#include "hhc/io.hpp"
#include "hhc/metrics.hpp"
#include "hhc/moea.hpp"
#include "hhc/oracle.hpp"
#include "hhc/recourse.hpp"
#include "hhc/schedule.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNoSolution = 3;
constexpr int kExitIo = 4;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("cannot write " + path);
}

std::string compact_json(const std::string& text) {
  return nlohmann::json::parse(text).dump();
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("HHC_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

// Timing defaults to zero so repeated runs stay byte-identical; --wall-clock
// opts into real measurements.
bool g_wall_clock = false;

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  if (!g_wall_clock) return 0;
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

struct GenOptions {
  std::string preset;
  std::string recipe_path;
  std::string out;
};

int run_gen(const GenOptions& opt, std::uint64_t seed) {
  hhc::Recipe recipe;
  if (!opt.recipe_path.empty())
    recipe = hhc::recipe_from_json(read_file(opt.recipe_path));
  else
    recipe = hhc::preset(opt.preset);
  const auto inst = hhc::generate(recipe, seed);
  write_file(opt.out, hhc::instance_to_json(inst));
  return kExitOk;
}

struct SolveOptions {
  std::string instance_path;
  std::string variant = "hard-msmtw";
  std::string algorithm = "gvns";
  int repeat = 1;
  std::string out;
  std::string front_out;
  std::string indicators_out;
};

bool scalar_algorithm(const std::string& alg) { return alg == "gvns" || alg == "ga"; }

// The GVNS line has no sampling loop, so stochastic variants are GA-only.
bool compatible(const std::string& alg, hhc::VariantId variant) {
  const bool stochastic =
      variant == hhc::VariantId::SPR_PENALTY || variant == hhc::VariantId::SPR_SKIP;
  if (alg == "gvns") return !stochastic && variant != hhc::VariantId::MULTIOBJ;
  if (alg == "ga") return variant != hhc::VariantId::MULTIOBJ;
  return variant == hhc::VariantId::MULTIOBJ;
}

int run_solve_scalar(const hhc::Instance& inst, hhc::VariantId variant, const SolveOptions& opt,
                     std::uint64_t seed, double time_limit_ms) {
  std::ostringstream os;
  os << "run,objective,cost,expected_recourse,penalty,feasible,cpu_ms\n";
  std::optional<double> best, worst;
  double sum = 0;
  int feasible_runs = 0;
  for (int r = 0; r < opt.repeat; ++r) {
    const auto start = std::chrono::steady_clock::now();
    hhc::Rng rng(seed + static_cast<std::uint64_t>(r));
    hhc::Chromosome plan;
    if (opt.algorithm == "gvns") {
      hhc::GvnsParams params;
      params.time_limit_ms = time_limit_ms;
      plan = hhc::gvns_solve(inst, variant, params, rng).best;
    } else {
      hhc::GaParams params;
      params.time_limit_ms = time_limit_ms;
      if (variant == hhc::VariantId::SPR_PENALTY || variant == hhc::VariantId::SPR_SKIP) {
        params.kind = hhc::FitnessKind::Spr;
        params.stochastic.seed = seed + static_cast<std::uint64_t>(r);
        params.stochastic.common_random_numbers = true;
      }
      plan = hhc::ga_solve(inst, variant, params, rng).best;
    }
    const auto schedule = hhc::decode(inst, plan, variant);
    const double objective = hhc::objective(schedule, variant);
    double expected = 0;
    if (variant == hhc::VariantId::SPR_PENALTY || variant == hhc::VariantId::SPR_SKIP) {
      hhc::StochasticConfig cfg;
      cfg.seed = seed + static_cast<std::uint64_t>(r);
      cfg.common_random_numbers = true;
      const auto kind = variant == hhc::VariantId::SPR_PENALTY ? hhc::RecourseKind::Penalty
                                                               : hhc::RecourseKind::Skip;
      expected = hhc::estimate(inst, plan, kind, cfg).mean;
    }
    const double total = objective + expected;
    if (schedule.feasible) {
      ++feasible_runs;
      best = best ? std::min(*best, total) : total;
      worst = worst ? std::max(*worst, total) : total;
    }
    sum += total;
    os << r << ',' << hhc::csv_number(total) << ',' << hhc::csv_number(schedule.cost_total)
       << ',' << hhc::csv_number(expected) << ',' << hhc::csv_number(schedule.penalty) << ','
       << (schedule.feasible ? 1 : 0) << ',' << hhc::csv_number(elapsed_ms(start)) << "\n";
  }
  os << "best," << (best ? hhc::csv_number(*best) : "") << ",,,,,\n";
  os << "worst," << (worst ? hhc::csv_number(*worst) : "") << ",,,,,\n";
  os << "average," << hhc::csv_number(sum / opt.repeat) << ",,,,,\n";
  if (opt.out.empty())
    std::cout << os.str();
  else
    write_file(opt.out, os.str());
  return feasible_runs > 0 ? kExitOk : kExitNoSolution;
}

int run_solve_front(const hhc::Instance& inst, const SolveOptions& opt, std::uint64_t seed,
                    double time_limit_ms) {
  (void)time_limit_ms;
  std::vector<hhc::Front> fronts;
  std::vector<double> cpu;
  for (int r = 0; r < opt.repeat; ++r) {
    const auto start = std::chrono::steady_clock::now();
    hhc::Rng rng(seed + static_cast<std::uint64_t>(r));
    hhc::MoeaParams params;
    hhc::Front front;
    if (opt.algorithm == "nsga2")
      front = hhc::nsga2_solve(inst, params, rng);
    else if (opt.algorithm == "moead")
      front = hhc::moead_solve(inst, params, nullptr, rng);
    else
      front = hhc::hybrid_solve(inst, params, rng);
    fronts.push_back(std::move(front));
    cpu.push_back(elapsed_ms(start));
  }

  std::vector<std::vector<hhc::ObjectiveVector>> vectors;
  bool any_point = false;
  for (const auto& f : fronts) {
    vectors.push_back(hhc::feasible_vectors(f));
    if (!vectors.back().empty()) any_point = true;
  }
  if (!any_point) return kExitNoSolution;

  const auto normalized = hhc::normalize(vectors);
  std::ostringstream os;
  os << "run,front_size,hypervolume,cpu_ms\n";
  std::size_t best_run = 0;
  double best_hv = -1;
  std::vector<hhc::IndicatorRow> indicators;
  for (std::size_t r = 0; r < fronts.size(); ++r) {
    const double hv = hhc::hypervolume(normalized.fronts[r]);
    os << r << ',' << vectors[r].size() << ',' << hhc::csv_number(hv) << ','
       << hhc::csv_number(cpu[r]) << "\n";
    indicators.push_back({opt.instance_path, opt.algorithm, hv, vectors[r].size(), cpu[r]});
    if (hv > best_hv) {
      best_hv = hv;
      best_run = r;
    }
  }
  if (opt.out.empty())
    std::cout << os.str();
  else
    write_file(opt.out, os.str());
  if (!opt.front_out.empty()) write_file(opt.front_out, hhc::front_csv(fronts[best_run]));
  if (!opt.indicators_out.empty()) write_file(opt.indicators_out, hhc::indicator_csv(indicators));
  return kExitOk;
}

hhc::VariantId parse_variant(const std::string& name) {
  const auto v = hhc::variant_from_name(name);
  if (!v) throw std::invalid_argument("unknown variant " + name);
  return *v;
}

int run_solve(const SolveOptions& opt, std::uint64_t seed, double time_limit_ms) {
  const auto inst = hhc::instance_from_json(read_file(opt.instance_path));
  const auto variant = parse_variant(opt.variant);
  if (!compatible(opt.algorithm, variant)) {
    std::cerr << "incompatible variant and algorithm\n";
    return kExitUsage;
  }
  return scalar_algorithm(opt.algorithm) ? run_solve_scalar(inst, variant, opt, seed, time_limit_ms)
                                         : run_solve_front(inst, opt, seed, time_limit_ms);
}

// Front CSVs put the quoted chromosome last, so the leading numeric columns
// split on plain commas.
std::vector<hhc::ObjectiveVector> read_front_csv(const std::string& path) {
  std::istringstream in(read_file(path));
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty front file " + path);
  std::vector<hhc::ObjectiveVector> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string f1, f2, f3;
    std::getline(fields, f1, ',');
    std::getline(fields, f2, ',');
    std::getline(fields, f3, ',');
    out.push_back({std::stod(f1), std::stod(f2), std::stod(f3)});
  }
  return out;
}

int run_metrics(const std::vector<std::string>& paths, const std::string& out) {
  std::vector<std::vector<hhc::ObjectiveVector>> fronts;
  for (const auto& p : paths) fronts.push_back(read_front_csv(p));
  const auto normalized = hhc::normalize(fronts);
  std::ostringstream os;
  os << "metric,a,b,value\n";
  for (std::size_t i = 0; i < fronts.size(); ++i)
    os << "hypervolume," << i << ",," << hhc::csv_number(hhc::hypervolume(normalized.fronts[i]))
       << "\n";
  for (std::size_t i = 0; i < fronts.size(); ++i)
    for (std::size_t j = 0; j < fronts.size(); ++j) {
      const double cov =
          i == j ? 0 : hhc::coverage(normalized.fronts[i], normalized.fronts[j]);
      os << "coverage," << i << ',' << j << ',' << hhc::csv_number(cov) << "\n";
    }
  if (out.empty())
    std::cout << os.str();
  else
    write_file(out, os.str());
  return kExitOk;
}

int run_oracle(const std::string& instance_path, const std::string& variant_name,
               const std::string& out) {
  const auto inst = hhc::instance_from_json(read_file(instance_path));
  const auto variant = parse_variant(variant_name);
  const auto result = hhc::brute_force_solve(inst, variant);
  std::ostringstream os;
  if (variant == hhc::VariantId::MULTIOBJ) {
    os << "f1,f2,f3,chromosome\n";
    for (std::size_t i = 0; i < result.pareto_vectors.size(); ++i) {
      const auto& v = result.pareto_vectors[i];
      os << hhc::csv_number(v.f1) << ',' << hhc::csv_number(v.f2) << ','
         << hhc::csv_number(v.f3) << ','
         << hhc::csv_field(compact_json(hhc::chromosome_to_json(result.pareto_witnesses[i])))
         << "\n";
    }
    if (result.pareto_vectors.empty()) return kExitNoSolution;
  } else {
    if (!result.feasible) return kExitNoSolution;
    os << "value,chromosome\n";
    os << hhc::csv_number(result.value) << ','
       << hhc::csv_field(compact_json(hhc::chromosome_to_json(result.best))) << "\n";
  }
  if (out.empty())
    std::cout << os.str();
  else
    write_file(out, os.str());
  return kExitOk;
}

struct SimulateOptions {
  std::string instance_path;
  std::string plan_path;
  std::string kind = "penalty";
  std::string out;
  double epsilon = 0.05;
  int max_iter = 100;
  int gap_window = 10;
};

int run_simulate(const SimulateOptions& opt, std::uint64_t seed) {
  const auto inst = hhc::instance_from_json(read_file(opt.instance_path));
  const auto plan = hhc::chromosome_from_json(read_file(opt.plan_path));
  hhc::StochasticConfig cfg;
  cfg.seed = seed;
  cfg.epsilon = opt.epsilon;
  cfg.max_iter = opt.max_iter;
  cfg.gap_window = opt.gap_window;
  const auto kind =
      opt.kind == "skip" ? hhc::RecourseKind::Skip : hhc::RecourseKind::Penalty;
  const auto est = hhc::estimate(inst, plan, kind, cfg);
  std::ostringstream os;
  os << "mean,iterations,reason,tardiness_mean,overtime_mean,skipped_mean\n";
  os << hhc::csv_number(est.mean) << ',' << est.iterations << ','
     << (est.reason == hhc::StopReason::Gap ? "gap" : "max_iter") << ','
     << hhc::csv_number(est.tardiness_mean) << ',' << hhc::csv_number(est.overtime_mean) << ','
     << hhc::csv_number(est.skipped_mean) << "\n";
  if (opt.out.empty())
    std::cout << os.str();
  else
    write_file(opt.out, os.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Home health care routing and scheduling toolkit"};
  app.require_subcommand(1);
  // Allow the global options to appear after the subcommand name.
  app.fallthrough();

  std::uint64_t seed = default_seed();
  int threads = 1;
  double time_limit_ms = 0;
  app.add_option("--seed", seed, "base random seed (default from HHC_SEED)");
  app.add_option("--threads", threads, "worker threads, advisory");
  app.add_option("--time-limit-ms", time_limit_ms, "advisory time limit per run");
  app.add_flag("--wall-clock", g_wall_clock, "report real cpu_ms instead of 0");

  GenOptions gen;
  auto* cmd_gen = app.add_subcommand("gen", "generate an instance");
  cmd_gen->fallthrough();
  auto* preset_opt = cmd_gen->add_option("--preset", gen.preset, "recipe preset name");
  auto* recipe_opt = cmd_gen->add_option("--recipe", gen.recipe_path, "recipe JSON file");
  cmd_gen->add_option("-o,--out", gen.out, "output instance path")->required();
  preset_opt->excludes(recipe_opt);

  SolveOptions solve;
  auto* cmd_solve = app.add_subcommand("solve", "run a solver");
  cmd_solve->fallthrough();
  cmd_solve->add_option("--instance", solve.instance_path, "instance JSON")->required();
  cmd_solve->add_option("--variant", solve.variant, "problem variant")
      ->check(CLI::IsMember(
          {"soft-mtw", "hard-msmtw", "spr-penalty", "spr-skip", "multiobj"}));
  cmd_solve->add_option("--alg", solve.algorithm, "algorithm")
      ->check(CLI::IsMember({"gvns", "ga", "nsga2", "moead", "hybrid"}));
  cmd_solve->add_option("--repeat", solve.repeat, "independent runs")
      ->check(CLI::PositiveNumber);
  cmd_solve->add_option("-o,--out", solve.out, "results CSV path");
  cmd_solve->add_option("--front-out", solve.front_out, "front CSV path");
  cmd_solve->add_option("--indicators-out", solve.indicators_out, "indicator CSV path");

  std::vector<std::string> front_paths;
  std::string metrics_out;
  auto* cmd_metrics = app.add_subcommand("metrics", "compare saved fronts");
  cmd_metrics->fallthrough();
  cmd_metrics->add_option("fronts", front_paths, "front CSV files")
      ->required()
      ->expected(-1);
  cmd_metrics->add_option("-o,--out", metrics_out, "indicator CSV path");

  std::string oracle_instance, oracle_variant = "hard-msmtw", oracle_out;
  auto* cmd_oracle = app.add_subcommand("oracle", "exhaustive optimum of a small instance");
  cmd_oracle->fallthrough();
  cmd_oracle->add_option("--instance", oracle_instance, "instance JSON")->required();
  cmd_oracle->add_option("--variant", oracle_variant, "problem variant");
  cmd_oracle->add_option("-o,--out", oracle_out, "output CSV path");

  SimulateOptions sim;
  auto* cmd_sim = app.add_subcommand("simulate", "recourse estimate of a plan");
  cmd_sim->fallthrough();
  cmd_sim->add_option("--instance", sim.instance_path, "instance JSON")->required();
  cmd_sim->add_option("--plan", sim.plan_path, "chromosome JSON")->required();
  cmd_sim->add_option("--kind", sim.kind, "recourse kind")
      ->check(CLI::IsMember({"penalty", "skip"}));
  cmd_sim->add_option("--epsilon", sim.epsilon, "gap threshold");
  cmd_sim->add_option("--max-iter", sim.max_iter, "replication cap");
  cmd_sim->add_option("--gap-window", sim.gap_window, "consecutive small gaps to stop");
  cmd_sim->add_option("-o,--out", sim.out, "output CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (cmd_gen->parsed()) {
      if (gen.preset.empty() && gen.recipe_path.empty()) {
        std::cerr << "gen needs --preset or --recipe\n";
        return kExitUsage;
      }
      return run_gen(gen, seed);
    }
    if (cmd_solve->parsed()) return run_solve(solve, seed, time_limit_ms);
    if (cmd_metrics->parsed()) return run_metrics(front_paths, metrics_out);
    if (cmd_oracle->parsed()) return run_oracle(oracle_instance, oracle_variant, oracle_out);
    if (cmd_sim->parsed()) return run_simulate(sim, seed);
  } catch (const IoError& e) {
    std::cerr << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}
