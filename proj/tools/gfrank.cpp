// gfrank: exact low-rank tensor laboratory over F_q.
//
//   gfrank count    --n 2 --d 3 --r 1 --q 2
//   gfrank bounds   --n 2 --d 3 --r 1 --q 2 --epsilon 0.1 --eta 0.3 --m 120
//   gfrank rank     tensor.json
//   gfrank sample   --n 2 --d 3 --r 1 --q 2 --seed 7
//   gfrank simulate --n 2 --d 3 --r 1 --q 2 --m 6:16:2 --trials 2000 --out sweep.csv
//
// Exit status: 0 success, 1 usage or input error, 2 enumeration budget exceeded.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "gfrank/bounds.hpp"
#include "gfrank/harness.hpp"
#include "gfrank/io.hpp"
#include "gfrank/rankset.hpp"

namespace {

using namespace gfrank;

constexpr int kUsageError = 1;
constexpr int kBudgetError = 2;

std::string real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

struct ParamFlags {
  std::size_t n = 2, d = 3, r = 1;
  std::uint32_t q = 2;
  std::uint64_t budget = kDefaultBudget;

  void add_to(CLI::App* app) {
    app->add_option("--n", n, "side length")->check(CLI::PositiveNumber);
    app->add_option("--d", d, "tensor order (>= 2)");
    app->add_option("--r", r, "maximum rank");
    app->add_option("--q", q, "prime field size");
    app->add_option("--budget", budget, "max factor tuples an enumeration may visit");
  }

  ProblemParams params() const { return ProblemParams(n, d, r, FieldModulus(q)); }
};

int run_count(const ParamFlags& flags, const std::string& cache_dir) {
  const auto params = flags.params();
  const auto set = load_or_enumerate(params, flags.budget, cache_dir);
  const auto upper = lemma1_upper(params.n, params.d, params.r, params.q);
  const BigInt exact = set.size();

  std::cout << "exact=" << set.size() << '\n';
  std::cout << "lemma1=" << upper.exact.str() << '\n';
  bool ok = exact <= upper.exact;
  if (params.d >= 3) {
    const auto sum = lemma2_sum_lower(params.n, params.d, params.r, params.q);
    std::cout << "lemma2_sum=" << sum.str() << '\n';
    ok = ok && sum <= exact;
    if (params.r >= 1) {
      const double lower = lemma2_lower(params.n, params.d, params.r, params.q);
      std::cout << "lemma2_lower=" << real(lower) << '\n';
      ok = ok && lower < static_cast<double>(set.size());
    }
  } else {
    const double lower = remark1_lower(params.n, params.r, params.q);
    std::cout << "remark1_lower=" << real(lower) << '\n';
    ok = ok && lower <= static_cast<double>(set.size());
  }
  std::cout << "sandwich=" << (ok ? "ok" : "violated") << '\n';
  return 0;
}

int run_bounds(const ParamFlags& flags, std::optional<double> eps, std::optional<double> eta,
               std::optional<std::size_t> m, std::optional<std::uint64_t> card) {
  const auto params = flags.params();
  if (m && !card) {
    try {
      card = cardinality(params, flags.budget);
    } catch (const BudgetExceeded&) {
      // Fano needs the exact count; leave it out when that is infeasible.
    }
  }
  const auto report = bound_report(params.n, params.d, params.r, params.q, m, eps, eta, card);

  std::cout << "lemma1_upper=" << report.lemma1_upper.exact.str() << '\n';
  std::cout << "lemma1_upper_ln=" << real(report.lemma1_upper.ln_value) << '\n';
  if (report.lemma2_lower) std::cout << "lemma2_lower=" << real(*report.lemma2_lower) << '\n';
  if (report.lemma2_sum_lower) std::cout << "lemma2_sum_lower=" << report.lemma2_sum_lower->str() << '\n';
  if (report.remark1_lower) std::cout << "remark1_lower=" << real(*report.remark1_lower) << '\n';
  std::cout << "c_2=" << real(c_q(2)) << '\n';
  if (report.converse_threshold) std::cout << "converse_threshold=" << real(*report.converse_threshold) << '\n';
  std::cout << "achievability_threshold=" << real(report.achievability_threshold) << '\n';
  if (report.lambda) std::cout << "lambda=" << real(*report.lambda) << '\n';
  if (report.gamma) std::cout << "gamma=" << real(*report.gamma) << '\n';
  if (eps) std::cout << "binary_entropy=" << real(binary_entropy(*eps)) << '\n';
  if (report.tau) std::cout << "tau=" << *report.tau << '\n';
  if (report.predicted_failure) std::cout << "predicted_failure=" << real(*report.predicted_failure) << '\n';
  if (card) std::cout << "cardinality=" << *card << '\n';
  if (report.fano_lower) std::cout << "fano_lower=" << real(*report.fano_lower) << '\n';
  return 0;
}

int run_rank(const std::string& path, std::uint64_t budget) {
  std::cout << rank(read_tensor_file(path), budget) << '\n';
  return 0;
}

int run_sample(const ParamFlags& flags, std::uint64_t seed) {
  write_tensor(std::cout, sample_uniform(flags.params(), seed, flags.budget));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact low-rank tensor recovery over prime fields"};
  app.require_subcommand(1);

  ParamFlags count_flags, bounds_flags, sample_flags, sim_flags;
  std::string count_cache;

  auto* count = app.add_subcommand("count", "exact |T(n;d;r;q)| and the cardinality bounds");
  count_flags.add_to(count);
  count->add_option("--cache-dir", count_cache, "directory for rank-set caches");

  auto* bounds = app.add_subcommand("bounds", "closed-form bounds and thresholds");
  bounds_flags.add_to(bounds);
  std::optional<double> b_eps, b_eta;
  std::optional<std::size_t> b_m;
  std::optional<std::uint64_t> b_card;
  bounds->add_option("--epsilon", b_eps, "channel error probability");
  bounds->add_option("--eta", b_eta, "Hamming radius fraction (tau = floor(eta m))");
  bounds->add_option("--m", b_m, "number of measurements");
  bounds->add_option("--card", b_card, "rank-set cardinality for the Fano bound (default: enumerate)");

  auto* rank_cmd = app.add_subcommand("rank", "exact rank of a tensor JSON file");
  std::string rank_path;
  std::uint64_t rank_budget = kDefaultBudget;
  rank_cmd->add_option("file", rank_path, "tensor JSON file")->required();
  rank_cmd->add_option("--budget", rank_budget, "max work per rank level");

  auto* sample = app.add_subcommand("sample", "uniform member of T(n;d;r;q) as JSON");
  sample_flags.add_to(sample);
  std::uint64_t sample_seed = 0;
  sample->add_option("--seed", sample_seed, "RNG seed");

  auto* sim = app.add_subcommand("simulate", "Monte Carlo sweep over m, written as CSV");
  sim_flags.add_to(sim);
  std::string sim_config, sim_mode, sim_m, sim_out, sim_cache, sim_plot;
  double sim_eps = 0.0, sim_eta = 0.0;
  std::size_t sim_trials = 1;
  std::uint64_t sim_seed = 0;
  unsigned sim_workers = 1;
  sim->add_option("--config", sim_config, "JSON experiment config (flags override it)");
  auto* o_mode = sim->add_option("--mode", sim_mode, "noiseless | noisy");
  auto* o_eps = sim->add_option("--epsilon", sim_eps, "channel error probability");
  auto* o_eta = sim->add_option("--eta", sim_eta, "Hamming radius fraction");
  auto* o_m = sim->add_option("--m", sim_m, "comma list or start:stop:step");
  auto* o_trials = sim->add_option("--trials", sim_trials, "trials per m");
  auto* o_seed = sim->add_option("--seed", sim_seed, "master seed");
  auto* o_out = sim->add_option("--out", sim_out, "CSV output path (default: stdout)");
  auto* o_cache = sim->add_option("--cache-dir", sim_cache, "directory for rank-set caches");
  sim->add_option("--workers", sim_workers, "worker threads");
  sim->add_option("--plot", sim_plot, "also write a gnuplot script to this path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (*count) return run_count(count_flags, count_cache);
    if (*bounds) return run_bounds(bounds_flags, b_eps, b_eta, b_m, b_card);
    if (*rank_cmd) return run_rank(rank_path, rank_budget);
    if (*sample) return run_sample(sample_flags, sample_seed);
    if (*sim) {
      ExperimentConfig config;
      if (!sim_config.empty()) {
        std::ifstream in(sim_config);
        if (!in) throw std::invalid_argument("cannot open config " + sim_config);
        nlohmann::json j;
        try {
          in >> j;
        } catch (const nlohmann::json::parse_error& e) {
          throw std::invalid_argument(std::string("invalid config JSON: ") + e.what());
        }
        apply_json(config, j);
      }
      if (sim->count("--n")) config.n = sim_flags.n;
      if (sim->count("--d")) config.d = sim_flags.d;
      if (sim->count("--r")) config.r = sim_flags.r;
      if (sim->count("--q")) config.q = sim_flags.q;
      if (sim->count("--budget")) config.budget = sim_flags.budget;
      if (o_mode->count()) config.mode = parse_mode(sim_mode);
      if (o_eps->count()) config.epsilon = sim_eps;
      if (o_eta->count()) config.eta = sim_eta;
      if (o_m->count()) config.m_values = parse_m_values(sim_m);
      if (o_trials->count()) config.trials = sim_trials;
      if (o_seed->count()) config.master_seed = sim_seed;
      if (o_out->count()) config.output_path = sim_out;
      if (o_cache->count()) config.cache_dir = sim_cache;
      // Giving an error probability on the command line implies the noisy rule.
      if (o_eps->count() && !o_mode->count() && sim_eps > 0.0) config.mode = Mode::kNoisy;

      const auto result = run_sweep(config, sim_workers);
      if (config.output_path.empty()) {
        write_csv(std::cout, result);
      } else {
        std::ofstream out(config.output_path, std::ios::binary | std::ios::trunc);
        if (!out) throw std::invalid_argument("cannot write " + config.output_path);
        write_csv(out, result);
      }
      if (!sim_plot.empty()) {
        std::ofstream plot(sim_plot);
        write_gnuplot_script(plot, config.output_path.empty() ? "sweep.csv" : config.output_path);
      }
      return 0;
    }
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBudgetError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}
