#include "gfrank/harness.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "gfrank/bounds.hpp"
#include "gfrank/decoder.hpp"
#include "gfrank/model.hpp"
#include "gfrank/rng.hpp"

namespace gfrank {

const char* to_string(Mode mode) noexcept { return mode == Mode::kNoisy ? "noisy" : "noiseless"; }

Mode parse_mode(const std::string& s) {
  if (s == "noiseless") return Mode::kNoiseless;
  if (s == "noisy") return Mode::kNoisy;
  throw std::invalid_argument("mode must be 'noiseless' or 'noisy', got '" + s + "'");
}

void ExperimentConfig::validate() const {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  if (d < 2) throw std::invalid_argument("d must be at least 2");
  if (!is_prime(q)) throw std::invalid_argument("q must be prime");
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (m_values.empty()) throw std::invalid_argument("no m values given");
  if (mode == Mode::kNoisy) {
    const double qd = q;
    if (!(epsilon >= 0.0 && epsilon < eta && eta < (qd - 1) / qd)) {
      throw std::invalid_argument("noisy mode needs 0 <= epsilon < eta < (q-1)/q");
    }
  }
}

std::vector<std::size_t> parse_m_values(const std::string& text) {
  auto to_size = [&](const std::string& s) -> std::size_t {
    std::size_t used = 0;
    long long v = -1;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || v < 0) throw std::invalid_argument("bad m value '" + s + "' in '" + text + "'");
    return static_cast<std::size_t>(v);
  };

  std::vector<std::size_t> out;
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    if (parts.size() != 3) throw std::invalid_argument("m range must be start:stop:step");
    const auto start = to_size(parts[0]), stop = to_size(parts[1]), step = to_size(parts[2]);
    if (step == 0) throw std::invalid_argument("m range step must be positive");
    for (auto m = start; m <= stop; m += step) out.push_back(m);
  } else {
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ',');) out.push_back(to_size(part));
  }
  if (out.empty()) throw std::invalid_argument("no m values in '" + text + "'");
  return out;
}

void apply_json(ExperimentConfig& config, const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("experiment config must be a JSON object");
  try {
    if (j.contains("n")) config.n = j.at("n").get<std::size_t>();
    if (j.contains("d")) config.d = j.at("d").get<std::size_t>();
    if (j.contains("r")) config.r = j.at("r").get<std::size_t>();
    if (j.contains("q")) config.q = j.at("q").get<std::uint32_t>();
    if (j.contains("mode")) config.mode = parse_mode(j.at("mode").get<std::string>());
    if (j.contains("epsilon")) config.epsilon = j.at("epsilon").get<double>();
    if (j.contains("eta")) config.eta = j.at("eta").get<double>();
    if (j.contains("trials")) config.trials = j.at("trials").get<std::size_t>();
    if (j.contains("master_seed")) config.master_seed = j.at("master_seed").get<std::uint64_t>();
    if (j.contains("output_path")) config.output_path = j.at("output_path").get<std::string>();
    if (j.contains("budget")) config.budget = j.at("budget").get<std::uint64_t>();
    if (j.contains("cache_dir")) config.cache_dir = j.at("cache_dir").get<std::string>();
    if (j.contains("m_values")) {
      const auto& mv = j.at("m_values");
      if (mv.is_array()) {
        config.m_values = mv.get<std::vector<std::size_t>>();
      } else if (mv.is_object()) {
        config.m_values = parse_m_values(std::to_string(mv.at("start").get<std::size_t>()) + ":" +
                                         std::to_string(mv.at("stop").get<std::size_t>()) + ":" +
                                         std::to_string(mv.at("step").get<std::size_t>()));
      } else if (mv.is_string()) {
        config.m_values = parse_m_values(mv.get<std::string>());
      } else {
        throw std::invalid_argument("m_values must be an array, a range object or a string");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad experiment config: ") + e.what());
  }
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig config;
  apply_json(config, j);
  return config;
}

RankSet load_or_enumerate(const ProblemParams& params, std::uint64_t budget, const std::string& cache_dir) {
  if (cache_dir.empty()) return enumerate(params, budget);
  const auto path = std::filesystem::path(cache_dir) / rankset_cache_name(params);
  if (auto cached = read_rankset_cache(params, path)) return *std::move(cached);
  auto set = enumerate(params, budget);
  std::filesystem::create_directories(cache_dir);
  write_rankset_cache(set, path);
  return set;
}

namespace {

struct Tally {
  std::size_t error_events = 0;
  std::size_t wrong = 0;
  std::size_t outside_ball = 0;
};

}  // namespace

SweepResult run_sweep(const ExperimentConfig& config, unsigned workers) {
  config.validate();
  const FieldModulus q(config.q);
  const ProblemParams params(config.n, config.d, config.r, q);
  const bool noisy = config.mode == Mode::kNoisy;
  const std::optional<double> eps = noisy ? std::optional(config.epsilon) : std::nullopt;
  const std::optional<double> eta = noisy ? std::optional(config.eta) : std::nullopt;

  std::vector<std::size_t> ms = config.m_values;
  std::sort(ms.begin(), ms.end());
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());

  // Reject a bad radius before any expensive work.
  if (noisy) {
    for (auto m : ms) hamming_radius(m, config.epsilon, config.eta, q);
  }

  const RankSet set = load_or_enumerate(params, config.budget, config.cache_dir);
  const Decoder decoder(params.shape(), q, config.budget);
  decoder.cache().level(config.r);  // build before workers start reading
  const ChannelSpec channel(noisy ? config.epsilon : 0.0, q);
  workers = std::max(1u, workers);

  SweepResult result{config, set.size(), {}};
  for (auto m : ms) {
    const DecoderParams dp =
        noisy ? DecoderParams::noisy(config.r, m, config.epsilon, config.eta, q) : DecoderParams::noiseless(config.r);

    auto run_trial = [&](std::size_t t, Tally& tally) {
      Rng truth_rng(derive_seed(config.master_seed, Stream::kTruth, m, t));
      const Tensor& t_star = sample_uniform(set, truth_rng);
      const auto ensemble = draw_ensemble(params.shape(), q, m, derive_seed(config.master_seed, Stream::kEnsemble, m, t));
      DecodeOutcome out;
      if (noisy) {
        const auto y_tilde =
            transmit(measure(ensemble, t_star), channel, derive_seed(config.master_seed, Stream::kChannel, m, t));
        out = decoder.run_noisy(ensemble, t_star, y_tilde, dp);
      } else {
        out = decoder.run_noiseless(ensemble, t_star, config.r);
      }
      tally.error_events += out.error_event;
      tally.outside_ball += out.detail.outside_ball;
      tally.wrong += !out.reconstructed || !(*out.reconstructed == t_star);
    };

    std::vector<Tally> tallies(workers);
    if (workers == 1) {
      for (std::size_t t = 0; t < config.trials; ++t) run_trial(t, tallies[0]);
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          for (std::size_t t = w; t < config.trials; t += workers) run_trial(t, tallies[w]);
        });
      }
      for (auto& th : pool) th.join();
    }

    SweepRow row;
    row.m = m;
    row.tau = dp.tau;
    row.trials = config.trials;
    for (const auto& tally : tallies) {
      row.error_events += tally.error_events;
      row.wrong_reconstructions += tally.wrong;
      row.outside_ball_events += tally.outside_ball;
    }
    row.empirical_rate = static_cast<double>(row.error_events) / static_cast<double>(row.trials);
    row.predicted_failure = predicted_failure(config.n, config.d, config.r, q, m, eps, eta);
    row.fano_lower = set.size() >= 2 ? fano_lower(set.size(), m, q, eps) : 0.0;
    row.converse_threshold = config.r >= 1 ? converse_threshold(config.n, config.d, config.r, q, eps) : 0.0;
    row.achievability_threshold = achievability_threshold(config.n, config.d, config.r, q, eps, eta);
    result.rows.push_back(row);
  }
  return result;
}

namespace {

std::string real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace

void write_csv(std::ostream& out, const SweepResult& result) {
  const auto& c = result.config;
  const bool noisy = c.mode == Mode::kNoisy;
  out << kCsvHeader << '\n';
  for (const auto& row : result.rows) {
    out << c.n << ',' << c.d << ',' << c.r << ',' << c.q << ',' << to_string(c.mode) << ','
        << real(noisy ? c.epsilon : 0.0) << ',' << real(noisy ? c.eta : 0.0) << ',' << row.tau << ',' << row.m << ','
        << row.trials << ',' << row.error_events << ',' << row.wrong_reconstructions << ','
        << real(row.empirical_rate) << ',' << real(row.predicted_failure) << ',' << real(row.fano_lower) << ','
        << real(row.converse_threshold) << ',' << real(row.achievability_threshold) << ',' << c.master_seed << '\n';
  }
}

void write_gnuplot_script(std::ostream& out, const std::string& csv_path) {
  out << "set datafile separator ','\n"
         "set key autotitle columnhead\n"
         "set logscale y\n"
         "set xlabel 'm (measurements)'\n"
         "set ylabel 'probability'\n"
         "plot '"
      << csv_path
      << "' using 9:13 with linespoints title 'empirical P(E)', \\\n"
         "     '' using 9:14 with lines title 'predicted bound', \\\n"
         "     '' using 9:15 with lines title 'Fano lower bound'\n";
}

}  // namespace gfrank
