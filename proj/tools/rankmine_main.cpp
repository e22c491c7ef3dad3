// rankmine: mines the complete catalog of credible treatment-hierarchy
// questions from samples of a joint distribution of relative effects.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rankmine/rankmine.hpp"

namespace {

constexpr int kExitInputError = 2;
constexpr int kExitConfigError = 3;
constexpr int kExitOracleMismatch = 4;

// Seed whose K=1000 toy draw reproduces the reference credible sets; see
// tests/acceptance.cpp.
constexpr std::uint64_t kDefaultSeed = 47;

struct InputOptions {
  std::string effects_path;
  std::string ranks_path;
  bool simulate_toy = false;
  int simulate_n = 0;
  long long samples = 1000;
  std::uint64_t seed = kDefaultSeed;
  rankmine::Direction direction = rankmine::Direction::LowerIsBetter;
};

void add_input_flags(CLI::App* cmd, InputOptions& in) {
  auto* input = cmd->add_option("--input", in.effects_path,
                                "CSV of sampled relative effects (header = treatment names)")
                    ->envname("RANKMINE_INPUT");
  auto* ranks = cmd->add_option("--input-ranks", in.ranks_path,
                                "CSV of observed hierarchies (rank header, treatment cells)");
  auto* toy = cmd->add_flag("--simulate-toy", in.simulate_toy,
                            "use the built-in five-treatment demonstration instance");
  auto* gauss = cmd->add_option("--simulate-gaussian", in.simulate_n,
                                "simulate N treatments with overlapping effects")
                    ->check(CLI::Range(2, 26));
  input->excludes(ranks)->excludes(toy)->excludes(gauss);
  ranks->excludes(toy)->excludes(gauss);
  toy->excludes(gauss);
  cmd->add_option("--samples", in.samples, "sample count for simulated inputs")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", in.seed, "simulation seed")->envname("RANKMINE_SEED");
  std::map<std::string, rankmine::Direction> dir_map{
      {"lower", rankmine::Direction::LowerIsBetter},
      {"higher", rankmine::Direction::HigherIsBetter}};
  cmd->add_option("--direction", in.direction, "whether lower or higher effects are better")
      ->transform(CLI::CheckedTransformer(dir_map, CLI::ignore_case))
      ->envname("RANKMINE_DIRECTION");
}

rankmine::Dataset load_input(const InputOptions& in, rankmine::RunManifest& manifest,
                             double mid) {
  using namespace rankmine;
  manifest.seed = in.seed;
  if (!in.effects_path.empty()) {
    manifest.input = in.effects_path;
    return make_dataset(load_effects_csv(in.effects_path, in.direction));
  }
  if (!in.ranks_path.empty()) {
    if (mid > 0.0)
      throw ConfigError("--mid > 0 requires effect samples (--input), not a rank matrix");
    manifest.input = in.ranks_path;
    return make_dataset_from_ranks(load_ranks_csv(in.ranks_path));
  }
  if (in.simulate_toy) {
    manifest.input = "simulate-toy";
    manifest.simulated = true;
    return make_dataset(simulate_toy(in.samples, in.seed));
  }
  if (in.simulate_n >= 2) {
    manifest.input = "simulate-gaussian:" + std::to_string(in.simulate_n);
    manifest.simulated = true;
    return make_dataset(simulate_gaussian(in.simulate_n, in.samples, in.seed));
  }
  throw ConfigError(
      "no input: pass --input, --input-ranks, --simulate-toy or --simulate-gaussian");
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw rankmine::ParseError("cannot write output file: " + path);
  out << text;
}

void warn_small_k(long long k, double tau) {
  if (tau >= 0.95 && k < 500)
    std::cerr << "warning: K=" << k << " gives a Monte Carlo standard error above 0.01 at"
              << " tau=" << tau << "; consider K >= 500\n";
}

void print_timings(const rankmine::StageTimings& t) {
  std::fprintf(stderr,
               "timings: load %.3fs, arrangements %.3fs, partial %.3fs, hdr %.3fs, "
               "trim %.3fs\n",
               t.load_s, t.arrangements_s, t.partial_s, t.hdr_s, t.trim_s);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace rankmine;
  CLI::App app{"miner for credible binary treatment-hierarchy questions"};
  app.require_subcommand(1);

  // analyze
  auto* analyze = app.add_subcommand("analyze", "mine, trim and serialize the catalog");
  InputOptions an_in;
  add_input_flags(analyze, an_in);
  double tau = 0.95, mid = 0.0;
  int threads = 1;
  bool trim = true, sensitivity = false, timings = false, extra_prune = false;
  std::string format = "json", output_path;
  analyze->add_option("--tau", tau, "credibility threshold in (0,1]")
      ->envname("RANKMINE_TAU");
  analyze->add_option("--mid", mid, "minimally important difference (effect units)")
      ->envname("RANKMINE_MID");
  analyze->add_flag("--trim,!--no-trim", trim, "mark redundant questions (default on)");
  analyze->add_flag("--sensitivity", sensitivity,
                    "also report questions credible at tau* = tau - 2*sqrt(tau(1-tau)/K)");
  analyze->add_option("--format", format, "json, table or csv")
      ->check(CLI::IsMember({"json", "table", "csv"}));
  analyze->add_option("--output", output_path, "write to file instead of stdout");
  analyze->add_option("--threads", threads, "worker threads for the mining passes")
      ->check(CLI::PositiveNumber)
      ->envname("RANKMINE_THREADS");
  analyze->add_flag("--timings", timings, "print per-stage wall times to stderr");
  analyze->add_flag("--extra-prune", extra_prune)->group("");

  // count
  auto* count = app.add_subcommand("count", "per-kind unique question counts");
  int count_n = 5;
  std::string count_format = "table";
  count->add_option("n", count_n, "number of treatments")->required()->check(CLI::Range(2, 20));
  count->add_option("--format", count_format)->check(CLI::IsMember({"table", "json"}));

  // plot-data
  auto* plot = app.add_subcommand("plot-data", "rankogram probabilities with HDR flags");
  InputOptions plot_in;
  add_input_flags(plot, plot_in);
  double plot_tau = 0.95;
  std::string plot_format = "csv", plot_output;
  plot->add_option("--tau", plot_tau, "credibility threshold for the HDRs")
      ->envname("RANKMINE_TAU");
  plot->add_option("--format", plot_format)->check(CLI::IsMember({"csv", "json"}));
  plot->add_option("--output", plot_output, "write to file instead of stdout");

  // oracle-check
  auto* check = app.add_subcommand(
      "oracle-check", "compare the mining pipeline against brute-force enumeration");
  InputOptions chk_in;
  add_input_flags(check, chk_in);
  chk_in.simulate_n = 5;
  chk_in.samples = 200;
  double chk_tau = 0.8, chk_mid = 0.0;
  int n_cap = rankmine::oracle::kDefaultCap;
  bool inject_fault = false;
  check->add_option("--tau", chk_tau)->envname("RANKMINE_TAU");
  check->add_option("--mid", chk_mid)->envname("RANKMINE_MID");
  check->add_option("--n-cap", n_cap, "brute-force size cap (raise deliberately)");
  check->add_flag("--inject-fault", inject_fault)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitConfigError;
  }

  try {
    if (analyze->parsed()) {
      AnalysisConfig cfg;
      cfg.tau = tau;
      cfg.mid = mid;
      cfg.direction = an_in.direction;
      cfg.threads = threads;
      cfg.prune_suffix = extra_prune;
      cfg.validate();
      RunManifest pre;
      detail::StageClock clock;
      Dataset data = load_input(an_in, pre, mid);
      double load_s = clock.lap();
      warn_small_k(data.k(), tau);
      AnalysisResult res = run_analysis(data, cfg, trim, sensitivity);
      res.manifest.input = pre.input;
      res.manifest.seed = pre.seed;
      res.manifest.simulated = pre.simulated;
      res.manifest.timings.load_s = load_s;
      if (timings) print_timings(res.manifest.timings);
      if (format == "json")
        write_output(result_to_json_text(res), output_path);
      else if (format == "table")
        write_output(result_to_table(res), output_path);
      else
        write_output(result_to_csv(res), output_path);
      return 0;
    }

    if (count->parsed()) {
      if (count_format == "json")
        std::cout << count_json(count_n).dump(2) << "\n";
      else
        std::cout << count_table(count_n);
      return 0;
    }

    if (plot->parsed()) {
      RunManifest pre;
      Dataset data = load_input(plot_in, pre, 0.0);
      AnalysisConfig cfg;
      cfg.tau = plot_tau;
      cfg.validate();
      auto dists = rank_distributions(data.ranks);
      auto hdrs = hdr_sets(dists, plot_tau);
      if (plot_format == "json")
        write_output(plot_data_json(dists, hdrs, data.labels()).dump(2) + "\n", plot_output);
      else
        write_output(plot_data_csv(dists, hdrs, data.labels()), plot_output);
      return 0;
    }

    if (check->parsed()) {
      AnalysisConfig cfg;
      cfg.tau = chk_tau;
      cfg.mid = chk_mid;
      cfg.direction = chk_in.direction;
      cfg.validate();
      RunManifest pre;
      Dataset data = load_input(chk_in, pre, chk_mid);
      if (data.n() > n_cap)
        throw ConfigError("oracle-check refuses n = " + std::to_string(data.n()) +
                          " (cap " + std::to_string(n_cap) + "); raise --n-cap to override");
      CredibleCatalog mined = build_catalog(data, cfg);
      CredibleCatalog reference =
          rankmine::oracle::brute_force_catalog(data, chk_tau, chk_mid, cfg.float_guard, n_cap);
      if (inject_fault && !mined.entries.empty()) {
        mined.entries.front().count += 1;
      }
      std::string diff = rankmine::oracle::diff_catalogs(mined, reference);
      if (diff.empty()) {
        std::cout << "PASS: pipeline catalog matches brute force (" << mined.entries.size()
                  << " entries, n=" << data.n() << ", K=" << data.k() << ", tau=" << chk_tau
                  << ", mid=" << chk_mid << ")\n";
        return 0;
      }
      std::cout << "FAIL: pipeline and brute force disagree\n" << diff;
      return kExitOracleMismatch;
    }
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
