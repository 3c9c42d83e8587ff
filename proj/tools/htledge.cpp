#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "htledge/config.hpp"
#include "htledge/simulation.hpp"

namespace {

int run_command(const std::string& config_path, const std::string& preset,
                const std::string& out_dir, long long seed, int replications, bool emit_messages,
                const std::string& baseline) {
  htledge::ExperimentConfig cfg;
  if (!preset.empty()) cfg = htledge::preset_config(preset);
  if (!config_path.empty()) htledge::apply_config_file(cfg, config_path);
  if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
  if (replications > 0) cfg.replications = replications;
  if (emit_messages) cfg.emit_messages = true;
  cfg.output_dir = out_dir;

  if (cfg.dataset_path.empty()) {
    throw htledge::ConfigError("dataset.path is not set (provide it in the config file)");
  }

  const htledge::ExperimentResult result = htledge::run_experiment(cfg);
  htledge::write_artifacts(result, cfg, baseline);
  std::printf("windows:          %d x %d replications\n", cfg.scenario.windows, cfg.replications);
  std::printf("convergence F1:   %.4f +- %.4f\n", result.convergence_f1_mean,
              result.convergence_f1_half_width);
  std::printf("total energy:     %.1f mJ (collection %.1f + %.1f, learning %.1f + %.1f)\n",
              result.total_mj_mean, result.mean_totals.collection_short_mj,
              result.mean_totals.collection_long_mj, result.mean_totals.learning_tx_mj,
              result.mean_totals.learning_rx_mj);
  std::printf("artifacts:        %s/windows.csv, %s/summary.json\n", cfg.output_dir.c_str(),
              cfg.output_dir.c_str());
  return 0;
}

int compare_command(const std::string& path_a, const std::string& path_b) {
  auto load = [](const std::string& path) {
    std::ifstream in(path);
    if (!in) throw htledge::IoError("cannot open summary: " + path);
    nlohmann::json j;
    in >> j;
    return std::pair<double, double>{j.at("total_mJ").at("session").get<double>(),
                                     j.at("convergence_f1").at("mean").get<double>()};
  };
  const auto [e_a, f1_a] = load(path_a);
  const auto [e_b, f1_b] = load(path_b);
  const htledge::GainReport r = htledge::compare_summaries(e_a, f1_a, e_b, f1_b);
  std::printf("energy:        %.1f mJ vs %.1f mJ\n", e_a, e_b);
  std::printf("gain:          %.1f %%\n", r.gain_percent);
  std::printf("accuracy loss: %.2f pp (F1 %.4f vs %.4f)\n", r.accuracy_loss_pp, f1_a, f1_b);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy/accuracy simulator for HTL-based distributed analytics at the edge"};
  app.require_subcommand(1);

  std::string config_path;
  std::string preset;
  std::string out_dir;
  std::string baseline;
  long long seed = -1;
  int replications = 0;
  bool emit_messages = false;

  CLI::App* run = app.add_subcommand("run", "Run a replicated experiment");
  run->add_option("--config", config_path, "key = value configuration file");
  run->add_option("--preset", preset, "named preset (see list-presets)");
  run->add_option("--seed", seed, "master seed (replication r uses seed + r)");
  run->add_option("--replications", replications, "number of replications");
  run->add_flag("--emit-messages", emit_messages, "write per-replication message logs");
  run->add_option("--out", out_dir, "output directory")->required();
  run->add_option("--baseline", baseline, "EdgeOnly summary.json for gain reporting");

  CLI::App* list = app.add_subcommand("list-presets", "List canned experiment presets");

  std::string cmp_a;
  std::string cmp_b;
  CLI::App* cmp = app.add_subcommand("compare", "Energy gain / accuracy loss between summaries");
  cmp->add_option("a", cmp_a, "baseline summary.json")->required();
  cmp->add_option("b", cmp_b, "run summary.json")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (run->parsed()) {
      return run_command(config_path, preset, out_dir, seed, replications, emit_messages,
                         baseline);
    }
    if (list->parsed()) {
      for (const auto& name : htledge::list_presets()) std::cout << name << '\n';
      return 0;
    }
    if (cmp->parsed()) return compare_command(cmp_a, cmp_b);
  } catch (const htledge::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return 2;
  } catch (const htledge::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
