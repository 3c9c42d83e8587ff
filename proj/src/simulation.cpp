#include "htledge/simulation.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include "htledge/protocol.hpp"

namespace htledge {

namespace {

const char* kind_name(NodeKind k) {
  switch (k) {
    case NodeKind::Sensor: return "sensor";
    case NodeKind::Mule: return "mule";
    case NodeKind::Edge: return "edge";
  }
  return "?";
}

const char* payload_name(PayloadKind k) {
  switch (k) {
    case PayloadKind::Observations: return "observations";
    case PayloadKind::Model: return "model";
    case PayloadKind::ScalarIndex: return "scalar_index";
    case PayloadKind::CenterId: return "center_id";
  }
  return "?";
}

struct Stat {
  double mean = 0.0;
  double half_width = 0.0;
};

Stat summarize(const std::vector<double>& values) {
  Stat s;
  for (double v : values) s.mean += v;
  s.mean /= static_cast<double>(values.size());
  if (values.size() >= 2) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    const double sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
    s.half_width = student_t_quantile(0.975, static_cast<int>(values.size()) - 1) * sd /
                   std::sqrt(static_cast<double>(values.size()));
  }
  return s;
}

SeriesSummary summarize_series(const std::vector<std::vector<double>>& series) {
  if (series.size() >= 2) return replication_summary(series, 0.95);
  SeriesSummary out;
  out.mean = series.front();
  out.half_width.assign(series.front().size(), 0.0);
  return out;
}

}  // namespace

ReplicationOutput run_replication(const Dataset& raw, const ExperimentConfig& cfg, int rep_index,
                                  bool keep_messages) {
  Rng rng(cfg.seed + static_cast<std::uint64_t>(rep_index));
  Dataset balanced = balance_classes(raw, rng, cfg.balance_total);
  auto [train, test] = split(balanced, cfg.train_fraction, rng);
  standardize(train, test);
  const auto batches =
      window_stream(train, cfg.scenario.obs_per_window, cfg.scenario.windows, rng);

  LearningConfigs lc{cfg.base, cfg.gtl};
  lc.gtl.per_class_sample = cfg.scenario.gtl_per_class_sample;

  WindowState state;
  ReplicationOutput out;
  out.windows.reserve(batches.size());

  for (int w = 0; w < cfg.scenario.windows; ++w) {
    state.window_index = w;
    const std::uint64_t window_seed =
        mix_seed(cfg.seed + static_cast<std::uint64_t>(rep_index), static_cast<std::uint64_t>(w));
    WindowResult res;
    if (cfg.scenario.protocol == ProtocolKind::EdgeOnly) {
      res = run_edge_only(state, batches[static_cast<std::size_t>(w)], lc, window_seed);
    } else if (cfg.scenario.edge_fraction > 0.0) {
      res = run_partial_edge(state, batches[static_cast<std::size_t>(w)],
                             cfg.scenario.edge_fraction, cfg.scenario, lc, rng, window_seed);
    } else {
      res = run_no_edge(state, batches[static_cast<std::size_t>(w)], cfg.scenario, lc, rng,
                        window_seed);
    }
    state.previous_global_model = res.model;

    out.windows.push_back(evaluate(res.model, test, w + 1));
    out.window_deltas.push_back(res.delta);
    out.participants.push_back(res.participants);
    out.traffic_bits.push_back(res.traffic_bits);
    out.totals += res.delta;
    if (keep_messages) {
      out.messages.insert(out.messages.end(), res.messages.begin(), res.messages.end());
    }
  }
  return out;
}

ExperimentResult run_experiment_on(const Dataset& raw, const ExperimentConfig& cfg) {
  const int reps = cfg.replications;
  std::vector<ReplicationOutput> outputs(static_cast<std::size_t>(reps));

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const int workers = static_cast<int>(std::min<unsigned>(hw, static_cast<unsigned>(reps)));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  std::exception_ptr error;
  std::mutex error_mutex;
  for (int t = 0; t < workers; ++t) {
    pool.emplace_back([&, t]() {
      try {
        for (int r = t; r < reps; r += workers) {
          outputs[static_cast<std::size_t>(r)] =
              run_replication(raw, cfg, r, cfg.emit_messages);
        }
      } catch (...) {
        std::scoped_lock lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);

  const std::size_t w = static_cast<std::size_t>(cfg.scenario.windows);
  auto gather = [&](auto&& get) {
    std::vector<std::vector<double>> series(static_cast<std::size_t>(reps));
    for (int r = 0; r < reps; ++r) {
      series[static_cast<std::size_t>(r)].resize(w);
      for (std::size_t i = 0; i < w; ++i) {
        series[static_cast<std::size_t>(r)][i] = get(outputs[static_cast<std::size_t>(r)], i);
      }
    }
    return series;
  };

  ExperimentResult res;
  res.f1 = summarize_series(gather([](const ReplicationOutput& o, std::size_t i) {
    return o.windows[i].f_measure;
  }));
  res.precision = summarize_series(gather([](const ReplicationOutput& o, std::size_t i) {
    return o.windows[i].precision;
  }));
  res.recall = summarize_series(gather([](const ReplicationOutput& o, std::size_t i) {
    return o.windows[i].recall;
  }));
  res.collection_short_mj = summarize_series(gather(
      [](const ReplicationOutput& o, std::size_t i) { return o.window_deltas[i].collection_short_mj; }));
  res.collection_long_mj = summarize_series(gather(
      [](const ReplicationOutput& o, std::size_t i) { return o.window_deltas[i].collection_long_mj; }));
  res.learning_tx_mj = summarize_series(gather(
      [](const ReplicationOutput& o, std::size_t i) { return o.window_deltas[i].learning_tx_mj; }));
  res.learning_rx_mj = summarize_series(gather(
      [](const ReplicationOutput& o, std::size_t i) { return o.window_deltas[i].learning_rx_mj; }));
  res.participants = summarize_series(gather(
      [](const ReplicationOutput& o, std::size_t i) { return static_cast<double>(o.participants[i]); }));
  res.traffic_bits = summarize_series(gather(
      [](const ReplicationOutput& o, std::size_t i) { return static_cast<double>(o.traffic_bits[i]); }));

  std::vector<double> totals;
  std::vector<double> convergence;
  std::vector<double> participants_mean;
  std::vector<double> traffic_total;
  for (const auto& o : outputs) {
    totals.push_back(o.totals.session_mj());
    res.mean_totals += o.totals;
    double conv = 0.0;
    double parts = 0.0;
    double traffic = 0.0;
    const int lo = std::max(0, cfg.scenario.windows - 51);
    for (int i = lo; i < cfg.scenario.windows; ++i) {
      conv += o.windows[static_cast<std::size_t>(i)].f_measure;
    }
    conv /= static_cast<double>(cfg.scenario.windows - lo);
    for (int i = 0; i < cfg.scenario.windows; ++i) {
      parts += o.participants[static_cast<std::size_t>(i)];
      traffic += static_cast<double>(o.traffic_bits[static_cast<std::size_t>(i)]);
    }
    convergence.push_back(conv);
    participants_mean.push_back(parts / cfg.scenario.windows);
    traffic_total.push_back(traffic);
  }
  res.mean_totals.collection_short_mj /= reps;
  res.mean_totals.collection_long_mj /= reps;
  res.mean_totals.learning_tx_mj /= reps;
  res.mean_totals.learning_rx_mj /= reps;

  const Stat total_stat = summarize(totals);
  res.total_mj_mean = total_stat.mean;
  res.total_mj_half_width = total_stat.half_width;
  const Stat conv_stat = summarize(convergence);
  res.convergence_f1_mean = conv_stat.mean;
  res.convergence_f1_half_width = conv_stat.half_width;
  res.mean_participants = summarize(participants_mean).mean;
  res.mean_traffic_bits = summarize(traffic_total).mean;
  res.replications = std::move(outputs);
  return res;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  const Dataset raw = load_covtype(cfg.dataset_path);
  return run_experiment_on(raw, cfg);
}

GainReport compare_summaries(double energy_a_mj, double f1_a, double energy_b_mj, double f1_b) {
  GainReport r;
  if (energy_a_mj != 0.0) r.gain_percent = (energy_a_mj - energy_b_mj) / energy_a_mj * 100.0;
  r.accuracy_loss_pp = (f1_a - f1_b) * 100.0;
  return r;
}

void write_artifacts(const ExperimentResult& result, const ExperimentConfig& cfg,
                     const std::string& baseline_summary_path) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(cfg.output_dir, ec);
  if (ec) throw IoError("cannot create output directory: " + cfg.output_dir);

  {
    std::ofstream csv(cfg.output_dir + "/windows.csv");
    if (!csv) throw IoError("cannot write windows.csv in " + cfg.output_dir);
    csv << "window,f1_mean,f1_ci,precision_mean,precision_ci,recall_mean,recall_ci,"
           "collection_short_mj_mean,collection_short_mj_ci,collection_long_mj_mean,"
           "collection_long_mj_ci,learning_tx_mj_mean,learning_tx_mj_ci,learning_rx_mj_mean,"
           "learning_rx_mj_ci,participants_mean,participants_ci,traffic_bits_mean,"
           "traffic_bits_ci\n";
    char line[1024];
    for (int w = 0; w < cfg.scenario.windows; ++w) {
      const auto i = static_cast<std::size_t>(w);
      std::snprintf(line, sizeof line,
                    "%d,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,"
                    "%.3f,%.3f,%.1f,%.1f\n",
                    w + 1, result.f1.mean[i], result.f1.half_width[i], result.precision.mean[i],
                    result.precision.half_width[i], result.recall.mean[i],
                    result.recall.half_width[i], result.collection_short_mj.mean[i],
                    result.collection_short_mj.half_width[i], result.collection_long_mj.mean[i],
                    result.collection_long_mj.half_width[i], result.learning_tx_mj.mean[i],
                    result.learning_tx_mj.half_width[i], result.learning_rx_mj.mean[i],
                    result.learning_rx_mj.half_width[i], result.participants.mean[i],
                    result.participants.half_width[i], result.traffic_bits.mean[i],
                    result.traffic_bits.half_width[i]);
      csv << line;
    }
  }

  nlohmann::ordered_json j;
  j["windows"] = cfg.scenario.windows;
  j["replications"] = cfg.replications;
  j["seed"] = cfg.seed;
  j["config"] = {
      {"protocol", cfg.scenario.protocol == ProtocolKind::EdgeOnly
                       ? "edge_only"
                       : (cfg.scenario.protocol == ProtocolKind::A2AHTL ? "a2ahtl" : "shtl")},
      {"allocation", cfg.scenario.allocation == Allocation::Zipf ? "zipf" : "uniform"},
      {"learning_tech", tech_spec(cfg.scenario.learning_tech).name},
      {"edge_fraction", cfg.scenario.edge_fraction},
      {"aggregation", cfg.scenario.aggregation_enabled},
      {"gtl_per_class_sample", cfg.scenario.gtl_per_class_sample},
      {"lambda", cfg.scenario.lambda},
  };
  j["convergence_f1"] = {{"mean", result.convergence_f1_mean},
                         {"half_width", result.convergence_f1_half_width}};
  j["final_f1"] = result.f1.mean.back();
  j["total_mJ"] = {{"session", result.total_mj_mean},
                   {"half_width", result.total_mj_half_width},
                   {"collection_short", result.mean_totals.collection_short_mj},
                   {"collection_long", result.mean_totals.collection_long_mj},
                   {"learning_tx", result.mean_totals.learning_tx_mj},
                   {"learning_rx", result.mean_totals.learning_rx_mj}};
  j["mean_participants"] = result.mean_participants;
  j["mean_traffic_bits"] = result.mean_traffic_bits;

  if (!baseline_summary_path.empty()) {
    std::ifstream in(baseline_summary_path);
    if (!in) throw IoError("cannot open baseline summary: " + baseline_summary_path);
    nlohmann::json base;
    in >> base;
    const double base_e = base.at("total_mJ").at("session").get<double>();
    const double base_f1 = base.at("convergence_f1").at("mean").get<double>();
    const GainReport gain =
        compare_summaries(base_e, base_f1, result.total_mj_mean, result.convergence_f1_mean);
    j["gain_vs_baseline"] = {{"baseline_total_mJ", base_e},
                             {"baseline_convergence_f1", base_f1},
                             {"gain_percent", gain.gain_percent},
                             {"accuracy_loss_pp", gain.accuracy_loss_pp}};
  }

  std::ofstream js(cfg.output_dir + "/summary.json");
  if (!js) throw IoError("cannot write summary.json in " + cfg.output_dir);
  js << j.dump(2) << '\n';

  if (cfg.emit_messages) {
    for (std::size_t r = 0; r < result.replications.size(); ++r) {
      std::ofstream csv(cfg.output_dir + "/messages_rep" + std::to_string(r) + ".csv");
      if (!csv) throw IoError("cannot write message log in " + cfg.output_dir);
      csv << "window,src_id,src_kind,dst_id,dst_kind,payload_kind,bits,tech,mJ_tx,mJ_rx\n";
      char line[512];
      for (const auto& rec : result.replications[r].messages) {
        EnergyLedger scratch;
        const ChargeResult cost = charge(scratch, rec);
        std::snprintf(line, sizeof line, "%d,%d,%s,%d,%s,%s,%lld,%s,%.9f,%.9f\n",
                      rec.window_index + 1, rec.src_id, kind_name(rec.src_kind), rec.dst_id,
                      kind_name(rec.dst_kind), payload_name(rec.payload.kind),
                      static_cast<long long>(rec.payload.bits), tech_spec(rec.tech).name,
                      cost.tx_mj, cost.rx_mj);
        csv << line;
      }
    }
  }
}

}  // namespace htledge
