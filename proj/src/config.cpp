#include "htledge/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>

namespace htledge {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

long parse_int(const std::string& key, const std::string& value) {
  char* end = nullptr;
  const long v = std::strtol(value.c_str(), &end, 10);
  if (end == value.c_str() || *end != '\0') {
    throw ConfigError("bad integer for key '" + key + "': " + value);
  }
  return v;
}

double parse_double(const std::string& key, const std::string& value) {
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (end == value.c_str() || *end != '\0') {
    throw ConfigError("bad number for key '" + key + "': " + value);
  }
  return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("bad boolean for key '" + key + "': " + value);
}

ExperimentConfig base_preset() {
  ExperimentConfig cfg;
  cfg.scenario.windows = 100;
  cfg.scenario.obs_per_window = 100;
  cfg.scenario.lambda = 7.0;
  cfg.scenario.zipf_alpha = 1.5;
  cfg.base.lambda_svm = 1e-4;
  cfg.base.epochs = 20;
  cfg.gtl.lambda_tl = 1.0;
  cfg.gtl.budget = -1;
  cfg.replications = 10;
  return cfg;
}

ExperimentConfig no_edge_preset(ProtocolKind protocol, Tech tech, Allocation allocation,
                                bool aggregation, int per_class_sample = 0) {
  ExperimentConfig cfg = base_preset();
  cfg.scenario.protocol = protocol;
  cfg.scenario.learning_tech = tech;
  cfg.scenario.allocation = allocation;
  cfg.scenario.edge_fraction = 0.0;
  cfg.scenario.aggregation_enabled = aggregation;
  cfg.scenario.gtl_per_class_sample = per_class_sample;
  return cfg;
}

}  // namespace

std::vector<std::string> list_presets() {
  std::vector<std::string> names = {"edge_only", "scenario1_50pct", "scenario1_15pct",
                                    "scenario1_3pct"};
  for (const char* scen : {"scenario2", "scenario3"}) {
    for (const char* algo : {"a2a", "shtl"}) {
      for (const char* tech : {"4g", "wifi"}) {
        names.push_back(std::string(scen) + "_" + algo + "_" + tech);
        names.push_back(std::string(scen) + "_" + algo + "_" + tech + "_aggr");
      }
    }
  }
  for (const char* prefix : {"complexity", "complexity_uniform"}) {
    for (const char* algo : {"a2a", "shtl"}) {
      for (const char* n : {"2", "5", "10"}) {
        names.push_back(std::string(prefix) + "_" + algo + "_n" + n);
      }
    }
  }
  return names;
}

ExperimentConfig preset_config(const std::string& name) {
  if (name == "edge_only") {
    ExperimentConfig cfg = base_preset();
    cfg.scenario.protocol = ProtocolKind::EdgeOnly;
    cfg.scenario.edge_fraction = 1.0;
    return cfg;
  }
  if (name == "scenario1_50pct" || name == "scenario1_15pct" || name == "scenario1_3pct") {
    ExperimentConfig cfg = base_preset();
    cfg.scenario.protocol = ProtocolKind::SHTL;
    cfg.scenario.learning_tech = Tech::FourG;
    cfg.scenario.allocation = Allocation::Zipf;
    cfg.scenario.edge_fraction =
        name == "scenario1_50pct" ? 0.50 : (name == "scenario1_15pct" ? 0.15 : 0.03);
    return cfg;
  }

  for (const char* scen : {"scenario2", "scenario3"}) {
    const Allocation alloc =
        std::string(scen) == "scenario2" ? Allocation::Zipf : Allocation::Uniform;
    for (const char* algo : {"a2a", "shtl"}) {
      const ProtocolKind protocol =
          std::string(algo) == "a2a" ? ProtocolKind::A2AHTL : ProtocolKind::SHTL;
      for (const char* tech : {"4g", "wifi"}) {
        const Tech t = std::string(tech) == "4g" ? Tech::FourG : Tech::Ieee80211g;
        const std::string stem = std::string(scen) + "_" + algo + "_" + tech;
        if (name == stem) return no_edge_preset(protocol, t, alloc, false);
        if (name == stem + "_aggr") return no_edge_preset(protocol, t, alloc, true);
      }
    }
  }

  for (const char* prefix : {"complexity", "complexity_uniform"}) {
    const Allocation alloc =
        std::string(prefix) == "complexity" ? Allocation::Zipf : Allocation::Uniform;
    for (const char* algo : {"a2a", "shtl"}) {
      const ProtocolKind protocol =
          std::string(algo) == "a2a" ? ProtocolKind::A2AHTL : ProtocolKind::SHTL;
      for (int n : {2, 5, 10}) {
        if (name == std::string(prefix) + "_" + algo + "_n" + std::to_string(n)) {
          return no_edge_preset(protocol, Tech::FourG, alloc, false, n);
        }
      }
    }
  }
  throw ConfigError("unknown preset: " + name);
}

void apply_key_value(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "scenario.windows") {
    cfg.scenario.windows = static_cast<int>(parse_int(key, value));
    if (cfg.scenario.windows < 1) throw ConfigError("scenario.windows must be >= 1");
  } else if (key == "scenario.obs_per_window") {
    cfg.scenario.obs_per_window = static_cast<int>(parse_int(key, value));
    if (cfg.scenario.obs_per_window < 1) throw ConfigError("scenario.obs_per_window must be >= 1");
  } else if (key == "scenario.lambda") {
    cfg.scenario.lambda = parse_double(key, value);
    if (cfg.scenario.lambda <= 0.0) throw ConfigError("scenario.lambda must be > 0");
  } else if (key == "scenario.allocation") {
    if (value == "zipf") {
      cfg.scenario.allocation = Allocation::Zipf;
    } else if (value == "uniform") {
      cfg.scenario.allocation = Allocation::Uniform;
    } else {
      throw ConfigError("scenario.allocation must be zipf or uniform, got: " + value);
    }
  } else if (key == "scenario.zipf_alpha") {
    cfg.scenario.zipf_alpha = parse_double(key, value);
    if (cfg.scenario.zipf_alpha <= 0.0) throw ConfigError("scenario.zipf_alpha must be > 0");
  } else if (key == "scenario.edge_fraction") {
    cfg.scenario.edge_fraction = parse_double(key, value);
    if (cfg.scenario.edge_fraction < 0.0 || cfg.scenario.edge_fraction > 1.0) {
      throw ConfigError("scenario.edge_fraction must be in [0, 1]");
    }
  } else if (key == "scenario.aggregation") {
    cfg.scenario.aggregation_enabled = parse_bool(key, value);
  } else if (key == "scenario.protocol") {
    if (value == "edge_only") {
      cfg.scenario.protocol = ProtocolKind::EdgeOnly;
    } else if (value == "a2ahtl") {
      cfg.scenario.protocol = ProtocolKind::A2AHTL;
    } else if (value == "shtl") {
      cfg.scenario.protocol = ProtocolKind::SHTL;
    } else {
      throw ConfigError("scenario.protocol must be edge_only, a2ahtl or shtl, got: " + value);
    }
  } else if (key == "scenario.learning_tech") {
    const Tech t = tech_from_name(value);
    if (t != Tech::FourG && t != Tech::Ieee80211g) {
      throw ConfigError("scenario.learning_tech must be 4g or wifi");
    }
    cfg.scenario.learning_tech = t;
  } else if (key == "scenario.gtl_per_class_sample") {
    cfg.scenario.gtl_per_class_sample = static_cast<int>(parse_int(key, value));
    if (cfg.scenario.gtl_per_class_sample < 0) {
      throw ConfigError("scenario.gtl_per_class_sample must be >= 0");
    }
  } else if (key == "base.lambda_svm") {
    cfg.base.lambda_svm = parse_double(key, value);
    if (cfg.base.lambda_svm <= 0.0) throw ConfigError("base.lambda_svm must be > 0");
  } else if (key == "base.epochs") {
    cfg.base.epochs = static_cast<int>(parse_int(key, value));
    if (cfg.base.epochs < 1) throw ConfigError("base.epochs must be >= 1");
  } else if (key == "gtl.lambda") {
    cfg.gtl.lambda_tl = parse_double(key, value);
    if (cfg.gtl.lambda_tl <= 0.0) throw ConfigError("gtl.lambda must be > 0");
  } else if (key == "gtl.budget") {
    cfg.gtl.budget = static_cast<int>(parse_int(key, value));
  } else if (key == "dataset.path") {
    cfg.dataset_path = value;
  } else if (key == "dataset.train_fraction") {
    cfg.train_fraction = parse_double(key, value);
    if (!(cfg.train_fraction > 0.0 && cfg.train_fraction < 1.0)) {
      throw ConfigError("dataset.train_fraction must be in (0, 1)");
    }
  } else if (key == "dataset.balance_total") {
    cfg.balance_total = static_cast<int>(parse_int(key, value));
    if (cfg.balance_total < 1) throw ConfigError("dataset.balance_total must be >= 1");
  } else if (key == "run.seed") {
    cfg.seed = static_cast<std::uint64_t>(parse_int(key, value));
  } else if (key == "run.replications") {
    cfg.replications = static_cast<int>(parse_int(key, value));
    if (cfg.replications < 1) throw ConfigError("run.replications must be >= 1");
  } else if (key == "run.emit_messages") {
    cfg.emit_messages = parse_bool(key, value);
  } else if (key == "output.dir") {
    cfg.output_dir = value;
  } else {
    throw ConfigError("unknown configuration key: " + key);
  }
}

void apply_config_file(ExperimentConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open configuration file: " + path);
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": expected key = value");
    }
    apply_key_value(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

}  // namespace htledge
