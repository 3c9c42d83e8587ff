#include "htledge/protocol.hpp"

#include <algorithm>
#include <stdexcept>

namespace htledge {

namespace {

constexpr int kSensorId = -1;

void emit(WindowResult& res, MessageRecord rec) {
  charge(res.delta, rec);
  res.traffic_bits += rec.payload.bits;
  res.messages.push_back(rec);
}

void merge_into(WindowResult& dst, WindowResult&& src) {
  dst.model = std::move(src.model);
  dst.delta += src.delta;
  dst.participants = src.participants;
  dst.traffic_bits += src.traffic_bits;
  dst.messages.insert(dst.messages.end(), std::make_move_iterator(src.messages.begin()),
                      std::make_move_iterator(src.messages.end()));
}

struct Participant {
  const Collector* node;
  int slot;  // position in the participant list, used for tie-breaks and seeds
};

std::vector<Participant> participants_of(const std::vector<Collector>& collectors) {
  std::vector<Participant> out;
  for (const auto& c : collectors) {
    if (!c.local.empty()) out.push_back({&c, static_cast<int>(out.size())});
  }
  return out;
}

bool relayed_between(Tech tech, const Collector& a, const Collector& b, int ap_id) {
  if (tech != Tech::Ieee80211g || ap_id < 0) return false;
  const bool a_is_ap = a.kind == NodeKind::Mule && a.id == ap_id;
  const bool b_is_ap = b.kind == NodeKind::Mule && b.id == ap_id;
  return a.kind == NodeKind::Mule && b.kind == NodeKind::Mule && !a_is_ap && !b_is_ap;
}

void charge_migrations(WindowResult& res, const std::vector<Migration>& migrations,
                       Tech tech, int ap_id, int window_index) {
  for (const auto& mig : migrations) {
    MessageRecord rec;
    rec.window_index = window_index;
    rec.src_id = mig.src;
    rec.src_kind = NodeKind::Mule;
    rec.dst_id = mig.dst;
    rec.dst_kind = NodeKind::Mule;
    rec.payload = {mig.bits, PayloadKind::Observations, mig.observations};
    rec.tech = tech;
    rec.relayed = tech == Tech::Ieee80211g && ap_id >= 0 && mig.src != ap_id && mig.dst != ap_id;
    emit(res, rec);
  }
}

MessageRecord collector_message(int window_index, const Collector& src, const Collector& dst,
                                Payload payload, Tech tech, int ap_id) {
  MessageRecord rec;
  rec.window_index = window_index;
  rec.src_id = src.id;
  rec.src_kind = src.kind;
  rec.dst_id = dst.id;
  rec.dst_kind = dst.kind;
  rec.payload = payload;
  rec.tech = tech;
  rec.relayed = relayed_between(tech, src, dst, ap_id);
  return rec;
}

/// Access point for the wifi star: the designated hub when it is a mule,
/// otherwise the lowest-id participating mule.
int access_point_id(const std::vector<Participant>& parts, int hub_slot) {
  const Collector& hub = *parts[static_cast<std::size_t>(hub_slot)].node;
  if (hub.kind == NodeKind::Mule) return hub.id;
  int best = -1;
  for (const auto& p : parts) {
    if (p.node->kind == NodeKind::Mule && (best < 0 || p.node->id < best)) best = p.node->id;
  }
  return best;
}

std::vector<LinearModel> train_local_models(const std::vector<Participant>& parts,
                                            const BaseTrainerConfig& base,
                                            std::uint64_t window_seed) {
  std::vector<LinearModel> models;
  models.reserve(parts.size());
  for (const auto& p : parts) {
    BaseTrainerConfig cfg = base;
    cfg.seed = mix_seed(window_seed, 0xB000u + static_cast<std::uint64_t>(p.slot));
    models.push_back(train_base(p.node->local, cfg));
  }
  return models;
}

std::vector<LinearModel> with_previous(const std::vector<LinearModel>& base_models,
                                       const WindowState& state) {
  std::vector<LinearModel> sources = base_models;
  if (state.previous_global_model) sources.push_back(*state.previous_global_model);
  return sources;
}

}  // namespace

WindowResult run_edge_only(WindowState& state, const Dataset& batch, const LearningConfigs& cfgs,
                           std::uint64_t window_seed) {
  if (batch.empty()) throw std::domain_error("run_edge_only: empty batch");
  WindowResult res;

  MessageRecord rec;
  rec.window_index = state.window_index;
  rec.src_id = kSensorId;
  rec.src_kind = NodeKind::Sensor;
  rec.dst_id = 0;
  rec.dst_kind = NodeKind::Edge;
  rec.payload = {observation_bits(static_cast<int>(batch.dim())) * batch.size(),
                 PayloadKind::Observations, static_cast<int>(batch.size())};
  rec.tech = Tech::NbIot;
  emit(res, rec);

  state.edge_accumulated = concat(state.edge_accumulated, batch);
  BaseTrainerConfig cfg = cfgs.base;
  cfg.seed = mix_seed(window_seed, 0xED6Eu);
  res.model = train_base(state.edge_accumulated, cfg);
  res.participants = 1;
  return res;
}

WindowResult run_a2ahtl(WindowState& state, const std::vector<Collector>& collectors,
                        const std::vector<Migration>& migrations, const LearningConfigs& cfgs,
                        Tech learning_tech, std::uint64_t window_seed) {
  const auto parts = participants_of(collectors);
  if (parts.empty()) throw ConfigError("run_a2ahtl: zero participants");
  const int w = state.window_index;
  WindowResult res;

  // The aggregator doubles as the wifi access point.
  int agg_slot = 0;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (parts[i].node->id < parts[static_cast<std::size_t>(agg_slot)].node->id) {
      agg_slot = static_cast<int>(i);
    }
  }
  const int ap_id = access_point_id(parts, agg_slot);
  charge_migrations(res, migrations, learning_tech, ap_id, w);

  const auto base_models = train_local_models(parts, cfgs.base, window_seed);
  const std::int64_t mbits = model_bits(base_models.front());

  // Step 1: every participant sends its base model to every other one.
  for (const auto& src : parts) {
    for (const auto& dst : parts) {
      if (src.slot == dst.slot) continue;
      emit(res, collector_message(w, *src.node, *dst.node, {mbits, PayloadKind::Model, 0},
                                  learning_tech, ap_id));
    }
  }

  // Step 2: local re-training against all base hypotheses plus the previous
  // global model.
  const auto sources = with_previous(base_models, state);
  std::vector<LinearModel> refined;
  refined.reserve(parts.size());
  for (const auto& p : parts) {
    GreedyTLConfig gtl = cfgs.gtl;
    gtl.seed = mix_seed(window_seed, 0x67000u + static_cast<std::uint64_t>(p.slot));
    refined.push_back(greedy_tl(p.node->local, sources, gtl));
  }

  // Step 3: refined models converge on the aggregator.
  for (const auto& p : parts) {
    if (p.slot == agg_slot) continue;
    emit(res, collector_message(w, *p.node, *parts[static_cast<std::size_t>(agg_slot)].node,
                                {mbits, PayloadKind::Model, 0}, learning_tech, ap_id));
  }

  // Step 4: the aggregator averages; partial models are discarded.
  res.model = average_models(refined);
  res.participants = static_cast<int>(parts.size());
  return res;
}

WindowResult run_shtl(WindowState& state, const std::vector<Collector>& collectors,
                      const std::vector<Migration>& migrations, const LearningConfigs& cfgs,
                      Tech learning_tech, std::uint64_t window_seed) {
  const auto parts = participants_of(collectors);
  if (parts.empty()) throw ConfigError("run_shtl: zero participants");
  const int w = state.window_index;
  WindowResult res;

  const int k = parts.front().node->local.num_classes;
  int center_slot = 0;
  double best_h = -1.0;
  for (const auto& p : parts) {
    const double h = entropy(p.node->local, k);
    if (h > best_h) {  // strict comparison: ties keep the earliest participant
      best_h = h;
      center_slot = p.slot;
    }
  }
  const Collector& center = *parts[static_cast<std::size_t>(center_slot)].node;
  const int ap_id = access_point_id(parts, center_slot);

  charge_migrations(res, migrations, learning_tech, ap_id, w);

  const auto base_models = train_local_models(parts, cfgs.base, window_seed);
  const std::int64_t mbits = model_bits(base_models.front());

  // Step 1: entropy indexes are exchanged all-to-all, then the winner
  // announces itself.
  for (const auto& src : parts) {
    for (const auto& dst : parts) {
      if (src.slot == dst.slot) continue;
      emit(res, collector_message(w, *src.node, *dst.node, {64, PayloadKind::ScalarIndex, 0},
                                  learning_tech, ap_id));
    }
  }
  for (const auto& dst : parts) {
    if (dst.slot == center_slot) continue;
    emit(res, collector_message(w, center, *dst.node, {64, PayloadKind::CenterId, 0},
                                learning_tech, ap_id));
  }

  // Step 2: base models flow to the center.
  for (const auto& p : parts) {
    if (p.slot == center_slot) continue;
    emit(res, collector_message(w, *p.node, center, {mbits, PayloadKind::Model, 0}, learning_tech,
                                ap_id));
  }

  // Step 3: only the center re-trains.
  GreedyTLConfig gtl = cfgs.gtl;
  gtl.seed = mix_seed(window_seed, 0x67000u + static_cast<std::uint64_t>(center_slot));
  res.model = greedy_tl(center.local, with_previous(base_models, state), gtl);
  res.participants = static_cast<int>(parts.size());
  return res;
}

WindowResult run_no_edge(WindowState& state, const Dataset& batch, const ScenarioConfig& sc,
                         const LearningConfigs& cfgs, Rng& rng, std::uint64_t window_seed) {
  if (batch.empty()) throw std::domain_error("run_no_edge: empty batch");
  WindowResult res;
  const int n_mules = draw_mule_count(rng, sc.lambda);
  auto partitions = allocate(batch, n_mules, sc.allocation, sc.zipf_alpha, rng);

  const auto obits = observation_bits(static_cast<int>(batch.dim()));
  for (int i = 0; i < n_mules; ++i) {
    const auto& part = partitions[static_cast<std::size_t>(i)];
    if (part.empty()) continue;
    MessageRecord rec;
    rec.window_index = state.window_index;
    rec.src_id = kSensorId;
    rec.src_kind = NodeKind::Sensor;
    rec.dst_id = i;
    rec.dst_kind = NodeKind::Mule;
    rec.payload = {obits * part.size(), PayloadKind::Observations, static_cast<int>(part.size())};
    rec.tech = Tech::Ieee802154;
    emit(res, rec);
  }

  std::vector<Migration> migrations;
  if (sc.aggregation_enabled) {
    partitions = aggregation_heuristic(
        partitions, model_bits(batch.num_classes, static_cast<int>(batch.dim())), &migrations);
  }

  std::vector<Collector> collectors;
  collectors.reserve(partitions.size());
  for (int i = 0; i < n_mules; ++i) {
    collectors.push_back({i, NodeKind::Mule, std::move(partitions[static_cast<std::size_t>(i)])});
  }

  WindowResult learn =
      sc.protocol == ProtocolKind::A2AHTL
          ? run_a2ahtl(state, collectors, migrations, cfgs, sc.learning_tech, window_seed)
          : run_shtl(state, collectors, migrations, cfgs, sc.learning_tech, window_seed);
  merge_into(res, std::move(learn));
  return res;
}

WindowResult run_partial_edge(WindowState& state, const Dataset& batch, double edge_fraction,
                              const ScenarioConfig& sc, const LearningConfigs& cfgs, Rng& rng,
                              std::uint64_t window_seed) {
  if (batch.empty()) throw std::domain_error("run_partial_edge: empty batch");
  WindowResult res;
  auto [edge_share, mule_share] = route_edge_fraction(batch, edge_fraction, rng);

  // Mule population: a zero draw sends the whole window to the edge instead.
  std::poisson_distribution<int> poisson(sc.lambda);
  const int n_mules = poisson(rng);
  std::vector<Dataset> partitions;
  if (n_mules == 0) {
    edge_share = concat(edge_share, mule_share);
    mule_share = Dataset{};
  } else if (!mule_share.empty()) {
    partitions = allocate(mule_share, n_mules, sc.allocation, sc.zipf_alpha, rng);
  } else {
    partitions.resize(static_cast<std::size_t>(n_mules));
  }

  const auto obits = observation_bits(static_cast<int>(batch.dim()));
  if (!edge_share.empty()) {
    MessageRecord rec;
    rec.window_index = state.window_index;
    rec.src_id = kSensorId;
    rec.src_kind = NodeKind::Sensor;
    rec.dst_id = 0;
    rec.dst_kind = NodeKind::Edge;
    rec.payload = {obits * edge_share.size(), PayloadKind::Observations,
                   static_cast<int>(edge_share.size())};
    rec.tech = Tech::NbIot;
    emit(res, rec);
  }
  for (std::size_t i = 0; i < partitions.size(); ++i) {
    if (partitions[i].empty()) continue;
    MessageRecord rec;
    rec.window_index = state.window_index;
    rec.src_id = kSensorId;
    rec.src_kind = NodeKind::Sensor;
    rec.dst_id = static_cast<int>(i);
    rec.dst_kind = NodeKind::Mule;
    rec.payload = {obits * partitions[i].size(), PayloadKind::Observations,
                   static_cast<int>(partitions[i].size())};
    rec.tech = Tech::Ieee802154;
    emit(res, rec);
  }

  state.edge_accumulated = concat(state.edge_accumulated, edge_share);

  std::vector<Collector> collectors;
  for (std::size_t i = 0; i < partitions.size(); ++i) {
    collectors.push_back({static_cast<int>(i), NodeKind::Mule, std::move(partitions[i])});
  }
  collectors.push_back({0, NodeKind::Edge, state.edge_accumulated});

  WindowResult learn = run_shtl(state, collectors, {}, cfgs, sc.learning_tech, window_seed);
  merge_into(res, std::move(learn));
  return res;
}

}  // namespace htledge
