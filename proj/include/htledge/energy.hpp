#pragma once

#include <cstdint>
#include <string>

#include "htledge/linear_model.hpp"

namespace htledge {

enum class Tech { FourG, NbIot, Ieee802154, Ieee80211g };

/// Nominal radio profile: powers in mW, link rates in bits per second.
struct WirelessTech {
  const char* name;
  double tx_mw;
  double rx_mw;
  double uplink_bps;
  double downlink_bps;
};

const WirelessTech& tech_spec(Tech t);
Tech tech_from_name(const std::string& name);

enum class NodeKind { Sensor, Mule, Edge };
enum class Endpoint { Tx, Rx };
enum class Link { Uplink, Downlink };

enum class PayloadKind { Observations, Model, ScalarIndex, CenterId };

struct Payload {
  std::int64_t bits = 0;
  PayloadKind kind = PayloadKind::Observations;
  int observation_count = 0;  // meaningful for Observations payloads
};

/// One logical transmission. `relayed` marks a wifi-star two-hop message
/// (source -> access point -> destination); the access point is a mule and
/// pays for the extra hop.
struct MessageRecord {
  int window_index = 0;
  int src_id = 0;
  NodeKind src_kind = NodeKind::Mule;
  int dst_id = 0;
  NodeKind dst_kind = NodeKind::Mule;
  Payload payload;
  Tech tech = Tech::FourG;
  bool relayed = false;
};

/// Accumulated millijoules by accounting category. Only battery-powered
/// endpoints (sensors, mules) are ever charged; the edge server is not.
struct EnergyLedger {
  double collection_short_mj = 0.0;  // sensor -> mule offload (short range)
  double collection_long_mj = 0.0;   // sensor -> edge offload (long range)
  double learning_tx_mj = 0.0;
  double learning_rx_mj = 0.0;

  double session_mj() const {
    return collection_short_mj + collection_long_mj + learning_tx_mj + learning_rx_mj;
  }
  EnergyLedger& operator+=(const EnergyLedger& o) {
    collection_short_mj += o.collection_short_mj;
    collection_long_mj += o.collection_long_mj;
    learning_tx_mj += o.learning_tx_mj;
    learning_rx_mj += o.learning_rx_mj;
    return *this;
  }
};

/// Transmission duration in seconds: payload size over link rate.
double transmission_time_s(std::int64_t bits, double rate_bps);

/// Energy in millijoules: endpoint power (mW) times transmission time (s).
/// Battery transmitters use the uplink rate, battery receivers the downlink.
double transmission_energy_mj(std::int64_t bits, Tech t, Endpoint e, Link l);

/// Wire size of one observation: features as 64-bit reals, no framing.
std::int64_t observation_bits(int feature_dim);

/// Wire size of a model: K x (d+1) 64-bit weights plus the 16-byte header.
std::int64_t model_bits(int num_classes, int feature_dim);
std::int64_t model_bits(const LinearModel& m);

/// Battery-side cost of one record, split by endpoint role.
struct ChargeResult {
  double tx_mj = 0.0;
  double rx_mj = 0.0;
};

/// Applies the accounting policy for one message and updates the ledger:
/// sensor->mule charges both endpoints to collection_short; sensor->edge
/// charges the sensor only to collection_long; everything else is learning
/// traffic where each mule endpoint pays its own side (edge endpoints free)
/// and a relayed wifi message adds the access point's rx and tx.
ChargeResult charge(EnergyLedger& ledger, const MessageRecord& rec);

}  // namespace htledge
