#include "htledge/energy.hpp"

#include <stdexcept>

namespace htledge {

namespace {

// Table of nominal radio profiles (powers in mW, rates in bps).
constexpr WirelessTech kCatalog[] = {
    {"4G", 2100.0, 2100.0, 75e6, 35e6},
    {"NB-IoT", 199.0, 199.52, 0.2e6, 0.2e6},
    {"IEEE 802.15.4", 3.0, 3.0, 0.12e6, 0.12e6},
    {"IEEE 802.11g", 1080.0, 740.0, 48e6, 48e6},
};

bool is_battery(NodeKind k) { return k != NodeKind::Edge; }

}  // namespace

const WirelessTech& tech_spec(Tech t) {
  switch (t) {
    case Tech::FourG: return kCatalog[0];
    case Tech::NbIot: return kCatalog[1];
    case Tech::Ieee802154: return kCatalog[2];
    case Tech::Ieee80211g: return kCatalog[3];
  }
  throw ConfigError("unknown wireless technology");
}

Tech tech_from_name(const std::string& name) {
  if (name == "4g" || name == "4G") return Tech::FourG;
  if (name == "nbiot" || name == "nb-iot" || name == "NB-IoT") return Tech::NbIot;
  if (name == "802.15.4" || name == "zigbee") return Tech::Ieee802154;
  if (name == "wifi" || name == "802.11g") return Tech::Ieee80211g;
  throw ConfigError("unknown wireless technology: " + name);
}

double transmission_time_s(std::int64_t bits, double rate_bps) {
  if (rate_bps <= 0.0) throw std::domain_error("transmission_time_s: rate must be > 0");
  return static_cast<double>(bits) / rate_bps;
}

double transmission_energy_mj(std::int64_t bits, Tech t, Endpoint e, Link l) {
  if (bits < 0) throw std::domain_error("transmission_energy_mj: negative payload");
  const WirelessTech& spec = tech_spec(t);
  const double power_mw = e == Endpoint::Tx ? spec.tx_mw : spec.rx_mw;
  const double rate = l == Link::Uplink ? spec.uplink_bps : spec.downlink_bps;
  return power_mw * transmission_time_s(bits, rate);  // mW * s = mJ
}

std::int64_t observation_bits(int feature_dim) {
  if (feature_dim < 1) throw std::domain_error("observation_bits: feature_dim must be >= 1");
  return static_cast<std::int64_t>(feature_dim) * 64;
}

std::int64_t model_bits(int num_classes, int feature_dim) {
  return static_cast<std::int64_t>(num_classes) * (feature_dim + 1) * 64 + 128;
}

std::int64_t model_bits(const LinearModel& m) {
  return model_bits(m.num_classes(), m.feature_dim());
}

ChargeResult charge(EnergyLedger& ledger, const MessageRecord& rec) {
  ChargeResult cost;
  const std::int64_t bits = rec.payload.bits;

  if (rec.src_kind == NodeKind::Sensor) {
    // Data collection: the sensor always pays for its transmission; the mule
    // pays to receive, the edge server does not.
    cost.tx_mj = transmission_energy_mj(bits, rec.tech, Endpoint::Tx, Link::Uplink);
    if (rec.dst_kind == NodeKind::Mule) {
      cost.rx_mj = transmission_energy_mj(bits, rec.tech, Endpoint::Rx, Link::Downlink);
      ledger.collection_short_mj += cost.tx_mj + cost.rx_mj;
    } else {
      ledger.collection_long_mj += cost.tx_mj;
    }
    return cost;
  }

  // Learning traffic between data collectors.
  if (is_battery(rec.src_kind)) {
    cost.tx_mj += transmission_energy_mj(bits, rec.tech, Endpoint::Tx, Link::Uplink);
  }
  if (is_battery(rec.dst_kind)) {
    cost.rx_mj += transmission_energy_mj(bits, rec.tech, Endpoint::Rx, Link::Downlink);
  }
  if (rec.relayed) {
    // Star relay: the access point (a mule) receives and forwards.
    cost.rx_mj += transmission_energy_mj(bits, rec.tech, Endpoint::Rx, Link::Downlink);
    cost.tx_mj += transmission_energy_mj(bits, rec.tech, Endpoint::Tx, Link::Uplink);
  }
  ledger.learning_tx_mj += cost.tx_mj;
  ledger.learning_rx_mj += cost.rx_mj;
  return cost;
}

}  // namespace htledge
