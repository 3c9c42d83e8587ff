#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace htledge {

using Rng = std::mt19937_64;

/// Raised for malformed configuration (unknown key, bad value, missing preset).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised for filesystem problems (missing dataset, unwritable output).
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised for malformed input data (bad CSV line, label out of range).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Deterministic seed derivation: independent streams for (stream a, index b).
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(a) ^ splitmix64(b + 0x517cc1b727220a95ULL));
}

}  // namespace htledge
