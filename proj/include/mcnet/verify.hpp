#pragma once

#include "mcnet/io.hpp"
#include "mcnet/random.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace mcnet {

struct VerifyConfig {
  std::string suite = "all";  // entropy | lemmas | bounds | embedding | all
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  // Fixed instance to check instead of random ones.
  std::optional<Instance> instance;
};

struct VerifyResult {
  Json report;
  std::size_t violations = 0;
  bool ok() const { return violations == 0; }
};

// Deterministic for a fixed config: trial t of suite s draws from
// Rng(derive_seed(seed, t * 16 + s)).
VerifyResult run_verify(const VerifyConfig& config);

}  // namespace mcnet
