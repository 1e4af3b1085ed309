#pragma once

// JSON reports for solver runs and probability checks.

#include <cstdint>
#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "unshuffle/monte_carlo.hpp"
#include "unshuffle/unshuffle2.hpp"
#include "unshuffle/unshuffle_m.hpp"

namespace unshuffle {

struct Report {
  std::string command;
  nlohmann::json params = nlohmann::json::object();
  nlohmann::json result = nlohmann::json::object();
  nlohmann::json diagnostics = nlohmann::json::object();
  bool success = false;
  std::uint64_t seed = 0;

  nlohmann::json to_json() const;
  static Report from_json(const nlohmann::json& j);
  bool operator==(const Report&) const = default;
};

void write_report(const Report& report, const std::filesystem::path& path);
Report read_report(const std::filesystem::path& path);

nlohmann::json to_json(const ProbReport& report);
ProbReport prob_report_from_json(const nlohmann::json& j);

/// Per-round offsets, shifts, boundaries and consensus sizes.
nlohmann::json trace_to_json(const MUnshuffleResult& result);
/// M-hat, lengths, converged flag and 1-based per-column permutations.
nlohmann::json summary_to_json(const MUnshuffleResult& result);
/// 1-based n_hat and noise loci, L1 estimates, alignment score.
nlohmann::json summary_to_json(const TwoUnshuffleResult& result);

}  // namespace unshuffle
