#include "unshuffle/report.hpp"

#include <vector>

#include "unshuffle/corpus_io.hpp"
#include "unshuffle/error.hpp"

namespace unshuffle {

using nlohmann::json;

namespace {

std::vector<std::size_t> one_based(const std::vector<std::size_t>& v) {
  std::vector<std::size_t> out;
  out.reserve(v.size());
  for (std::size_t x : v) out.push_back(x + 1);
  return out;
}

}  // namespace

json Report::to_json() const {
  return {{"command", command}, {"params", params},   {"result", result},
          {"diagnostics", diagnostics}, {"success", success}, {"seed", seed}};
}

Report Report::from_json(const json& j) {
  Report r;
  try {
    r.command = j.at("command").get<std::string>();
    r.params = j.at("params");
    r.result = j.at("result");
    r.diagnostics = j.at("diagnostics");
    r.success = j.at("success").get<bool>();
    r.seed = j.at("seed").get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw StructuralError(std::string("malformed report: ") + e.what());
  }
  return r;
}

void write_report(const Report& report, const std::filesystem::path& path) {
  write_file_atomic(path, report.to_json().dump(2) + "\n");
}

Report read_report(const std::filesystem::path& path) {
  try {
    return Report::from_json(json::parse(read_file(path)));
  } catch (const json::parse_error& e) {
    throw StructuralError(path.string() + ": " + e.what());
  }
}

json to_json(const ProbReport& r) {
  return {{"event", r.event},         {"closed_form", r.closed_form}, {"mc_estimate", r.mc_estimate},
          {"mc_stderr", r.mc_stderr}, {"trials", r.trials},           {"hits", r.hits},
          {"agrees", r.agrees},       {"seed", r.seed}};
}

ProbReport prob_report_from_json(const json& j) {
  ProbReport r;
  r.event = j.at("event").get<std::string>();
  r.closed_form = j.at("closed_form").get<double>();
  r.mc_estimate = j.at("mc_estimate").get<double>();
  r.mc_stderr = j.at("mc_stderr").get<double>();
  r.trials = j.at("trials").get<std::size_t>();
  r.hits = j.at("hits").get<std::size_t>();
  r.agrees = j.at("agrees").get<bool>();
  r.seed = j.at("seed").get<std::uint64_t>();
  return r;
}

json trace_to_json(const MUnshuffleResult& result) {
  json rounds = json::array();
  for (const auto& r : result.iteration_trace) {
    rounds.push_back({{"offset", r.offset},
                      {"shifts", r.shifts},
                      {"boundary", r.boundary},
                      {"consensus_rows", r.consensus_rows}});
  }
  return rounds;
}

json summary_to_json(const MUnshuffleResult& result) {
  json perms = json::array();
  for (const auto& p : result.column_perms) perms.push_back(p.one_line());
  return {{"m_hat", result.m_hat},
          {"lengths", result.lengths_hat.lengths()},
          {"converged", result.converged},
          {"residual_rows", result.residual_rows},
          {"column_perms", perms}};
}

json summary_to_json(const TwoUnshuffleResult& result) {
  return {{"n_hat", one_based(result.n_hat)},
          {"l1_hat", result.l1_hat},
          {"l2_hat", result.l2_hat},
          {"pi_hat", result.pi_hat.one_line()},
          {"noise_loci_hat", one_based(result.noise_loci_hat)},
          {"score", result.score}};
}

}  // namespace unshuffle
