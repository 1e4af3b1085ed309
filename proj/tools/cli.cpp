#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "unshuffle/corpus_io.hpp"
#include "unshuffle/error.hpp"
#include "unshuffle/monte_carlo.hpp"
#include "unshuffle/partition.hpp"
#include "unshuffle/report.hpp"
#include "unshuffle/scoring.hpp"
#include "unshuffle/shuffle_model.hpp"
#include "unshuffle/sync_objective.hpp"
#include "unshuffle/unshuffle2.hpp"
#include "unshuffle/unshuffle_m.hpp"

namespace unshuffle::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::uint64_t seed = 0;
  std::optional<std::size_t> record_len;
  std::optional<unsigned> word_bytes;
  std::string out;
  std::string json_report;
  std::string layout = "auto";
};

CorpusLayout parse_layout(const std::string& s) {
  if (s == "file") return CorpusLayout::File;
  if (s == "dir") return CorpusLayout::Directory;
  return CorpusLayout::Auto;
}

CorpusSpec input_spec(const Globals& g, const std::string& path) {
  if (!g.record_len) throw UsageError("--record-len is required to read " + path);
  CorpusSpec spec;
  spec.source = path;
  spec.record_len = *g.record_len;
  spec.word_bytes = g.word_bytes.value_or(1);
  spec.layout = parse_layout(g.layout);
  return spec;
}

unsigned word_bytes_for(std::uint64_t q) {
  if (q <= 256) return 1;
  if (q <= 65536) return 2;
  return 4;
}

std::vector<std::size_t> one_based(const std::vector<std::size_t>& v) {
  std::vector<std::size_t> out;
  for (std::size_t x : v) out.push_back(x + 1);
  return out;
}

Permutation parse_one_line(const std::string& text) {
  std::vector<std::int64_t> images;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      images.push_back(std::stoll(item));
    } catch (const std::exception&) {
      throw UsageError("bad permutation entry '" + item + "' in " + text);
    }
  }
  return Permutation::from_one_line(images);
}

// "2,1:24" -> ((2,1), 24)
std::pair<Permutation, std::size_t> parse_perm_count(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("--perm expects SIGMA:COUNT, got " + text);
  std::size_t count = 0;
  try {
    count = std::stoull(text.substr(colon + 1));
  } catch (const std::exception&) {
    throw UsageError("bad count in --perm " + text);
  }
  return {parse_one_line(text.substr(0, colon)), count};
}

int emit(const Report& report, const Globals& g, std::ostream& out) {
  if (!g.json_report.empty()) {
    write_report(report, g.json_report);
    out << report.command << ": " << (report.success ? "success" : "failure") << " (report "
        << g.json_report << ")\n";
  } else {
    out << report.to_json().dump(2) << "\n";
  }
  return report.success ? 0 : 1;
}

// gen ----------------------------------------------------------------------

struct GenArgs {
  std::uint64_t q = 0;
  std::vector<std::size_t> lengths;
  std::optional<std::size_t> columns;
  double lambda = 0.0;
  std::optional<double> nu;
  std::vector<std::size_t> multiplicities;
  std::vector<std::string> perms;
  bool all_perms = false;
  bool restricted_prefix = false;
  bool distinguished_prefix = false;
  std::string truth;
};

ModelParams gen_params(const GenArgs& a, std::uint64_t seed) {
  ModelParams p;
  p.q = a.q;
  p.blocks = BlockStructure(a.lengths);
  p.noise_count = count_from_fraction(a.lambda, p.blocks.total());
  p.restricted_prefix = a.restricted_prefix;
  p.distinguished_prefix = a.distinguished_prefix;
  p.seed = seed;

  const int choices = int(a.nu.has_value()) + int(!a.multiplicities.empty()) +
                      int(!a.perms.empty()) + int(a.all_perms);
  if (choices > 1) throw UsageError("give only one of --nu, --multiplicities, --perm, --all-perms");

  if (a.nu) {
    if (!a.columns) throw UsageError("--nu needs --n");
    p.columns = *a.columns;
    p.shuffle = TwoBlockShuffle{count_from_fraction(*a.nu, p.columns)};
  } else if (!a.multiplicities.empty()) {
    RandomDistinctShuffle s{a.multiplicities};
    std::size_t total = 0;
    for (std::size_t c : s.multiplicities) total += c;
    p.columns = a.columns.value_or(total);
    p.shuffle = s;
  } else if (!a.perms.empty()) {
    ExplicitShuffle s;
    std::size_t total = 0;
    for (const auto& text : a.perms) {
      s.counts.push_back(parse_perm_count(text));
      total += s.counts.back().second;
    }
    p.columns = a.columns.value_or(total);
    p.shuffle = s;
  } else if (a.all_perms) {
    std::size_t f = 1;
    for (std::size_t i = 2; i <= a.lengths.size(); ++i) f *= i;
    p.columns = a.columns.value_or(f);
    p.shuffle = AllPermutationsShuffle{};
  } else if (a.lengths.size() == 1) {
    if (!a.columns) throw UsageError("--n is required");
    p.columns = *a.columns;
    p.shuffle = ExplicitShuffle{{{Permutation::identity(1), p.columns}}};
  } else {
    throw UsageError("choose a shuffle with --nu, --multiplicities, --perm or --all-perms");
  }
  p.validate();
  return p;
}

json params_to_json(const ModelParams& p) {
  json j{{"q", p.q},
         {"lengths", p.blocks.lengths()},
         {"n", p.columns},
         {"noise_count", p.noise_count},
         {"restricted_prefix", p.restricted_prefix},
         {"distinguished_prefix", p.distinguished_prefix}};
  if (const auto* two = std::get_if<TwoBlockShuffle>(&p.shuffle)) {
    j["shifted_columns"] = two->shifted;
  } else if (const auto* rd = std::get_if<RandomDistinctShuffle>(&p.shuffle)) {
    j["multiplicities"] = rd->multiplicities;
  } else if (const auto* ex = std::get_if<ExplicitShuffle>(&p.shuffle)) {
    json perms = json::array();
    for (const auto& [sigma, c] : ex->counts) perms.push_back({{"sigma", sigma.one_line()}, {"count", c}});
    j["perms"] = perms;
  } else {
    j["all_perms"] = true;
  }
  return j;
}

int run_gen(const GenArgs& a, const Globals& g, std::ostream& out) {
  if (g.out.empty()) throw UsageError("gen needs --out");
  const ModelParams params = gen_params(a, g.seed);
  const GeneratedCorpus generated = generate(params);

  CorpusSpec spec;
  spec.source = g.out;
  spec.record_len = params.blocks.total();
  spec.word_bytes = g.word_bytes.value_or(word_bytes_for(params.q));
  spec.layout = g.layout == "dir" ? CorpusLayout::Directory : CorpusLayout::File;
  if (g.record_len && *g.record_len != spec.record_len) {
    throw UsageError("--record-len disagrees with the block lengths");
  }
  write_corpus(generated.corpus, spec);
  const std::string truth_path = a.truth.empty() ? g.out + ".truth.json" : a.truth;
  write_truth(truth_path, TruthFile{params.q, g.seed, generated.truth});

  Report r;
  r.command = "gen";
  r.seed = g.seed;
  r.params = params_to_json(params);
  r.result = {{"corpus", g.out},
              {"truth", truth_path},
              {"rows", spec.record_len},
              {"columns", params.columns},
              {"word_bytes", spec.word_bytes}};
  r.success = true;
  return emit(r, g, out);
}

// analyze ------------------------------------------------------------------

int run_analyze(const std::string& input, const std::vector<std::size_t>& lengths,
                const Globals& g, std::ostream& out) {
  const Corpus corpus = load_corpus(input_spec(g, input));
  const auto profile = partition_profile(corpus);
  if (!g.out.empty()) write_file_atomic(g.out, profile_csv(profile));

  Report r;
  r.command = "analyze";
  r.seed = g.seed;
  r.params = {{"input", input}, {"rows", corpus.rows()}, {"columns", corpus.columns()}};
  const auto two = two_valued_rows(corpus);
  r.result = {{"max_partition_size", *std::max_element(profile.begin(), profile.end())},
              {"two_valued_rows", two.size()},
              {"profile", profile}};
  if (!g.out.empty()) r.result["profile_csv"] = g.out;
  if (corpus.columns() >= 2 && !two.empty()) {
    const auto side = estimate_n(corpus);
    std::size_t support = 0;
    for (const auto& t : two) {
      const auto& parts = t.partition.parts;
      if (parts.size() == 2 && parts[1] == side) ++support;
    }
    r.diagnostics["modal_bipartition_side"] = one_based(side);
    r.diagnostics["modal_bipartition_rows"] = support;
  }
  if (!lengths.empty()) {
    const SubsetSums sums = distinct_subset_sums(BlockStructure(lengths));
    r.diagnostics["distinct_subset_sums"] = sums.distinct;
    r.diagnostics["subset_sums"] = sums.sums;
  }
  r.success = true;
  return emit(r, g, out);
}

// unshuffle2 ---------------------------------------------------------------

void write_aligned(const Corpus& aligned, const std::string& path, const Globals& g) {
  if (path.empty()) return;
  CorpusSpec spec;
  spec.source = path;
  spec.record_len = aligned.rows();
  spec.word_bytes = g.word_bytes.value_or(word_bytes_for(aligned.alphabet()));
  spec.layout = g.layout == "dir" ? CorpusLayout::Directory : CorpusLayout::File;
  write_corpus(aligned, spec);
}

int run_unshuffle2(const std::string& input, const std::string& truth_path,
                   const std::string& aligned_out, const Globals& g, std::ostream& out) {
  const Corpus corpus = load_corpus(input_spec(g, input));
  Report r;
  r.command = "unshuffle2";
  r.seed = g.seed;
  r.params = {{"input", input}, {"rows", corpus.rows()}, {"columns", corpus.columns()}};
  try {
    const TwoUnshuffleResult result = unshuffle2(corpus);
    r.result = summary_to_json(result);
    r.diagnostics = {{"l0_size", result.l0_hat.size()}, {"l1set_size", result.l1set_hat.size()}};
    if (!truth_path.empty()) {
      const TruthFile truth = read_truth(truth_path);
      r.diagnostics["truth_recovered"] = exact_two_recovery(result, truth.truth);
    }
    write_aligned(result.aligned, aligned_out, g);
    if (!aligned_out.empty()) r.result["aligned"] = aligned_out;
    r.success = true;
  } catch (const NotIdentifiableError& e) {
    r.diagnostics["error"] = e.what();
    r.success = false;
  }
  return emit(r, g, out);
}

// unshuffle ----------------------------------------------------------------

struct AlignArgs {
  double weight_base = 2.0;
  std::size_t max_iters = 0;
  std::optional<std::size_t> tau;
  std::size_t ref_col = 1;
  bool no_consensus = false;
  bool no_wrap_bound = false;
  std::string truth;
  std::string aligned_out;
};

int run_unshuffle(const std::string& input, const AlignArgs& a, const Globals& g,
                  std::ostream& out) {
  const Corpus corpus = load_corpus(input_spec(g, input));
  if (a.ref_col == 0) throw UsageError("--ref-col is 1-based");
  AlignConfig cfg;
  cfg.weight_base = a.weight_base;
  cfg.max_iters = a.max_iters;
  cfg.structured_part_max = a.tau;
  cfg.reference_column = a.ref_col - 1;
  cfg.consensus_refine = !a.no_consensus;
  cfg.wrap_bound = !a.no_wrap_bound;

  Report r;
  r.command = "unshuffle";
  r.seed = g.seed;
  r.params = {{"input", input},
              {"rows", corpus.rows()},
              {"columns", corpus.columns()},
              {"weight_base", cfg.weight_base},
              {"max_iters", cfg.max_iters},
              {"structured_part_max", cfg.structured_max(corpus.columns())},
              {"reference_column", a.ref_col},
              {"consensus_refine", cfg.consensus_refine},
              {"wrap_bound", cfg.wrap_bound}};
  try {
    const MUnshuffleResult result = unshuffle_m(corpus, cfg);
    r.result = summary_to_json(result);
    r.diagnostics["rounds"] = trace_to_json(result);
    if (!a.truth.empty()) {
      const TruthFile truth = read_truth(a.truth);
      const auto frame = reconstruction_frame(result, truth.truth);
      r.diagnostics["perfect_reconstruction"] = frame.has_value();
      if (frame) r.diagnostics["frame"] = frame->one_line();
    }
    write_aligned(result.aligned, a.aligned_out, g);
    if (!a.aligned_out.empty()) r.result["aligned"] = a.aligned_out;
    r.success = result.converged;
  } catch (const AlignmentFailedError& e) {
    r.diagnostics["error"] = e.what();
    r.success = false;
  }
  return emit(r, g, out);
}

// verify-prob --------------------------------------------------------------

struct ProbArgs {
  std::string event;
  std::uint64_t q = 3;
  std::size_t columns = 20;
  double lambda = 0.5;
  double nu = 0.3;
  std::vector<std::size_t> lengths;
  std::size_t trials = 10000;
  bool distinguished = false;
};

int run_verify_prob(const ProbArgs& a, const Globals& g, std::ostream& out) {
  const auto event = parse_event(a.event);
  if (!event) throw UsageError("unknown event '" + a.event + "'");
  ModelParams p;
  if (*event == ProbEvent::PrefixPartitionIdentical) {
    const std::vector<std::size_t> lengths =
        a.lengths.empty() ? std::vector<std::size_t>{3, 5, 6, 7} : a.lengths;
    p.q = a.q;
    p.blocks = BlockStructure(lengths);
    std::size_t f = 1;
    for (std::size_t i = 2; i <= lengths.size(); ++i) f *= i;
    p.columns = f;
    p.shuffle = AllPermutationsShuffle{};
    p.noise_count = count_from_fraction(a.lambda, p.blocks.total() - p.blocks.count());
    p.restricted_prefix = true;
    p.distinguished_prefix = a.distinguished;
  } else {
    const std::vector<std::size_t> lengths =
        a.lengths.empty() ? std::vector<std::size_t>{8, 12} : a.lengths;
    if (lengths.size() != 2) throw UsageError("two-block events need two lengths");
    p = two_block_params(a.q, lengths[0], lengths[1], a.columns, a.lambda, a.nu, g.seed);
  }
  p.seed = g.seed;
  const ProbReport pr = monte_carlo(*event, p, a.trials, g.seed);

  Report r;
  r.command = "verify-prob";
  r.seed = g.seed;
  r.params = params_to_json(p);
  r.params["event"] = pr.event;
  r.params["trials"] = a.trials;
  r.result = to_json(pr);
  r.success = pr.agrees;
  return emit(r, g, out);
}

// sync-demo ----------------------------------------------------------------

struct SyncArgs {
  std::uint64_t q = 17;
  std::vector<std::size_t> lengths{2, 3, 4};
  std::size_t columns = 4;
  double lambda = 0.0;
  bool raw = false;
};

int run_sync_demo(const SyncArgs& a, const Globals& g, std::ostream& out) {
  ModelParams p;
  p.q = a.q;
  p.blocks = BlockStructure(a.lengths);
  p.columns = a.columns;
  p.noise_count = count_from_fraction(a.lambda, p.blocks.total() - p.blocks.count());
  p.restricted_prefix = true;
  p.shuffle = RandomDistinctShuffle{std::vector<std::size_t>(a.columns, 1)};
  p.seed = g.seed;
  const GeneratedCorpus generated = generate(p);

  const SyncInstance instance = SyncInstance::from_corpus(
      generated.corpus, p.blocks, a.raw ? Embedding::Raw : Embedding::Indicator);
  const SyncSolution found = brute_force_sync(instance);
  const PotentialAssignment truth{generated.truth.column_perms};
  const double truth_value = objective_pairwise(truth, instance);
  const bool gauge_match = same_up_to_gauge(found.assignment, truth, p.blocks);

  Report r;
  r.command = "sync-demo";
  r.seed = g.seed;
  r.params = params_to_json(p);
  r.params["embedding"] = a.raw ? "raw" : "indicator";
  json sigmas = json::array();
  for (const auto& s : found.assignment.sigmas) sigmas.push_back(s.one_line());
  r.result = {{"sigmas", sigmas},
              {"objective", found.objective},
              {"truth_objective", truth_value},
              {"matches_truth_up_to_gauge", gauge_match}};
  r.diagnostics = {{"evaluated", found.evaluated}, {"first_fixed", found.first_fixed}};
  r.success = found.objective <= truth_value + 1e-9 && gauge_match;
  return emit(r, g, out);
}

// selftest -----------------------------------------------------------------

struct SelftestArgs {
  std::size_t fig1_trials = 100;
  std::size_t fig6_trials = 50;
};

int run_selftest(const SelftestArgs& a, const Globals& g, std::ostream& out) {
  json checks = json::array();
  bool all = true;
  auto record = [&](const std::string& name, bool pass, json detail) {
    checks.push_back({{"check", name}, {"pass", pass}, {"detail", std::move(detail)}});
    all = all && pass;
  };

  {
    const auto sigma = Permutation::from_one_line({4, 2, 1, 3});
    const BlockStructure blocks({4, 3, 3, 2});
    const auto bp = block_permutation(sigma, blocks).one_line();
    const auto cbp = coherent_block_permutation(sigma, blocks).one_line();
    const bool pass = bp == std::vector<std::int64_t>{9, 10, 11, 12, 4, 5, 6, 1, 2, 3, 7, 8} &&
                      cbp == std::vector<std::int64_t>{11, 12, 5, 6, 7, 1, 2, 3, 4, 8, 9, 10};
    record("block permutation worked example", pass, {{"block", bp}, {"coherent", cbp}});
  }

  for (const auto& [lengths, expected] :
       std::vector<std::pair<std::vector<std::size_t>, std::size_t>>{{{3, 5, 6, 7}, 12},
                                                                    {{6, 9, 11, 12, 13}, 30}}) {
    // A template of distinct values isolates the combinatorial maximum
    // from accidental value coincidences.
    const BlockStructure blocks(lengths);
    const auto perms = all_permutations(blocks.count());
    std::vector<Symbol> x(blocks.total());
    for (std::size_t l = 0; l < x.size(); ++l) x[l] = static_cast<Symbol>(l);
    Corpus c(blocks.total(), perms.size(), blocks.total());
    for (std::size_t n = 0; n < perms.size(); ++n) {
      const auto col = unshuffle::apply(coherent_block_permutation(perms[n], blocks), x);
      std::copy(col.begin(), col.end(), c.column(n).begin());
    }
    const auto profile = partition_profile(c);
    const std::size_t max = *std::max_element(profile.begin(), profile.end());
    record("partition profile maximum, M = " + std::to_string(lengths.size()), max == expected,
           {{"max", max}, {"expected", expected}});
  }

  {
    std::size_t ok = 0;
    for (std::size_t t = 0; t < a.fig1_trials; ++t) {
      const ModelParams p = two_block_params(3, 40, 60, 80, 0.5, 0.3, Rng::derive(g.seed, t));
      const GeneratedCorpus gc = generate(p);
      try {
        if (exact_two_recovery(unshuffle2(gc.corpus), gc.truth)) ++ok;
      } catch (const NotIdentifiableError&) {
      }
    }
    record("two-block recovery, q = 3", 10 * ok >= 9 * a.fig1_trials,
           {{"recovered", ok}, {"trials", a.fig1_trials}});
  }

  {
    std::vector<std::size_t> mult{16, 8, 8, 4, 4, 4, 4};
    mult.insert(mult.end(), 8, 2);
    mult.insert(mult.end(), 16, 1);
    std::size_t ok = 0;
    for (std::size_t t = 0; t < a.fig6_trials; ++t) {
      ModelParams p;
      p.q = 256;
      p.blocks = BlockStructure({11, 11, 12, 12, 16, 20});
      p.columns = 80;
      p.noise_count = count_from_fraction(0.5, p.blocks.total());
      p.shuffle = RandomDistinctShuffle{mult};
      p.restricted_prefix = true;
      p.seed = Rng::derive(g.seed, t);
      const GeneratedCorpus gc = generate(p);
      try {
        const auto result = unshuffle_m(gc.corpus);
        if (result.m_hat == 6 && perfect_reconstruction(result, gc.truth)) ++ok;
      } catch (const AlignmentFailedError&) {
      }
    }
    record("six-block recovery, q = 256", 10 * ok >= 9 * a.fig6_trials,
           {{"recovered", ok}, {"trials", a.fig6_trials}});
  }

  Report r;
  r.command = "selftest";
  r.seed = g.seed;
  r.params = {{"fig1_trials", a.fig1_trials}, {"fig6_trials", a.fig6_trials}};
  r.result = {{"checks", checks}};
  r.success = all;
  return emit(r, g, out);
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Recover block structure from shuffled fixed-length record corpora", "unshuffle"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "Seed for every random draw");
  app.add_option("--record-len", g.record_len, "Record length L in words")->check(CLI::PositiveNumber);
  app.add_option("--word-bytes", g.word_bytes, "Bytes per word")->check(CLI::IsMember({1, 2, 4}));
  app.add_option("--out", g.out, "Output path (corpus for gen, profile CSV for analyze)");
  app.add_option("--json-report", g.json_report, "Write the JSON report here instead of stdout");
  app.add_option("--layout", g.layout, "Corpus layout")->check(CLI::IsMember({"auto", "file", "dir"}));

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a shuffled corpus and its ground truth");
  gen_cmd->add_option("--q", gen.q, "Alphabet size")->required()->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1} << 32));
  gen_cmd->add_option("--lengths", gen.lengths, "Block lengths")->required()->delimiter(',');
  gen_cmd->add_option("--n", gen.columns, "Column count");
  gen_cmd->add_option("--lambda", gen.lambda, "Noise fraction")->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--nu", gen.nu, "Shifted fraction (two blocks)")->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--multiplicities", gen.multiplicities,
                      "Column counts of distinct random block permutations")
      ->delimiter(',');
  gen_cmd->add_option("--perm", gen.perms, "SIGMA:COUNT, e.g. 2,1:24 (repeatable)");
  gen_cmd->add_flag("--all-perms", gen.all_perms, "Each permutation of S_M once");
  gen_cmd->add_flag("--restricted-prefix", gen.restricted_prefix, "Keep noise off block starts");
  gen_cmd->add_flag("--distinguished-prefix", gen.distinguished_prefix,
                    "Distinct template values at block starts");
  gen_cmd->add_option("--truth", gen.truth, "Truth sidecar path (default OUT.truth.json)");

  std::string analyze_input;
  std::vector<std::size_t> analyze_lengths;
  auto* analyze_cmd = app.add_subcommand("analyze", "Partition profile and two-valued rows");
  analyze_cmd->add_option("input", analyze_input, "Corpus file or directory")->required();
  analyze_cmd->add_option("--lengths", analyze_lengths, "Candidate block lengths")->delimiter(',');

  std::string u2_input, u2_truth, u2_aligned;
  auto* u2_cmd = app.add_subcommand("unshuffle2", "Two-block unshuffling");
  u2_cmd->add_option("input", u2_input, "Corpus file or directory")->required();
  u2_cmd->add_option("--truth", u2_truth, "Truth sidecar for scoring");
  u2_cmd->add_option("--aligned-out", u2_aligned, "Write the aligned corpus here");

  std::string um_input;
  AlignArgs align;
  auto* um_cmd = app.add_subcommand("unshuffle", "Restricted-prefix M-block unshuffling");
  um_cmd->add_option("input", um_input, "Corpus file or directory")->required();
  um_cmd->add_option("--weight-base", align.weight_base, "Row weight base");
  um_cmd->add_option("--max-iters", align.max_iters, "Round cap (0: no cap)");
  um_cmd->add_option("--tau", align.tau, "Largest structured partition size");
  um_cmd->add_option("--ref-col", align.ref_col, "Reference column (1-based)");
  um_cmd->add_flag("--no-consensus", align.no_consensus, "Skip consensus re-alignment");
  um_cmd->add_flag("--no-wrap-bound", align.no_wrap_bound, "Do not cap boundaries at wrap points");
  um_cmd->add_option("--truth", align.truth, "Truth sidecar for scoring");
  um_cmd->add_option("--aligned-out", align.aligned_out, "Write the aligned corpus here");

  ProbArgs prob;
  auto* prob_cmd = app.add_subcommand("verify-prob", "Monte Carlo check of a closed form");
  prob_cmd->add_option("event", prob.event, "p_n, p2, gap, l0, l1 or prefix")->required();
  prob_cmd->add_option("--q", prob.q, "Alphabet size");
  prob_cmd->add_option("--n", prob.columns, "Column count (two-block events)");
  prob_cmd->add_option("--lambda", prob.lambda, "Noise fraction");
  prob_cmd->add_option("--nu", prob.nu, "Shifted fraction");
  prob_cmd->add_option("--lengths", prob.lengths, "Block lengths")->delimiter(',');
  prob_cmd->add_option("--trials", prob.trials, "Monte Carlo trials");
  prob_cmd->add_flag("--distinguished", prob.distinguished, "Distinct prefix values (prefix event)");

  SyncArgs sync;
  auto* sync_cmd = app.add_subcommand("sync-demo", "Brute-force synchronization on a tiny corpus");
  sync_cmd->add_option("--q", sync.q, "Alphabet size");
  sync_cmd->add_option("--lengths", sync.lengths, "Block lengths")->delimiter(',');
  sync_cmd->add_option("--n", sync.columns, "Column count");
  sync_cmd->add_option("--lambda", sync.lambda, "Noise fraction");
  sync_cmd->add_flag("--raw", sync.raw, "Use raw values instead of indicator vectors");

  SelftestArgs self;
  auto* self_cmd = app.add_subcommand("selftest", "Reproduce the reference experiments");
  self_cmd->add_option("--fig1-trials", self.fig1_trials, "Two-block trials");
  self_cmd->add_option("--fig6-trials", self.fig6_trials, "Six-block trials");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (*gen_cmd) return run_gen(gen, g, out);
    if (*analyze_cmd) return run_analyze(analyze_input, analyze_lengths, g, out);
    if (*u2_cmd) return run_unshuffle2(u2_input, u2_truth, u2_aligned, g, out);
    if (*um_cmd) return run_unshuffle(um_input, align, g, out);
    if (*prob_cmd) return run_verify_prob(prob, g, out);
    if (*sync_cmd) return run_sync_demo(sync, g, out);
    if (*self_cmd) return run_selftest(self, g, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

int cli_main(int argc, const char* const* argv) {
  return cli_main(argc, argv, std::cout, std::cerr);
}

}  // namespace unshuffle::cli
