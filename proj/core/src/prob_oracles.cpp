#include "unshuffle/prob_oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "unshuffle/error.hpp"

namespace unshuffle {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_q(std::uint64_t q) {
  if (q < 2) throw DomainError("alphabet size q must be at least 2, got " + std::to_string(q));
}

void check_fraction(double v, const char* name, bool open) {
  const bool ok = open ? (v > 0.0 && v < 1.0) : (v >= 0.0 && v <= 1.0);
  if (!ok) {
    throw DomainError(std::string(name) + " = " + std::to_string(v) +
                      (open ? " outside (0, 1)" : " outside [0, 1]"));
  }
}

void check_counts(const TwoBlockCounts& c) {
  check_q(c.q);
  if (!(c.unshifted >= 1.0) || !(c.shifted >= 1.0)) {
    throw DomainError("both column classes need at least one column");
  }
  const LociWeights& w = c.weights;
  for (double v : {w.none, w.partner_only, w.row_only, w.both}) {
    if (!(v >= 0.0 && v <= 1.0)) throw DomainError("loci weights must lie in [0, 1]");
  }
}

// log(2^{a-1} - 1); -inf when a == 1.
double log_pairings(double a) { return std::log(std::expm1((a - 1.0) * std::log(2.0))); }

double log_or_neg_inf(double w) { return w > 0.0 ? std::log(w) : kNegInf; }

// exp of a sum of logs, with -inf factors giving exactly 0.
double product(std::initializer_list<double> logs) {
  double s = 0.0;
  for (double v : logs) {
    if (v == kNegInf) return 0.0;
    s += v;
  }
  return std::exp(s);
}

TwoBlockCounts paper_counts(std::uint64_t q, std::size_t columns, double lambda, double nu) {
  check_fraction(lambda, "lambda", false);
  check_fraction(nu, "nu", true);
  TwoBlockCounts c;
  c.q = q;
  c.unshifted = static_cast<double>(columns) * (1.0 - nu);
  c.shifted = static_cast<double>(columns) * nu;
  c.weights = LociWeights::independent(lambda);
  return c;
}

}  // namespace

LociWeights LociWeights::independent(double lambda) {
  check_fraction(lambda, "lambda", false);
  const double bar = 1.0 - lambda;
  return {bar * bar, bar * lambda, lambda * bar, lambda * lambda};
}

LociWeights LociWeights::fixed_count(std::size_t noisy, std::size_t length) {
  if (length < 2) throw DomainError("pair weights need at least two loci");
  if (noisy > length) {
    throw DomainError("noise count " + std::to_string(noisy) + " exceeds length " +
                      std::to_string(length));
  }
  const double l = static_cast<double>(length);
  const double k = static_cast<double>(noisy);
  const double pairs = l * (l - 1.0);
  return {(l - k) * (l - k - 1.0) / pairs, k * (l - k) / pairs, k * (l - k) / pairs,
          k * (k - 1.0) / pairs};
}

double p_n_closed(const TwoBlockCounts& c) {
  check_counts(c);
  const double lq = std::log(static_cast<double>(c.q));
  const double n = c.unshifted + c.shifted;
  const LociWeights& w = c.weights;
  const double bracket = w.none + product({log_or_neg_inf(w.partner_only), (1.0 - c.shifted) * lq}) +
                         product({log_or_neg_inf(w.row_only), (1.0 - c.unshifted) * lq}) +
                         product({log_or_neg_inf(w.both), (2.0 - n) * lq});
  return (1.0 - 1.0 / static_cast<double>(c.q)) * bracket;
}

double p_n_closed(std::uint64_t q, std::size_t columns, double lambda, double nu) {
  return p_n_closed(paper_counts(q, columns, lambda, nu));
}

double p2_closed(const TwoBlockCounts& c) {
  const double pn = p_n_closed(c);
  const double lq = std::log(static_cast<double>(c.q));
  const double n = c.unshifted + c.shifted;
  const LociWeights& w = c.weights;
  const double shifted_pairings = log_pairings(c.shifted);
  const double unshifted_pairings = log_pairings(c.unshifted);

  // Two values split inside the shifted class, unshifted class constant.
  const double shifted_split =
      (w.partner_only + product({log_or_neg_inf(w.both), (1.0 - c.unshifted) * lq})) *
      product({shifted_pairings, (1.0 - c.shifted) * lq});
  const double unshifted_split =
      (w.row_only + product({log_or_neg_inf(w.both), (1.0 - c.shifted) * lq})) *
      product({unshifted_pairings, (1.0 - c.unshifted) * lq});
  const double both_split =
      product({log_or_neg_inf(w.both), unshifted_pairings, shifted_pairings, (2.0 - n) * lq});

  const double extra = 2.0 * (1.0 - 1.0 / static_cast<double>(c.q)) *
                       (shifted_split + unshifted_split + both_split);
  return std::min(1.0, pn + extra);
}

double p2_closed(std::uint64_t q, std::size_t columns, double lambda, double nu) {
  return p2_closed(paper_counts(q, columns, lambda, nu));
}

double gap_decay(std::uint64_t q, std::size_t columns, double nu) {
  if (q <= 2) throw DomainError("gap bound is vacuous for q <= 2");
  check_fraction(nu, "nu", false);
  const double e = static_cast<double>(columns) * std::min(nu, 1.0 - nu);
  return std::exp(-e * std::log(static_cast<double>(q) / 2.0));
}

LSetProbabilities l_sets_exact_prob_counts(std::uint64_t q, double unshifted, double shifted,
                                           double noisy) {
  check_q(q);
  if (!(unshifted >= 1.0) || !(shifted >= 1.0)) {
    throw DomainError("both column classes need at least one column");
  }
  if (!(noisy >= 0.0)) throw DomainError("noise locus count must be nonnegative");
  const double lq = std::log(static_cast<double>(q));
  auto power = [&](double cls) {
    if (noisy == 0.0) return 1.0;
    return std::exp(noisy * std::log1p(-std::exp((1.0 - cls) * lq)));
  };
  return {power(unshifted), power(shifted)};
}

LSetProbabilities l_sets_exact_prob(std::uint64_t q, std::size_t columns, std::size_t length,
                                    double lambda, double nu) {
  check_fraction(lambda, "lambda", false);
  check_fraction(nu, "nu", true);
  const double n = static_cast<double>(columns);
  return l_sets_exact_prob_counts(q, n * (1.0 - nu), n * nu,
                                  static_cast<double>(length) * lambda);
}

PrefixPartitionProbability prefix_partition_prob(std::uint64_t q, std::size_t k) {
  check_q(q);
  if (k == 0) throw DomainError("at least one realized prefix value is required");
  const double qd = static_cast<double>(q);
  PrefixPartitionProbability out;
  out.approximation = std::exp(-static_cast<double>(k) * static_cast<double>(k) / (2.0 * qd));
  if (k > q) return out;
  double log_p = 0.0;
  for (std::size_t i = 1; i < k; ++i) log_p += std::log1p(-static_cast<double>(i) / qd);
  out.exact = std::exp(log_p);
  return out;
}

std::uint64_t stirling2(std::size_t r, std::size_t s) {
  if (s > r) return 0;
  // row[j] = S(i, j), built for i = 0..r.
  std::vector<std::uint64_t> row(s + 1, 0);
  row[0] = 1;
  for (std::size_t i = 1; i <= r; ++i) {
    for (std::size_t j = std::min(i, s); j >= 1; --j) {
      std::uint64_t scaled = 0;
      std::uint64_t sum = 0;
      if (__builtin_mul_overflow(static_cast<std::uint64_t>(j), row[j], &scaled) ||
          __builtin_add_overflow(scaled, row[j - 1], &sum)) {
        throw SizeLimitError("S(" + std::to_string(r) + ", " + std::to_string(s) +
                             ") overflows 64 bits");
      }
      row[j] = sum;
    }
    row[0] = 0;
  }
  return row[s];
}

double value_count_prob(std::uint64_t q, std::size_t r, std::size_t s) {
  check_q(q);
  if (s > r || s > q) return 0.0;
  if (s == 0) return r == 0 ? 1.0 : 0.0;
  const double qd = static_cast<double>(q);
  double log_p = std::log(static_cast<double>(stirling2(r, s))) - static_cast<double>(r) * std::log(qd);
  for (std::size_t i = 0; i < s; ++i) log_p += std::log(qd - static_cast<double>(i));
  return std::exp(log_p);
}

}  // namespace unshuffle
