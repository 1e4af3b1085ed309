#include "unshuffle/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace unshuffle {

Permutation Permutation::identity(std::size_t n) {
  std::vector<Index> images(n);
  std::iota(images.begin(), images.end(), Index{0});
  return Permutation(std::move(images));
}

Permutation Permutation::cyclic_shift(std::size_t n, std::size_t shift) {
  std::vector<Index> images(n);
  for (std::size_t l = 0; l < n; ++l) images[l] = static_cast<Index>((l + shift) % n);
  return Permutation(std::move(images));
}

Permutation Permutation::from_images(std::vector<Index> images) {
  std::vector<bool> seen(images.size(), false);
  for (Index v : images) {
    if (v >= images.size() || seen[v]) {
      throw StructuralError("not a permutation: image " + std::to_string(v) +
                            " repeated or out of range for size " +
                            std::to_string(images.size()));
    }
    seen[v] = true;
  }
  return Permutation(std::move(images));
}

Permutation Permutation::from_one_line(std::span<const std::int64_t> one_line) {
  std::vector<Index> images;
  images.reserve(one_line.size());
  for (std::int64_t v : one_line) {
    if (v < 1 || static_cast<std::uint64_t>(v) > one_line.size()) {
      throw StructuralError("one-line entry " + std::to_string(v) + " outside [1, " +
                            std::to_string(one_line.size()) + "]");
    }
    images.push_back(static_cast<Index>(v - 1));
  }
  return from_images(std::move(images));
}

Permutation Permutation::from_one_line(std::initializer_list<std::int64_t> one_line) {
  return from_one_line(std::span<const std::int64_t>(one_line.begin(), one_line.size()));
}

std::vector<std::int64_t> Permutation::one_line() const {
  std::vector<std::int64_t> out(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) out[i] = std::int64_t{images_[i]} + 1;
  return out;
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != i) return false;
  }
  return true;
}

std::string Permutation::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (i) os << ',';
    os << images_[i] + 1;
  }
  os << ')';
  return os.str();
}

Permutation invert(const Permutation& p) {
  std::vector<Permutation::Index> inv(p.size());
  for (std::size_t a = 0; a < p.size(); ++a) inv[p(a)] = static_cast<Permutation::Index>(a);
  return Permutation::from_images(std::move(inv));
}

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.size() != q.size()) {
    throw StructuralError("compose: sizes " + std::to_string(p.size()) + " and " +
                          std::to_string(q.size()) + " differ");
  }
  std::vector<Permutation::Index> out(p.size());
  for (std::size_t a = 0; a < p.size(); ++a) out[a] = p(q(a));
  return Permutation::from_images(std::move(out));
}

BlockStructure::BlockStructure(std::vector<std::size_t> lengths) : lengths_(std::move(lengths)) {
  for (std::size_t len : lengths_) {
    if (len == 0) throw StructuralError("block lengths must be positive");
    total_ += len;
  }
}

std::vector<std::size_t> BlockStructure::starts() const {
  std::vector<std::size_t> out(lengths_.size());
  std::size_t acc = 0;
  for (std::size_t m = 0; m < lengths_.size(); ++m) {
    out[m] = acc;
    acc += lengths_[m];
  }
  return out;
}

std::vector<std::size_t> BlockStructure::ends() const {
  std::vector<std::size_t> out(lengths_.size());
  std::partial_sum(lengths_.begin(), lengths_.end(), out.begin());
  return out;
}

BlockStructure BlockStructure::permuted(const Permutation& sigma) const {
  if (sigma.size() != lengths_.size()) {
    throw StructuralError("permuted: permutation of size " + std::to_string(sigma.size()) +
                          " for " + std::to_string(lengths_.size()) + " blocks");
  }
  std::vector<std::size_t> out(lengths_.size());
  for (std::size_t n = 0; n < lengths_.size(); ++n) out[n] = lengths_[sigma(n)];
  return BlockStructure(std::move(out));
}

Permutation operad_compose(const Permutation& sigma, std::span<const Permutation> taus) {
  const std::size_t m_count = sigma.size();
  if (taus.size() != m_count) {
    throw StructuralError("operad_compose: " + std::to_string(taus.size()) +
                          " inner permutations for an outer permutation of size " +
                          std::to_string(m_count));
  }
  const Permutation sigma_inv = invert(sigma);

  // Output slot t holds input block sigma^{-1}(t); slot_offset[t] is
  // sum_{m < t} |tau_{sigma^{-1}(m)}|.
  std::vector<std::size_t> slot_offset(m_count + 1, 0);
  for (std::size_t t = 0; t < m_count; ++t) {
    slot_offset[t + 1] = slot_offset[t] + taus[sigma_inv(t)].size();
  }

  std::vector<Permutation::Index> images;
  images.reserve(slot_offset[m_count]);
  for (std::size_t n = 0; n < m_count; ++n) {
    const std::size_t base = slot_offset[sigma(n)];
    const Permutation& tau = taus[n];
    for (std::size_t l = 0; l < tau.size(); ++l) {
      images.push_back(static_cast<Permutation::Index>(base + tau(l)));
    }
  }
  return Permutation::from_images(std::move(images));
}

namespace {

std::vector<Permutation> identities(std::span<const std::size_t> sizes) {
  std::vector<Permutation> out;
  out.reserve(sizes.size());
  for (std::size_t s : sizes) out.push_back(Permutation::identity(s));
  return out;
}

void check_block_count(const Permutation& sigma, const BlockStructure& blocks) {
  if (sigma.size() != blocks.count()) {
    throw StructuralError("block permutation of size " + std::to_string(sigma.size()) +
                          " for " + std::to_string(blocks.count()) + " blocks");
  }
}

}  // namespace

Permutation block_permutation(const Permutation& sigma, const BlockStructure& blocks) {
  check_block_count(sigma, blocks);
  return operad_compose(sigma, identities(blocks.lengths()));
}

Permutation coherent_block_permutation(const Permutation& sigma, const BlockStructure& blocks) {
  check_block_count(sigma, blocks);
  return operad_compose(sigma, identities(blocks.permuted(sigma).lengths()));
}

std::vector<Permutation> all_permutations(std::size_t m) {
  std::vector<Permutation::Index> images(m);
  std::iota(images.begin(), images.end(), Permutation::Index{0});
  std::vector<Permutation> out;
  do {
    out.push_back(Permutation::from_images(images));
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

}  // namespace unshuffle
