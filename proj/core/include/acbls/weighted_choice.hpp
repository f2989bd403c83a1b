#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace acbls {

using PathCount = boost::multiprecision::cpp_int;

/// Exact sampling of an index with probability weight[k] / sum(weights) for
/// arbitrarily large integer weights. No floating point is involved: a draw
/// compares the top 64 bits of a uniform integer against the top 64 bits of
/// the cumulative weights and only materialises the low bits when those
/// comparisons tie.
class WeightedChoice {
 public:
  WeightedChoice() = default;
  explicit WeightedChoice(std::span<const PathCount> weights);

  std::size_t size() const { return cumulative_.size(); }
  const PathCount& total() const { return cumulative_.back(); }

  template <class URBG>
  std::size_t sample(URBG& gen) const;

 private:
  std::vector<PathCount> cumulative_;
  // total < 2^64: exact 64-bit arithmetic.
  bool small_ = true;
  std::vector<std::uint64_t> cumulative64_;
  // Otherwise: cumulative_ >> shift_, with top_total_ in [2^63, 2^64).
  unsigned shift_ = 0;
  std::vector<std::uint64_t> top_;

  template <class URBG>
  std::size_t sample_exact(URBG& gen, std::uint64_t high) const;
};

inline WeightedChoice::WeightedChoice(std::span<const PathCount> weights) {
  if (weights.empty()) throw std::invalid_argument("WeightedChoice: no weights");
  PathCount running = 0;
  for (const auto& w : weights) {
    if (w <= 0) throw std::invalid_argument("WeightedChoice: weights must be positive");
    running += w;
    cumulative_.push_back(running);
  }
  const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(running)) + 1;
  small_ = bits <= 64;
  if (small_) {
    for (const auto& c : cumulative_) cumulative64_.push_back(static_cast<std::uint64_t>(c));
  } else {
    shift_ = bits - 64;
    for (const auto& c : cumulative_) top_.push_back(static_cast<std::uint64_t>(c >> shift_));
  }
}

template <class URBG>
std::size_t WeightedChoice::sample(URBG& gen) const {
  static_assert(URBG::min() == 0 && URBG::max() == ~std::uint64_t{0}, "needs a full 64-bit generator");
  if (small_) {
    std::uniform_int_distribution<std::uint64_t> dist(0, cumulative64_.back() - 1);
    const std::uint64_t u = dist(gen);
    return static_cast<std::size_t>(std::upper_bound(cumulative64_.begin(), cumulative64_.end(), u) -
                                    cumulative64_.begin());
  }
  for (;;) {
    // u lies in [high << shift, (high + 1) << shift).
    const std::uint64_t high = gen();
    if (high > top_.back()) continue;  // u >= total for sure
    auto it = std::lower_bound(top_.begin(), top_.end(), high);
    if (*it != high) return static_cast<std::size_t>(it - top_.begin());
    const std::size_t k = sample_exact(gen, high);
    if (k < size()) return k;
  }
}

template <class URBG>
std::size_t WeightedChoice::sample_exact(URBG& gen, std::uint64_t high) const {
  PathCount u = high;
  for (unsigned done = 0; done < shift_;) {
    const unsigned take = std::min(64u, shift_ - done);
    std::uint64_t word = gen();
    if (take < 64) word &= (std::uint64_t{1} << take) - 1;
    u = (u << take) | PathCount(word);
    done += take;
  }
  return static_cast<std::size_t>(std::upper_bound(cumulative_.begin(), cumulative_.end(), u) -
                                  cumulative_.begin());
}

}  // namespace acbls
