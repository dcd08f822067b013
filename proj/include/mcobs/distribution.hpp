#pragma once

// Outcome distributions of half-integer valued observables, keyed by 2m.

#include <cstdint>
#include <map>
#include <vector>

#include "mcobs/fock.hpp"

namespace mcobs {

class OutcomeDistribution {
 public:
  OutcomeDistribution() = default;
  explicit OutcomeDistribution(std::map<int, double> probs);

  void add(int twice_m, double p) { probs_[twice_m] += p; }
  const std::map<int, double>& probabilities() const { return probs_; }
  double probability(int twice_m) const;

  double total() const;
  /// -sum p ln p in nats; 0 ln 0 = 0, round-off negatives count as 0.
  double entropy() const;
  double mean() const;
  double second_moment() const;
  double variance() const;

  /// Drops entries below `floor` (absolute), moving their mass to pruned_mass.
  void drop_below(double floor);

  TailReport tail;
  /// Weight skipped by sector/term pruning during the computation.
  double pruned_mass = 0.0;

 private:
  std::map<int, double> probs_;
};

/// (1/2) sum |p - q|.
double total_variation(const OutcomeDistribution& a, const OutcomeDistribution& b);

/// Draws `shots` outcomes with a seeded generator; returns counts per 2m.
std::map<int, std::int64_t> sample_outcomes(const OutcomeDistribution& d, std::int64_t shots,
                                            std::uint64_t seed);

}  // namespace mcobs
