#include "mcobs/distribution.hpp"

#include <cmath>
#include <random>
#include <set>

namespace mcobs {

OutcomeDistribution::OutcomeDistribution(std::map<int, double> probs) : probs_(std::move(probs)) {
  for (const auto& [m, p] : probs_)
    if (!std::isfinite(p)) throw InvalidArgument("probabilities must be finite");
}

double OutcomeDistribution::probability(int twice_m) const {
  const auto it = probs_.find(twice_m);
  return it == probs_.end() ? 0.0 : it->second;
}

double OutcomeDistribution::total() const {
  double s = 0.0;
  for (const auto& [m, p] : probs_) s += p;
  return s;
}

double OutcomeDistribution::entropy() const {
  double h = 0.0;
  for (const auto& [m, p] : probs_)
    if (p > 0.0) h -= p * std::log(p);
  return h;
}

double OutcomeDistribution::mean() const {
  double s = 0.0;
  for (const auto& [m, p] : probs_) s += 0.5 * m * p;
  return s;
}

double OutcomeDistribution::second_moment() const {
  double s = 0.0;
  for (const auto& [m, p] : probs_) s += 0.25 * double(m) * m * p;
  return s;
}

double OutcomeDistribution::variance() const {
  const double mu = mean();
  return second_moment() - mu * mu;
}

void OutcomeDistribution::drop_below(double floor) {
  for (auto it = probs_.begin(); it != probs_.end();) {
    if (std::abs(it->second) < floor) {
      pruned_mass += std::max(it->second, 0.0);
      it = probs_.erase(it);
    } else {
      ++it;
    }
  }
}

double total_variation(const OutcomeDistribution& a, const OutcomeDistribution& b) {
  std::set<int> keys;
  for (const auto& [m, p] : a.probabilities()) keys.insert(m);
  for (const auto& [m, p] : b.probabilities()) keys.insert(m);
  double tv = 0.0;
  for (int m : keys) tv += std::abs(a.probability(m) - b.probability(m));
  return 0.5 * tv;
}

std::map<int, std::int64_t> sample_outcomes(const OutcomeDistribution& d, std::int64_t shots,
                                            std::uint64_t seed) {
  if (shots < 0) throw InvalidArgument("shot count must be >= 0");
  std::vector<int> keys;
  std::vector<double> weights;
  for (const auto& [m, p] : d.probabilities()) {
    keys.push_back(m);
    weights.push_back(std::max(p, 0.0));
  }
  if (keys.empty()) throw InvalidArgument("cannot sample an empty distribution");
  std::mt19937_64 rng(seed);
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
  std::map<int, std::int64_t> counts;
  for (std::int64_t i = 0; i < shots; ++i) ++counts[keys[pick(rng)]];
  return counts;
}

}  // namespace mcobs
