#include "sapeo/moea.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "sapeo/ordering.hpp"

namespace sapeo {

VariationConfig VariationConfig::defaults(int dimension) {
  VariationConfig cfg;
  cfg.mut_prob = 1.0 / static_cast<double>(dimension);
  return cfg;
}

namespace {

ObjectiveVector representative(const Individual& ind) { return as_box(ind).center(); }

// SBX on one coordinate pair; returns both children for the coordinate.
std::pair<double, double> sbx_coordinate(double a, double b, double eta, Rng& rng) {
  if (std::abs(a - b) < 1e-14) return {a, b};
  const double u = rng.uniform01();
  double beta;
  if (u <= 0.5) beta = std::pow(2.0 * u, 1.0 / (eta + 1.0));
  else beta = std::pow(1.0 / (2.0 * (1.0 - u)), 1.0 / (eta + 1.0));
  const double c1 = 0.5 * ((1.0 + beta) * a + (1.0 - beta) * b);
  const double c2 = 0.5 * ((1.0 - beta) * a + (1.0 + beta) * b);
  return {c1, c2};
}

double polynomial_mutation(double x, double eta, Rng& rng) {
  const double range = kUpperBound - kLowerBound;
  const double d1 = (x - kLowerBound) / range;
  const double d2 = (kUpperBound - x) / range;
  const double u = rng.uniform01();
  const double exponent = 1.0 / (eta + 1.0);
  double dq;
  if (u < 0.5) {
    const double val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(1.0 - d1, eta + 1.0);
    dq = std::pow(val, exponent) - 1.0;
  } else {
    const double val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(1.0 - d2, eta + 1.0);
    dq = 1.0 - std::pow(val, exponent);
  }
  return x + dq * range;
}

double clamp_to_box(double x) { return std::clamp(x, kLowerBound, kUpperBound); }

}  // namespace

DecisionVector variation(std::span<const Individual> parents, const VariationConfig& cfg,
                         Rng& rng) {
  if (parents.size() < 2) throw std::invalid_argument("variation: at least two parents required");

  std::vector<ConfidenceBox> boxes;
  std::vector<ObjectiveVector> reps;
  boxes.reserve(parents.size());
  reps.reserve(parents.size());
  for (const Individual& p : parents) {
    boxes.push_back(as_box(p));
    reps.push_back(representative(p));
  }
  const std::vector<int> ranks = rank(boxes, RelationKind::P);
  const std::vector<double> contrib = hv_contributions(reps, hv_reference(reps));

  auto tournament = [&]() -> std::size_t {
    const std::size_t a = rng.uniform_index(parents.size());
    const std::size_t b = rng.uniform_index(parents.size());
    if (ranks[a] != ranks[b]) return ranks[a] < ranks[b] ? a : b;
    if (contrib[a] != contrib[b]) return contrib[a] > contrib[b] ? a : b;
    return a;
  };

  const std::size_t pa = tournament();
  const std::size_t pb = tournament();
  const auto& ga = parents[pa].genome();
  const auto& gb = parents[pb].genome();
  const std::size_t n = ga.dimension();

  std::vector<double> child(ga.coords().begin(), ga.coords().end());
  if (rng.uniform01() < cfg.sbx_prob) {
    std::vector<double> other(gb.coords().begin(), gb.coords().end());
    for (std::size_t m = 0; m < n; ++m) {
      if (rng.uniform01() <= 0.5) {
        const auto [c1, c2] = sbx_coordinate(ga[m], gb[m], cfg.sbx_eta, rng);
        child[m] = c1;
        other[m] = c2;
      }
    }
    if (rng.uniform01() < 0.5) child.swap(other);
  }
  for (std::size_t m = 0; m < n; ++m) {
    if (rng.uniform01() < cfg.mut_prob) child[m] = polynomial_mutation(child[m], cfg.mut_eta, rng);
    child[m] = clamp_to_box(child[m]);
  }
  return DecisionVector(std::move(child));
}

std::size_t sms_removal_index(std::span<const Individual> pop, Rng& rng) {
  std::vector<ConfidenceBox> boxes;
  std::vector<ObjectiveVector> values;
  boxes.reserve(pop.size());
  values.reserve(pop.size());
  for (const Individual& ind : pop) {
    if (!ind.is_exact())
      throw std::logic_error("sms_removal_index: requires exactly evaluated individuals");
    boxes.push_back(as_box(ind));
    values.push_back(ind.exact_values());
  }
  const std::vector<int> ranks = rank(boxes, RelationKind::F);
  const int worst = *std::max_element(ranks.begin(), ranks.end());

  std::vector<std::size_t> front;
  std::vector<ObjectiveVector> front_values;
  for (std::size_t i = 0; i < pop.size(); ++i) {
    if (ranks[i] == worst) {
      front.push_back(i);
      front_values.push_back(values[i]);
    }
  }
  if (front.size() == 1) return front.front();

  const std::vector<double> contrib = hv_contributions(front_values, hv_reference(front_values));
  const double least = *std::min_element(contrib.begin(), contrib.end());
  std::vector<std::size_t> tied;
  for (std::size_t i = 0; i < front.size(); ++i)
    if (contrib[i] == least) tied.push_back(front[i]);
  if (tied.size() == 1) return tied.front();
  return tied[rng.uniform_index(tied.size())];
}

Population sms_survival(Population pop, std::size_t mu, Rng& rng) {
  if (pop.size() != mu + 1)
    throw std::invalid_argument("sms_survival: expects a population of size mu + 1");
  const std::size_t removed = sms_removal_index(pop, rng);
  pop.erase(pop.begin() + static_cast<std::ptrdiff_t>(removed));
  return pop;
}

}  // namespace sapeo
