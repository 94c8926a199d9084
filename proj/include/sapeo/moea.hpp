#pragma once

#include <span>

#include "sapeo/core.hpp"
#include "sapeo/hypervolume.hpp"
#include "sapeo/rng.hpp"

namespace sapeo {

struct VariationConfig {
  double sbx_eta = 15.0;
  double sbx_prob = 0.9;
  double mut_eta = 20.0;
  double mut_prob = 0.1;  // per coordinate; defaults() sets 1/n

  static VariationConfig defaults(int dimension);
};

// One offspring genome: binary tournament on (rank, hypervolume contribution)
// over the representative objective values, SBX recombination, polynomial
// mutation, coordinates clamped to the search box.
DecisionVector variation(std::span<const Individual> parents, const VariationConfig& cfg,
                         Rng& rng);

// Index of the individual a (mu+1)-sized exact population loses: minimal
// hypervolume contribution within the worst non-dominated front, seeded
// random choice among ties.
std::size_t sms_removal_index(std::span<const Individual> pop, Rng& rng);

// Steady-state SMS-EMOA survival: drops one individual from a population of
// size mu + 1.
Population sms_survival(Population pop, std::size_t mu, Rng& rng);

}  // namespace sapeo
