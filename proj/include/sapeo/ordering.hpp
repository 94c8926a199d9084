#pragma once

#include <functional>
#include <span>
#include <vector>

#include "sapeo/core.hpp"
#include "sapeo/rng.hpp"

namespace sapeo {

// Binary relations over confidence boxes. All induce a strict partial order:
//   F  Pareto dominance on exact values (zero-radius boxes only)
//   U  interval dominance: a's upper bound below b's lower bound in every dim
//   C  per-dimension Pareto dominance of the (lower, upper) bound pairs
//   P  Pareto dominance on the predicted centers
//   O  Pareto dominance on the lower bounds
enum class RelationKind { F, U, C, P, O };

// Total-preorder tie breakers used after the relation chain is exhausted:
//   HO  hypervolume contribution of the representative objective values
//   HC  product over objectives of the contribution of the (lower, upper) pair
enum class SecondaryKind { HO, HC };

const char* to_string(RelationKind kind);
const char* to_string(SecondaryKind kind);

// a dominates b: component-wise <= with at least one strict <.
bool pareto_dominates(const ObjectiveVector& a, const ObjectiveVector& b);

// a strictly dominates b: < in every component.
bool strictly_dominates(const ObjectiveVector& a, const ObjectiveVector& b);

bool dominates(RelationKind kind, const ConfidenceBox& a, const ConfidenceBox& b);

// Non-dominated sorting generalized to an arbitrary relation. Front 0 holds
// elements with no dominator; front i holds elements dominated only by
// members of fronts < i.
std::vector<int> rank(std::span<const ConfidenceBox> pop, RelationKind kind);

// One link of a selection strategy chain. With evaluate_first set, the
// remaining critical individuals are handed back to the caller for exact
// evaluation and re-selection under `kind` instead of being ranked as-is.
struct ChainStep {
  RelationKind kind;
  bool evaluate_first = false;
};

struct SelectionChain {
  std::vector<ChainStep> steps;
  SecondaryKind secondary = SecondaryKind::HO;
};

struct SelectionResult {
  std::vector<std::size_t> selected;
  // Undistinguished critical set that must be made exact before re-selection.
  // Empty unless a chain step with evaluate_first was reached.
  std::vector<std::size_t> needs_exact;
  std::size_t remaining = 0;               // how many of needs_exact to keep
  RelationKind resume = RelationKind::F;   // relation for the re-selection
  // Bookkeeping: individuals settled per chain step, then by the secondary
  // criterion, then by random tie-breaking (steps.size() + 2 entries).
  std::vector<std::size_t> settled_per_stage;
};

// Survival selection under a relation chain: everyone ranked before the
// critical rank is kept, ties at the critical rank are resolved by the
// successive relations, then the secondary criterion, then seeded random
// choice.
SelectionResult critical_rank_select(std::span<const ConfidenceBox> pop, std::size_t mu,
                                     const SelectionChain& chain, Rng& rng);

// Secondary criterion value of pop[target]; larger is better. For HO the
// reference applies to the representative points; for HC, ref[k] is the
// reference for both coordinates of dimension k's (lower, upper) plane.
double secondary_key(SecondaryKind kind, std::span<const ConfidenceBox> pop, std::size_t target,
                     const ObjectiveVector& ref);

// Keys for the whole set with the automatic reference point rule
// (component-wise maximum plus a 10% range margin).
std::vector<double> secondary_keys(SecondaryKind kind, std::span<const ConfidenceBox> pop);

struct SortingErrorStats {
  double error_rate = 0.0;     // errors / trials
  double max_magnitude = 0.0;  // max-norm of |f_i - f_j| over error pairs
  long asserted = 0;           // pairs where the relation claimed dominance
  long errors = 0;
};

// Monte-Carlo sorting-error estimate: true objective pairs are drawn from
// `true_sampler`, perturbed with independent Gaussian noise of scale
// `noise_sigma` per dimension, and boxed with the (1 - alpha) confidence
// radius. An error is a pair where `kind` asserts dominance although the true
// values are not Pareto-ordered.
SortingErrorStats sorting_error_stats(RelationKind kind,
                                      const std::function<ObjectiveVector(Rng&)>& true_sampler,
                                      double noise_sigma, double alpha, long trials, Rng& rng);

}  // namespace sapeo
