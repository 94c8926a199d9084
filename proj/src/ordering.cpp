#include "sapeo/ordering.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "sapeo/hypervolume.hpp"
#include "sapeo/surrogate.hpp"

namespace sapeo {

const char* to_string(RelationKind kind) {
  switch (kind) {
    case RelationKind::F: return "F";
    case RelationKind::U: return "U";
    case RelationKind::C: return "C";
    case RelationKind::P: return "P";
    case RelationKind::O: return "O";
  }
  return "?";
}

const char* to_string(SecondaryKind kind) {
  return kind == SecondaryKind::HO ? "HO" : "HC";
}

bool pareto_dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  bool strict = false;
  for (int k = 0; k < kObjectives; ++k) {
    if (a[k] > b[k]) return false;
    if (a[k] < b[k]) strict = true;
  }
  return strict;
}

bool strictly_dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  for (int k = 0; k < kObjectives; ++k)
    if (a[k] >= b[k]) return false;
  return true;
}

bool dominates(RelationKind kind, const ConfidenceBox& a, const ConfidenceBox& b) {
  switch (kind) {
    case RelationKind::F:
      if (!a.exact() || !b.exact())
        throw std::logic_error("dominates(F): relation requires exact (zero-radius) boxes");
      return pareto_dominates(a.center(), b.center());
    case RelationKind::U:
      for (int k = 0; k < kObjectives; ++k)
        if (!(a.upper(k) < b.lower(k))) return false;
      return true;
    case RelationKind::C: {
      bool strict = false;
      for (int k = 0; k < kObjectives; ++k) {
        const double la = a.lower(k), ua = a.upper(k);
        const double lb = b.lower(k), ub = b.upper(k);
        if (la > lb || ua > ub) return false;
        if (la < lb || ua < ub) strict = true;
      }
      return strict;
    }
    case RelationKind::P:
      return pareto_dominates(a.center(), b.center());
    case RelationKind::O: {
      bool strict = false;
      for (int k = 0; k < kObjectives; ++k) {
        if (a.lower(k) > b.lower(k)) return false;
        if (a.lower(k) < b.lower(k)) strict = true;
      }
      return strict;
    }
  }
  throw std::logic_error("dominates: unknown relation");
}

std::vector<int> rank(std::span<const ConfidenceBox> pop, RelationKind kind) {
  const std::size_t n = pop.size();
  if (n == 0) throw std::invalid_argument("rank: empty population");

  // dominated_by[i] = number of still-unranked dominators of i
  std::vector<std::vector<std::uint32_t>> dominated(n);
  std::vector<int> count(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (dominates(kind, pop[i], pop[j])) {
        dominated[i].push_back(static_cast<std::uint32_t>(j));
        ++count[j];
      }
    }
  }

  std::vector<int> ranks(n, -1);
  std::vector<std::size_t> front;
  for (std::size_t i = 0; i < n; ++i)
    if (count[i] == 0) front.push_back(i);
  int level = 0;
  while (!front.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t i : front) ranks[i] = level;
    for (std::size_t i : front) {
      for (std::uint32_t j : dominated[i]) {
        if (--count[j] == 0) next.push_back(j);
      }
    }
    front = std::move(next);
    ++level;
  }
  return ranks;
}

namespace {

std::vector<ConfidenceBox> gather(std::span<const ConfidenceBox> pop,
                                  const std::vector<std::size_t>& idx) {
  std::vector<ConfidenceBox> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(pop[i]);
  return out;
}

}  // namespace

double secondary_key(SecondaryKind kind, std::span<const ConfidenceBox> pop, std::size_t target,
                     const ObjectiveVector& ref) {
  if (target >= pop.size()) throw std::invalid_argument("secondary_key: target out of range");
  if (kind == SecondaryKind::HO) {
    std::vector<ObjectiveVector> reps;
    reps.reserve(pop.size());
    for (const auto& b : pop) reps.push_back(b.center());
    return hv_contributions(reps, ref)[target];
  }
  // HC: contribution of the (lower, upper) pair per objective, multiplied.
  double key = 1.0;
  std::vector<ObjectiveVector> pairs(pop.size());
  for (int k = 0; k < kObjectives; ++k) {
    for (std::size_t i = 0; i < pop.size(); ++i)
      pairs[i] = ObjectiveVector{pop[i].lower(k), pop[i].upper(k)};
    key *= hv_contributions(pairs, ObjectiveVector{ref[k], ref[k]})[target];
  }
  return key;
}

std::vector<double> secondary_keys(SecondaryKind kind, std::span<const ConfidenceBox> pop) {
  const std::size_t n = pop.size();
  std::vector<double> keys(n, 0.0);
  if (n == 0) return keys;
  if (kind == SecondaryKind::HO) {
    std::vector<ObjectiveVector> reps;
    reps.reserve(n);
    for (const auto& b : pop) reps.push_back(b.center());
    return hv_contributions(reps, hv_reference(reps));
  }
  keys.assign(n, 1.0);
  std::vector<ObjectiveVector> pairs(n);
  for (int k = 0; k < kObjectives; ++k) {
    double hi = -std::numeric_limits<double>::infinity();
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& b : pop) {
      hi = std::max(hi, b.upper(k));
      lo = std::min(lo, b.lower(k));
    }
    const double r = hi + 0.1 * (hi - lo);
    for (std::size_t i = 0; i < n; ++i)
      pairs[i] = ObjectiveVector{pop[i].lower(k), pop[i].upper(k)};
    const std::vector<double> c = hv_contributions(pairs, ObjectiveVector{r, r});
    for (std::size_t i = 0; i < n; ++i) keys[i] *= c[i];
  }
  return keys;
}

SelectionResult critical_rank_select(std::span<const ConfidenceBox> pop, std::size_t mu,
                                     const SelectionChain& chain, Rng& rng) {
  if (chain.steps.empty()) throw std::invalid_argument("critical_rank_select: empty chain");
  if (mu > pop.size()) throw std::invalid_argument("critical_rank_select: mu exceeds population");

  SelectionResult out;
  out.settled_per_stage.assign(chain.steps.size() + 2, 0);

  std::vector<std::size_t> pool(pop.size());
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  std::size_t need = mu;

  if (need == pool.size()) {
    out.selected = std::move(pool);
    out.settled_per_stage[0] = need;
    return out;
  }

  for (std::size_t si = 0; si < chain.steps.size(); ++si) {
    const ChainStep& step = chain.steps[si];
    if (step.evaluate_first) {
      out.needs_exact = std::move(pool);
      out.remaining = need;
      out.resume = step.kind;
      return out;
    }
    const std::vector<ConfidenceBox> boxes = gather(pop, pool);
    const std::vector<int> r = rank(boxes, step.kind);

    std::vector<std::size_t> order(pool.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return r[a] < r[b]; });
    const int critical = r[order[need - 1]];

    std::vector<std::size_t> sure, tied;
    for (std::size_t p = 0; p < pool.size(); ++p) {
      if (r[p] < critical) sure.push_back(pool[p]);
      else if (r[p] == critical) tied.push_back(pool[p]);
    }
    out.selected.insert(out.selected.end(), sure.begin(), sure.end());
    out.settled_per_stage[si] += sure.size();
    need -= sure.size();
    pool = std::move(tied);
    if (need == pool.size()) {
      out.selected.insert(out.selected.end(), pool.begin(), pool.end());
      out.settled_per_stage[si] += need;
      return out;
    }
  }

  // Chain exhausted: secondary total preorder, then seeded random choice.
  const std::vector<ConfidenceBox> boxes = gather(pop, pool);
  const std::vector<double> keys = secondary_keys(chain.secondary, boxes);
  std::vector<std::size_t> order(pool.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return keys[a] > keys[b]; });
  const double cutoff = keys[order[need - 1]];

  std::vector<std::size_t> tied;
  std::size_t definite = 0;
  for (std::size_t p = 0; p < pool.size(); ++p) {
    if (keys[p] > cutoff) {
      out.selected.push_back(pool[p]);
      ++definite;
    } else if (keys[p] == cutoff) {
      tied.push_back(pool[p]);
    }
  }
  out.settled_per_stage[chain.steps.size()] += definite;
  std::size_t slots = need - definite;
  if (slots == tied.size()) {
    out.selected.insert(out.selected.end(), tied.begin(), tied.end());
    out.settled_per_stage[chain.steps.size()] += slots;
    return out;
  }

  // Partial Fisher-Yates over the tied group.
  for (std::size_t j = 0; j < slots; ++j) {
    const std::size_t pick = j + rng.uniform_index(tied.size() - j);
    std::swap(tied[j], tied[pick]);
  }
  std::sort(tied.begin(), tied.begin() + static_cast<std::ptrdiff_t>(slots));
  out.selected.insert(out.selected.end(), tied.begin(), tied.begin() + static_cast<std::ptrdiff_t>(slots));
  out.settled_per_stage[chain.steps.size() + 1] += slots;
  return out;
}

SortingErrorStats sorting_error_stats(RelationKind kind,
                                      const std::function<ObjectiveVector(Rng&)>& true_sampler,
                                      double noise_sigma, double alpha, long trials, Rng& rng) {
  if (trials < 1) throw std::invalid_argument("sorting_error_stats: trials must be >= 1");
  if (noise_sigma < 0.0) throw std::invalid_argument("sorting_error_stats: negative noise scale");

  const double u = confidence_radius(noise_sigma, alpha);
  const ObjectiveVector radius{u, u};

  SortingErrorStats stats;
  for (long t = 0; t < trials; ++t) {
    const ObjectiveVector fi = true_sampler(rng);
    const ObjectiveVector fj = true_sampler(rng);
    ObjectiveVector ci, cj;
    for (int k = 0; k < kObjectives; ++k) {
      ci[k] = fi[k] + noise_sigma * rng.normal();
      cj[k] = fj[k] + noise_sigma * rng.normal();
    }
    const ConfidenceBox a(ci, radius);
    const ConfidenceBox b(cj, radius);
    if (!dominates(kind, a, b)) continue;
    ++stats.asserted;
    if (!pareto_dominates(fi, fj)) {
      ++stats.errors;
      double mag = 0.0;
      for (int k = 0; k < kObjectives; ++k) mag = std::max(mag, std::abs(fi[k] - fj[k]));
      stats.max_magnitude = std::max(stats.max_magnitude, mag);
    }
  }
  stats.error_rate = static_cast<double>(stats.errors) / static_cast<double>(trials);
  return stats;
}

}  // namespace sapeo
