#pragma once

#include <span>
#include <vector>

#include "sapeo/core.hpp"

namespace sapeo {

// Exact area dominated by `points` within the box bounded by `ref`
// (minimization; points that do not dominate ref contribute nothing).
// O(m log m) sweep over the first objective.
double hv2d(std::span<const ObjectiveVector> points, const ObjectiveVector& ref);

// Leave-one-out hypervolume contributions: hv(all) - hv(all \ {i}).
// Duplicated points each contribute zero.
std::vector<double> hv_contributions(std::span<const ObjectiveVector> points,
                                     const ObjectiveVector& ref);

// Reference point rule shared by survival selection and the secondary
// criteria: component-wise maximum plus a 10% range margin.
ObjectiveVector hv_reference(std::span<const ObjectiveVector> points);

// Indices of a minimal non-dominated subset (duplicates collapsed), sorted by
// ascending first objective.
std::vector<std::size_t> nondominated_indices_2d(std::span<const ObjectiveVector> points);

}  // namespace sapeo
