#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sapeo/core.hpp"

namespace sapeo {

enum class BaseFunctionId {
  Sphere,
  EllipsoidSeparable,
  AttractiveSector,
  Rosenbrock,
  SharpRidge,
  DifferentPowers,
  Rastrigin,
  SchafferF7,
  Schwefel,
  Gallagher101,
};

enum class FunctionGroup {
  Separable,
  LowConditioning,
  HighConditioning,
  MultimodalAdequate,
  MultimodalWeak,
};

FunctionGroup group_of(BaseFunctionId id);
std::string_view name_of(BaseFunctionId id);
std::optional<BaseFunctionId> base_function_from_name(std::string_view name);

// Single-objective base function with its global minimum of value 0 at the
// origin; evaluable for any n >= 2 over the shifted search box. The seed only
// matters for functions with randomized structure (gallagher-101 peaks).
class BaseFunction {
 public:
  BaseFunction(BaseFunctionId id, int dimension, std::uint64_t seed);

  double operator()(std::span<const double> z) const;
  BaseFunctionId id() const { return id_; }
  int dimension() const { return dim_; }

 private:
  BaseFunctionId id_;
  int dim_;
  // gallagher-101 peak data
  std::vector<double> peak_weights_;
  std::vector<double> peak_centers_;  // row-major peaks x dim
  std::vector<double> peak_scales_;   // row-major peaks x dim
};

// Pair of base functions with instance-seeded shifts drawn uniformly from
// [-50, 50]^n; objective k evaluates its base function at x - shift_k.
class BiObjectiveProblem final : public ObjectiveFunction {
 public:
  BiObjectiveProblem(BaseFunctionId first, BaseFunctionId second, int dimension,
                     unsigned instance);

  int dimension() const override { return dim_; }
  ObjectiveVector evaluate(const DecisionVector& x) const override;

  BaseFunctionId first_id() const { return first_.id(); }
  BaseFunctionId second_id() const { return second_.id(); }
  unsigned instance() const { return instance_; }
  const std::vector<double>& shift(int objective) const;

  ObjectiveVector ideal() const { return {0.0, 0.0}; }
  ObjectiveVector nadir() const;

  bool is_double_sphere() const;
  std::string pair_name() const;  // e.g. "sphere__rosenbrock"
  std::string id() const;         // pair_name + "_d<n>_i<instance>"

 private:
  int dim_;
  unsigned instance_;
  BaseFunction first_;
  BaseFunction second_;
  std::vector<double> shift1_;
  std::vector<double> shift2_;
};

struct ReferenceData {
  std::vector<ObjectiveVector> front;  // raw objective values
  ObjectiveVector ideal{0.0, 0.0};
  ObjectiveVector nadir{1.0, 1.0};
  double reference_hv = 0.0;  // hypervolume of the normalized front w.r.t. (1,1)
};

// Reference data for the double-sphere problem from its analytic Pareto set
// (the segment between the two shifts), sampled at `samples` points.
ReferenceData analytic_reference(const BiObjectiveProblem& problem, std::size_t samples = 10000);

// Wraps an empirical front (non-dominated filter applied) into ReferenceData
// for the given problem.
ReferenceData make_reference(const BiObjectiveProblem& problem,
                             std::vector<ObjectiveVector> front);

ObjectiveVector normalize_objectives(const ReferenceData& ref, const ObjectiveVector& f);

// Quality gap of an archive: reference hypervolume minus the hypervolume of
// the ideal/nadir-normalized archive w.r.t. (1, 1). Points outside the unit
// box contribute nothing.
double precision(const ReferenceData& ref, std::span<const ObjectiveVector> archive);

struct TargetLadder {
  std::vector<double> precisions;  // strictly decreasing, all > 0

  // 25 log-spaced targets covering 10^1 .. 10^-3.
  static TargetLadder standard();
};

struct SuiteEntry {
  BaseFunctionId first;
  BaseFunctionId second;
};

// 15-problem suite: all cross pairs of {sphere, rosenbrock, rastrigin,
// schwefel, sharp-ridge} plus one same-group pair per function group.
const std::vector<SuiteEntry>& mini_suite();

// The five same-group pairs (one per group).
const std::vector<SuiteEntry>& same_group_suite();

const std::vector<int>& suite_dimensions();  // {2, 3, 5, 10}
bool valid_dimension(int n);                 // {2, 3, 5, 10, 20}

void write_front_csv(const std::string& path, std::span<const ObjectiveVector> front);
std::vector<ObjectiveVector> read_front_csv(const std::string& path);

}  // namespace sapeo
