#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

namespace sapeo {

inline constexpr int kObjectives = 2;
inline constexpr double kLowerBound = -100.0;
inline constexpr double kUpperBound = 100.0;

using ObjectiveVector = std::array<double, kObjectives>;

bool all_finite(const ObjectiveVector& v);

// Point in the box-constrained search space [-100, 100]^n.
class DecisionVector {
 public:
  explicit DecisionVector(std::vector<double> coords);

  std::size_t dimension() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const { return coords_; }

  bool operator==(const DecisionVector&) const = default;

 private:
  std::vector<double> coords_;
};

// Per-objective interval [center_k - radius_k, center_k + radius_k].
class ConfidenceBox {
 public:
  ConfidenceBox(ObjectiveVector center, ObjectiveVector radius);

  const ObjectiveVector& center() const { return center_; }
  const ObjectiveVector& radius() const { return radius_; }
  double lower(int k) const { return center_[k] - radius_[k]; }
  double upper(int k) const { return center_[k] + radius_[k]; }

  // True when every radius is zero, i.e. the box is an exact value.
  bool exact() const;

 private:
  ObjectiveVector center_;
  ObjectiveVector radius_;
};

struct ExactFitness {
  ObjectiveVector values;
};

struct PredictedFitness {
  ConfidenceBox box;
};

using Fitness = std::variant<ExactFitness, PredictedFitness>;

// Candidate solution. The fitness state may only move Predicted -> Exact.
class Individual {
 public:
  Individual(DecisionVector genome, long birth_generation)
      : genome_(std::move(genome)), birth_generation_(birth_generation) {}

  const DecisionVector& genome() const { return genome_; }
  long birth_generation() const { return birth_generation_; }

  bool has_fitness() const { return fitness_.has_value(); }
  bool is_exact() const {
    return fitness_ && std::holds_alternative<ExactFitness>(*fitness_);
  }

  const ObjectiveVector& exact_values() const;
  const Fitness& fitness() const;

  void set_predicted(ConfidenceBox box);
  void set_exact(ObjectiveVector values);

 private:
  DecisionVector genome_;
  std::optional<Fitness> fitness_;
  long birth_generation_ = 0;
};

using Population = std::vector<Individual>;

// Uniform view of any fitted individual: exact values become a zero-radius box.
ConfidenceBox as_box(const Individual& ind);

// Counts exact objective-function evaluations against a hard cap.
class BudgetLedger {
 public:
  explicit BudgetLedger(long cap);

  long spent() const { return spent_; }
  long cap() const { return cap_; }
  long remaining() const { return cap_ - spent_; }
  bool exhausted() const { return spent_ >= cap_; }

  // Charges k evaluations; returns false (and changes nothing) when the cap
  // would be exceeded.
  [[nodiscard]] bool try_charge(long k = 1);

 private:
  long spent_ = 0;
  long cap_ = 0;
};

// Thrown by charged evaluation paths when the ledger runs out mid-generation.
class BudgetExhausted : public std::runtime_error {
 public:
  BudgetExhausted() : std::runtime_error("evaluation budget exhausted") {}
};

// A d=2 black box over the search box.
class ObjectiveFunction {
 public:
  virtual ~ObjectiveFunction() = default;
  virtual int dimension() const = 0;
  virtual ObjectiveVector evaluate(const DecisionVector& x) const = 0;
};

}  // namespace sapeo
