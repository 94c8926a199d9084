#include "sapeo/core.hpp"

#include <cmath>
#include <string>

namespace sapeo {

bool all_finite(const ObjectiveVector& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

DecisionVector::DecisionVector(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw std::invalid_argument("DecisionVector: empty coordinate vector");
  for (double c : coords_) {
    if (!std::isfinite(c) || c < kLowerBound || c > kUpperBound)
      throw std::invalid_argument("DecisionVector: coordinate " + std::to_string(c) +
                                  " outside [-100, 100]");
  }
}

ConfidenceBox::ConfidenceBox(ObjectiveVector center, ObjectiveVector radius)
    : center_(center), radius_(radius) {
  if (!all_finite(center_)) throw std::invalid_argument("ConfidenceBox: non-finite center");
  for (double r : radius_) {
    if (!std::isfinite(r) || r < 0.0)
      throw std::invalid_argument("ConfidenceBox: radius must be non-negative and finite");
  }
}

bool ConfidenceBox::exact() const {
  for (double r : radius_)
    if (r != 0.0) return false;
  return true;
}

const ObjectiveVector& Individual::exact_values() const {
  if (!is_exact()) throw std::logic_error("Individual: exact values requested on non-exact fitness");
  return std::get<ExactFitness>(*fitness_).values;
}

const Fitness& Individual::fitness() const {
  if (!fitness_) throw std::logic_error("Individual: fitness requested before any evaluation");
  return *fitness_;
}

void Individual::set_predicted(ConfidenceBox box) {
  if (is_exact())
    throw std::logic_error("Individual: exact fitness may not be downgraded to a prediction");
  fitness_ = PredictedFitness{std::move(box)};
}

void Individual::set_exact(ObjectiveVector values) {
  if (!all_finite(values)) throw std::invalid_argument("Individual: non-finite exact values");
  if (is_exact()) throw std::logic_error("Individual: exact fitness assigned twice");
  fitness_ = ExactFitness{values};
}

ConfidenceBox as_box(const Individual& ind) {
  const Fitness& f = ind.fitness();
  if (const auto* exact = std::get_if<ExactFitness>(&f))
    return ConfidenceBox(exact->values, ObjectiveVector{0.0, 0.0});
  return std::get<PredictedFitness>(f).box;
}

BudgetLedger::BudgetLedger(long cap) : cap_(cap) {
  if (cap < 0) throw std::invalid_argument("BudgetLedger: negative cap");
}

bool BudgetLedger::try_charge(long k) {
  if (k < 0) throw std::invalid_argument("BudgetLedger: negative charge");
  if (spent_ + k > cap_) return false;
  spent_ += k;
  return true;
}

}  // namespace sapeo
