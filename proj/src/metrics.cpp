#include "sapeo/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace sapeo {

bool ParetoArchive2D::insert(const ObjectiveVector& f) {
  const double x = f[0], y = f[1];
  auto it = stairs_.upper_bound(x);
  if (it != stairs_.begin()) {
    auto pred = std::prev(it);
    if (pred->second <= y) return false;  // dominated (or duplicate)
  }
  // Remove entries this point dominates.
  auto cur = stairs_.lower_bound(x);
  while (cur != stairs_.end() && cur->second >= y) cur = stairs_.erase(cur);
  stairs_.emplace(x, y);
  return true;
}

double ParetoArchive2D::hypervolume(const ObjectiveVector& ref) const {
  double area = 0.0;
  double prev2 = ref[1];
  for (const auto& [x, y] : stairs_) {
    if (x > ref[0]) break;
    if (y < prev2) {
      area += (ref[0] - x) * (prev2 - y);
      prev2 = y;
    }
  }
  return area;
}

bool ParetoArchive2D::any_within(const ObjectiveVector& ref) const {
  auto it = stairs_.upper_bound(ref[0]);
  if (it == stairs_.begin()) return false;
  return std::prev(it)->second <= ref[1];
}

double ParetoArchive2D::distance_to_region(const ObjectiveVector& ref) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [x, y] : stairs_) {
    const double dx = std::max(0.0, x - ref[0]);
    const double dy = std::max(0.0, y - ref[1]);
    best = std::min(best, std::sqrt(dx * dx + dy * dy));
  }
  return best;
}

std::vector<ObjectiveVector> ParetoArchive2D::points() const {
  std::vector<ObjectiveVector> out;
  out.reserve(stairs_.size());
  for (const auto& [x, y] : stairs_) out.push_back({x, y});
  return out;
}

void RunRecord::record_event(long eval_index, double precision) {
  if (!events_.empty() && eval_index <= events_.back().first)
    throw std::logic_error("RunRecord: evaluation index must be strictly increasing");
  if (!events_.empty()) {
    const double prev = events_.back().second;
    if (precision > prev + 1e-12 * (1.0 + std::abs(prev)))
      throw std::logic_error("RunRecord: precision trace must be non-increasing");
    precision = std::min(precision, prev);
  }
  events_.emplace_back(eval_index, precision);
  update_hits(eval_index, precision);
}

void RunRecord::record_activity(long eval_index, double precision) {
  if (!events_.empty() && events_.back().first == eval_index) {
    // Same-index activity: an evaluation together with its recommendation.
    auto& last = events_.back();
    last.second = std::min(last.second, precision);
    update_hits(eval_index, last.second);
    return;
  }
  record_event(eval_index, precision);
}

void RunRecord::update_hits(long eval_index, double precision) {
  for (double target : targets_.precisions) {
    if (precision <= target && !hits_.contains(target)) hits_[target] = eval_index;
  }
}

std::optional<long> RunRecord::hit(double target) const {
  const auto it = hits_.find(target);
  if (it == hits_.end()) return std::nullopt;
  return it->second;
}

RunRecorder::RunRecorder(TargetLadder targets, std::optional<ReferenceData> reference,
                         std::function<ObjectiveVector(const DecisionVector&)> truth)
    : targets_(targets), reference_(std::move(reference)), truth_(std::move(truth)),
      record_(std::move(targets)) {}

void RunRecorder::on_evaluation(const DecisionVector& genome, const ObjectiveVector& f,
                                long spent) {
  (void)genome;
  if (reference_) archive_.insert(normalize_objectives(*reference_, f));
  else archive_.insert(f);
  raw_points_.push_back(f);
  rows_.push_back({spent, f, current_precision(), false});
  push_activity(spent);
}

void RunRecorder::on_recommend(const DecisionVector& genome, long spent) {
  const ObjectiveVector f = truth_(genome);
  if (reference_) archive_.insert(normalize_objectives(*reference_, f));
  else archive_.insert(f);
  raw_points_.push_back(f);
  rows_.push_back({spent, f, current_precision(), true});
  push_activity(spent);
}

double RunRecorder::current_precision() const {
  if (!reference_) return std::numeric_limits<double>::quiet_NaN();
  const ObjectiveVector unit{1.0, 1.0};
  if (archive_.any_within(unit)) return reference_->reference_hv - archive_.hypervolume(unit);
  if (archive_.size() == 0) return std::numeric_limits<double>::infinity();
  // Anytime extension outside the region of interest: gap plus the distance
  // of the closest normalized point to the region, so early targets above the
  // reference gap stay meaningful.
  return reference_->reference_hv + archive_.distance_to_region(unit);
}

void RunRecorder::push_activity(long spent) {
  record_.spent = spent;
  if (!reference_) return;
  const double precision = current_precision();
  if (!std::isfinite(precision)) return;
  record_.record_activity(spent, precision);

  // Periodic consistency check: replay the full raw archive.
  if (++consistency_counter_ % 100 == 0) {
    ParetoArchive2D replay;
    for (const auto& p : raw_points_)
      replay.insert(normalize_objectives(*reference_, p));
    const ObjectiveVector unit{1.0, 1.0};
    const double replayed = replay.any_within(unit)
                                ? reference_->reference_hv - replay.hypervolume(unit)
                                : reference_->reference_hv + replay.distance_to_region(unit);
    if (std::abs(replayed - precision) > 1e-9 * (1.0 + std::abs(replayed)))
      throw std::logic_error("RunRecorder: incremental precision diverged from replay");
  }
}

void RunRecorder::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("RunRecorder: cannot open " + path);
  out << "eval_index,f1,f2,precision,recommended_flag\n";
  out.precision(17);
  for (const auto& row : rows_) {
    out << row.eval_index << "," << row.f[0] << "," << row.f[1] << "," << row.precision << ","
        << (row.recommended ? 1 : 0) << "\n";
  }
}

std::optional<double> expected_runtime(std::span<const ErtInput> runs) {
  if (runs.empty()) throw std::invalid_argument("expected_runtime: no runs");
  long successes = 0;
  double total = 0.0;
  for (const auto& r : runs) {
    if (r.hit) {
      ++successes;
      total += static_cast<double>(*r.hit);
    } else {
      total += static_cast<double>(r.spent);
    }
  }
  if (successes == 0) return std::nullopt;
  return total / static_cast<double>(successes);
}

std::optional<double> expected_runtime(std::span<const RunRecord> runs, double target) {
  std::vector<ErtInput> inputs;
  inputs.reserve(runs.size());
  for (const auto& r : runs) inputs.push_back({r.hit(target), r.spent});
  return expected_runtime(inputs);
}

namespace {

double quantile_sorted(const std::vector<double>& sorted, double q) {
  const double h = q * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(h);
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

std::optional<BootstrapSummary> bootstrap_ert(std::span<const ErtInput> runs, int samples,
                                              Rng& rng) {
  if (runs.empty()) throw std::invalid_argument("bootstrap_ert: no runs");
  if (samples < 1) throw std::invalid_argument("bootstrap_ert: samples must be >= 1");
  bool any_success = false;
  for (const auto& r : runs) any_success |= r.hit.has_value();
  if (!any_success) return std::nullopt;

  std::vector<double> draws;
  draws.reserve(static_cast<std::size_t>(samples));
  for (int s = 0; s < samples; ++s) {
    double total = 0.0;
    for (;;) {
      const auto& r = runs[rng.uniform_index(runs.size())];
      if (r.hit) {
        total += static_cast<double>(*r.hit);
        break;
      }
      total += static_cast<double>(r.spent);
    }
    draws.push_back(total);
  }
  std::sort(draws.begin(), draws.end());
  BootstrapSummary out;
  for (double d : draws) out.mean += d;
  out.mean /= static_cast<double>(draws.size());
  out.median = quantile_sorted(draws, 0.5);
  out.p10 = quantile_sorted(draws, 0.1);
  out.p90 = quantile_sorted(draws, 0.9);
  return out;
}

std::optional<BootstrapSummary> bootstrap_ert(std::span<const RunRecord> runs, double target,
                                              Rng& rng, int samples) {
  std::vector<ErtInput> inputs;
  inputs.reserve(runs.size());
  for (const auto& r : runs) inputs.push_back({r.hit(target), r.spent});
  return bootstrap_ert(inputs, samples, rng);
}

}  // namespace sapeo
