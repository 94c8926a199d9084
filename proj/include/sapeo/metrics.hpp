#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sapeo/bench.hpp"
#include "sapeo/core.hpp"
#include "sapeo/rng.hpp"

namespace sapeo {

// Incremental 2-D non-dominated archive (minimization), kept as a staircase
// sorted by the first objective.
class ParetoArchive2D {
 public:
  // Inserts a point; returns false when it was dominated (archive unchanged).
  bool insert(const ObjectiveVector& f);

  double hypervolume(const ObjectiveVector& ref) const;

  // True when some archive point dominates `ref` component-wise (<=).
  bool any_within(const ObjectiveVector& ref) const;

  // Euclidean distance from the closest archive point to the region
  // {p : p <= ref component-wise}; 0 when any_within(ref).
  double distance_to_region(const ObjectiveVector& ref) const;

  std::size_t size() const { return stairs_.size(); }
  std::vector<ObjectiveVector> points() const;

 private:
  std::map<double, double> stairs_;  // f1 -> f2, strictly decreasing in f2
};

// Fixed-target record of one run: the event stream of (evaluation index,
// precision) plus the first-crossing index per target.
class RunRecord {
 public:
  RunRecord() = default;
  explicit RunRecord(TargetLadder targets) : targets_(std::move(targets)) {}

  // Appends an event; eval_index must exceed the last recorded index.
  void record_event(long eval_index, double precision);

  // Like record_event, but same-index activity amends the last event (an
  // evaluation followed by a recommendation at the same budget position).
  void record_activity(long eval_index, double precision);

  const std::vector<std::pair<long, double>>& events() const { return events_; }
  const TargetLadder& targets() const { return targets_; }
  std::optional<long> hit(double target) const;
  const std::map<double, long>& target_hits() const { return hits_; }

  long spent = 0;
  long budget = 0;
  std::string problem_id;
  std::string algorithm;
  std::uint64_t seed = 0;

 private:
  void update_hits(long eval_index, double precision);

  TargetLadder targets_;
  std::vector<std::pair<long, double>> events_;
  std::map<double, long> hits_;  // target -> first crossing evaluation index
};

struct RunEventRow {
  long eval_index;
  ObjectiveVector f;
  double precision;  // NaN when no reference data is available
  bool recommended;
};

// Per-run anytime recorder. Evaluated and recommended points both enter the
// precision archive; recommended genomes are resolved through an uncharged
// benchmark-side truth function. Without reference data the recorder keeps
// raw rows and hypervolume but refuses precision and target bookkeeping.
class RunRecorder {
 public:
  RunRecorder(TargetLadder targets, std::optional<ReferenceData> reference,
              std::function<ObjectiveVector(const DecisionVector&)> truth);

  void on_evaluation(const DecisionVector& genome, const ObjectiveVector& f, long spent);
  void on_recommend(const DecisionVector& genome, long spent);

  // Anytime precision of the archive so far: the reference-gap once the
  // archive enters the region of interest, reference_hv plus the normalized
  // distance to the region before that.
  double current_precision() const;
  double raw_hypervolume(const ObjectiveVector& ref) const { return archive_.hypervolume(ref); }

  bool has_reference() const { return reference_.has_value(); }
  const std::vector<RunEventRow>& rows() const { return rows_; }
  const RunRecord& record() const { return record_; }
  RunRecord& record() { return record_; }

  void write_csv(const std::string& path) const;

 private:
  void push_activity(long spent);

  TargetLadder targets_;
  std::optional<ReferenceData> reference_;
  std::function<ObjectiveVector(const DecisionVector&)> truth_;
  ParetoArchive2D archive_;          // normalized points when reference present
  std::vector<ObjectiveVector> raw_points_;
  std::vector<RunEventRow> rows_;
  RunRecord record_;
  long consistency_counter_ = 0;
};

// Expected runtime for one target: (sum of successful hit indices + total
// evaluations of failed runs) / number of successes.
struct ErtInput {
  std::optional<long> hit;
  long spent = 0;
};

std::optional<double> expected_runtime(std::span<const ErtInput> runs);
std::optional<double> expected_runtime(std::span<const RunRecord> runs, double target);

struct BootstrapSummary {
  double mean = 0.0;
  double median = 0.0;
  double p10 = 0.0;
  double p90 = 0.0;
};

// Simulated-restart bootstrap of the runtime distribution.
std::optional<BootstrapSummary> bootstrap_ert(std::span<const ErtInput> runs, int samples,
                                              Rng& rng);
std::optional<BootstrapSummary> bootstrap_ert(std::span<const RunRecord> runs, double target,
                                              Rng& rng, int samples = 1000);

}  // namespace sapeo
