#include "sapeo/bench.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "sapeo/hypervolume.hpp"
#include "sapeo/rng.hpp"

namespace sapeo {

namespace {

constexpr double kShiftRange = 50.0;
// Location and value of the schwefel per-coordinate optimum.
constexpr double kSchwefelOpt = 420.968746359982;
const double kSchwefelConst = kSchwefelOpt * std::sin(std::sqrt(kSchwefelOpt));

constexpr int kGallagherPeaks = 101;

}  // namespace

FunctionGroup group_of(BaseFunctionId id) {
  switch (id) {
    case BaseFunctionId::Sphere:
    case BaseFunctionId::EllipsoidSeparable: return FunctionGroup::Separable;
    case BaseFunctionId::AttractiveSector:
    case BaseFunctionId::Rosenbrock: return FunctionGroup::LowConditioning;
    case BaseFunctionId::SharpRidge:
    case BaseFunctionId::DifferentPowers: return FunctionGroup::HighConditioning;
    case BaseFunctionId::Rastrigin:
    case BaseFunctionId::SchafferF7: return FunctionGroup::MultimodalAdequate;
    case BaseFunctionId::Schwefel:
    case BaseFunctionId::Gallagher101: return FunctionGroup::MultimodalWeak;
  }
  throw std::logic_error("group_of: unknown base function");
}

std::string_view name_of(BaseFunctionId id) {
  switch (id) {
    case BaseFunctionId::Sphere: return "sphere";
    case BaseFunctionId::EllipsoidSeparable: return "ellipsoid-separable";
    case BaseFunctionId::AttractiveSector: return "attractive-sector";
    case BaseFunctionId::Rosenbrock: return "rosenbrock";
    case BaseFunctionId::SharpRidge: return "sharp-ridge";
    case BaseFunctionId::DifferentPowers: return "sum-of-different-powers";
    case BaseFunctionId::Rastrigin: return "rastrigin";
    case BaseFunctionId::SchafferF7: return "schaffer-f7";
    case BaseFunctionId::Schwefel: return "schwefel";
    case BaseFunctionId::Gallagher101: return "gallagher-101";
  }
  return "?";
}

std::optional<BaseFunctionId> base_function_from_name(std::string_view name) {
  for (int i = 0; i <= static_cast<int>(BaseFunctionId::Gallagher101); ++i) {
    const auto id = static_cast<BaseFunctionId>(i);
    if (name_of(id) == name) return id;
  }
  return std::nullopt;
}

BaseFunction::BaseFunction(BaseFunctionId id, int dimension, std::uint64_t seed)
    : id_(id), dim_(dimension) {
  if (dimension < 2) throw std::invalid_argument("BaseFunction: dimension must be >= 2");
  if (id_ != BaseFunctionId::Gallagher101) return;

  Rng rng(hash_combine(seed, fnv1a("gallagher-101")));
  peak_weights_.resize(kGallagherPeaks);
  peak_centers_.assign(static_cast<std::size_t>(kGallagherPeaks) * dim_, 0.0);
  peak_scales_.assign(static_cast<std::size_t>(kGallagherPeaks) * dim_, 0.0);
  peak_weights_[0] = 10.0;
  for (int m = 0; m < dim_; ++m) peak_scales_[m] = 1.0;  // global peak, mild shape
  for (int p = 1; p < kGallagherPeaks; ++p) {
    peak_weights_[p] = 1.1 + 8.0 * static_cast<double>(p - 1) / 99.0;
    const double condition = std::pow(10.0, rng.uniform(0.0, 3.0));
    for (int m = 0; m < dim_; ++m) {
      peak_centers_[static_cast<std::size_t>(p) * dim_ + m] = rng.uniform(-80.0, 80.0);
      peak_scales_[static_cast<std::size_t>(p) * dim_ + m] =
          std::pow(condition, rng.uniform01()) / std::sqrt(condition);
    }
  }
}

double BaseFunction::operator()(std::span<const double> z) const {
  const int n = dim_;
  switch (id_) {
    case BaseFunctionId::Sphere: {
      double s = 0.0;
      for (double v : z) s += v * v;
      return s;
    }
    case BaseFunctionId::EllipsoidSeparable: {
      double s = 0.0;
      for (int i = 0; i < n; ++i)
        s += std::pow(10.0, 6.0 * i / (n - 1)) * z[i] * z[i];
      return s;
    }
    case BaseFunctionId::AttractiveSector: {
      double s = 0.0;
      for (int i = 0; i < n; ++i) {
        const double w = z[i] > 0.0 ? 100.0 : 1.0;
        s += w * w * z[i] * z[i];
      }
      return s;
    }
    case BaseFunctionId::Rosenbrock: {
      double s = 0.0;
      for (int i = 0; i + 1 < n; ++i) {
        const double a = (z[i] + 1.0) * (z[i] + 1.0) - (z[i + 1] + 1.0);
        s += 100.0 * a * a + z[i] * z[i];
      }
      return s;
    }
    case BaseFunctionId::SharpRidge: {
      double tail = 0.0;
      for (int i = 1; i < n; ++i) tail += z[i] * z[i];
      return z[0] * z[0] + 100.0 * std::sqrt(tail);
    }
    case BaseFunctionId::DifferentPowers: {
      double s = 0.0;
      for (int i = 0; i < n; ++i)
        s += std::pow(std::abs(z[i]), 2.0 + 4.0 * i / (n - 1));
      return s;
    }
    case BaseFunctionId::Rastrigin: {
      double s = 0.0, c = 0.0;
      for (double v : z) {
        s += v * v;
        c += std::cos(2.0 * M_PI * v);
      }
      return 10.0 * (n - c) + s;
    }
    case BaseFunctionId::SchafferF7: {
      double acc = 0.0;
      for (int i = 0; i + 1 < n; ++i) {
        const double s = std::sqrt(z[i] * z[i] + z[i + 1] * z[i + 1]);
        const double sn = std::sin(50.0 * std::pow(s, 0.2));
        acc += std::sqrt(s) * (1.0 + sn * sn);
      }
      acc /= (n - 1);
      return acc * acc;
    }
    case BaseFunctionId::Schwefel: {
      double s = 0.0;
      for (double v : z) {
        const double w = v + kSchwefelOpt;
        s += kSchwefelConst - w * std::sin(std::sqrt(std::abs(w)));
      }
      return s;
    }
    case BaseFunctionId::Gallagher101: {
      double best = 0.0;
      for (int p = 0; p < kGallagherPeaks; ++p) {
        double q = 0.0;
        const double* c = peak_centers_.data() + static_cast<std::size_t>(p) * n;
        const double* a = peak_scales_.data() + static_cast<std::size_t>(p) * n;
        for (int m = 0; m < n; ++m) {
          const double d = z[m] - c[m];
          q += a[m] * d * d;
        }
        best = std::max(best, peak_weights_[p] * std::exp(-q / (2.0 * n)));
      }
      const double raw = 10.0 - best;
      return raw * raw;
    }
  }
  throw std::logic_error("BaseFunction: unknown id");
}

namespace {

std::vector<double> draw_shift(int dim, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> s(static_cast<std::size_t>(dim));
  for (double& v : s) v = rng.uniform(-kShiftRange, kShiftRange);
  return s;
}

}  // namespace

BiObjectiveProblem::BiObjectiveProblem(BaseFunctionId first, BaseFunctionId second, int dimension,
                                       unsigned instance)
    : dim_(dimension),
      instance_(instance),
      first_(first, dimension, hash_combine(hash_combine(fnv1a("sapeo.fn"), instance), 1)),
      second_(second, dimension, hash_combine(hash_combine(fnv1a("sapeo.fn"), instance), 2)) {
  if (!valid_dimension(dimension))
    throw std::invalid_argument("BiObjectiveProblem: dimension must be one of {2,3,5,10,20}");
  const std::uint64_t base = hash_combine(
      hash_combine(hash_combine(fnv1a("sapeo.instance"), fnv1a(name_of(first))),
                   fnv1a(name_of(second))),
      hash_combine(static_cast<std::uint64_t>(dimension), instance));
  for (std::uint64_t salt = 0;; ++salt) {
    shift1_ = draw_shift(dim_, hash_combine(base, 2 * salt + 1));
    shift2_ = draw_shift(dim_, hash_combine(base, 2 * salt + 2));
    double d2 = 0.0;
    for (int m = 0; m < dim_; ++m) {
      const double d = shift1_[m] - shift2_[m];
      d2 += d * d;
    }
    // Near-coincident shifts would collapse the front; redraw deterministically.
    if (d2 >= 1.0) break;
  }
}

ObjectiveVector BiObjectiveProblem::evaluate(const DecisionVector& x) const {
  if (static_cast<int>(x.dimension()) != dim_)
    throw std::invalid_argument("BiObjectiveProblem: dimension mismatch");
  std::vector<double> z(static_cast<std::size_t>(dim_));
  for (int m = 0; m < dim_; ++m) z[m] = x[m] - shift1_[m];
  const double f1 = first_(z);
  for (int m = 0; m < dim_; ++m) z[m] = x[m] - shift2_[m];
  const double f2 = second_(z);
  return {f1, f2};
}

const std::vector<double>& BiObjectiveProblem::shift(int objective) const {
  if (objective == 0) return shift1_;
  if (objective == 1) return shift2_;
  throw std::invalid_argument("BiObjectiveProblem: objective index out of range");
}

ObjectiveVector BiObjectiveProblem::nadir() const {
  // Extreme Pareto points sit at the per-objective optima.
  std::vector<double> z(static_cast<std::size_t>(dim_));
  for (int m = 0; m < dim_; ++m) z[m] = shift2_[m] - shift1_[m];
  const double n1 = first_(z);
  for (int m = 0; m < dim_; ++m) z[m] = shift1_[m] - shift2_[m];
  const double n2 = second_(z);
  return {n1, n2};
}

bool BiObjectiveProblem::is_double_sphere() const {
  return first_.id() == BaseFunctionId::Sphere && second_.id() == BaseFunctionId::Sphere;
}

std::string BiObjectiveProblem::pair_name() const {
  return std::string(name_of(first_.id())) + "__" + std::string(name_of(second_.id()));
}

std::string BiObjectiveProblem::id() const {
  return pair_name() + "_d" + std::to_string(dim_) + "_i" + std::to_string(instance_);
}

ReferenceData analytic_reference(const BiObjectiveProblem& problem, std::size_t samples) {
  if (!problem.is_double_sphere())
    throw std::invalid_argument("analytic_reference: only available for the double-sphere");
  if (samples < 2) throw std::invalid_argument("analytic_reference: need at least 2 samples");

  double l2 = 0.0;
  for (int m = 0; m < problem.dimension(); ++m) {
    const double d = problem.shift(0)[m] - problem.shift(1)[m];
    l2 += d * d;
  }

  ReferenceData ref;
  ref.ideal = problem.ideal();
  ref.nadir = {l2, l2};
  ref.front.reserve(samples);
  for (std::size_t j = 0; j < samples; ++j) {
    const double t = static_cast<double>(j) / static_cast<double>(samples - 1);
    ref.front.push_back({t * t * l2, (1.0 - t) * (1.0 - t) * l2});
  }
  std::vector<ObjectiveVector> normalized;
  normalized.reserve(samples);
  for (const auto& f : ref.front) normalized.push_back(normalize_objectives(ref, f));
  ref.reference_hv = hv2d(normalized, {1.0, 1.0});
  return ref;
}

ReferenceData make_reference(const BiObjectiveProblem& problem,
                             std::vector<ObjectiveVector> front) {
  if (front.empty()) throw std::invalid_argument("make_reference: empty front");
  ReferenceData ref;
  ref.ideal = problem.ideal();
  ref.nadir = problem.nadir();
  const std::vector<std::size_t> nd = nondominated_indices_2d(front);
  ref.front.reserve(nd.size());
  for (std::size_t i : nd) ref.front.push_back(front[i]);
  std::vector<ObjectiveVector> normalized;
  normalized.reserve(ref.front.size());
  for (const auto& f : ref.front) normalized.push_back(normalize_objectives(ref, f));
  ref.reference_hv = hv2d(normalized, {1.0, 1.0});
  return ref;
}

ObjectiveVector normalize_objectives(const ReferenceData& ref, const ObjectiveVector& f) {
  ObjectiveVector out;
  for (int k = 0; k < kObjectives; ++k)
    out[k] = (f[k] - ref.ideal[k]) / (ref.nadir[k] - ref.ideal[k]);
  return out;
}

double precision(const ReferenceData& ref, std::span<const ObjectiveVector> archive) {
  if (archive.empty()) throw std::invalid_argument("precision: empty archive");
  std::vector<ObjectiveVector> normalized;
  normalized.reserve(archive.size());
  for (const auto& f : archive) normalized.push_back(normalize_objectives(ref, f));
  return ref.reference_hv - hv2d(normalized, {1.0, 1.0});
}

TargetLadder TargetLadder::standard() {
  TargetLadder ladder;
  ladder.precisions.reserve(25);
  for (int k = 0; k <= 24; ++k)
    ladder.precisions.push_back(std::pow(10.0, 1.0 - static_cast<double>(k) / 6.0));
  return ladder;
}

const std::vector<SuiteEntry>& mini_suite() {
  static const std::vector<SuiteEntry> suite = [] {
    const std::vector<BaseFunctionId> core{
        BaseFunctionId::Sphere, BaseFunctionId::Rosenbrock, BaseFunctionId::SharpRidge,
        BaseFunctionId::Rastrigin, BaseFunctionId::Schwefel};
    std::vector<SuiteEntry> s;
    for (std::size_t i = 0; i < core.size(); ++i)
      for (std::size_t j = i + 1; j < core.size(); ++j)
        s.push_back({core[i], core[j]});
    const auto& same = same_group_suite();
    s.insert(s.end(), same.begin(), same.end());
    return s;
  }();
  return suite;
}

const std::vector<SuiteEntry>& same_group_suite() {
  static const std::vector<SuiteEntry> suite{
      {BaseFunctionId::Sphere, BaseFunctionId::EllipsoidSeparable},
      {BaseFunctionId::Rosenbrock, BaseFunctionId::AttractiveSector},
      {BaseFunctionId::SharpRidge, BaseFunctionId::DifferentPowers},
      {BaseFunctionId::Rastrigin, BaseFunctionId::SchafferF7},
      {BaseFunctionId::Schwefel, BaseFunctionId::Gallagher101},
  };
  return suite;
}

const std::vector<int>& suite_dimensions() {
  static const std::vector<int> dims{2, 3, 5, 10};
  return dims;
}

bool valid_dimension(int n) { return n == 2 || n == 3 || n == 5 || n == 10 || n == 20; }

void write_front_csv(const std::string& path, std::span<const ObjectiveVector> front) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_front_csv: cannot open " + path);
  out << "f1,f2\n";
  out.precision(17);
  for (const auto& f : front) out << f[0] << "," << f[1] << "\n";
}

std::vector<ObjectiveVector> read_front_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_front_csv: cannot open " + path);
  std::vector<ObjectiveVector> front;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string a, b;
    std::getline(row, a, ',');
    std::getline(row, b, ',');
    front.push_back({std::stod(a), std::stod(b)});
  }
  return front;
}

}  // namespace sapeo
