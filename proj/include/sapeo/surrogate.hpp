#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "sapeo/core.hpp"

namespace sapeo {

double normal_cdf(double x);

// Inverse standard normal CDF by bisection on normal_cdf; |error| < 1e-10.
double normal_quantile(double p);

// Half-width of the symmetric (1 - alpha) confidence interval for a Gaussian
// error with standard deviation sigma.
double confidence_radius(double sigma, double alpha);

// Thrown when a correlation matrix stays indefinite after the maximum jitter;
// callers fall back to exact evaluation.
class KrigingFitError : public std::runtime_error {
 public:
  explicit KrigingFitError(const std::string& what) : std::runtime_error(what) {}
};

struct Prediction {
  double mean = 0.0;
  double sigma = 0.0;
};

struct SurrogateConfig {
  double theta_lower = 1e-4;
  double theta_upper = 1e1;
  double theta_start = 1e-2;
  // Coordinate descent over log10(theta): golden-section line searches, full
  // sweeps repeated until no improvement. extra_starts adds log-uniform
  // restarts (seeded internally; fit stays deterministic).
  int max_sweeps = 2;
  int line_search_evals = 11;
  int extra_starts = 0;
  double jitter_start = 1e-10;
  double jitter_max = 1e-4;
};

// Constant-trend (universal) Kriging with a squared-exponential correlation
//   R_ij = exp(-sum_m theta_m (x_im - x_jm)^2).
// Duplicate inputs are collapsed by averaging their outputs before fitting.
class KrigingModel {
 public:
  // Hyperparameters from maximum likelihood (concentrated, theta box-bounded).
  static KrigingModel fit(std::span<const std::vector<double>> inputs,
                          std::span<const double> outputs, const SurrogateConfig& cfg = {});

  // Fit with theta held fixed; trend and process variance by GLS.
  static KrigingModel fit_with_theta(std::span<const std::vector<double>> inputs,
                                     std::span<const double> outputs, std::vector<double> theta,
                                     const SurrogateConfig& cfg = {});

  Prediction predict(const std::vector<double>& query) const;

  // Predictive variance before the clamp at zero (diagnostic).
  double predictive_variance_raw(const std::vector<double>& query) const;

  const std::vector<double>& theta() const { return theta_; }
  double trend() const { return beta_; }
  double process_variance() const { return process_variance_; }
  double jitter() const { return jitter_; }
  bool degenerate() const { return degenerate_; }
  std::size_t training_size() const { return n_points_; }

 private:
  KrigingModel() = default;

  std::size_t n_points_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> inputs_;   // row-major n_points x dim
  std::vector<double> outputs_;
  std::vector<double> theta_;
  double beta_ = 0.0;
  double process_variance_ = 0.0;
  double jitter_ = 0.0;
  bool degenerate_ = false;      // constant outputs: predicts beta_ with sigma 0

  std::vector<double> chol_;        // lower-triangular factor of R + jitter*I
  std::vector<double> alpha_;       // R^{-1} (y - beta * 1)
  std::vector<double> ones_solve_;  // L^{-1} 1
  double one_rinv_one_ = 0.0;

  void predict_core(const std::vector<double>& query, double* mean, double* raw_variance) const;

  friend class KrigingFitter;
};

// Indices of the min(k, archive size) entries closest to the query in
// Euclidean distance; ties broken by insertion order. Entries that duplicate
// the query's coordinates collapse to the first such entry.
std::vector<std::size_t> knearest(std::span<const double> query,
                                  std::span<const std::vector<double>> archive_inputs,
                                  std::size_t k);

}  // namespace sapeo
