#include "sapeo/surrogate.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "sapeo/rng.hpp"

namespace sapeo {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("normal_quantile: p outside (0, 1)");
  double lo = -40.0, hi = 40.0;
  while (hi - lo > 1e-11) {
    const double mid = 0.5 * (lo + hi);
    if (normal_cdf(mid) < p) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

double confidence_radius(double sigma, double alpha) {
  if (sigma < 0.0) throw std::invalid_argument("confidence_radius: negative sigma");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("confidence_radius: alpha outside (0, 1)");
  if (sigma == 0.0) return 0.0;
  return sigma * normal_quantile(1.0 - alpha / 2.0);
}

std::vector<std::size_t> knearest(std::span<const double> query,
                                  std::span<const std::vector<double>> archive_inputs,
                                  std::size_t k) {
  if (archive_inputs.empty())
    throw std::invalid_argument("knearest: empty archive, caller must evaluate exactly");
  if (k == 0) throw std::invalid_argument("knearest: k must be >= 1");

  std::vector<std::pair<double, std::size_t>> dist;
  dist.reserve(archive_inputs.size());
  bool seen_query_duplicate = false;
  for (std::size_t i = 0; i < archive_inputs.size(); ++i) {
    const auto& x = archive_inputs[i];
    double d2 = 0.0;
    for (std::size_t m = 0; m < x.size(); ++m) {
      const double d = x[m] - query[m];
      d2 += d * d;
    }
    if (d2 == 0.0) {
      if (seen_query_duplicate) continue;
      seen_query_duplicate = true;
    }
    dist.emplace_back(d2, i);
  }
  const std::size_t take = std::min(k, dist.size());
  std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(take), dist.end());
  std::vector<std::size_t> out(take);
  for (std::size_t i = 0; i < take; ++i) out[i] = dist[i].second;
  return out;
}

namespace detail {

struct CollapsedData {
  std::vector<std::vector<double>> inputs;
  std::vector<double> outputs;
};

// Exact-duplicate inputs make R singular; collapse them, averaging outputs.
CollapsedData collapse_duplicates(std::span<const std::vector<double>> inputs,
                                  std::span<const double> outputs) {
  CollapsedData out;
  std::vector<long> counts;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    bool merged = false;
    for (std::size_t j = 0; j < out.inputs.size(); ++j) {
      if (out.inputs[j] == inputs[i]) {
        out.outputs[j] += (outputs[i] - out.outputs[j]) / static_cast<double>(counts[j] + 1);
        ++counts[j];
        merged = true;
        break;
      }
    }
    if (!merged) {
      out.inputs.push_back(inputs[i]);
      out.outputs.push_back(outputs[i]);
      counts.push_back(1);
    }
  }
  return out;
}

}  // namespace detail

class KrigingFitter {
 public:
  using CollapsedData = detail::CollapsedData;

  KrigingFitter(CollapsedData data, const SurrogateConfig& cfg)
      : data_(std::move(data)), cfg_(cfg) {
    n_ = data_.inputs.size();
    dim_ = data_.inputs.front().size();
    const std::size_t pairs = n_ * (n_ - 1) / 2;
    sqdiff_.assign(dim_ * pairs, 0.0);
    std::size_t p = 0;
    for (std::size_t i = 1; i < n_; ++i) {
      for (std::size_t j = 0; j < i; ++j, ++p) {
        for (std::size_t m = 0; m < dim_; ++m) {
          const double d = data_.inputs[i][m] - data_.inputs[j][m];
          sqdiff_[m * pairs + p] = d * d;
        }
      }
    }
    exponent_.assign(pairs, 0.0);
    r_ = Eigen::MatrixXd(n_, n_);
    y_ = Eigen::Map<const Eigen::VectorXd>(data_.outputs.data(), static_cast<Eigen::Index>(n_));
  }

  const CollapsedData& data() const { return data_; }

  // Concentrated log-likelihood at theta; -inf when the correlation matrix
  // stays indefinite at the maximum jitter.
  double loglik(const std::vector<double>& theta) {
    fill_exponent(theta);
    double jitter = 0.0;
    if (!factorize(&jitter)) return -std::numeric_limits<double>::infinity();
    const Eigen::VectorXd rinv_y = llt_.solve(y_);
    const Eigen::VectorXd rinv_1 = llt_.solve(Eigen::VectorXd::Ones(static_cast<Eigen::Index>(n_)));
    const double s1 = rinv_1.sum();
    const double beta = rinv_y.sum() / s1;
    const Eigen::VectorXd rinv_res = rinv_y - beta * rinv_1;
    double sigma2 = 0.0;
    for (std::size_t i = 0; i < n_; ++i)
      sigma2 += (data_.outputs[i] - beta) * rinv_res(static_cast<Eigen::Index>(i));
    sigma2 /= static_cast<double>(n_);
    sigma2 = std::max(sigma2, 1e-300);
    double logdet = 0.0;
    const auto& l = llt_.matrixLLT();
    for (std::size_t i = 0; i < n_; ++i)
      logdet += 2.0 * std::log(l(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)));
    return -0.5 * (static_cast<double>(n_) * std::log(sigma2) + logdet);
  }

  KrigingModel finalize(std::vector<double> theta) {
    fill_exponent(theta);
    double jitter = 0.0;
    if (!factorize(&jitter))
      throw KrigingFitError("kriging: correlation matrix not positive definite at maximum jitter");

    KrigingModel model;
    model.n_points_ = n_;
    model.dim_ = dim_;
    model.inputs_.resize(n_ * dim_);
    for (std::size_t i = 0; i < n_; ++i)
      std::copy(data_.inputs[i].begin(), data_.inputs[i].end(), model.inputs_.begin() + static_cast<std::ptrdiff_t>(i * dim_));
    model.outputs_ = data_.outputs;
    model.theta_ = std::move(theta);
    model.jitter_ = jitter;

    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(n_));
    const Eigen::VectorXd rinv_y = llt_.solve(y_);
    const Eigen::VectorXd rinv_1 = llt_.solve(ones);
    const double s1 = rinv_1.sum();
    model.beta_ = rinv_y.sum() / s1;
    const Eigen::VectorXd rinv_res = rinv_y - model.beta_ * rinv_1;
    double sigma2 = 0.0;
    for (std::size_t i = 0; i < n_; ++i)
      sigma2 += (data_.outputs[i] - model.beta_) * rinv_res(static_cast<Eigen::Index>(i));
    model.process_variance_ = std::max(0.0, sigma2 / static_cast<double>(n_));

    model.alpha_.assign(rinv_res.data(), rinv_res.data() + n_);
    const auto& l = llt_.matrixLLT();
    model.chol_.assign(n_ * n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j <= i; ++j)
        model.chol_[i * n_ + j] = l(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    const Eigen::VectorXd w =
        l.triangularView<Eigen::Lower>().solve(ones);
    model.ones_solve_.assign(w.data(), w.data() + n_);
    model.one_rinv_one_ = w.squaredNorm();
    return model;
  }

 private:
  void fill_exponent(const std::vector<double>& theta) {
    const std::size_t pairs = exponent_.size();
    std::fill(exponent_.begin(), exponent_.end(), 0.0);
    for (std::size_t m = 0; m < dim_; ++m) {
      const double t = theta[m];
      const double* d = sqdiff_.data() + m * pairs;
      for (std::size_t p = 0; p < pairs; ++p) exponent_[p] += t * d[p];
    }
  }

  bool factorize(double* jitter_used) {
    std::size_t p = 0;
    for (std::size_t i = 1; i < n_; ++i) {
      for (std::size_t j = 0; j < i; ++j, ++p) {
        const double v = std::exp(-exponent_[p]);
        r_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
        r_(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
      }
    }
    for (double jitter = cfg_.jitter_start;; jitter *= 10.0) {
      for (std::size_t i = 0; i < n_; ++i)
        r_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1.0 + jitter;
      llt_.compute(r_);
      if (llt_.info() == Eigen::Success) {
        *jitter_used = jitter;
        return true;
      }
      if (jitter >= cfg_.jitter_max) return false;
    }
  }

  CollapsedData data_;
  SurrogateConfig cfg_;
  std::size_t n_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> sqdiff_;    // per-coordinate squared differences, pair-major
  std::vector<double> exponent_;  // sum_m theta_m * sqdiff_m per pair
  Eigen::MatrixXd r_;
  Eigen::VectorXd y_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
};

namespace {

constexpr double kGolden = 0.6180339887498949;

// Golden-section maximization of f over [lo, hi] with a fixed evaluation
// budget; returns the best point seen.
template <typename F>
std::pair<double, double> golden_max(F&& f, double lo, double hi, int evals) {
  double a = lo, b = hi;
  double x1 = b - kGolden * (b - a);
  double x2 = a + kGolden * (b - a);
  double f1 = f(x1), f2 = f(x2);
  double best_x = f1 >= f2 ? x1 : x2;
  double best_f = std::max(f1, f2);
  for (int i = 2; i < evals; ++i) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGolden * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGolden * (b - a);
      f2 = f(x2);
    }
    if (f1 > best_f) { best_f = f1; best_x = x1; }
    if (f2 > best_f) { best_f = f2; best_x = x2; }
  }
  return {best_x, best_f};
}

}  // namespace

KrigingModel KrigingModel::fit(std::span<const std::vector<double>> inputs,
                               std::span<const double> outputs, const SurrogateConfig& cfg) {
  if (inputs.size() != outputs.size())
    throw std::invalid_argument("kriging fit: inputs/outputs size mismatch");
  for (double y : outputs)
    if (!std::isfinite(y)) throw std::invalid_argument("kriging fit: non-finite output");

  detail::CollapsedData data = detail::collapse_duplicates(inputs, outputs);
  if (data.inputs.size() < 2)
    throw KrigingFitError("kriging fit: fewer than 2 distinct inputs");

  const auto [ymin, ymax] = std::minmax_element(data.outputs.begin(), data.outputs.end());
  if (*ymin == *ymax) {
    KrigingModel model;
    model.n_points_ = data.inputs.size();
    model.dim_ = data.inputs.front().size();
    model.beta_ = *ymin;
    model.process_variance_ = 0.0;
    model.theta_.assign(model.dim_, cfg.theta_start);
    model.degenerate_ = true;
    return model;
  }

  const std::size_t dim = data.inputs.front().size();
  KrigingFitter fitter(std::move(data), cfg);

  const double lo = std::log10(cfg.theta_lower);
  const double hi = std::log10(cfg.theta_upper);

  auto optimize_from = [&](std::vector<double> log_theta) {
    std::vector<double> theta(dim);
    auto theta_of = [&](const std::vector<double>& lt) {
      for (std::size_t m = 0; m < dim; ++m) theta[m] = std::pow(10.0, lt[m]);
      return theta;
    };
    double best = fitter.loglik(theta_of(log_theta));
    for (int sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
      const double before = best;
      for (std::size_t m = 0; m < dim; ++m) {
        auto line = [&](double t) {
          std::vector<double> lt = log_theta;
          lt[m] = t;
          return fitter.loglik(theta_of(lt));
        };
        const auto [x, fx] = golden_max(line, lo, hi, cfg.line_search_evals);
        if (fx > best) {
          best = fx;
          log_theta[m] = x;
        }
      }
      if (best - before < 1e-6) break;
    }
    return std::make_pair(log_theta, best);
  };

  std::vector<double> start(dim, std::log10(cfg.theta_start));
  auto [best_lt, best_ll] = optimize_from(start);

  if (cfg.extra_starts > 0) {
    Rng rng(0x6b726967u);  // fixed stream: fit is deterministic in its inputs
    for (int s = 0; s < cfg.extra_starts; ++s) {
      std::vector<double> lt(dim);
      for (std::size_t m = 0; m < dim; ++m) lt[m] = rng.uniform(lo, hi);
      auto [cand_lt, cand_ll] = optimize_from(lt);
      if (cand_ll > best_ll) {
        best_ll = cand_ll;
        best_lt = cand_lt;
      }
    }
  }

  std::vector<double> theta(dim);
  for (std::size_t m = 0; m < dim; ++m) theta[m] = std::pow(10.0, best_lt[m]);
  return fitter.finalize(std::move(theta));
}

KrigingModel KrigingModel::fit_with_theta(std::span<const std::vector<double>> inputs,
                                          std::span<const double> outputs,
                                          std::vector<double> theta, const SurrogateConfig& cfg) {
  if (inputs.size() != outputs.size())
    throw std::invalid_argument("kriging fit: inputs/outputs size mismatch");
  detail::CollapsedData data = detail::collapse_duplicates(inputs, outputs);
  if (data.inputs.size() < 2)
    throw KrigingFitError("kriging fit: fewer than 2 distinct inputs");
  KrigingFitter fitter(std::move(data), cfg);
  return fitter.finalize(std::move(theta));
}

void KrigingModel::predict_core(const std::vector<double>& query, double* mean,
                                double* raw_variance) const {
  if (query.size() != dim_) throw std::invalid_argument("kriging predict: dimension mismatch");
  if (degenerate_) {
    *mean = beta_;
    *raw_variance = 0.0;
    return;
  }

  const std::size_t n = n_points_;
  std::vector<double> r0(n);
  for (std::size_t i = 0; i < n; ++i) {
    double e = 0.0, d2 = 0.0;
    const double* xi = inputs_.data() + i * dim_;
    for (std::size_t m = 0; m < dim_; ++m) {
      const double d = query[m] - xi[m];
      d2 += d * d;
      e += theta_[m] * d * d;
    }
    // The nugget belongs to the model's covariance at zero distance, so
    // predictions at training points interpolate exactly.
    r0[i] = std::exp(-e) + (d2 == 0.0 ? jitter_ : 0.0);
  }

  double mu = beta_;
  for (std::size_t i = 0; i < n; ++i) mu += r0[i] * alpha_[i];
  *mean = mu;

  // v = L^{-1} r0 by forward substitution.
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = r0[i];
    const double* li = chol_.data() + i * n;
    for (std::size_t j = 0; j < i; ++j) s -= li[j] * v[j];
    v[i] = s / li[i];
  }
  double vtv = 0.0, wtv = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    vtv += v[i] * v[i];
    wtv += ones_solve_[i] * v[i];
  }
  const double trend_term = (1.0 - wtv) * (1.0 - wtv) / one_rinv_one_;
  *raw_variance = process_variance_ * (1.0 - vtv + trend_term);
}

Prediction KrigingModel::predict(const std::vector<double>& query) const {
  double mean = 0.0, var = 0.0;
  predict_core(query, &mean, &var);
  return Prediction{mean, std::sqrt(std::max(0.0, var))};
}

double KrigingModel::predictive_variance_raw(const std::vector<double>& query) const {
  double mean = 0.0, var = 0.0;
  predict_core(query, &mean, &var);
  return var;
}

}  // namespace sapeo
