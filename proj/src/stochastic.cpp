#include "altseq/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include <Eigen/Dense>

#include "altseq/parallel.hpp"

namespace altseq {

namespace {

void shuffle_in_place(Permutation& p, Rng& rng) {
  for (std::size_t i = p.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    std::swap(p[i - 1], p[j]);
  }
}

void check_x(double x) {
  if (!(x >= 0.0 && x < 1.0)) {
    throw std::invalid_argument("x must lie in [0, 1)");
  }
}

}  // namespace

const char* to_string(SamplingMethod m) {
  switch (m) {
    case SamplingMethod::kDirect:
      return "direct";
    case SamplingMethod::kThinning:
      return "thinning";
    case SamplingMethod::kBinomial:
      return "binomial";
  }
  return "?";
}

SamplingMethod parse_sampling_method(const std::string& s) {
  if (s == "direct") return SamplingMethod::kDirect;
  if (s == "thinning") return SamplingMethod::kThinning;
  if (s == "binomial") return SamplingMethod::kBinomial;
  throw std::invalid_argument("unknown sampling method '" + s + "'");
}

RealSeq sample_real_seq(std::size_t n, Rng& rng) {
  RealSeq y(n);
  for (auto& v : y) v = rng.uniform01();
  return y;
}

RealSeq sample_real_seq(std::size_t n, const SeedSpec& seed) {
  Rng rng(seed);
  return sample_real_seq(n, rng);
}

Permutation sample_permutation(std::size_t n, Rng& rng,
                               PermutationRoute route) {
  if (route == PermutationRoute::kRank) return psi(sample_real_seq(n, rng));
  Permutation p(n);
  std::iota(p.begin(), p.end(), Value{1});
  shuffle_in_place(p, rng);
  return p;
}

Permutation sample_permutation(std::size_t n, const SeedSpec& seed,
                               PermutationRoute route) {
  Rng rng(seed);
  return sample_permutation(n, rng, route);
}

std::size_t sample_L_direct(std::size_t n, const Strength& strength, Rng& rng,
                            PermutationRoute route) {
  if (const auto* ks = std::get_if<KStrength>(&strength)) {
    return greedy_k_length(sample_permutation(n, rng, route), ks->k);
  }
  const double x = std::get<XStrength>(strength).x;
  check_x(x);
  return greedy_x_length(sample_real_seq(n, rng), x);
}

std::size_t sample_L_by_thinning_recipe(std::size_t n, double x, Rng& rng) {
  check_x(x);
  std::binomial_distribution<std::uint64_t> size_law(n, 1.0 - x);
  const auto z = static_cast<std::size_t>(size_law(rng.engine()));
  return greedy_k_length(sample_permutation(z, rng, PermutationRoute::kShuffle),
                         1);
}

LengthHistogram sample_lengths(std::size_t n, const Strength& strength,
                               std::uint64_t samples, const SeedSpec& seed,
                               SamplingMethod method, unsigned workers) {
  const bool k_mode = std::holds_alternative<KStrength>(strength);
  if (k_mode && method != SamplingMethod::kDirect) {
    throw std::invalid_argument(std::string("method '") + to_string(method) +
                                "' needs an x strength");
  }
  if (!k_mode) check_x(std::get<XStrength>(strength).x);

  const auto parts = map_chunks<LengthHistogram>(
      samples, kSampleChunk, workers, [&](const ChunkRange& c) {
        Rng rng(seed, c.index);
        LengthHistogram h;
        h.counts.assign(n + 1, 0);
        for (std::uint64_t s = c.begin; s < c.end; ++s) {
          std::size_t len = 0;
          switch (method) {
            case SamplingMethod::kDirect:
              len = sample_L_direct(n, strength, rng);
              break;
            case SamplingMethod::kBinomial:
              len = sample_L_by_thinning_recipe(
                  n, std::get<XStrength>(strength).x, rng);
              break;
            case SamplingMethod::kThinning: {
              const double x = std::get<XStrength>(strength).x;
              const auto rec = thinning_transform(sample_real_seq(n, rng), x);
              len = greedy_x_length(rec.z_values, 0.0);
              break;
            }
          }
          h.add(len);
        }
        return h;
      });
  LengthHistogram total;
  total.counts.assign(n + 1, 0);
  for (const auto& p : parts) total.merge(p);
  return total;
}

MomentsResult estimate_moments(std::size_t n, const Strength& strength,
                               std::uint64_t samples, const SeedSpec& seed,
                               SamplingMethod method, unsigned workers) {
  if (samples < 100) {
    throw std::invalid_argument("estimate_moments needs at least 100 samples");
  }
  MomentsResult out;
  out.histogram = sample_lengths(n, strength, samples, seed, method, workers);
  const auto est = estimate_from_histogram(out.histogram);
  const std::string label =
      std::holds_alternative<KStrength>(strength)
          ? "L_{" + std::to_string(n) + ",k=" +
                std::to_string(std::get<KStrength>(strength).k) + "}"
          : "L_{" + std::to_string(n) + ",x=" +
                format_double(std::get<XStrength>(strength).x) + "}";
  out.mean = {"mean " + label, est.mean, est.mean_se, est.samples, seed};
  out.variance = {"variance " + label, est.variance, est.variance_se,
                  est.samples, seed};
  return out;
}

KsConvergence ks_convergence(std::size_t n, std::uint64_t trials,
                             const SeedSpec& seed, unsigned workers) {
  if (n == 0 || trials == 0) {
    throw std::invalid_argument("ks_convergence needs n >= 1 and trials >= 1");
  }
  const auto parts = map_chunks<std::vector<double>>(
      trials, kSampleChunk, workers, [&](const ChunkRange& c) {
        Rng rng(seed, c.index);
        std::vector<double> out;
        out.reserve(c.end - c.begin);
        for (std::uint64_t t = c.begin; t < c.end; ++t) {
          out.push_back(ks_sup(sample_real_seq(n, rng)));
        }
        return out;
      });

  const double rn = std::sqrt(static_cast<double>(n));
  const double tail_cut = 0.5 * std::cbrt(1.0 / static_cast<double>(n));
  std::vector<double> scaled;
  scaled.reserve(trials);
  double sum = 0;
  std::uint64_t tail = 0;
  for (const auto& part : parts) {
    for (double d : part) {
      sum += rn * d;
      if (d > tail_cut) ++tail;
      scaled.push_back((rn + 0.12 + 0.11 / rn) * d);
    }
  }
  std::sort(scaled.begin(), scaled.end());

  KsConvergence out;
  out.n = n;
  out.trials = trials;
  out.mean_scaled = sum / static_cast<double>(trials);
  out.tail_fraction = static_cast<double>(tail) / static_cast<double>(trials);
  out.tail_limit = 1.0 - kolmogorov_cdf(0.5 * std::pow(n, 1.0 / 6.0));
  const double m = static_cast<double>(scaled.size());
  for (std::size_t i = 0; i < scaled.size(); ++i) {
    const double k = kolmogorov_cdf(scaled[i]);
    out.max_cdf_gap = std::max({out.max_cdf_gap, (i + 1) / m - k, k - i / m});
  }
  return out;
}

std::array<double, 3> fit_quadratic(std::span<const VariancePoint> points) {
  if (points.size() < 3) {
    throw std::invalid_argument("quadratic fit needs at least 3 points");
  }
  Eigen::MatrixXd design(points.size(), 3);
  Eigen::VectorXd rhs(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    const double w = p.variance_se > 0 ? 1.0 / p.variance_se : 1.0;
    design(i, 0) = w;
    design(i, 1) = w * p.x;
    design(i, 2) = w * p.x * p.x;
    rhs(i) = w * p.variance;
  }
  const Eigen::Vector3d c = design.colPivHouseholderQr().solve(rhs);
  return {c(0), c(1), c(2)};
}

VarianceCurve variance_curve(std::size_t n, std::span<const double> x_grid,
                             std::uint64_t samples_per_point,
                             const SeedSpec& seed, unsigned workers) {
  if (samples_per_point < 10000) {
    throw std::invalid_argument("variance_curve needs >= 10^4 samples per point");
  }
  VarianceCurve out;
  out.n = n;
  for (std::size_t i = 0; i < x_grid.size(); ++i) {
    const double x = x_grid[i];
    check_x(x);
    const SeedSpec point_seed{seed.master_seed, seed.stream_index + i};
    const auto h = sample_lengths(n, XStrength{x}, samples_per_point,
                                  point_seed, SamplingMethod::kDirect, workers);
    const auto est = estimate_from_histogram(h);
    out.points.push_back({x, est.mean, est.variance, est.variance_se});
  }
  out.coefficients = fit_quadratic(out.points);
  out.fitted_argmax = out.coefficients[2] < 0
                          ? -out.coefficients[1] / (2 * out.coefficients[2])
                          : std::numeric_limits<double>::quiet_NaN();
  return out;
}

}  // namespace altseq
