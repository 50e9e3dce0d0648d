#include "altseq/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

namespace altseq {

void LengthHistogram::add(std::size_t length, std::uint64_t times) {
  if (counts.size() <= length) counts.resize(length + 1, 0);
  counts[length] += times;
}

void LengthHistogram::merge(const LengthHistogram& other) {
  if (counts.size() < other.counts.size()) counts.resize(other.counts.size());
  for (std::size_t i = 0; i < other.counts.size(); ++i) {
    counts[i] += other.counts[i];
  }
}

std::uint64_t LengthHistogram::total() const {
  std::uint64_t t = 0;
  for (auto c : counts) t += c;
  return t;
}

double LengthHistogram::frequency(std::size_t length) const {
  const auto t = total();
  if (t == 0 || length >= counts.size()) return 0.0;
  return static_cast<double>(counts[length]) / static_cast<double>(t);
}

MomentEstimate estimate_from_histogram(const LengthHistogram& h) {
  MomentEstimate out;
  out.samples = h.total();
  if (out.samples < 3) {
    throw std::invalid_argument("moment estimate needs at least 3 samples");
  }
  const long double n = static_cast<long double>(out.samples);

  long double sum = 0;
  for (std::size_t v = 0; v < h.counts.size(); ++v) {
    sum += static_cast<long double>(v) * h.counts[v];
  }
  const long double mean = sum / n;
  long double m2 = 0;
  for (std::size_t v = 0; v < h.counts.size(); ++v) {
    const long double d = static_cast<long double>(v) - mean;
    m2 += d * d * h.counts[v];
  }
  const long double var = m2 / (n - 1);

  // Leave-one-out variance depends only on the value removed:
  //   M2' = M2 - (v - mean)^2 * n / (n - 1),  s2' = M2' / (n - 2).
  long double theta_bar = 0;
  std::vector<long double> loo(h.counts.size(), 0);
  for (std::size_t v = 0; v < h.counts.size(); ++v) {
    if (h.counts[v] == 0) continue;
    const long double d = static_cast<long double>(v) - mean;
    loo[v] = (m2 - d * d * n / (n - 1)) / (n - 2);
    theta_bar += loo[v] * h.counts[v];
  }
  theta_bar /= n;
  long double spread = 0;
  for (std::size_t v = 0; v < h.counts.size(); ++v) {
    if (h.counts[v] == 0) continue;
    const long double d = loo[v] - theta_bar;
    spread += d * d * h.counts[v];
  }

  out.mean = static_cast<double>(mean);
  out.mean_se = static_cast<double>(std::sqrt(var / n));
  out.variance = static_cast<double>(var);
  out.variance_se = static_cast<double>(std::sqrt((n - 1) / n * spread));
  return out;
}

double chi_square_upper_quantile(int dof, double alpha) {
  if (dof < 1) return std::numeric_limits<double>::infinity();
  boost::math::chi_squared dist(dof);
  return boost::math::quantile(boost::math::complement(dist, alpha));
}

double normal_upper_quantile(double alpha) {
  boost::math::normal dist;
  return boost::math::quantile(boost::math::complement(dist, alpha));
}

namespace {

ChiSquareResult finish(double statistic, int dof, double alpha) {
  ChiSquareResult r;
  r.statistic = statistic;
  r.dof = dof;
  if (dof < 1) {
    r.critical = std::numeric_limits<double>::infinity();
    r.p_value = 1.0;
    r.pass = true;
    return r;
  }
  r.critical = chi_square_upper_quantile(dof, alpha);
  if (std::isfinite(statistic)) {
    boost::math::chi_squared dist(dof);
    r.p_value = boost::math::cdf(boost::math::complement(dist, statistic));
  } else {
    r.p_value = 0.0;
  }
  r.pass = statistic <= r.critical;
  return r;
}

}  // namespace

ChiSquareResult chi_square_gof(const LengthHistogram& observed,
                               const LengthPmf& pmf, double alpha) {
  const double total = static_cast<double>(observed.total());
  const std::size_t cells = std::max(observed.counts.size(), pmf.size());

  struct Cell {
    double obs = 0;
    double exp = 0;
  };
  std::vector<Cell> pooled;
  Cell acc;
  for (std::size_t v = 0; v < cells; ++v) {
    const double o = v < observed.counts.size() ? observed.counts[v] : 0.0;
    const double p = v < pmf.size() ? pmf[v] : 0.0;
    if (p <= 0.0) {
      if (o > 0) return finish(std::numeric_limits<double>::infinity(), 1, alpha);
      continue;
    }
    acc.obs += o;
    acc.exp += p * total;
    if (acc.exp >= 5.0) {
      pooled.push_back(acc);
      acc = {};
    }
  }
  if (acc.exp > 0 || acc.obs > 0) {
    if (pooled.empty()) {
      pooled.push_back(acc);
    } else {
      pooled.back().obs += acc.obs;
      pooled.back().exp += acc.exp;
    }
  }

  double stat = 0;
  for (const auto& c : pooled) {
    const double d = c.obs - c.exp;
    stat += d * d / c.exp;
  }
  return finish(stat, static_cast<int>(pooled.size()) - 1, alpha);
}

ChiSquareResult chi_square_two_sample(const LengthHistogram& a,
                                      const LengthHistogram& b, double alpha) {
  const double na = static_cast<double>(a.total());
  const double nb = static_cast<double>(b.total());
  if (na == 0 || nb == 0) {
    throw std::invalid_argument("two-sample chi-square needs two samples");
  }
  const std::size_t cells = std::max(a.counts.size(), b.counts.size());
  std::vector<std::pair<double, double>> pooled;
  std::pair<double, double> acc{0, 0};
  for (std::size_t v = 0; v < cells; ++v) {
    acc.first += v < a.counts.size() ? a.counts[v] : 0.0;
    acc.second += v < b.counts.size() ? b.counts[v] : 0.0;
    if (acc.first + acc.second >= 10.0) {
      pooled.push_back(acc);
      acc = {0, 0};
    }
  }
  if (acc.first + acc.second > 0) {
    if (pooled.empty()) {
      pooled.push_back(acc);
    } else {
      pooled.back().first += acc.first;
      pooled.back().second += acc.second;
    }
  }
  const double ka = std::sqrt(nb / na);
  const double kb = std::sqrt(na / nb);
  double stat = 0;
  for (const auto& [oa, ob] : pooled) {
    const double d = ka * oa - kb * ob;
    stat += d * d / (oa + ob);
  }
  return finish(stat, static_cast<int>(pooled.size()) - 1, alpha);
}

double total_variation(const LengthHistogram& observed, const LengthPmf& pmf) {
  const double total = static_cast<double>(observed.total());
  const std::size_t cells = std::max(observed.counts.size(), pmf.size());
  double tv = 0;
  for (std::size_t v = 0; v < cells; ++v) {
    const double o =
        v < observed.counts.size() ? observed.counts[v] / total : 0.0;
    const double p = v < pmf.size() ? pmf[v] : 0.0;
    tv += std::abs(o - p);
  }
  return 0.5 * tv;
}

double total_variation(const LengthHistogram& a, const LengthHistogram& b) {
  const double na = static_cast<double>(a.total());
  const double nb = static_cast<double>(b.total());
  const std::size_t cells = std::max(a.counts.size(), b.counts.size());
  double tv = 0;
  for (std::size_t v = 0; v < cells; ++v) {
    const double pa = v < a.counts.size() ? a.counts[v] / na : 0.0;
    const double pb = v < b.counts.size() ? b.counts[v] / nb : 0.0;
    tv += std::abs(pa - pb);
  }
  return 0.5 * tv;
}

double kolmogorov_cdf(double t) {
  if (t <= 0) return 0.0;
  constexpr double pi = std::numbers::pi;
  double sum = 0;
  if (t < 1.0) {
    // Jacobi theta form, fast for small t.
    for (int k = 1; k <= 50; ++k) {
      const double m = 2.0 * k - 1.0;
      const double term = std::exp(-m * m * pi * pi / (8.0 * t * t));
      sum += term;
      if (term < 1e-18) break;
    }
    return std::sqrt(2.0 * pi) / t * sum;
  }
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * t * t);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-18) break;
  }
  return 1.0 - 2.0 * sum;
}

double kolmogorov_quantile(double p) {
  if (p <= 0 || p >= 1) throw std::invalid_argument("quantile needs 0<p<1");
  double lo = 0.0;
  double hi = 10.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (kolmogorov_cdf(mid) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double ks_sup_sorted(std::span<const double> sorted) {
  if (sorted.empty()) throw std::invalid_argument("ks_sup: empty input");
  const double n = static_cast<double>(sorted.size());
  double sup = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double above = static_cast<double>(i + 1) / n - sorted[i];
    const double below = sorted[i] - static_cast<double>(i) / n;
    sup = std::max({sup, above, below});
  }
  return sup;
}

double ks_sup(std::span<const double> y) {
  std::vector<double> sorted(y.begin(), y.end());
  std::sort(sorted.begin(), sorted.end());
  return ks_sup_sorted(sorted);
}

KsTestResult ks_uniform_test(std::span<const double> values, double alpha) {
  KsTestResult r;
  r.n = values.size();
  r.statistic = ks_sup(values);
  r.scaled = std::sqrt(static_cast<double>(r.n)) * r.statistic;
  r.critical = kolmogorov_quantile(1.0 - alpha);
  r.pass = r.scaled <= r.critical;
  return r;
}

}  // namespace altseq
