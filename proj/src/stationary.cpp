#include "bdj/stationary.hpp"

#include <algorithm>
#include <cmath>

#include "bdj/linalg.hpp"
#include "bdj/series.hpp"

namespace bdj {

std::vector<double> root_jump_distribution(const ProcessModel& model) {
  const RateRow& row0 = model.rates_at(0);
  const double total = model.total_rate(0);
  std::vector<double> r(row0.lambda.size());
  for (std::size_t j = 0; j < r.size(); ++j) r[j] = row0.lambda[j] / total;
  return r;
}

std::vector<double> root_tail_weights(const ProcessModel& model) {
  std::vector<double> w = root_jump_distribution(model);
  for (std::size_t j = w.size() - 1; j > 0; --j) w[j - 1] += w[j];
  return w;
}

namespace {

constexpr std::int64_t kKmaxCap = 10000;
constexpr double kTailMassTarget = 1e-12;

void require_positive_recurrent(const ProcessModel& model, std::int64_t n_max) {
  const ClassificationResult c = classify(model, kClassifyTol, n_max);
  if (c.verdict != Verdict::positive_recurrent) {
    throw NotPositiveRecurrent(to_string(c.verdict));
  }
}

// phi~_{n-1} = (root tail weights) . M_1 ... M_{n-1} e1^T; the weighted
// phi that carries the law of the first jump out of 0.
ScaledScalar weighted_phi(const ProcessModel& model, Site n_minus_1) {
  ProductSweep sweep(model, ProductSweep::Kind::M, root_tail_weights(model));
  for (Site k = 0; k < n_minus_1; ++k) sweep.advance();
  return sweep.first();
}

}  // namespace

double exit_up_probability(const ProcessModel& model, Site a, Site b, Site k) {
  if (!(0 <= a && a < k && k < b)) {
    throw BadWindow("exit_up_probability needs 0 <= a < k < b");
  }
  // Right-to-left column sweep shares the suffix products across windows.
  ScaledVector u = ScaledVector::unit(model.R(), 0);
  ScaledScalar num, den = ScaledScalar::one();  // j = b term
  for (Site j = b - 1; j >= a + 1; --j) {
    u.mul_col(matrix_M(model, j));
    const ScaledScalar w = u.component(0);
    den += w;
    if (j <= k) num += w;
  }
  return std::min(1.0, ratio(num, den));
}

double hit_below_before(const ProcessModel& model, Site k, Site b) {
  if (!(1 <= k && k < b)) throw BadWindow("hit_below_before needs 1 <= k < b");
  ScaledVector u = ScaledVector::unit(model.R(), 0);
  ScaledScalar den = ScaledScalar::one();  // j = b term
  ScaledScalar w_k;
  for (Site j = b - 1; j >= k; --j) {
    u.mul_col(matrix_M(model, j));
    const ScaledScalar w = u.component(0);
    den += w;
    if (j == k) w_k = w;
  }
  return 1.0 - ratio(w_k, den);
}

double expected_occupation_embedded(const ProcessModel& model, Site n) {
  if (n == 0) return 1.0;
  const double factor = model.total_rate(n) / model.rates_at(n).mu;
  return weighted_phi(model, n - 1).to_double() * factor;
}

double embedded_return_time(const ProcessModel& model, double tol, std::int64_t n_max) {
  if (n_max <= 0) n_max = default_n_max(model);
  require_positive_recurrent(model, n_max);
  const TailInfo tail = tail_info(model);
  const PhiSeries s = sum_phi_series(model, root_tail_weights(model),
                                     WeightKind::occupation, tol, n_max, 0, tail);
  return 1.0 + s.value.to_double();
}

double continuous_return_time(const ProcessModel& model, double tol, std::int64_t n_max) {
  if (n_max <= 0) n_max = default_n_max(model);
  require_positive_recurrent(model, n_max);
  const TailInfo tail = tail_info(model);
  const PhiSeries s = sum_phi_series(model, root_tail_weights(model),
                                     WeightKind::inv_mu, tol, n_max, 0, tail);
  return 1.0 / model.total_rate(0) + s.value.to_double();
}

std::vector<double> pi_embedded(const ProcessModel& model, std::int64_t kmax, double tol,
                                std::int64_t n_max) {
  StationaryResult r = psi_stationary(model, kmax, tol, n_max);
  return std::move(r.pi);
}

StationaryResult psi_stationary(const ProcessModel& model, std::int64_t kmax, double tol,
                                std::int64_t n_max) {
  if (n_max <= 0) n_max = default_n_max(model);
  require_positive_recurrent(model, n_max);

  const TailInfo tail = tail_info(model);
  const std::vector<double> root = root_tail_weights(model);
  const std::int64_t hard_cap = std::max<std::int64_t>(kKmaxCap, kmax + 1);
  const std::int64_t collect = (kmax >= 0) ? kmax + 1 : kKmaxCap;
  const std::int64_t min_steps = (kmax >= 0) ? kmax + 1 : 0;

  const PhiSeries eta = sum_phi_series(model, root, WeightKind::inv_mu, tol,
                                       std::max(n_max, collect), collect, tail, min_steps);
  const PhiSeries occ = sum_phi_series(model, root, WeightKind::occupation, tol,
                                       std::max(n_max, collect), collect, tail, min_steps);

  const double nu0 = 1.0 / model.total_rate(0);
  ScaledScalar denom = eta.value;
  denom += ScaledScalar::from_double(nu0);

  StationaryResult res;
  res.Eeta = denom.to_double();
  res.ET = 1.0 + occ.value.to_double();
  res.rho_tail = tail.rho_tail;
  res.certified = eta.certified && occ.certified;

  // nu_k for k >= 1 are the stored eta-series terms; suffix masses pick kmax.
  const std::vector<double>& nu = eta.terms;
  std::int64_t chosen;
  if (kmax >= 0) {
    chosen = std::min<std::int64_t>(kmax, hard_cap);
  } else {
    // Smallest k whose certified tail mass is below target, capped.
    std::vector<double> suffix(nu.size() + 1, 0.0);
    for (std::size_t i = nu.size(); i > 0; --i) suffix[i - 1] = suffix[i] + nu[i - 1];
    chosen = static_cast<std::int64_t>(nu.size());
    for (std::size_t k = 0; k < nu.size(); ++k) {
      if ((suffix[k] + eta.residual_bound) / res.Eeta < kTailMassTarget) {
        chosen = static_cast<std::int64_t>(k);
        break;
      }
    }
    chosen = std::min<std::int64_t>(chosen, kKmaxCap);
  }
  const std::size_t have = nu.size();
  res.kmax = chosen;
  res.psi.resize(static_cast<std::size_t>(chosen) + 1, 0.0);
  res.pi.resize(static_cast<std::size_t>(chosen) + 1, 0.0);
  res.psi[0] = nu0 / res.Eeta;
  res.pi[0] = 1.0 / res.ET;
  for (std::int64_t k = 1; k <= chosen; ++k) {
    const std::size_t idx = static_cast<std::size_t>(k - 1);
    res.psi[static_cast<std::size_t>(k)] = (idx < have) ? nu[idx] / res.Eeta : 0.0;
    res.pi[static_cast<std::size_t>(k)] =
        (idx < occ.terms.size()) ? occ.terms[idx] / res.ET : 0.0;
  }

  double beyond = eta.residual_bound;
  for (std::size_t idx = static_cast<std::size_t>(chosen); idx < have; ++idx) {
    beyond += nu[idx];  // nu_{k} with k = idx+1 > chosen
  }
  res.tail_mass_bound = beyond / res.Eeta;
  return res;
}

}  // namespace bdj
