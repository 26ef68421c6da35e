#include "bdj/classify.hpp"

#include <cmath>
#include <vector>

namespace bdj {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::positive_recurrent: return "positive_recurrent";
    case Verdict::recurrent: return "recurrent";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

namespace {

std::vector<double> e1(const ProcessModel& model) {
  std::vector<double> v(static_cast<std::size_t>(model.R()), 0.0);
  v[0] = 1.0;
  return v;
}

}  // namespace

ClassificationResult classify(const ProcessModel& model, double tol, std::int64_t n_max) {
  if (n_max <= 0) n_max = default_n_max(model);
  const TailInfo tail = tail_info(model);

  ClassificationResult res;
  res.rho_tail = tail.rho_tail;
  res.period = tail.period;

  if (tail.rho_tail > 1.0 + tol) {
    // No transience criterion exists here; probe phi briefly for evidence
    // only. The vector can still die out exactly when some rates are zero.
    ProductSweep sweep(model, ProductSweep::Kind::M, e1(model));
    ScaledScalar sum;
    const std::int64_t probe = tail.prefix_length + tail.period + 16;
    for (std::int64_t n = 1; n <= probe; ++n) {
      sum += sweep.first() * (1.0 / model.rates_at(n).mu);
      sweep.advance();
      res.n_used = n;
      if (sweep.state().is_zero()) break;
    }
    res.phi_last = sweep.first();
    res.series_value = sum;
    if (sweep.state().is_zero()) {
      res.verdict = Verdict::positive_recurrent;
      res.phi_zero_exact = true;
      res.series_certified = true;
      res.note = "matrix product vanished identically; the return-time series is a finite sum";
      return res;
    }
    res.verdict = Verdict::inconclusive;
    res.note = "tail spectral radius exceeds 1; the sufficient conditions do not apply";
    return res;
  }

  const PhiSeries series =
      sum_phi_series(model, e1(model), WeightKind::inv_mu, tol, n_max, 0, tail);
  res.phi_last = series.phi_last;
  res.n_used = series.n_used;
  res.series_value = series.value;
  res.series_residual = series.residual_bound;
  res.series_certified = series.certified;
  res.phi_zero_exact = series.exact_zero;

  if (series.exact_zero) {
    res.verdict = Verdict::positive_recurrent;
    res.note = "matrix product vanished identically; the return-time series is a finite sum";
    return res;
  }
  if (tail.rho_tail < 1.0 - tol) {
    res.verdict = Verdict::positive_recurrent;
    res.note = "tail spectral radius below 1 certifies phi_n -> 0 and a summable return-time series";
    return res;
  }
  // rho_tail within tol of 1: the boundary case is decided numerically.
  if (res.phi_last.to_double() < tol) {
    res.verdict = Verdict::recurrent;
    res.numerically_decided = true;
    res.note = "tail spectral radius is 1 within tolerance and phi_{n_max} fell below tol";
    return res;
  }
  res.verdict = Verdict::inconclusive;
  res.numerically_decided = true;
  res.note = "tail spectral radius is 1 within tolerance but phi did not decay below tol";
  return res;
}

SeriesSum series_S(const ProcessModel& model, double tol, std::int64_t n_max) {
  if (n_max <= 0) n_max = default_n_max(model);
  const TailInfo tail = tail_info(model);
  const PhiSeries series =
      sum_phi_series(model, e1(model), WeightKind::inv_mu, tol, n_max, 0, tail);
  return SeriesSum{series.value, series.residual_bound, series.certified};
}

}  // namespace bdj
