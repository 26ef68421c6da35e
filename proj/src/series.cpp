#include "bdj/series.hpp"

#include <algorithm>
#include <cmath>

namespace bdj {

TailInfo tail_info(const ProcessModel& model, double sr_tol) {
  TailInfo info;
  info.prefix_length = model.prefix_length();
  info.period = model.tail_period();
  SmallMatrix prod = matrix_M(model, info.prefix_length);
  for (int k = 1; k < info.period; ++k) {
    prod = prod * matrix_M(model, info.prefix_length + k);
  }
  info.rho_tail = spectral_radius(prod, sr_tol);
  info.rho_step = (info.period == 1) ? info.rho_tail
                                     : std::pow(info.rho_tail, 1.0 / info.period);
  return info;
}

PhiSeries sum_phi_series(const ProcessModel& model, const std::vector<double>& start,
                         WeightKind weight, double tol, std::int64_t n_max,
                         std::int64_t collect_max, const TailInfo& tail,
                         std::int64_t min_steps) {
  PhiSeries out;
  ProductSweep sweep(model, ProductSweep::Kind::M, start);

  const int p = tail.period;
  // Terms with n > settle involve tail sites only; block bookkeeping starts there.
  const std::int64_t settle = tail.prefix_length + p;

  ScaledScalar block_cur, block_prev;
  int block_fill = 0;
  bool have_prev_block = false;
  double last_block_ratio = -1.0;
  bool converged = false;

  for (std::int64_t n = 1; n <= n_max; ++n) {
    const Site site = n;
    const ScaledScalar phi_prev = sweep.first();  // start . M_1 ... M_{n-1} e1^T
    const RateRow& row = model.rates_at(site);
    const double w = (weight == WeightKind::inv_mu)
                         ? 1.0 / row.mu
                         : model.total_rate(site) / row.mu;
    const ScaledScalar term = phi_prev * w;
    out.value += term;
    if (static_cast<std::int64_t>(out.terms.size()) < collect_max) {
      out.terms.push_back(term.to_double());
    }
    if (out.value.exponent() > 980) {
      throw Diverged("series partial sums exceeded the overflow guard (tail spectral radius " +
                     std::to_string(tail.rho_tail) + ")");
    }

    sweep.advance();
    out.n_used = n;
    out.phi_last = sweep.first();

    if (sweep.state().is_zero()) {
      // Every remaining term is exactly zero.
      out.exact_zero = true;
      out.certified = true;
      out.residual_bound = 0.0;
      break;
    }

    if (n > settle) {
      block_cur += term;
      if (++block_fill == p) {
        if (have_prev_block && !block_prev.is_zero()) {
          last_block_ratio = ratio(block_cur, block_prev);
        }
        block_prev = block_cur;
        block_cur = ScaledScalar();
        block_fill = 0;
        have_prev_block = true;

        if (tail.rho_tail < 1.0 && last_block_ratio >= 0.0) {
          const double q = std::max(tail.rho_tail, last_block_ratio);
          if (q < 1.0) {
            const double bound = ratio(block_prev, out.value) * q / (1.0 - q);
            if (std::isfinite(bound) && bound <= tol) {
              out.certified = true;
              out.residual_bound = block_prev.to_double() * q / (1.0 - q);
              converged = true;
            }
          }
        }
      }
    }
    if (converged && n >= min_steps) break;
  }

  if (!out.certified) {
    // Honest fallback bound: one more geometric block when the tail is
    // subcritical, otherwise the last term (flagged uncertified).
    if (tail.rho_tail < 1.0 && have_prev_block && !block_prev.is_zero()) {
      const double q = std::max(tail.rho_tail, std::max(last_block_ratio, 0.0));
      out.residual_bound = (q < 1.0)
                               ? block_prev.to_double() * q / (1.0 - q)
                               : block_prev.to_double();
      out.certified = q < 1.0;
    } else {
      ScaledScalar last = block_fill > 0 ? block_cur : block_prev;
      out.residual_bound = last.to_double();
    }
  }
  // Pad collected terms with exact zeros after a terminated product.
  if (out.exact_zero) {
    while (static_cast<std::int64_t>(out.terms.size()) < collect_max) {
      out.terms.push_back(0.0);
    }
  }
  return out;
}

}  // namespace bdj
