#pragma once

#include <cstdint>
#include <vector>

#include "bdj/linalg.hpp"
#include "bdj/model.hpp"
#include "bdj/scaled.hpp"

namespace bdj {

/// Default sweep length: generous multiple of the finite description plus a
/// flat allowance, so desk-scale models converge long before the cap.
inline std::int64_t default_n_max(const ProcessModel& model) {
  return 10 * (model.prefix_length() + model.tail_period()) + 1000;
}

/// Spectral data of the tail: the per-period product of M matrices governs
/// the geometric decay of phi beyond the prefix.
struct TailInfo {
  Site prefix_length = 0;
  int period = 1;
  double rho_tail = 0.0;   // Perron root of the per-period M product
  double rho_step = 0.0;   // rho_tail^(1/period)
};

TailInfo tail_info(const ProcessModel& model, double sr_tol = 1e-12);

/// Which per-site weight multiplies phi~_{n-1} in a series term.
enum class WeightKind {
  inv_mu,      // 1/mu_n           (return-time / psi series)
  occupation,  // (mu_n+Lambda_n)/mu_n   (embedded occupation / ET series)
};

/// Partial sum of sum_{n>=1} w_n * (start . M_1 ... M_{n-1} e1^T) together
/// with its truncation certificate.
struct PhiSeries {
  ScaledScalar value;
  double residual_bound = 0.0;
  bool certified = false;
  bool exact_zero = false;      // the product vector hit exactly zero
  std::int64_t n_used = 0;
  ScaledScalar phi_last;        // start . M_1 ... M_{n_used} e1^T
  std::vector<double> terms;    // terms[k] = w_{k+1} * phi~_k, k < collect_max
};

/// Sums the weighted series with per-step renormalization. Terminates when
/// the certified geometric tail bound (per-period blocks, ratio bounded by
/// max(rho_tail, observed block ratio)) drops below tol * value, the vector
/// state becomes exactly zero, or n_max is reached; a converged sweep still
/// continues to min_steps so that callers get the leading terms they asked
/// for. Collects up to collect_max leading terms.
PhiSeries sum_phi_series(const ProcessModel& model, const std::vector<double>& start,
                         WeightKind weight, double tol, std::int64_t n_max,
                         std::int64_t collect_max, const TailInfo& tail,
                         std::int64_t min_steps = 0);

}  // namespace bdj
