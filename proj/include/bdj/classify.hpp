#pragma once

#include <cstdint>
#include <string>

#include "bdj/model.hpp"
#include "bdj/scaled.hpp"
#include "bdj/series.hpp"

namespace bdj {

enum class Verdict { positive_recurrent, recurrent, inconclusive };

const char* to_string(Verdict v);

/// Outcome of the sufficient-condition tests, with the numeric evidence that
/// backs it. "inconclusive" is an honest answer: the conditions are
/// sufficient, not necessary, and nothing here ever claims transience.
struct ClassificationResult {
  Verdict verdict = Verdict::inconclusive;
  double rho_tail = 0.0;          // Perron root of the per-period tail M product
  int period = 1;
  ScaledScalar phi_last;          // last computed phi_n
  std::int64_t n_used = 0;
  ScaledScalar series_value;      // partial sum of sum (1/mu_n) phi_{n-1}
  double series_residual = 0.0;
  bool series_certified = false;
  bool phi_zero_exact = false;    // the matrix product vanished identically
  bool numerically_decided = false;  // rho ~ 1 boundary decided by phi_{n_max} < tol
  std::string note;
};

/// Default tolerance for classification decisions.
inline constexpr double kClassifyTol = 1e-10;

/// Applies the two sufficient conditions. rho_tail < 1 certifies a
/// geometrically convergent return-time series (positive recurrence, and the
/// phi_n -> 0 recurrence condition with it); rho_tail = 1 with phi_{n_max}
/// below tol is reported as recurrent (flagged numerically decided);
/// anything else is inconclusive.
ClassificationResult classify(const ProcessModel& model, double tol = kClassifyTol,
                              std::int64_t n_max = 0);

/// Partial sum of sum_{n>=1} (1/mu_n) phi_{n-1} with a residual bound.
struct SeriesSum {
  ScaledScalar value;
  double residual_bound = 0.0;
  bool certified = false;   // residual backed by a geometric certificate
};

/// Throws Diverged when partial sums blow past the overflow guard while the
/// tail is supercritical.
SeriesSum series_S(const ProcessModel& model, double tol = kClassifyTol,
                   std::int64_t n_max = 0);

}  // namespace bdj
