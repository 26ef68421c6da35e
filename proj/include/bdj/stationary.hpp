#pragma once

#include <cstdint>
#include <vector>

#include "bdj/classify.hpp"
#include "bdj/model.hpp"

namespace bdj {

/// Stationary distribution of the process together with the embedded-chain
/// law and the return-time means it is built from. psi is reported exactly
/// as the formulas produce it (not renormalized over the truncation); the
/// certified mass beyond kmax is in tail_mass_bound.
struct StationaryResult {
  std::vector<double> psi;   // psi[k], k = 0..kmax
  std::vector<double> pi;    // pi[k],  k = 0..kmax
  double ET = 0.0;           // mean embedded return time to 0
  double Eeta = 0.0;         // mean continuous return time to 0
  std::int64_t kmax = 0;
  double tail_mass_bound = 0.0;
  bool certified = false;
  double rho_tail = 0.0;
};

/// Default relative tolerance for the stationary series sums.
inline constexpr double kStationaryTol = 1e-12;

/// Probability that the embedded walk started at k exits [a+1, b-1] upward
/// (lands in [b, inf)) rather than at a. Requires 0 <= a < k < b.
double exit_up_probability(const ProcessModel& model, Site a, Site b, Site k);

/// Probability that the embedded walk started at k hits k-1 before [b, inf).
/// Requires 1 <= k < b.
double hit_below_before(const ProcessModel& model, Site k, Site b);

/// Expected number of visits to site n within one excursion of the embedded
/// chain (exactly 1 for n = 0).
double expected_occupation_embedded(const ProcessModel& model, Site n);

/// ET: mean number of embedded steps until the first return to 0.
/// Throws NotPositiveRecurrent unless the classifier certifies it.
double embedded_return_time(const ProcessModel& model, double tol = kStationaryTol,
                            std::int64_t n_max = 0);

/// E(eta): mean continuous time until the first return to 0 (including the
/// initial sojourn at 0).
double continuous_return_time(const ProcessModel& model, double tol = kStationaryTol,
                              std::int64_t n_max = 0);

/// Stationary distribution of the embedded chain, pi_0..pi_kmax.
std::vector<double> pi_embedded(const ProcessModel& model, std::int64_t kmax,
                                double tol = kStationaryTol, std::int64_t n_max = 0);

/// Full stationary computation. kmax < 0 selects the smallest k whose
/// certified tail mass drops below 1e-12 (capped at 10^4).
StationaryResult psi_stationary(const ProcessModel& model, std::int64_t kmax = -1,
                                double tol = kStationaryTol, std::int64_t n_max = 0);

/// Distribution of the first jump out of 0 (probability of each jump size).
std::vector<double> root_jump_distribution(const ProcessModel& model);

/// Tail sums of the first-jump distribution: weights[j-1] = P(first jump >= j).
/// This is the left vector that replaces e1 in the M-product form of the
/// excursion expectations; it equals e1 whenever only size-1 jumps leave 0.
std::vector<double> root_tail_weights(const ProcessModel& model);

}  // namespace bdj
