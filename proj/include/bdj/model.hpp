#pragma once

#include <cstdint>
#include <vector>

#include "bdj/errors.hpp"

namespace bdj {

using Site = std::int64_t;

/// Jump rates at one site: death rate mu (down by 1) and birth rates
/// lambda[r-1] for an upward jump of size r, r = 1..R.
struct RateRow {
  double mu = 0.0;
  std::vector<double> lambda;

  double total() const {
    double t = mu;
    for (double l : lambda) t += l;
    return t;
  }
};

enum class TailKind { constant, periodic };

/// Finite description of the rates beyond the prefix. A constant tail
/// repeats one row (an explicit one, or the last prefix row when the block
/// is empty); a periodic tail cycles through its block.
struct TailRule {
  TailKind kind = TailKind::constant;
  std::vector<RateRow> block;

  static TailRule constant() { return TailRule{}; }
  static TailRule constant(RateRow row) { return TailRule{TailKind::constant, {std::move(row)}}; }
  static TailRule periodic(std::vector<RateRow> rows) {
    return TailRule{TailKind::periodic, std::move(rows)};
  }
};

/// User-facing description of the process: max jump size R, explicit rows
/// for sites 0..prefix.size()-1, and a tail rule for everything beyond.
struct RateProfile {
  int R = 1;
  std::vector<RateRow> prefix;
  TailRule tail = TailRule::constant();
};

/// One row of the generator matrix Q at a site.
struct GeneratorRow {
  Site site = 0;
  double diagonal = 0.0;            // -(mu + sum lambda)
  double down = 0.0;                // q_{i,i-1} = mu_i
  std::vector<double> up;           // q_{i,i+r} = lambda_i^r
};

/// Validated process. Immutable after construction; every accessor is a
/// pure function and safe to call concurrently.
class ProcessModel {
public:
  int R() const { return profile_.R; }
  Site prefix_length() const { return static_cast<Site>(profile_.prefix.size()); }
  int tail_period() const { return static_cast<int>(rows_.size() - profile_.prefix.size()); }

  /// Lower/upper bounds on the total jump rate over all sites, shrunk/grown
  /// by a small declared margin so the bound is strict.
  double kappa() const { return kappa_; }
  double big_k() const { return big_k_; }

  const RateRow& rates_at(Site i) const { return rows_[row_index(i)]; }
  double total_rate(Site i) const { return totals_[row_index(i)]; }

  /// One-step transition probability of the embedded jump chain.
  double embedded_transition(Site i, Site j) const;

  GeneratorRow generator_row(Site i) const;

  const RateProfile& profile() const { return profile_; }

private:
  friend ProcessModel build_model(RateProfile profile);
  ProcessModel() = default;

  std::size_t row_index(Site i) const {
    const Site L = prefix_length();
    if (i < L) return static_cast<std::size_t>(i);
    const Site p = tail_period();
    return static_cast<std::size_t>(L + (i - L) % p);
  }

  RateProfile profile_;
  std::vector<RateRow> rows_;    // prefix rows followed by one tail period
  std::vector<double> totals_;
  double kappa_ = 0.0;
  double big_k_ = 0.0;
};

/// Validates a profile and computes the condition bounds (kappa, K).
/// Throws EmptyPrefix, Mu0NotZero, NegativeRate, ZeroDeathRate, ZeroTotalRate.
ProcessModel build_model(RateProfile profile);

}  // namespace bdj
