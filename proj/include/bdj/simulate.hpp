#pragma once

#include <cstdint>
#include <vector>

#include "bdj/branching.hpp"
#include "bdj/model.hpp"
#include "bdj/rng.hpp"

namespace bdj {

/// Simulation parameters. The seed fully determines every output; the worker
/// count never changes a result, only how fast it arrives.
struct SimConfig {
  std::uint64_t seed = 1;
  std::int64_t horizon_events = 100000;  // jump-count horizon for path runs
  double horizon_time = 0.0;             // when > 0, a time budget instead
  std::int64_t excursion_count = 10000;
  Site initial_state = 0;
  int threads = 1;
  std::int64_t max_steps_per_excursion = 10000000;
};

/// What a simulated path did: continuous occupation per state, embedded
/// visit counts per state (one per jump arrival), and the completed
/// return-time observations seen along the way.
struct PathSummary {
  std::vector<double> occupation_time;
  std::vector<std::uint64_t> visit_count;
  double total_time = 0.0;
  std::uint64_t event_count = 0;
  std::uint64_t excursions_completed = 0;
  std::vector<double> return_times_eta;
  std::vector<std::int64_t> return_times_T;
};

struct ReturnTimeEstimate {
  double mean_T = 0.0;
  double se_T = 0.0;
  double mean_eta = 0.0;
  double se_eta = 0.0;
  std::int64_t excursions = 0;
  // Regenerative occupation-fraction estimates (time in state / total time).
  std::vector<double> occupation_fraction;
};

struct BranchingLevelEstimate {
  Site level = 0;
  std::vector<double> mean;    // empirical mean of U_{level,r}
  std::vector<double> se;      // standard errors per component
};

/// Event-driven simulation of the chain: exponential holding times and
/// jumps drawn from the embedded law. Same seed, same summary, always.
PathSummary simulate_ctmc(const ProcessModel& model, const SimConfig& cfg);

/// The embedded jump chain alone (no holding times). Shares the jump
/// substream with simulate_ctmc, so the two walk the same state sequence
/// for equal seeds.
PathSummary simulate_embedded(const ProcessModel& model, const SimConfig& cfg);

/// Sample means and standard errors of T and eta over independent
/// excursions from 0. Excursions run on per-index substreams and reduce in
/// fixed chunk order, so any thread count gives identical output. Throws
/// ExcursionBudgetExceeded when an excursion outlives the step guard.
ReturnTimeEstimate estimate_return_times(const ProcessModel& model, const SimConfig& cfg);

/// Empirical mean crossing counts per requested level over simulated
/// excursions, with standard errors.
std::vector<BranchingLevelEstimate> collect_branching_counts(const ProcessModel& model,
                                                             const SimConfig& cfg,
                                                             const std::vector<Site>& levels);

/// One embedded excursion path from 0 back to 0 (inclusive). Returns an
/// empty vector when the step guard trips first.
std::vector<Site> walk_excursion(const ProcessModel& model, RngStream& jumps,
                                 std::int64_t max_steps);

}  // namespace bdj
