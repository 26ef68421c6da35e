#include "bdj/simulate.hpp"

#include <atomic>
#include <cmath>
#include <thread>

namespace bdj {

namespace {

Site sample_jump(const ProcessModel& model, Site i, RngStream& jumps) {
  const RateRow& row = model.rates_at(i);
  double x = jumps.uniform_open() * model.total_rate(i);
  Site fallback = i;
  if (row.mu > 0.0) {
    if (x < row.mu) return i - 1;
    x -= row.mu;
    fallback = i - 1;
  }
  for (int r = 0; r < model.R(); ++r) {
    const double l = row.lambda[static_cast<std::size_t>(r)];
    if (l <= 0.0) continue;
    if (x < l) return i + r + 1;
    x -= l;
    fallback = i + r + 1;
  }
  // Rounding pushed x past the final band; take the last positive-rate jump.
  return fallback;
}

void add_occupation(std::vector<double>& occ, Site state, double amount) {
  if (static_cast<std::size_t>(state) >= occ.size()) {
    occ.resize(static_cast<std::size_t>(state) + 1, 0.0);
  }
  occ[static_cast<std::size_t>(state)] += amount;
}

void add_visit(std::vector<std::uint64_t>& visits, Site state) {
  if (static_cast<std::size_t>(state) >= visits.size()) {
    visits.resize(static_cast<std::size_t>(state) + 1, 0);
  }
  ++visits[static_cast<std::size_t>(state)];
}

PathSummary simulate_path(const ProcessModel& model, const SimConfig& cfg, bool continuous) {
  PathSummary out;
  RngStream jumps = substream(cfg.seed, 1, 0);
  RngStream holds = substream(cfg.seed, 2, 0);

  Site state = cfg.initial_state;
  double excursion_mark = 0.0;
  std::int64_t steps_since_mark = 0;
  bool left_initial = false;

  while (true) {
    if (continuous && cfg.horizon_time > 0.0) {
      if (out.total_time >= cfg.horizon_time) break;
    } else if (out.event_count >= static_cast<std::uint64_t>(cfg.horizon_events)) {
      break;
    }

    if (continuous) {
      const double hold = holds.exponential(model.total_rate(state));
      if (cfg.horizon_time > 0.0 && out.total_time + hold >= cfg.horizon_time) {
        add_occupation(out.occupation_time, state, cfg.horizon_time - out.total_time);
        out.total_time = cfg.horizon_time;
        break;
      }
      add_occupation(out.occupation_time, state, hold);
      out.total_time += hold;
    }

    state = sample_jump(model, state, jumps);
    ++out.event_count;
    ++steps_since_mark;
    add_visit(out.visit_count, state);

    if (state == cfg.initial_state) {
      if (left_initial) {
        out.return_times_T.push_back(steps_since_mark);
        out.return_times_eta.push_back(out.total_time - excursion_mark);
        ++out.excursions_completed;
      }
      excursion_mark = out.total_time;
      steps_since_mark = 0;
      left_initial = false;
    } else {
      left_initial = true;
    }
  }
  return out;
}

struct ChunkAccum {
  double sum_T = 0.0, sum_T2 = 0.0;
  double sum_eta = 0.0, sum_eta2 = 0.0;
  std::vector<double> occupation;
  std::int64_t completed = 0;
  bool exceeded = false;
};

constexpr std::int64_t kChunkSize = 1024;

// Runs excursion j on its own substreams; returns false when the step guard
// trips.
bool run_excursion(const ProcessModel& model, const SimConfig& cfg, std::int64_t j,
                   ChunkAccum& acc) {
  RngStream jumps = substream(cfg.seed, 1, static_cast<std::uint64_t>(j) + 1);
  RngStream holds = substream(cfg.seed, 2, static_cast<std::uint64_t>(j) + 1);

  Site state = 0;
  double eta = holds.exponential(model.total_rate(0));
  add_occupation(acc.occupation, 0, eta);
  state = sample_jump(model, 0, jumps);
  std::int64_t steps = 1;
  while (state != 0) {
    if (steps >= cfg.max_steps_per_excursion) return false;
    const double hold = holds.exponential(model.total_rate(state));
    add_occupation(acc.occupation, state, hold);
    eta += hold;
    state = sample_jump(model, state, jumps);
    ++steps;
  }
  const double t = static_cast<double>(steps);
  acc.sum_T += t;
  acc.sum_T2 += t * t;
  acc.sum_eta += eta;
  acc.sum_eta2 += eta * eta;
  ++acc.completed;
  return true;
}

// Fixed-size chunks of excursion indices are claimed by workers and reduced
// in chunk order afterwards, so results do not depend on the thread count.
template <typename ChunkFn>
void run_chunked(const SimConfig& cfg, std::int64_t n_chunks, ChunkFn chunk_fn) {
  std::atomic<std::int64_t> next{0};
  std::atomic<bool> abort{false};
  const int workers = std::max(1, cfg.threads);
  auto work = [&] {
    while (!abort.load(std::memory_order_relaxed)) {
      const std::int64_t c = next.fetch_add(1);
      if (c >= n_chunks) return;
      if (!chunk_fn(c)) abort.store(true, std::memory_order_relaxed);
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
}

}  // namespace

PathSummary simulate_ctmc(const ProcessModel& model, const SimConfig& cfg) {
  return simulate_path(model, cfg, true);
}

PathSummary simulate_embedded(const ProcessModel& model, const SimConfig& cfg) {
  return simulate_path(model, cfg, false);
}

std::vector<Site> walk_excursion(const ProcessModel& model, RngStream& jumps,
                                 std::int64_t max_steps) {
  std::vector<Site> path{0};
  Site state = sample_jump(model, 0, jumps);
  path.push_back(state);
  std::int64_t steps = 1;
  while (state != 0) {
    if (steps >= max_steps) return {};
    state = sample_jump(model, state, jumps);
    path.push_back(state);
    ++steps;
  }
  return path;
}

ReturnTimeEstimate estimate_return_times(const ProcessModel& model, const SimConfig& cfg) {
  const std::int64_t n = cfg.excursion_count;
  const std::int64_t n_chunks = (n + kChunkSize - 1) / kChunkSize;
  std::vector<ChunkAccum> chunks(static_cast<std::size_t>(n_chunks));

  run_chunked(cfg, n_chunks, [&](std::int64_t c) {
    ChunkAccum& acc = chunks[static_cast<std::size_t>(c)];
    const std::int64_t lo = c * kChunkSize;
    const std::int64_t hi = std::min(n, lo + kChunkSize);
    for (std::int64_t j = lo; j < hi; ++j) {
      if (!run_excursion(model, cfg, j, acc)) {
        acc.exceeded = true;
        return false;
      }
    }
    return true;
  });

  ChunkAccum total;
  for (const ChunkAccum& c : chunks) {
    if (c.exceeded) throw ExcursionBudgetExceeded(cfg.max_steps_per_excursion);
    total.sum_T += c.sum_T;
    total.sum_T2 += c.sum_T2;
    total.sum_eta += c.sum_eta;
    total.sum_eta2 += c.sum_eta2;
    total.completed += c.completed;
    if (c.occupation.size() > total.occupation.size()) {
      total.occupation.resize(c.occupation.size(), 0.0);
    }
    for (std::size_t s = 0; s < c.occupation.size(); ++s) total.occupation[s] += c.occupation[s];
  }

  ReturnTimeEstimate est;
  est.excursions = total.completed;
  const double m = static_cast<double>(total.completed);
  est.mean_T = total.sum_T / m;
  est.mean_eta = total.sum_eta / m;
  const double var_T = std::max(0.0, (total.sum_T2 - m * est.mean_T * est.mean_T) / (m - 1.0));
  const double var_eta =
      std::max(0.0, (total.sum_eta2 - m * est.mean_eta * est.mean_eta) / (m - 1.0));
  est.se_T = std::sqrt(var_T / m);
  est.se_eta = std::sqrt(var_eta / m);
  est.occupation_fraction = total.occupation;
  for (double& f : est.occupation_fraction) f /= total.sum_eta;
  return est;
}

std::vector<BranchingLevelEstimate> collect_branching_counts(const ProcessModel& model,
                                                             const SimConfig& cfg,
                                                             const std::vector<Site>& levels) {
  const int R = model.R();
  const std::size_t n_levels = levels.size();
  struct BranchChunk {
    std::vector<double> sum, sum2;  // n_levels * R
    bool exceeded = false;
  };
  const std::int64_t n = cfg.excursion_count;
  const std::int64_t n_chunks = (n + kChunkSize - 1) / kChunkSize;
  std::vector<BranchChunk> chunks(static_cast<std::size_t>(n_chunks));

  run_chunked(cfg, n_chunks, [&](std::int64_t c) {
    BranchChunk& acc = chunks[static_cast<std::size_t>(c)];
    acc.sum.assign(n_levels * static_cast<std::size_t>(R), 0.0);
    acc.sum2.assign(n_levels * static_cast<std::size_t>(R), 0.0);
    const std::int64_t lo = c * kChunkSize;
    const std::int64_t hi = std::min(n, lo + kChunkSize);
    for (std::int64_t j = lo; j < hi; ++j) {
      RngStream jumps = substream(cfg.seed, 1, static_cast<std::uint64_t>(j) + 1);
      const std::vector<Site> path = walk_excursion(model, jumps, cfg.max_steps_per_excursion);
      if (path.empty()) {
        acc.exceeded = true;
        return false;
      }
      const std::vector<OffspringVector> u = count_crossings(R, path);
      for (std::size_t li = 0; li < n_levels; ++li) {
        const Site level = levels[li];
        for (int r = 0; r < R; ++r) {
          const double v = (level < static_cast<Site>(u.size()))
                               ? static_cast<double>(u[static_cast<std::size_t>(level)]
                                                      [static_cast<std::size_t>(r)])
                               : 0.0;
          acc.sum[li * static_cast<std::size_t>(R) + static_cast<std::size_t>(r)] += v;
          acc.sum2[li * static_cast<std::size_t>(R) + static_cast<std::size_t>(r)] += v * v;
        }
      }
    }
    return true;
  });

  std::vector<double> sum(n_levels * static_cast<std::size_t>(R), 0.0);
  std::vector<double> sum2(n_levels * static_cast<std::size_t>(R), 0.0);
  for (const BranchChunk& c : chunks) {
    if (c.exceeded) throw ExcursionBudgetExceeded(cfg.max_steps_per_excursion);
    for (std::size_t i = 0; i < c.sum.size(); ++i) {
      sum[i] += c.sum[i];
      sum2[i] += c.sum2[i];
    }
  }

  const double m = static_cast<double>(n);
  std::vector<BranchingLevelEstimate> out(n_levels);
  for (std::size_t li = 0; li < n_levels; ++li) {
    out[li].level = levels[li];
    out[li].mean.resize(static_cast<std::size_t>(R));
    out[li].se.resize(static_cast<std::size_t>(R));
    for (int r = 0; r < R; ++r) {
      const std::size_t idx = li * static_cast<std::size_t>(R) + static_cast<std::size_t>(r);
      const double mean = sum[idx] / m;
      const double var = std::max(0.0, (sum2[idx] - m * mean * mean) / (m - 1.0));
      out[li].mean[static_cast<std::size_t>(r)] = mean;
      out[li].se[static_cast<std::size_t>(r)] = std::sqrt(var / m);
    }
  }
  return out;
}

}  // namespace bdj
