#pragma once

// Monte Carlo engine for the drift-testing designs. The fixed-sample test is
// simulated exactly (one Gaussian draw per path); the SPRT is simulated on a
// uniform time grid with exact Gaussian increments plus a Brownian-bridge
// within-step crossing correction. The (mu, sigma) model is handled by
// simulating the normalized unit model and rescaling stop times by
// snr_scale_factor, so the step refers to unit-model time.
//
// Per-path randomness comes from Philox substreams keyed by
// (seed, path index), so results are independent of worker count and of the
// order in which paths are executed.

#include <atomic>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

#include "sprt/design.hpp"
#include "sprt/efficiency.hpp"
#include "sprt/normal.hpp"
#include "sprt/philox.hpp"

namespace sprt {

struct SimConfig {
  ErrorSpec spec;
  Hypothesis hyp = Hypothesis::drift_up;
  SignalSpec signal{};
  double step = 1e-4;
  std::uint64_t paths = 100000;
  std::uint64_t seed = 0;
  bool bridge_correction = true;
  double max_time = 0.0;  // 0: defaults to 100x the expected stop time

  SimConfig(ErrorSpec spec_, Hypothesis hyp_) : spec(spec_), hyp(hyp_) {}
};

struct SimResult {
  double mean_stop = 0.0;
  double se_stop = 0.0;
  double error_rate = 0.0;
  std::uint64_t n_wrong = 0;
  std::uint64_t n_capped = 0;
  std::uint64_t wall_paths = 0;
};

/// Probability that a Brownian bridge from x0 to x1 over duration h crosses
/// `level`, given both endpoints strictly on the same side of it.
inline double bridge_cross_prob(double x0, double x1, double level, double h) {
  if (!(h > 0.0)) throw std::domain_error("bridge_cross_prob requires h > 0");
  const double d0 = level - x0;
  const double d1 = level - x1;
  if (!(d0 * d1 > 0.0))
    throw std::domain_error(
        "bridge_cross_prob requires x0 and x1 strictly on one side of level");
  return std::exp(-2.0 * d0 * d1 / h);
}

namespace detail {

// Bridge crossing probabilities below exp(-45) ~ 2.9e-20 are treated as zero
// without consuming a uniform.
inline constexpr double bridge_exponent_cutoff = -45.0;
inline constexpr std::uint64_t sim_block_paths = 4096;

struct BlockTally {
  double sum_t = 0.0;
  double sum_t2 = 0.0;
  std::uint64_t wrong = 0;
  std::uint64_t capped = 0;
};

inline void validate(const SimConfig& cfg, double expected_stop_physical) {
  if (!(cfg.step > 0.0)) throw std::domain_error("SimConfig: step must be > 0");
  if (cfg.paths < 1) throw std::domain_error("SimConfig: paths must be >= 1");
  if (cfg.max_time != 0.0 && cfg.max_time < 100.0 * expected_stop_physical)
    throw std::domain_error(
        "SimConfig: max_time must be at least 100x the expected stop time");
}

inline unsigned resolve_workers(unsigned n_workers, std::uint64_t blocks) {
  unsigned w = n_workers ? n_workers : std::thread::hardware_concurrency();
  if (w < 1) w = 1;
  if (static_cast<std::uint64_t>(w) > blocks)
    w = static_cast<unsigned>(blocks);
  return w;
}

// Runs `per_path(path_index, tally)` over all paths in fixed 4096-path
// blocks; block tallies are folded in index order so the aggregate does not
// depend on the worker count.
template <typename PerPath>
BlockTally run_blocks(std::uint64_t paths, unsigned n_workers,
                      PerPath&& per_path) {
  const std::uint64_t blocks = (paths + sim_block_paths - 1) / sim_block_paths;
  std::vector<BlockTally> tally(blocks);
  std::atomic<std::uint64_t> next{0};
  auto work = [&] {
    for (;;) {
      const std::uint64_t b = next.fetch_add(1);
      if (b >= blocks) return;
      const std::uint64_t lo = b * sim_block_paths;
      const std::uint64_t hi = std::min(paths, lo + sim_block_paths);
      BlockTally t;
      for (std::uint64_t p = lo; p < hi; ++p) per_path(p, t);
      tally[b] = t;
    }
  };
  const unsigned w = resolve_workers(n_workers, blocks);
  if (w == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(w);
    for (unsigned i = 0; i < w; ++i) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  BlockTally total;
  for (const BlockTally& t : tally) {
    total.sum_t += t.sum_t;
    total.sum_t2 += t.sum_t2;
    total.wrong += t.wrong;
    total.capped += t.capped;
  }
  return total;
}

inline SimResult finish(const SimConfig& cfg, const BlockTally& total,
                        double time_scale) {
  if (total.capped > 0)
    throw std::runtime_error("simulation: " + std::to_string(total.capped) +
                             " path(s) hit max_time; raise max_time or check "
                             "the configuration");
  const double n = static_cast<double>(cfg.paths);
  SimResult r;
  r.wall_paths = cfg.paths;
  r.n_wrong = total.wrong;
  r.n_capped = 0;
  r.error_rate = static_cast<double>(total.wrong) / n;
  r.mean_stop = time_scale * (total.sum_t / n);
  if (cfg.paths > 1) {
    const double var =
        std::max(0.0, (total.sum_t2 - total.sum_t * total.sum_t / n) /
                          (n - 1.0));
    r.se_stop = time_scale * std::sqrt(var / n);
  }
  return r;
}

}  // namespace detail

/// Simulates the SPRT on a uniform grid of unit-model time steps. Decisions
/// use the boundary identity only; bridge-detected exits are attributed to
/// mid-step, endpoint exits to the grid point.
inline SimResult simulate_sprt(const SimConfig& cfg, unsigned n_workers = 0) {
  const double scale = snr_scale_factor(cfg.signal);
  const double expected_unit = expected_stop_time(cfg.spec, cfg.hyp);
  detail::validate(cfg, expected_unit * scale);
  const SequentialDesign design = sprt_design(cfg.spec);
  const double cap_unit =
      (cfg.max_time > 0.0 ? cfg.max_time : 100.0 * expected_unit * scale) /
      scale;
  const double h = cfg.step;
  const std::uint64_t cap_steps =
      static_cast<std::uint64_t>(std::ceil(cap_unit / h));
  const double drift_h = theta_of(cfg.hyp) * h;
  const double sqrt_h = std::sqrt(h);
  const double lower = design.lower, upper = design.upper;
  const bool bridge = cfg.bridge_correction;
  const std::uint64_t seed = cfg.seed;
  const Hypothesis hyp = cfg.hyp;

  auto per_path = [&](std::uint64_t path, detail::BlockTally& t) {
    PhiloxStream inc(seed, path, 0);
    PhiloxStream br(seed, path, 1);
    double x = 0.0;
    double stop = -1.0;
    bool hit_upper = false;
    for (std::uint64_t k = 1; k <= cap_steps; ++k) {
      const double x1 =
          x + drift_h + sqrt_h * detail::norm_quantile_as241(inc.next_u01());
      if (x1 >= upper) {
        stop = static_cast<double>(k) * h;
        hit_upper = true;
        break;
      }
      if (x1 <= lower) {
        stop = static_cast<double>(k) * h;
        hit_upper = false;
        break;
      }
      if (bridge) {
        bool up_fire = false, dn_fire = false;
        double pu = 0.0, pl = 0.0;
        const double eu = -2.0 * (upper - x) * (upper - x1) / h;
        if (eu > detail::bridge_exponent_cutoff) {
          pu = std::exp(eu);
          up_fire = br.next_u01() < pu;
        }
        const double el = -2.0 * (x - lower) * (x1 - lower) / h;
        if (el > detail::bridge_exponent_cutoff) {
          pl = std::exp(el);
          dn_fire = br.next_u01() < pl;
        }
        if (up_fire || dn_fire) {
          // Simultaneous two-sided crossings within one step have probability
          // O(exp(-c/h)); attribute to the likelier boundary.
          stop = (static_cast<double>(k) - 0.5) * h;
          hit_upper = up_fire && (!dn_fire || pu >= pl);
          break;
        }
      }
      x = x1;
    }
    if (stop < 0.0) {
      ++t.capped;
      return;
    }
    t.sum_t += stop;
    t.sum_t2 += stop * stop;
    const Hypothesis decision = hit_upper ? SequentialDesign::decision_at_upper()
                                          : SequentialDesign::decision_at_lower();
    if (decision != hyp) ++t.wrong;
  };

  const detail::BlockTally total =
      detail::run_blocks(cfg.paths, n_workers, per_path);
  return detail::finish(cfg, total, scale);
}

/// Simulates the fixed-sample test exactly: X_T is drawn from its Gaussian
/// law, so the only randomness is the terminal value. mean_stop equals the
/// design horizon with zero standard error.
inline SimResult simulate_fixed(const SimConfig& cfg, unsigned n_workers = 0) {
  const double scale = snr_scale_factor(cfg.signal);
  const FixedDesign design = fixed_design(cfg.spec);
  detail::validate(cfg, design.horizon * scale);
  const double horizon = design.horizon;
  const double threshold = design.threshold;
  const double mean = theta_of(cfg.hyp) * horizon;
  const double sd = std::sqrt(horizon);
  const std::uint64_t seed = cfg.seed;
  const Hypothesis hyp = cfg.hyp;

  auto per_path = [&](std::uint64_t path, detail::BlockTally& t) {
    PhiloxStream inc(seed, path, 0);
    const double x = mean + sd * detail::norm_quantile_as241(inc.next_u01());
    const Hypothesis decision =
        x >= threshold ? Hypothesis::drift_up : Hypothesis::drift_down;
    if (decision != hyp) ++t.wrong;
  };

  detail::BlockTally total = detail::run_blocks(cfg.paths, n_workers, per_path);
  SimResult r;
  r.wall_paths = cfg.paths;
  r.n_wrong = total.wrong;
  r.error_rate =
      static_cast<double>(total.wrong) / static_cast<double>(cfg.paths);
  r.mean_stop = scale * horizon;
  r.se_stop = 0.0;
  return r;
}

// Side-by-side Monte Carlo comparison of both designs under both hypotheses.
struct ComparisonReport {
  FixedDesign fixed;
  SequentialDesign sprt;
  double time_scale = 1.0;
  SimResult sprt_up, sprt_down, fixed_up, fixed_down;
  double f_hat = 0.0;     // empirical max-hypothesis efficiency
  double f_closed = 0.0;  // efficiency_F(alpha, beta)
  double deviation = 0.0;
};

inline ComparisonReport run_comparison(const SimConfig& base,
                                       unsigned n_workers = 0) {
  ComparisonReport rep;
  rep.fixed = fixed_design(base.spec);
  rep.sprt = sprt_design(base.spec);
  rep.time_scale = snr_scale_factor(base.signal);
  SimConfig cfg = base;
  cfg.hyp = Hypothesis::drift_up;
  rep.sprt_up = simulate_sprt(cfg, n_workers);
  rep.fixed_up = simulate_fixed(cfg, n_workers);
  cfg.hyp = Hypothesis::drift_down;
  rep.sprt_down = simulate_sprt(cfg, n_workers);
  rep.fixed_down = simulate_fixed(cfg, n_workers);
  const double horizon_phys = rep.time_scale * rep.fixed.horizon;
  rep.f_hat =
      std::max(rep.sprt_up.mean_stop, rep.sprt_down.mean_stop) / horizon_phys;
  rep.f_closed = efficiency_F(base.spec.alpha, base.spec.beta);
  rep.deviation = rep.f_hat - rep.f_closed;
  return rep;
}

}  // namespace sprt
