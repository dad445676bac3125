#include "wdl/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wdl/errors.hpp"
#include "wdl/parallel.hpp"

namespace wdl {

namespace {

constexpr int kMaxRejections = 10000;

std::vector<double> average_ranks(const std::vector<double>& v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

void validate(const SweepConfig& cfg) {
  for (double b : cfg.b_values)
    if (!(b > 0.0 && b <= 1.0)) throw StructuralError("sweep b values must lie in (0, 1]");
  for (double s : cfg.sigma_values)
    if (!(s >= 0.0)) throw StructuralError("sweep sigma values must be non-negative");
  if (!(cfg.g_hi > 0.0 && cfg.f_lo > 0.0 && cfg.f_hi >= cfg.f_lo))
    throw StructuralError("sweep base bounds need g+ > 0 and 0 < f- <= f+");
  if (cfg.replications < 1) throw StructuralError("sweep replications must be >= 1");
  if (cfg.horizon < 1) throw StructuralError("sweep horizon must be >= 1");
  if (cfg.early_checkpoint < 1 || cfg.early_checkpoint > cfg.horizon)
    throw StructuralError("early checkpoint must lie in [1, horizon]");
  if (cfg.base.bounds.n() < 1) throw StructuralError("sweep base config has no population");
}

BoundSet sample_heterogeneous_bounds(const SweepConfig& cfg, SweepCell cell, Rng& rng) {
  const int n = cfg.base.bounds.n();
  const double s = cell.sigma;
  std::normal_distribution<double> z(0.0, 1.0);
  BoundSet out;
  out.budget = cfg.base.bounds.budget;
  out.f_lo.resize(n);
  out.f_hi.resize(n);
  out.g_lo.resize(n);
  out.g_hi.resize(n);
  for (int i = 0; i < n; ++i) {
    int rejections = 0;
    while (true) {
      const double g_lo = cell.b * cfg.g_hi + cell.b * s * z(rng);
      const double g_hi = cfg.g_hi + s * z(rng);
      const double f_lo = cfg.f_lo + cfg.f_lo / cfg.g_hi * s * z(rng);
      const double f_hi = cfg.f_hi + cfg.f_hi / cfg.g_hi * s * z(rng);
      if (g_lo > 0.0 && f_lo > 0.0 && g_lo <= g_hi && f_lo <= f_hi) {
        out.f_lo[i] = f_lo;
        out.f_hi[i] = f_hi;
        out.g_lo[i] = g_lo;
        out.g_hi[i] = g_hi;
        break;
      }
      if (++rejections > kMaxRejections)
        throw InfeasibleCellError("no feasible bounds after 10000 draws (b=" +
                                  std::to_string(cell.b) + ", sigma=" + std::to_string(s) + ")");
    }
  }
  return out;
}

std::vector<SweepResult> heterogeneity_sweep(const SweepConfig& cfg) {
  validate(cfg);
  std::vector<SweepCell> cells;
  for (double b : cfg.b_values)
    for (double s : cfg.sigma_values) cells.push_back({b, s});

  const int reps = cfg.replications;
  const int total = static_cast<int>(cells.size()) * reps;
  // 1 = min-U wins, 0 = loses, -1 = infeasible
  std::vector<int> win_final(total, 0);
  std::vector<int> win_early(total, 0);

  ExperimentConfig run_cfg = cfg.base;
  run_cfg.horizon = cfg.horizon;
  run_cfg.replications = 1;
  run_cfg.jobs = 1;
  run_cfg.checkpoints = {cfg.early_checkpoint, cfg.horizon};
  run_cfg.policies = {PolicySpec::of(PolicyKind::kMinU), PolicySpec::of(PolicyKind::kMaxU)};

  parallel_for(total, cfg.jobs, [&](int k) {
    const int c = k / reps;
    const int r = k % reps;
    const std::uint64_t seed =
        derive_seed(cfg.seed, static_cast<std::uint64_t>(c), static_cast<std::uint64_t>(r));
    Rng bounds_rng(derive_seed(seed, stream::kBounds));
    ExperimentConfig local = run_cfg;
    try {
      local.bounds = sample_heterogeneous_bounds(cfg, cells[c], bounds_rng);
    } catch (const InfeasibleCellError&) {
      win_final[k] = win_early[k] = -1;
      return;
    }
    const auto rawls = run_trajectory(local, local.policies[0], seed);
    const auto util = run_trajectory(local, local.policies[1], seed);
    win_final[k] = rawls.mean_at(cfg.horizon) > util.mean_at(cfg.horizon);
    win_early[k] = rawls.mean_at(cfg.early_checkpoint) > util.mean_at(cfg.early_checkpoint);
  });

  std::vector<SweepResult> out;
  out.reserve(cells.size());
  for (std::size_t c = 0; c < cells.size(); ++c) {
    SweepResult res{cells[c].b, cells[c].sigma, 0.0, 0.0, 0, false};
    int wins_final = 0;
    int wins_early = 0;
    for (int r = 0; r < reps; ++r) {
      const int k = static_cast<int>(c) * reps + r;
      if (win_final[k] < 0) {
        res.infeasible = true;
        break;
      }
      wins_final += win_final[k];
      wins_early += win_early[k];
      ++res.n_reps;
    }
    if (res.infeasible) {
      res.n_reps = 0;
    } else {
      res.winrate_final = static_cast<double>(wins_final) / res.n_reps;
      res.winrate_early = static_cast<double>(wins_early) / res.n_reps;
    }
    out.push_back(res);
  }
  return out;
}

double spearman_rho(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("spearman_rho: length mismatch");
  if (x.size() < 2) return 0.0;
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace wdl
