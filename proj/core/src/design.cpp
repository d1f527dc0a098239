// Copyright 2026 The evduopoly Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "evduopoly/design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "internal.hpp"

namespace evduopoly {

namespace {

constexpr double kXGridStep = 1e-3;
constexpr double kXRefineTol = 1e-6;
constexpr double kPriceGridStep = 5e-4;
constexpr double kMonopolyXStep = 1e-2;

double equilibrium_rr(const MarketEnv& env, const RewardSchedule& rewards,
                      double x) {
  try {
    return solve_nash(env, rewards, x).r_r;
  } catch (const PAInvalid&) {
    return -std::numeric_limits<double>::infinity();
  }
}

}  // namespace

DesignResult optimize_x(const MarketEnv& env, const RewardSchedule& rewards) {
  env.validate();
  rewards.validate();

  DesignResult result;
  const int n = static_cast<int>(std::lround(1.0 / kXGridStep)) + 1;
  result.scan.reserve(n);
  double best_x = -1.0;
  double best_rr = -std::numeric_limits<double>::infinity();
  bool any_positive = false;
  for (int i = 0; i < n; ++i) {
    const double x = std::min(1.0, i * kXGridStep);
    std::optional<EquilibriumOutcome> eq;
    try {
      eq = solve_nash(env, rewards, x);
    } catch (const PAInvalid&) {
      continue;
    }
    result.scan.emplace_back(x, eq->r_r);
    if (eq->case_tag != NashCase::N1) any_positive = true;
    if (eq->r_r >= best_rr) {  // >= keeps the larger x on ties
      best_rr = eq->r_r;
      best_x = x;
    }
  }
  if (!any_positive) {
    throw AllInfeasible(
        "regulation charging earns nothing at equilibrium for every x");
  }

  const double lo = std::max(0.0, best_x - kXGridStep);
  const double hi = std::min(1.0, best_x + kXGridStep);
  const double refined = detail::golden_max(
      [&](double x) { return equilibrium_rr(env, rewards, x); }, lo, hi,
      kXRefineTol);
  result.x_star = best_x;
  double x_star_rr = best_rr;
  for (const double cand : {refined, lo, hi}) {
    const double rr = equilibrium_rr(env, rewards, cand);
    if (rr > x_star_rr || (rr == x_star_rr && cand > result.x_star)) {
      x_star_rr = rr;
      result.x_star = cand;
    }
  }
  result.outcome = solve_nash(env, rewards, result.x_star);
  return result;
}

namespace {

struct PricePoint {
  double value = -std::numeric_limits<double>::infinity();
  double t_s = 0.0;
  double t_r = 0.0;
};

double total_revenue(const MarketEnv& env, const RewardSchedule& rewards,
                     const PowerStats& stats, double t_s, double t_r) {
  const StationRevenues rev =
      station_revenues(env, stats, rewards, PriceProfile{t_s, t_r});
  return rev.r_s + rev.r_r;
}

PricePoint coarse_price_grid(const MarketEnv& env, const RewardSchedule& rewards,
                             const PowerStats& stats) {
  const double th = env.theta_bar, cb = env.c_b, pd = env.p_d, pa = stats.p_a;
  const double e_r = per_kwh_regulation(env, rewards, stats);
  const double ts_lo = env.t;
  const double ts_hi = env.t + 1.5 * th * pd / cb;
  const double tr_lo = std::min(0.0, th * pa / cb - e_r) - 0.005;
  const double tr_hi = (pa / pd) * ts_hi;
  const long n_ts = std::lround(std::floor((ts_hi - ts_lo) / kPriceGridStep)) + 1;
  const long n_tr = std::lround(std::floor((tr_hi - tr_lo) / kPriceGridStep)) + 1;

  PricePoint best;
  for (long i = 0; i < n_ts; ++i) {
    const double ts = ts_lo + i * kPriceGridStep;
    for (long j = 0; j < n_tr; ++j) {
      const double tr = tr_lo + j * kPriceGridStep;
      const double v = total_revenue(env, rewards, stats, ts, tr);
      if (v > best.value) best = {v, ts, tr};
    }
  }
  return best;
}

}  // namespace

MonopolyResult solve_monopoly(const MarketEnv& env,
                              const RewardSchedule& rewards) {
  env.validate();
  rewards.validate();

  const int nx = static_cast<int>(std::lround(1.0 / kMonopolyXStep)) + 1;
  std::vector<std::optional<PricePoint>> per_x(nx);
  detail::parallel_for(nx, [&](std::size_t i) {
    const double x = std::min(1.0, static_cast<double>(i) * kMonopolyXStep);
    try {
      const PowerStats stats = derive_power_stats(env, x);
      per_x[i] = coarse_price_grid(env, rewards, stats);
    } catch (const PAInvalid&) {
      per_x[i] = std::nullopt;
    }
  });

  double best_x = -1.0;
  PricePoint best;
  for (int i = 0; i < nx; ++i) {
    if (per_x[i] && per_x[i]->value >= best.value) {  // ties toward larger x
      best = *per_x[i];
      best_x = std::min(1.0, i * kMonopolyXStep);
    }
  }
  if (best_x < 0.0) {
    throw PAInvalid("no design ratio x yields a valid P_A");
  }

  const auto value_at = [&](double ts, double tr, double x) {
    try {
      const PowerStats stats = derive_power_stats(env, x);
      return total_revenue(env, rewards, stats, ts, tr);
    } catch (const PAInvalid&) {
      return -std::numeric_limits<double>::infinity();
    }
  };

  double ts = best.t_s, tr = best.t_r, x = best_x;
  double step_price = kPriceGridStep, step_x = kMonopolyXStep;
  while (step_price > kXRefineTol || step_x > kXRefineTol) {
    ts = detail::golden_max(
        [&](double v) { return value_at(v, tr, x); },
        std::max(0.0, ts - step_price), ts + step_price, kXRefineTol);
    tr = detail::golden_max([&](double v) { return value_at(ts, v, x); },
                            tr - step_price, tr + step_price, kXRefineTol);
    x = detail::golden_max([&](double v) { return value_at(ts, tr, v); },
                           std::max(0.0, x - step_x), std::min(1.0, x + step_x),
                           kXRefineTol);
    step_price *= 0.25;
    step_x *= 0.25;
  }
  // Boundary designs are common; snap if they win or tie.
  for (const double xc : {0.0, 1.0}) {
    if (std::fabs(x - xc) <= 2.0 * kXRefineTol &&
        value_at(ts, tr, xc) >= value_at(ts, tr, x)) {
      x = xc;
    }
  }

  MonopolyResult out;
  const PowerStats stats = derive_power_stats(env, x);
  out.prices = {ts, tr};
  out.x_star = x;
  const StationRevenues rev = station_revenues(env, stats, rewards, out.prices);
  out.r_s = rev.r_s;
  out.r_r = rev.r_r;
  out.total_revenue = rev.r_s + rev.r_r;
  out.shares = market_shares(env, stats, out.prices);
  out.welfare = user_welfare(env, stats, out.prices);
  return out;
}

MonopolyPricePoint monopoly_prices_at_x(const MarketEnv& env,
                                        const RewardSchedule& rewards,
                                        const PowerStats& stats) {
  const double th = env.theta_bar, cb = env.c_b, pd = env.p_d, pa = stats.p_a;
  const double e_r = per_kwh_regulation(env, rewards, stats);

  // Stationarity candidates of the piecewise objective: joint interior
  // optimum, the T_r = 0 edge, and the no-regulation edge T_r=(P_A/P_d)T_s
  // (along which revenue reduces to the single-station problem).
  MonopolyPricePoint best{{0.0, 0.0},
                          -std::numeric_limits<double>::infinity()};
  const auto consider = [&](double ts, double tr) {
    const double v = total_revenue(env, rewards, stats, ts, tr);
    if (v > best.total_revenue) best = {{ts, tr}, v};
  };
  const double ts_cap = env.t + th * pd / cb;
  const double tr_interior = th * pa / cb - e_r;
  if (tr_interior >= 0.0 && tr_interior <= (pa / pd) * ts_cap) {
    consider(ts_cap, tr_interior);
  }
  const double ts_zero_edge = env.t + e_r + th * (pd - pa) / cb;
  if (ts_zero_edge >= 0.0) consider(ts_zero_edge, 0.0);
  consider(ts_cap, (pa / pd) * ts_cap);
  return best;
}

}  // namespace evduopoly
