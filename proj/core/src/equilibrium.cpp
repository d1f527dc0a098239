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

#include "evduopoly/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace evduopoly {

namespace {

constexpr double kCertificationTolerance = 1e-6;

double candidate_ts(const MarketEnv& env, const PowerStats& stats) {
  return env.t + (env.p_d - stats.p_a) * env.theta_bar / env.c_b;
}

}  // namespace

NashCase classify_case(const MarketEnv& env, const PowerStats& stats,
                       double e_r) {
  const double ts_star = candidate_ts(env, stats);
  if (e_r <= -(stats.p_a / env.p_d) * ts_star) return NashCase::N1;
  const ErThresholds thr = er_thresholds(env, stats, ts_star);
  if (e_r < thr.e_r1) return NashCase::N2;
  if (e_r <= thr.e_r2) return NashCase::N3;
  return NashCase::N4;
}

EquilibriumOutcome solve_nash(const MarketEnv& env,
                              const RewardSchedule& rewards, double x) {
  const PowerStats stats = derive_power_stats(env, x);
  const double e_r = per_kwh_regulation(env, rewards, stats);

  EquilibriumOutcome out;
  out.case_tag = classify_case(env, stats, e_r);
  out.e_r = e_r;
  if (out.case_tag == NashCase::N1) {
    // Pareto-dominant point of the exit ray T_r = (P_A/P_d)*T_s. The
    // fixed-power revenue along the ray peaks at the single-station cap, so
    // for very negative E_r the dominant intersection sits at the cap rather
    // than at -E_r*P_d/P_A (where the fixed-power station would deviate).
    const double cap = env.t + env.p_d * env.theta_bar / env.c_b;
    out.prices.t_s = std::min(-e_r * env.p_d / stats.p_a, cap);
    out.prices.t_r = (stats.p_a / env.p_d) * out.prices.t_s;
  } else {
    out.prices.t_s = candidate_ts(env, stats);
    if (out.case_tag == NashCase::N3) {
      out.prices.t_r = 0.0;
    } else {
      out.prices.t_r = reg_best_response(env, stats, e_r, out.prices.t_s).t_r;
    }
  }
  out.shares = market_shares(env, stats, out.prices);
  const StationRevenues rev = station_revenues(env, stats, rewards, out.prices);
  out.r_s = rev.r_s;
  out.r_r = rev.r_r;
  out.welfare = user_welfare(env, stats, out.prices);
  return out;
}

CertificationReport verify_nash(const MarketEnv& env,
                                const RewardSchedule& rewards,
                                const PowerStats& stats,
                                const EquilibriumOutcome& outcome,
                                double grid_step) {
  if (!(grid_step > 0.0)) throw InvalidParameter("grid_step > 0");
  const double lo = env.t - 0.05;
  const double hi = env.t + 3.0 * env.theta_bar * env.p_d / env.c_b;
  const long n = static_cast<long>(std::floor((hi - lo) / grid_step)) + 1;

  CertificationReport rep{0.0, 0.0, outcome.prices.t_s, outcome.prices.t_r};
  for (long i = 0; i < n; ++i) {
    const double p = lo + static_cast<double>(i) * grid_step;
    if (p >= 0.0) {  // strategy space of the fixed-power station
      const PriceProfile dev{p, outcome.prices.t_r};
      const double rs = station_revenues(env, stats, rewards, dev).r_s;
      if (rs - outcome.r_s > rep.max_improvement_s) {
        rep.max_improvement_s = rs - outcome.r_s;
        rep.best_deviation_s = p;
      }
    }
    const PriceProfile dev{outcome.prices.t_s, p};
    const double rr = station_revenues(env, stats, rewards, dev).r_r;
    if (rr - outcome.r_r > rep.max_improvement_r) {
      rep.max_improvement_r = rr - outcome.r_r;
      rep.best_deviation_r = p;
    }
  }
  if (rep.max_improvement_s > kCertificationTolerance) {
    throw CertificationFailure("fixed-power station improves by deviating to " +
                                   std::to_string(rep.best_deviation_s),
                               rep.best_deviation_s, rep.max_improvement_s);
  }
  if (rep.max_improvement_r > kCertificationTolerance) {
    throw CertificationFailure("regulation station improves by deviating to " +
                                   std::to_string(rep.best_deviation_r),
                               rep.best_deviation_r, rep.max_improvement_r);
  }
  return rep;
}

}  // namespace evduopoly
