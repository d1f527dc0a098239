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

#include "evduopoly/market.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace evduopoly {

namespace {

void require(bool ok, const char* invariant) {
  if (!ok) throw InvalidParameter(invariant);
}

}  // namespace

void MarketEnv::validate() const {
  require(std::isfinite(t) && t > 0.0, "t > 0");
  require(std::isfinite(theta_bar) && theta_bar > 0.0, "theta_bar > 0");
  require(std::isfinite(c_b) && c_b > 0.0, "c_b > 0");
  require(std::isfinite(gamma) && gamma >= 0.0, "gamma >= 0");
  require(std::isfinite(p_d) && p_d > 0.0, "p_d > 0");
  require(std::isfinite(rho_u) && rho_u >= 0.0, "rho_u >= 0");
  require(std::isfinite(rho_d) && rho_d >= 0.0, "rho_d >= 0");
  require(rho_u + rho_d <= 1.0, "rho_u + rho_d <= 1");
}

void RewardSchedule::validate() const {
  require(std::isfinite(r_u) && r_u >= 0.0, "r_u >= 0");
  require(std::isfinite(r_d) && r_d >= 0.0, "r_d >= 0");
  require(std::isfinite(delta) && delta > 0.0, "delta > 0");
}

void PriceProfile::validate() const {
  require(std::isfinite(t_s) && t_s >= 0.0, "t_s >= 0");
  require(std::isfinite(t_r), "t_r finite");
}

PowerStats derive_power_stats(const MarketEnv& env, double x) {
  env.validate();
  require(std::isfinite(x) && x >= 0.0 && x <= 1.0, "x in [0, 1]");

  PowerStats s;
  s.x = x;
  s.p_n = x * env.p_d;
  const double rho_n = 1.0 - env.rho_u - env.rho_d;
  s.p_bar = env.rho_d * env.p_d + rho_n * s.p_n;
  const double var = env.rho_u * s.p_bar * s.p_bar +
                     env.rho_d * (env.p_d - s.p_bar) * (env.p_d - s.p_bar) +
                     rho_n * (s.p_n - s.p_bar) * (s.p_n - s.p_bar);
  s.delta_p = std::sqrt(std::max(var, 0.0));
  s.p_a = s.p_bar - env.gamma * s.delta_p;
  if (!(s.p_a > 0.0)) {
    throw PAInvalid("P_A = " + std::to_string(s.p_a) +
                    " <= 0; users too sensitive to power fluctuation");
  }
  if (!(s.p_a < env.p_d)) {
    throw PAInvalid("P_A = " + std::to_string(s.p_a) +
                    " >= P_d; regulation option degenerates to full power");
  }
  return s;
}

double slot_revenue(const MarketEnv& env, const RewardSchedule& rewards,
                    const PowerStats& stats) {
  return env.t * rewards.delta *
         (env.rho_u * rewards.r_u * stats.p_n -
          env.rho_d * (1.0 - rewards.r_d) * (env.p_d - stats.p_n) - stats.p_n);
}

double per_kwh_regulation(const MarketEnv& env, const RewardSchedule& rewards,
                          const PowerStats& stats) {
  if (!(stats.p_bar > 0.0)) {
    throw ZeroMeanPower("P_bar = 0: average number of slots is unbounded");
  }
  return env.t *
         (env.rho_u * rewards.r_u * stats.x -
          env.rho_d * (1.0 - rewards.r_d) * (1.0 - stats.x) - stats.x) *
         env.p_d / stats.p_bar;
}

MarketShares market_shares(const MarketEnv& env, const PowerStats& stats,
                           const PriceProfile& prices) {
  const double th = env.theta_bar, cb = env.c_b, pd = env.p_d, pa = stats.p_a;
  const double ts = prices.t_s, tr = prices.t_r;
  // Survival of theta past the reg/simple indifference point.
  const double e_cross = std::exp(-cb * (ts - tr) / (th * (pd - pa)));

  MarketShares m;
  if (tr < 0.0) {
    m.alpha_r = 1.0 - e_cross;
  } else if (tr <= (pa / pd) * ts) {
    m.alpha_r = std::exp(-cb * tr / (th * pa)) - e_cross;
  } else {
    m.alpha_r = 0.0;
  }
  if (ts <= (pd / pa) * tr) {
    m.alpha_s = std::exp(-cb * ts / (th * pd));
  } else {
    m.alpha_s = e_cross;
  }
  m.alpha_r = std::clamp(m.alpha_r, 0.0, 1.0);
  m.alpha_s = std::clamp(m.alpha_s, 0.0, 1.0);
  m.alpha_none = std::clamp(1.0 - m.alpha_r - m.alpha_s, 0.0, 1.0);
  return m;
}

StationRevenues station_revenues(const MarketEnv& env, const PowerStats& stats,
                                 const RewardSchedule& rewards,
                                 const PriceProfile& prices) {
  const MarketShares m = market_shares(env, stats, prices);
  StationRevenues rev;
  rev.r_s = env.c_b * (prices.t_s - env.t) * m.alpha_s;
  if (prices.t_r <= (stats.p_a / env.p_d) * prices.t_s) {
    const double e_r = per_kwh_regulation(env, rewards, stats);
    rev.r_r = env.c_b * (prices.t_r + e_r) * m.alpha_r;
  } else {
    rev.r_r = 0.0;
  }
  return rev;
}

double user_welfare(const MarketEnv& env, const PowerStats& stats,
                    const PriceProfile& prices) {
  const MarketShares m = market_shares(env, stats, prices);
  const double th = env.theta_bar;
  if (prices.t_r >= 0.0) {
    return m.alpha_r * th * stats.p_a + m.alpha_s * th * env.p_d;
  }
  // Negative T_r: everyone charges and everyone's utility carries the
  // -T_r*C_B transfer, regardless of the station chosen.
  const double transfer = -prices.t_r * env.c_b;
  return m.alpha_r * (th * stats.p_a + transfer) +
         m.alpha_s * (th * env.p_d + transfer);
}

}  // namespace evduopoly
