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

#ifndef EVDUOPOLY_MARKET_HPP
#define EVDUOPOLY_MARKET_HPP

#include "evduopoly/errors.hpp"

namespace evduopoly {

/// Economic and physical parameters of the two-station charging market.
/// All prices are EUR/kWh, powers kW, energies kWh.
struct MarketEnv {
  double t;          ///< wholesale unit energy price paid by stations
  double theta_bar;  ///< mean of the exponentially distributed user sensitivity
  double c_b;        ///< energy demand per EV
  double gamma;      ///< user reluctance to charging-power variation
  double rho_u;      ///< per-slot probability of a regulation-up signal
  double rho_d;      ///< per-slot probability of a regulation-down signal
  double p_d;        ///< maximum charging power

  /// Throws InvalidParameter naming the violated invariant.
  void validate() const;
};

/// Regulation remuneration offered by the grid operator.
struct RewardSchedule {
  double r_u;    ///< remuneration ratio for regulation-up
  double r_d;    ///< discount ratio for regulation-down
  double delta;  ///< slot duration in hours

  void validate() const;
  /// The model accepts r_d > 1 but flags it: published reward data stays in
  /// [0, 1].
  bool r_d_above_normal() const { return r_d > 1.0; }
};

/// Power figures derived from a default-power choice x = P_n / P_d.
/// Construct through derive_power_stats, which enforces 0 < P_A < P_d.
struct PowerStats {
  double x;        ///< design ratio P_n / P_d in [0, 1]
  double p_n;      ///< default charging power
  double p_bar;    ///< expected charging power
  double delta_p;  ///< standard deviation of the charging power
  double p_a;      ///< fluctuation-adjusted power P_bar - gamma * delta_p
};

/// Strategy pair of the pricing game: the fixed-power station's price is
/// nonnegative, the regulation station's may be negative.
struct PriceProfile {
  double t_s;  ///< fixed-power station retail price
  double t_r;  ///< regulation station retail price

  void validate() const;
};

/// Probabilities that a user picks each option; the remainder abstains.
struct MarketShares {
  double alpha_s;
  double alpha_r;
  double alpha_none;
};

/// Per-EV expected revenue of each station.
struct StationRevenues {
  double r_s;
  double r_r;
};

/// Evaluates P_n, P_bar, delta(P) and P_A for a design ratio x in [0, 1].
/// Throws PAInvalid unless 0 < P_A < P_d: every downstream share and revenue
/// expression divides by P_A and by P_d - P_A.
PowerStats derive_power_stats(const MarketEnv& env, double x);

/// Expected net station revenue over one regulation slot,
///   E_delta = t*delta*(rho_u*r_u*P_n - rho_d*(1-r_d)*(P_d-P_n) - P_n).
double slot_revenue(const MarketEnv& env, const RewardSchedule& rewards,
                    const PowerStats& stats);

/// Net regulation remuneration per kWh delivered,
///   E_r = t*(rho_u*r_u*x - rho_d*(1-r_d)*(1-x) - x) * P_d / P_bar.
/// Equals slot_revenue times the expected slot count C_B/(delta*P_bar),
/// divided by C_B. Throws ZeroMeanPower when P_bar = 0.
double per_kwh_regulation(const MarketEnv& env, const RewardSchedule& rewards,
                          const PowerStats& stats);

/// Market shares of the exponential user population at a price pair.
/// Piecewise in T_r: below zero the regulation station attracts everyone who
/// charges at all; above (P_A/P_d)*T_s it attracts nobody.
MarketShares market_shares(const MarketEnv& env, const PowerStats& stats,
                           const PriceProfile& prices);

/// Per-EV expected revenues R_s = C_B*(T_s - t)*alpha_s and
/// R_r = C_B*(T_r + E_r)*alpha_r (zero once the regulation station prices
/// itself out of the market).
StationRevenues station_revenues(const MarketEnv& env, const PowerStats& stats,
                                 const RewardSchedule& rewards,
                                 const PriceProfile& prices);

/// Average user utility. For T_r >= 0 this is the closed form
/// alpha_r*theta_bar*P_A + alpha_s*theta_bar*P_d; for T_r < 0 the user pays a
/// negative price, every user charges, and both terms gain -T_r*C_B.
double user_welfare(const MarketEnv& env, const PowerStats& stats,
                    const PriceProfile& prices);

}  // namespace evduopoly

#endif  // EVDUOPOLY_MARKET_HPP
