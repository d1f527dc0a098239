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

#ifndef EVDUOPOLY_EQUILIBRIUM_HPP
#define EVDUOPOLY_EQUILIBRIUM_HPP

#include "evduopoly/best_response.hpp"
#include "evduopoly/market.hpp"

namespace evduopoly {

/// The four equilibrium regimes, ordered by increasing regulation value E_r:
/// N1 the regulation station is priced out (zero revenue), N2 it undercuts at
/// a positive price, N3 it prices exactly at zero, N4 it pays users.
enum class NashCase { N1, N2, N3, N4 };

struct EquilibriumOutcome {
  NashCase case_tag;
  PriceProfile prices;
  MarketShares shares;
  double r_s;
  double r_r;
  double welfare;
  double e_r;
};

/// Report of a brute-force deviation scan around an equilibrium.
struct CertificationReport {
  double max_improvement_s;  ///< best unilateral gain found for fixed-power
  double max_improvement_r;  ///< best unilateral gain found for regulation
  double best_deviation_s;   ///< price achieving max_improvement_s
  double best_deviation_r;   ///< price achieving max_improvement_r
};

/// Which equilibrium regime holds, given E_r and the candidate fixed-power
/// price t + (P_d - P_A)*theta_bar/C_B. The four conditions are exhaustive and
/// mutually exclusive; equality with either threshold classifies as N3.
NashCase classify_case(const MarketEnv& env, const PowerStats& stats,
                       double e_r);

/// Computes the (Pareto-dominant, when a continuum exists) Nash equilibrium
/// of the pricing game at a fixed design ratio x.
EquilibriumOutcome solve_nash(const MarketEnv& env,
                              const RewardSchedule& rewards, double x);

/// Scans unilateral price deviations for both stations over
/// [t - 0.05, t + 3*theta_bar*P_d/C_B] in steps of grid_step and throws
/// CertificationFailure if any deviation improves a station's revenue by more
/// than 1e-6.
CertificationReport verify_nash(const MarketEnv& env,
                                const RewardSchedule& rewards,
                                const PowerStats& stats,
                                const EquilibriumOutcome& outcome,
                                double grid_step);

}  // namespace evduopoly

#endif  // EVDUOPOLY_EQUILIBRIUM_HPP
