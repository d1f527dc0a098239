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

#ifndef EVDUOPOLY_DESIGN_HPP
#define EVDUOPOLY_DESIGN_HPP

#include <utility>
#include <vector>

#include "evduopoly/equilibrium.hpp"
#include "evduopoly/market.hpp"

namespace evduopoly {

/// Outcome of maximizing equilibrium regulation revenue over x = P_n/P_d.
struct DesignResult {
  double x_star;
  EquilibriumOutcome outcome;           ///< equilibrium at x_star
  std::vector<std::pair<double, double>> scan;  ///< (x, R_r) coarse samples
};

/// Joint revenue maximum of a single manager running both options.
struct MonopolyResult {
  PriceProfile prices;
  double x_star;
  double total_revenue;
  MarketShares shares;
  double welfare;
  double r_s;
  double r_r;
};

/// Maximizes the regulation station's equilibrium revenue over the design
/// grid {0, 1e-3, ..., 1}, then golden-section refines (tolerance 1e-6)
/// around the best cell. Ties break toward larger x. Throws AllInfeasible
/// when every x ends in the zero-revenue regime.
DesignResult optimize_x(const MarketEnv& env, const RewardSchedule& rewards);

/// Maximizes R_s + R_r over (T_s, T_r, x) with a derivative-free coarse grid
/// (price step 5e-4, x step 1e-2) followed by coordinate-wise golden-section
/// refinement to 1e-6.
MonopolyResult solve_monopoly(const MarketEnv& env,
                              const RewardSchedule& rewards);

/// Optimal monopoly prices for a fixed design, from the stationarity
/// candidates of the piecewise-smooth objective. Much cheaper than the grid
/// and agrees with solve_monopoly at its x_star; used by region scans.
struct MonopolyPricePoint {
  PriceProfile prices;
  double total_revenue;
};
MonopolyPricePoint monopoly_prices_at_x(const MarketEnv& env,
                                        const RewardSchedule& rewards,
                                        const PowerStats& stats);

}  // namespace evduopoly

#endif  // EVDUOPOLY_DESIGN_HPP
