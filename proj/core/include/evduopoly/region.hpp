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

#ifndef EVDUOPOLY_REGION_HPP
#define EVDUOPOLY_REGION_HPP

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "evduopoly/market.hpp"

namespace evduopoly {

enum class RegionMode { Competition, Monopoly };

enum class RegionStatus { Infeasible, OptX_Zero, OptX_One, OptX_Interior };

/// Classification of one reward pair.
struct RegionCell {
  double r_u;
  double r_d;
  RegionMode mode;
  RegionStatus status;
  double x_star;  ///< optimal design; NaN when infeasible
};

/// One ingested market reward observation.
struct RewardSample {
  double r_u;
  double r_d;
  std::string label;
};

struct Viability {
  bool viable;
  std::optional<double> witness_x;
};

/// Sign convention for the monopoly viability condition's P_bar*P_A/P_d^2
/// term. CorrectedPlus reproduces the region boundaries consistent with the
/// equilibrium analysis; LiteralMinus evaluates the alternative sign for
/// comparison.
enum class MonopolySign { CorrectedPlus, LiteralMinus };

/// True when some x in {0, 1e-3, ..., 1} gives the regulation station a
/// positive equilibrium revenue, i.e. E_r(x) exceeds the exit threshold
/// -(P_A/P_d)(t + (P_d-P_A)theta_bar/C_B). witness_x is the margin-maximizing
/// grid point (first on ties).
Viability competition_viable(const MarketEnv& env, const RewardSchedule& rewards);

/// True when some x makes the monopolist's interior regulation option
/// profitable: rho_u*r_u*x - rho_d*(1-r_d)*(1-x) - x + P_bar*P_A/P_d^2 > 0
/// (equivalently E_r(x) > -t*P_A/P_d). Independent of theta_bar.
Viability monopoly_viable(const MarketEnv& env, const RewardSchedule& rewards,
                          MonopolySign sign = MonopolySign::CorrectedPlus);

/// Smallest r_u in [lo, hi] at which the given mode is viable for a fixed
/// r_d, located by bisection to tolerance 1e-6. Returns nullopt when the
/// whole range is on one side.
std::optional<double> viability_onset_ru(const MarketEnv& env, double r_d,
                                         double delta, RegionMode mode,
                                         double lo = 0.0, double hi = 2.5,
                                         MonopolySign sign = MonopolySign::CorrectedPlus);

/// Inclusive reward-plane grid; values run lo, lo+step, ... up to hi.
struct RewardGrid {
  double ru_lo, ru_hi, ru_step;
  double rd_lo, rd_hi, rd_step;
};

/// Classifies every grid cell, row-major in (r_d, r_u): r_d varies in the
/// outer loop. Viable cells carry the design maximizing the mode's objective
/// (equilibrium R_r under competition, total monopoly revenue under
/// monopoly), refined to 1e-6 with ties snapped to the boundary designs.
std::vector<RegionCell> scan_region(const MarketEnv& env, const RewardGrid& grid,
                                    RegionMode mode, double delta,
                                    MonopolySign sign = MonopolySign::CorrectedPlus);

/// Reads reward samples from CSV with header `r_u,r_d[,label]`. Blank lines
/// and `#` comments are skipped; malformed numerics raise ParseError with the
/// 1-based line number.
std::vector<RewardSample> load_rewards_csv(std::istream& in);
std::vector<RewardSample> load_rewards_csv(const std::filesystem::path& path);

}  // namespace evduopoly

#endif  // EVDUOPOLY_REGION_HPP
