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

#ifndef EVDUOPOLY_BEST_RESPONSE_HPP
#define EVDUOPOLY_BEST_RESPONSE_HPP

#include <optional>

#include "evduopoly/market.hpp"

namespace evduopoly {

/// Which piece of the fixed-power station's best-response map applied.
enum class SimpleBranch {
  Interior_5a,  ///< opponent cheap: interior optimum t + (P_d-P_A)*theta_bar/C_B
  Capped_5b,    ///< opponent expensive: single-station cap t + P_d*theta_bar/C_B
  Matching_5c,  ///< price-matching along T_s = T_r * P_d / P_A
};

struct SimpleBestResponse {
  double t_s;
  SimpleBranch branch;
};

/// Which piece of the regulation station's best-response map applied.
enum class RegBranch {
  Exit_7a,          ///< remuneration too negative: exit at (P_A/P_d)*T_s
  Zero_7b,          ///< derivative jumps across zero at T_r = 0
  InteriorRoot_7c,  ///< unique root of the strictly decreasing derivative
};

struct RegBestResponse {
  double t_r;
  RegBranch branch;
  /// dR_r/dT_r at the returned price; meaningful for the interior branch.
  double foc_residual;
};

/// Bounds on E_r between which the regulation station's best response is
/// exactly zero: e_r1 is where the right derivative at T_r = 0 changes sign,
/// e_r2 where the left derivative does. 0 < e_r1 < e_r2 for all t_s > 0, and
/// e_r2 / e_r1 = 1 + (P_d/P_A - 1) * exp(C_B t_s / (theta_bar (P_d - P_A))).
struct ErThresholds {
  double e_r1;
  double e_r2;
};

/// Revenue-maximizing fixed-power price against an opponent price t_r.
SimpleBestResponse simple_best_response(const MarketEnv& env,
                                        const PowerStats& stats, double t_r);

ErThresholds er_thresholds(const MarketEnv& env, const PowerStats& stats,
                           double t_s);

/// Side of the kink at T_r = 0 on which to evaluate dR_r/dT_r.
enum class DerivativeSide { Negative, Positive };

/// Piecewise derivative of the regulation station's revenue in its own price.
/// Strictly decreasing on the interior bracket; discontinuous at T_r = 0, so
/// `side` must be supplied when prices.t_r == 0.
double reg_revenue_derivative(const MarketEnv& env, const PowerStats& stats,
                              double e_r, const PriceProfile& prices,
                              std::optional<DerivativeSide> side = std::nullopt);

/// Revenue-maximizing regulation price against an opponent price t_s.
/// The interior branch bisects the strictly decreasing derivative on
/// (min{0,-E_r}, max{0, min{theta_bar*P_A/C_B - E_r, (P_A/P_d)*T_s}}).
/// Throws BracketFailure if the derivative does not change sign there.
RegBestResponse reg_best_response(const MarketEnv& env, const PowerStats& stats,
                                  double e_r, double t_s,
                                  double tol = 1e-12, int max_iter = 200);

}  // namespace evduopoly

#endif  // EVDUOPOLY_BEST_RESPONSE_HPP
