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

#include "evduopoly/best_response.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace evduopoly {

SimpleBestResponse simple_best_response(const MarketEnv& env,
                                        const PowerStats& stats, double t_r) {
  const double th = env.theta_bar, cb = env.c_b, pd = env.p_d, pa = stats.p_a;
  const double interior = env.t + (pd - pa) * th / cb;
  const double cap = env.t + pd * th / cb;
  if (t_r < interior * pa / pd) return {interior, SimpleBranch::Interior_5a};
  if (t_r > cap * pa / pd) return {cap, SimpleBranch::Capped_5b};
  return {t_r * pd / pa, SimpleBranch::Matching_5c};
}

ErThresholds er_thresholds(const MarketEnv& env, const PowerStats& stats,
                           double t_s) {
  if (!(t_s >= 0.0)) throw InvalidParameter("t_s >= 0");
  const double th = env.theta_bar, cb = env.c_b, pd = env.p_d, pa = stats.p_a;
  const double z = cb * t_s / (th * (pd - pa));
  const double q = pd / pa - 1.0;
  // -expm1(-z) = 1 - exp(-z), accurate for small z.
  const double e_r1 = th * (pd - pa) * (-std::expm1(-z)) /
                      (cb * (q + std::exp(-z)));
  const double e_r2 = e_r1 * (1.0 + q * std::exp(z));
  return {e_r1, e_r2};
}

double reg_revenue_derivative(const MarketEnv& env, const PowerStats& stats,
                              double e_r, const PriceProfile& prices,
                              std::optional<DerivativeSide> side) {
  const double th = env.theta_bar, cb = env.c_b, pd = env.p_d, pa = stats.p_a;
  const double tr = prices.t_r, ts = prices.t_s;
  const double c1 = cb / (th * pa);
  const double c2 = cb / (th * (pd - pa));
  bool below;
  if (tr < 0.0) {
    below = true;
  } else if (tr > 0.0) {
    below = false;
  } else {
    if (!side) {
      throw InvalidParameter(
          "reg_revenue_derivative at T_r = 0 needs an explicit side");
    }
    below = (*side == DerivativeSide::Negative);
  }
  const double e_cross = std::exp(-c2 * (ts - tr));
  const double margin = tr + e_r;
  if (below) {
    return cb * (1.0 - e_cross * (1.0 + c2 * margin));
  }
  const double e_own = std::exp(-c1 * tr);
  return cb * (e_own * (1.0 - c1 * margin) - e_cross * (1.0 + c2 * margin));
}

namespace {

double derivative_at(const MarketEnv& env, const PowerStats& stats, double e_r,
                     double t_s, double t_r) {
  // The interior root is never at 0 (that situation is the Zero branch), so
  // evaluating the upper side at an exact 0 still brackets correctly.
  const auto side =
      t_r < 0.0 ? DerivativeSide::Negative : DerivativeSide::Positive;
  return reg_revenue_derivative(env, stats, e_r, PriceProfile{t_s, t_r}, side);
}

}  // namespace

RegBestResponse reg_best_response(const MarketEnv& env, const PowerStats& stats,
                                  double e_r, double t_s, double tol,
                                  int max_iter) {
  const double th = env.theta_bar, cb = env.c_b, pd = env.p_d, pa = stats.p_a;

  if (t_s <= -e_r * pd / pa) {
    return {(pa / pd) * t_s, RegBranch::Exit_7a, 0.0};
  }
  const ErThresholds thr = er_thresholds(env, stats, t_s);
  if (thr.e_r1 <= e_r && e_r <= thr.e_r2) {
    return {0.0, RegBranch::Zero_7b, 0.0};
  }

  double lo = std::min(0.0, -e_r);
  double hi = std::max(0.0, std::min(th * pa / cb - e_r, (pa / pd) * t_s));
  const double shrink = 1e-15 * std::max({1.0, std::fabs(lo), std::fabs(hi)});
  double a = lo + shrink, b = hi - shrink;
  double fa = derivative_at(env, stats, e_r, t_s, a);
  double fb = derivative_at(env, stats, e_r, t_s, b);
  if (!(fa > 0.0) || !(fb < 0.0)) {
    throw BracketFailure("derivative signs (" + std::to_string(fa) + ", " +
                         std::to_string(fb) + ") do not straddle zero on [" +
                         std::to_string(a) + ", " + std::to_string(b) + "]");
  }
  for (int i = 0; i < max_iter && (b - a) > tol; ++i) {
    const double mid = 0.5 * (a + b);
    const double fm = derivative_at(env, stats, e_r, t_s, mid);
    if (fm > 0.0) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
      fb = fm;
    }
  }
  double root = 0.5 * (a + b);
  // One secant step inside the final bracket sharpens the FOC residual by
  // orders of magnitude; skip it if the bracket still spans the kink at 0.
  if ((a > 0.0) == (b > 0.0) && fa > fb) {
    const double interp = a + (b - a) * fa / (fa - fb);
    if (interp > a && interp < b) root = interp;
  }
  const double residual = derivative_at(env, stats, e_r, t_s, root);
  return {root, RegBranch::InteriorRoot_7c, residual};
}

}  // namespace evduopoly
