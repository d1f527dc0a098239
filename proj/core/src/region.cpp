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

#include "evduopoly/region.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <string>
#include <string_view>

#include "evduopoly/design.hpp"
#include "internal.hpp"

namespace evduopoly {

namespace {

constexpr double kXGridStep = 1e-3;
constexpr double kXRefineTol = 1e-6;

double grid_x(int i, int n) {
  return i + 1 == n ? 1.0 : i * kXGridStep;
}

template <typename MarginFn>
Viability viability_over_x(const MarketEnv& env, MarginFn&& margin) {
  const int n = static_cast<int>(std::lround(1.0 / kXGridStep)) + 1;
  Viability v{false, std::nullopt};
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const double x = grid_x(i, n);
    PowerStats stats;
    try {
      stats = derive_power_stats(env, x);
    } catch (const PAInvalid&) {
      continue;
    }
    const double m = margin(stats);
    if (m > best) {
      best = m;
      if (m > 0.0) {
        v.viable = true;
        v.witness_x = x;
      }
    }
  }
  return v;
}

}  // namespace

Viability competition_viable(const MarketEnv& env,
                             const RewardSchedule& rewards) {
  env.validate();
  rewards.validate();
  return viability_over_x(env, [&](const PowerStats& stats) {
    const double e_r = per_kwh_regulation(env, rewards, stats);
    const double exit_price =
        env.t + (env.p_d - stats.p_a) * env.theta_bar / env.c_b;
    return e_r + (stats.p_a / env.p_d) * exit_price;
  });
}

Viability monopoly_viable(const MarketEnv& env, const RewardSchedule& rewards,
                          MonopolySign sign) {
  env.validate();
  rewards.validate();
  const double s = sign == MonopolySign::CorrectedPlus ? 1.0 : -1.0;
  return viability_over_x(env, [&](const PowerStats& stats) {
    const double x = stats.x;
    return env.rho_u * rewards.r_u * x -
           env.rho_d * (1.0 - rewards.r_d) * (1.0 - x) - x +
           s * stats.p_bar * stats.p_a / (env.p_d * env.p_d);
  });
}

std::optional<double> viability_onset_ru(const MarketEnv& env, double r_d,
                                         double delta, RegionMode mode,
                                         double lo, double hi,
                                         MonopolySign sign) {
  const auto viable = [&](double r_u) {
    const RewardSchedule rw{r_u, r_d, delta};
    return mode == RegionMode::Competition
               ? competition_viable(env, rw).viable
               : monopoly_viable(env, rw, sign).viable;
  };
  if (viable(lo)) return lo;
  if (!viable(hi)) return std::nullopt;
  while (hi - lo > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    (viable(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

RegionCell classify_monopoly_cell(const MarketEnv& env,
                                  const RewardSchedule& rewards) {
  const auto value_at = [&](double x) {
    try {
      const PowerStats stats = derive_power_stats(env, x);
      return monopoly_prices_at_x(env, rewards, stats).total_revenue;
    } catch (const PAInvalid&) {
      return -std::numeric_limits<double>::infinity();
    }
  };
  const int n = static_cast<int>(std::lround(1.0 / kXGridStep)) + 1;
  double best_x = 0.0, best_v = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const double x = grid_x(i, n);
    const double v = value_at(x);
    if (v >= best_v) {
      best_v = v;
      best_x = x;
    }
  }
  const double lo = std::max(0.0, best_x - kXGridStep);
  const double hi = std::min(1.0, best_x + kXGridStep);
  const double refined = detail::golden_max(value_at, lo, hi, kXRefineTol);
  double x_star = best_x, v_star = best_v;
  for (const double cand : {refined, lo, hi}) {
    const double v = value_at(cand);
    if (v > v_star || (v == v_star && cand > x_star)) {
      v_star = v;
      x_star = cand;
    }
  }
  RegionCell cell{rewards.r_u, rewards.r_d, RegionMode::Monopoly,
                  RegionStatus::OptX_Interior, x_star};
  if (x_star == 0.0) cell.status = RegionStatus::OptX_Zero;
  if (x_star == 1.0) cell.status = RegionStatus::OptX_One;
  return cell;
}

RegionCell classify_competition_cell(const MarketEnv& env,
                                     const RewardSchedule& rewards) {
  RegionCell cell{rewards.r_u, rewards.r_d, RegionMode::Competition,
                  RegionStatus::OptX_Interior,
                  std::numeric_limits<double>::quiet_NaN()};
  try {
    const DesignResult dr = optimize_x(env, rewards);
    cell.x_star = dr.x_star;
    if (dr.x_star == 0.0) cell.status = RegionStatus::OptX_Zero;
    else if (dr.x_star == 1.0) cell.status = RegionStatus::OptX_One;
  } catch (const AllInfeasible&) {
    cell.status = RegionStatus::Infeasible;
  }
  return cell;
}

}  // namespace

std::vector<RegionCell> scan_region(const MarketEnv& env, const RewardGrid& grid,
                                    RegionMode mode, double delta,
                                    MonopolySign sign) {
  env.validate();
  if (!(grid.ru_step > 0.0) || !(grid.rd_step > 0.0)) {
    throw InvalidParameter("grid steps must be positive");
  }
  const int n_ru =
      static_cast<int>(std::floor((grid.ru_hi - grid.ru_lo) / grid.ru_step +
                                  1e-9)) + 1;
  const int n_rd =
      static_cast<int>(std::floor((grid.rd_hi - grid.rd_lo) / grid.rd_step +
                                  1e-9)) + 1;
  std::vector<RegionCell> cells(static_cast<std::size_t>(n_ru) * n_rd);
  detail::parallel_for(cells.size(), [&](std::size_t k) {
    const int i_rd = static_cast<int>(k) / n_ru;
    const int i_ru = static_cast<int>(k) % n_ru;
    const RewardSchedule rw{grid.ru_lo + i_ru * grid.ru_step,
                            grid.rd_lo + i_rd * grid.rd_step, delta};
    if (mode == RegionMode::Competition) {
      if (!competition_viable(env, rw).viable) {
        cells[k] = {rw.r_u, rw.r_d, mode, RegionStatus::Infeasible,
                    std::numeric_limits<double>::quiet_NaN()};
      } else {
        cells[k] = classify_competition_cell(env, rw);
      }
    } else {
      if (!monopoly_viable(env, rw, sign).viable) {
        cells[k] = {rw.r_u, rw.r_d, mode, RegionStatus::Infeasible,
                    std::numeric_limits<double>::quiet_NaN()};
      } else {
        cells[k] = classify_monopoly_cell(env, rw);
      }
    }
  });
  return cells;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' ||
                        s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

double parse_double(std::string_view field, std::size_t line,
                    const char* column) {
  field = trim(field);
  double value;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ParseError(line, std::string("malformed ") + column + " value '" +
                               std::string(field) + "'");
  }
  if (!std::isfinite(value) || value < 0.0) {
    throw ParseError(line, std::string(column) + " must be finite and >= 0");
  }
  return value;
}

}  // namespace

std::vector<RewardSample> load_rewards_csv(std::istream& in) {
  std::vector<RewardSample> out;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view content = trim(line);
    if (content.empty() || content.front() == '#') continue;
    if (!header_seen) {
      if (content != "r_u,r_d" && content != "r_u,r_d,label") {
        throw ParseError(line_no, "expected header 'r_u,r_d[,label]'");
      }
      header_seen = true;
      continue;
    }
    const std::size_t c1 = content.find(',');
    if (c1 == std::string_view::npos) {
      throw ParseError(line_no, "expected at least two comma-separated fields");
    }
    const std::string_view rest = content.substr(c1 + 1);
    const std::size_t c2 = rest.find(',');
    RewardSample sample;
    sample.r_u = parse_double(content.substr(0, c1), line_no, "r_u");
    if (c2 == std::string_view::npos) {
      sample.r_d = parse_double(rest, line_no, "r_d");
    } else {
      sample.r_d = parse_double(rest.substr(0, c2), line_no, "r_d");
      sample.label = std::string(trim(rest.substr(c2 + 1)));
    }
    out.push_back(std::move(sample));
  }
  if (!header_seen) throw ParseError(line_no == 0 ? 1 : line_no, "missing header row");
  return out;
}

std::vector<RewardSample> load_rewards_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(1, "cannot open " + path.string());
  return load_rewards_csv(in);
}

}  // namespace evduopoly
