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

#ifndef EVDUOPOLY_ERRORS_HPP
#define EVDUOPOLY_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace evduopoly {

/// Base class of all library errors. `kind()` is a stable machine-readable
/// tag, `what()` the human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(kind + ": " + message), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

/// A constructor or operation precondition does not hold.
class InvalidParameter : public Error {
 public:
  explicit InvalidParameter(const std::string& message)
      : Error("InvalidParameter", message) {}
};

/// Fluctuation-adjusted power P_A fell outside (0, P_d); the user base is
/// outside model validity.
class PAInvalid : public Error {
 public:
  explicit PAInvalid(const std::string& message) : Error("PAInvalid", message) {}
};

/// Expected power is zero, so per-kWh regulation remuneration is undefined.
class ZeroMeanPower : public Error {
 public:
  explicit ZeroMeanPower(const std::string& message)
      : Error("ZeroMeanPower", message) {}
};

/// Root-finder bracket endpoints did not straddle zero.
class BracketFailure : public Error {
 public:
  explicit BracketFailure(const std::string& message)
      : Error("BracketFailure", message) {}
};

/// A claimed equilibrium admits a profitable unilateral deviation.
class CertificationFailure : public Error {
 public:
  CertificationFailure(const std::string& message, double station_price,
                       double improvement)
      : Error("CertificationFailure", message),
        deviation_price(station_price),
        improvement(improvement) {}
  double deviation_price;
  double improvement;
};

/// Every admissible design x yields zero regulation-station revenue.
class AllInfeasible : public Error {
 public:
  explicit AllInfeasible(const std::string& message)
      : Error("AllInfeasible", message) {}
};

/// Charging can never finish (no energy flows in any slot).
class NeverCompletes : public Error {
 public:
  explicit NeverCompletes(const std::string& message)
      : Error("NeverCompletes", message) {}
};

/// Malformed text input; `line` is 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error("ParseError", "line " + std::to_string(line) + ": " + message),
        line(line) {}
  std::size_t line;
};

}  // namespace evduopoly

#endif  // EVDUOPOLY_ERRORS_HPP
