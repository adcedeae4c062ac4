#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mpmdl {

enum class Errc {
  CycleDetected,
  TaskExceedsTakt,
  BadTaskTime,
  BadEnergyRate,
  BadLineCount,
  BadLineModel,
  BadEdge,
  BadTaskIds,
  NonPositiveTakt,
  BadRates,
  ParseError,
  TooLarge,
  InfeasibleSpec,
  InvalidConfig,
  ZeroDemand,
  Overload,
  FluctuationTooLarge,
  EmptyFront,
  Io,
};

inline const char* errc_name(Errc code) {
  switch (code) {
    case Errc::CycleDetected: return "CycleDetected";
    case Errc::TaskExceedsTakt: return "TaskExceedsTakt";
    case Errc::BadTaskTime: return "BadTaskTime";
    case Errc::BadEnergyRate: return "BadEnergyRate";
    case Errc::BadLineCount: return "BadLineCount";
    case Errc::BadLineModel: return "BadLineModel";
    case Errc::BadEdge: return "BadEdge";
    case Errc::BadTaskIds: return "BadTaskIds";
    case Errc::NonPositiveTakt: return "NonPositiveTakt";
    case Errc::BadRates: return "BadRates";
    case Errc::ParseError: return "ParseError";
    case Errc::TooLarge: return "TooLarge";
    case Errc::InfeasibleSpec: return "InfeasibleSpec";
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::ZeroDemand: return "ZeroDemand";
    case Errc::Overload: return "Overload";
    case Errc::FluctuationTooLarge: return "FluctuationTooLarge";
    case Errc::EmptyFront: return "EmptyFront";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

/// Base error for everything the library throws on bad input.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Instance invariant violation. `line` and `task` are 1-based, 0 when not applicable.
class ValidationError : public Error {
 public:
  ValidationError(Errc code, const std::string& what, int line = 0, int task = 0,
                  std::vector<int> cycle = {})
      : Error(code, what), line_(line), task_(task), cycle_(std::move(cycle)) {}

  int line() const noexcept { return line_; }
  int task() const noexcept { return task_; }
  const std::vector<int>& cycle() const noexcept { return cycle_; }

 private:
  int line_;
  int task_;
  std::vector<int> cycle_;
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(Errc::ParseError, what) {}
};

}  // namespace mpmdl
