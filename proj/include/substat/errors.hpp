#pragma once

#include <stdexcept>
#include <string>

namespace substat {

enum class ErrorCode {
  NakedSingularity,
  DomainEmpty,
  BadProfile,
  OutOfDomain,
  HorizonEvaluation,
  StepUnderflow,
  HorizonDivergence,
  NotMeanConvex,
  LeftDomain,
  NoArrival,
  BlowUp,
  BaseInvalid,
  InapplicableEnd,
  PrerequisiteFailed,
  SurfaceBelowHorizon,
  DegenerateTangent,
  AvrUncertified,
  IoError,
  ConfigError,
};

inline const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NakedSingularity: return "NakedSingularity";
    case ErrorCode::DomainEmpty: return "DomainEmpty";
    case ErrorCode::BadProfile: return "BadProfile";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::HorizonEvaluation: return "HorizonEvaluation";
    case ErrorCode::StepUnderflow: return "StepUnderflow";
    case ErrorCode::HorizonDivergence: return "HorizonDivergence";
    case ErrorCode::NotMeanConvex: return "NotMeanConvex";
    case ErrorCode::LeftDomain: return "LeftDomain";
    case ErrorCode::NoArrival: return "NoArrival";
    case ErrorCode::BlowUp: return "BlowUp";
    case ErrorCode::BaseInvalid: return "BaseInvalid";
    case ErrorCode::InapplicableEnd: return "InapplicableEnd";
    case ErrorCode::PrerequisiteFailed: return "PrerequisiteFailed";
    case ErrorCode::SurfaceBelowHorizon: return "SurfaceBelowHorizon";
    case ErrorCode::DegenerateTangent: return "DegenerateTangent";
    case ErrorCode::AvrUncertified: return "AvrUncertified";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Error";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace substat
