#pragma once
#include <stdexcept>
#include <string>

namespace negdim {

enum class Errc {
  PoleAtArgument,
  PoleAtDimension,
  DomainError,
  OrderOutOfRange,
  OutsideDisk,
  OutsideDomain,
  NotConverged,
  InconsistentTheta,
  ThetaMismatch,
  PreconditionViolated,
  InsufficientSamples,
  ForbiddenExponent,
  WrongWindow,
  ZeroDimension,
  OutOfDomain,
  RootNotBracketed,
  NoConvergentRegion,
  OracleMismatch,
  EndpointSingularity,
  InsufficientTrials,
  SaturatedClock,
  StepRejected,
  NotImplemented,
  DivergentSeries,
  InvalidInput,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Domain and pole failures, as opposed to bad input or unfinished features.
bool is_domain_error(Errc c);

}  // namespace negdim
