#include "negdim/errors.hpp"

namespace negdim {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::PoleAtArgument: return "PoleAtArgument";
    case Errc::PoleAtDimension: return "PoleAtDimension";
    case Errc::DomainError: return "DomainError";
    case Errc::OrderOutOfRange: return "OrderOutOfRange";
    case Errc::OutsideDisk: return "OutsideDisk";
    case Errc::OutsideDomain: return "OutsideDomain";
    case Errc::NotConverged: return "NotConverged";
    case Errc::InconsistentTheta: return "InconsistentTheta";
    case Errc::ThetaMismatch: return "ThetaMismatch";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::InsufficientSamples: return "InsufficientSamples";
    case Errc::ForbiddenExponent: return "ForbiddenExponent";
    case Errc::WrongWindow: return "WrongWindow";
    case Errc::ZeroDimension: return "ZeroDimension";
    case Errc::OutOfDomain: return "OutOfDomain";
    case Errc::RootNotBracketed: return "RootNotBracketed";
    case Errc::NoConvergentRegion: return "NoConvergentRegion";
    case Errc::OracleMismatch: return "OracleMismatch";
    case Errc::EndpointSingularity: return "EndpointSingularity";
    case Errc::InsufficientTrials: return "InsufficientTrials";
    case Errc::SaturatedClock: return "SaturatedClock";
    case Errc::StepRejected: return "StepRejected";
    case Errc::NotImplemented: return "NotImplemented";
    case Errc::DivergentSeries: return "DivergentSeries";
    case Errc::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

bool is_domain_error(Errc c) {
  switch (c) {
    case Errc::InvalidInput:
    case Errc::NotImplemented:
      return false;
    default:
      return true;
  }
}

}  // namespace negdim
