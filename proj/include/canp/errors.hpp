#pragma once

#include <stdexcept>
#include <string>

namespace canp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define CANP_DEFINE_ERROR(Name)                 \
  class Name : public Error {                   \
   public:                                      \
    using Error::Error;                         \
  }

/// [Hc, Htheta] vanishes, so no critical parameter exists.
CANP_DEFINE_ERROR(CommutingPair);
/// ad^3 is not proportional to ad for the given pair.
CANP_DEFINE_ERROR(ConditionViolated);
CANP_DEFINE_ERROR(NegativeDelta);
CANP_DEFINE_ERROR(NotHermitian);
CANP_DEFINE_ERROR(NotPositive);
/// Fock truncation lost too much weight in the top levels.
CANP_DEFINE_ERROR(TruncationNotConverged);
CANP_DEFINE_ERROR(VacuumProbe);
CANP_DEFINE_ERROR(NoSignChange);
/// Model parameters outside the normal phase.
CANP_DEFINE_ERROR(OutOfPhase);
CANP_DEFINE_ERROR(ConfigError);

#undef CANP_DEFINE_ERROR

}  // namespace canp
