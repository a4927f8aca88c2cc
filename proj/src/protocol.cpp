#include "canp/protocol.hpp"

#include <fmt/format.h>

#include "canp/errors.hpp"

namespace canp {

void validate(const ProtocolSpec& spec) {
  if (spec.t_c < 0.0 || spec.t_theta < 0.0) {
    throw ConfigError(fmt::format("protocol durations must be nonnegative (t_c={}, t_theta={})", spec.t_c, spec.t_theta));
  }
  if (!(spec.total_time() > 0.0)) throw ConfigError("protocol total time must be positive");
  if (!(spec.omega > 0.0)) throw ConfigError("mode frequency must be positive");
  if (!spec.Hc.is_hermitian() || !spec.Htheta.is_hermitian()) {
    throw NotHermitian("protocol Hamiltonians must be Hermitian");
  }
}

}  // namespace canp
