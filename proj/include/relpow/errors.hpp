#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace relpow {

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InvalidParams : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// lambda is the point at which the C-resolvent solve failed; reason
// distinguishes a range defect from a nontrivial kernel.
struct NotInResolventSet : std::runtime_error {
  std::complex<double> lambda;
  std::string reason;
  NotInResolventSet(std::complex<double> lam, std::string why)
      : std::runtime_error("not in C-resolvent set at lambda=(" +
                           std::to_string(lam.real()) + "," +
                           std::to_string(lam.imag()) + "): " + why),
        lambda(lam), reason(std::move(why)) {}
};

struct ToleranceNotMet : std::runtime_error {
  double achieved;
  explicit ToleranceNotMet(double got)
      : std::runtime_error("quadrature tolerance not met, achieved " +
                           std::to_string(got)),
        achieved(got) {}
};

struct RouteDomain : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct OutOfSector : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct TailBoundMissing : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct UnknownIdentity : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

} // namespace relpow
