#ifndef STOKESEG_ERRORS_HPP
#define STOKESEG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace stokeseg {

/// Mobility solve rejected: the collocation system is numerically singular or
/// so ill-conditioned that the computed densities would be meaningless. The
/// offending condition estimate travels with the exception.
class IllConditionedError : public std::runtime_error {
  public:
    IllConditionedError(const std::string &what, double condition_estimate)
        : std::runtime_error(what), condition_estimate_(condition_estimate) {}
    double condition_estimate() const { return condition_estimate_; }

  private:
    double condition_estimate_;
};

/// A time integration produced nonfinite state or exceeded its speed guard.
class BlowUpError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A run configuration failed validation.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace stokeseg

#endif
