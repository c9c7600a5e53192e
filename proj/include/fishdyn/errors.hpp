#pragma once

#include <stdexcept>
#include <string>

namespace fishdyn {

/// Base class for all fishdyn errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid or inconsistent configuration input. Carries the offending
/// key path (e.g. "hydro.rho_kgm3") when one is known.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what, std::string key_path = "")
        : Error(key_path.empty() ? what : key_path + ": " + what),
          key_path_(std::move(key_path)) {}

    const std::string& key_path() const { return key_path_; }

private:
    std::string key_path_;
};

/// A sweep parameter spec that does not address a known config key.
class UnknownParameterError : public ConfigError {
public:
    explicit UnknownParameterError(const std::string& key_path)
        : ConfigError("unknown sweep parameter", key_path) {}
};

/// Model-level failures: a request the model cannot serve (bad window,
/// degenerate data, command outside actuator limits, ...).
class ModelError : public Error {
public:
    using Error::Error;
};

class SliderRangeError : public ModelError {
public:
    using ModelError::ModelError;
};

class RankDeficientError : public ModelError {
public:
    using ModelError::ModelError;
};

class MissingFamilyError : public ModelError {
public:
    using ModelError::ModelError;
};

class WindowTooShortError : public ModelError {
public:
    using ModelError::ModelError;
};

class NotTurningError : public ModelError {
public:
    using ModelError::ModelError;
};

class DegenerateCircleError : public ModelError {
public:
    using ModelError::ModelError;
};

class DegenerateSeriesError : public ModelError {
public:
    using ModelError::ModelError;
};

/// Numeric failures: the computation itself broke down.
class NumericError : public Error {
public:
    using Error::Error;
};

/// |cos(pitch)| fell below the gimbal threshold; the Euler-angle
/// parameterization is no longer usable and the run must abort.
class GimbalLockError : public NumericError {
public:
    using NumericError::NumericError;
};

/// State or derivative left the finite range (blow-up).
class NonFiniteError : public NumericError {
public:
    using NumericError::NumericError;
};

/// The 6x6 generalized mass matrix could not be solved. Cannot occur for
/// physically valid parameters; indicates a broken vehicle configuration.
class SingularMassError : public NumericError {
public:
    using NumericError::NumericError;
};

} // namespace fishdyn
