#pragma once

#include <stdexcept>
#include <string>

namespace geoquad {

struct NotHermitian : std::runtime_error {
    explicit NotHermitian(const std::string& msg) : std::runtime_error(msg) {}
};

struct ConvergenceFailure : std::runtime_error {
    explicit ConvergenceFailure(const std::string& msg) : std::runtime_error(msg) {}
};

struct ShapeMismatch : std::runtime_error {
    explicit ShapeMismatch(const std::string& msg) : std::runtime_error(msg) {}
};

struct DegenerateSpectrum : std::runtime_error {
    explicit DegenerateSpectrum(const std::string& msg) : std::runtime_error(msg) {}
};

struct ExpansionInvalid : std::runtime_error {
    explicit ExpansionInvalid(const std::string& msg) : std::runtime_error(msg) {}
};

struct EndpointMiss : std::runtime_error {
    explicit EndpointMiss(const std::string& msg) : std::runtime_error(msg) {}
};

struct QuadratureFailure : std::runtime_error {
    explicit QuadratureFailure(const std::string& msg) : std::runtime_error(msg) {}
};

struct PositivityViolation : std::runtime_error {
    explicit PositivityViolation(const std::string& msg) : std::runtime_error(msg) {}
};

struct InvalidT2 : std::runtime_error {
    explicit InvalidT2(const std::string& msg) : std::runtime_error(msg) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace geoquad
