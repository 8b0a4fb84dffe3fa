#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace petis {

enum class ErrorCode : std::uint8_t {
    InvalidArgument,
    Domain,      // input outside the region where a guarantee or formula applies
    Divergence,  // simulated state left the representable / bounded region
    Certificate, // Lyapunov certificate failed a sampled check
    Numeric,     // iterative routine failed to converge
    Range,       // intermediate result not representable
    Io,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Thrown by the simulator when the state becomes non-finite or exceeds the
/// divergence bound. Carries the offending time step.
class DivergenceError : public Error {
public:
    DivergenceError(long step, const std::string& what)
        : Error(ErrorCode::Divergence, what), step_(step) {}

    [[nodiscard]] long step() const noexcept { return step_; }

private:
    long step_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

} // namespace petis
