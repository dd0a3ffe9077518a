#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace smf {

enum class ErrorCode {
    InvalidInput,
    InvalidAgent,
    InvalidMatching,
    Parse,
    Io,
    Estimation,
    BudgetExceeded,
    RotationNotExposed,
    Degenerate,
};

// Every failure raised by the library carries one of the codes above so the
// C boundary can map it onto a status value without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

class BudgetExceeded : public Error {
public:
    BudgetExceeded(const std::string& what, std::uint64_t partial_count)
        : Error(ErrorCode::BudgetExceeded, what), partial_count_(partial_count) {}

    std::uint64_t partial_count() const noexcept { return partial_count_; }

private:
    std::uint64_t partial_count_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace smf
