#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace moore {

enum class ErrorCode {
    IncompatibleRing,
    NotAUnit,
    NoUniformizer,
    CompositionUndefined,
    NotInvertible,
    HeightUndefined,
    RankUndetermined,
    ParityMismatch,
    UnsupportedCase,
    WildCase,
    NeedsHigherPrecision,
    ZeroDivisor,
    NonFieldRing,
    BasisMismatch,
    InvalidArgument,
    Parse,
};

std::string_view error_name(ErrorCode code);

/// Domain error raised by every library operation. The CLI maps these to
/// exit status 3 (status 2 for `ErrorCode::Parse`).
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }
    std::string_view name() const noexcept { return error_name(code_); }

private:
    ErrorCode code_;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(ErrorCode::Parse, what + " at position " + std::to_string(position)),
          message_(what),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }
    /// The message without the position suffix.
    const std::string& message() const noexcept { return message_; }

private:
    std::string message_;
    std::size_t position_;
};

}  // namespace moore
