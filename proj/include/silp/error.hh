#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace silp
{
    enum class ErrorCode
    {
        ParseError,
        InvalidName,
        DuplicateName,
        DuplicateTerm,
        ZeroCoefficient,
        UnknownVariable,
        SparsityViolation,
        BoxViolation,
        EmptyBox,
        BoxTooWide,
        DomainViolation,
        ArityTooSmall,
        BoxMismatch,
        NotPowerOfTwo,
        NonIntegerCoefficient,
        PointOutOfBox,
        SupportTooLarge,
        MixedVertexCounts,
        EmptyFamily,
        BadK,
        BadGraph,
        NotCanonicalBox,
        RTooSmall,
        DLessThanTwo,
        UnboundedVariable,
        UnsupportedMagnitude,
        SpaceTooLarge,
        Io
    };

    auto error_name(ErrorCode code) -> std::string_view;

    /// Every failure raised by the toolkit. The code identifies the contract
    /// violation; the message carries the offending detail.
    class Error : public std::runtime_error
    {
    public:
        Error(ErrorCode code, const std::string & message);

        [[nodiscard]] auto code() const noexcept -> ErrorCode { return _code; }

    private:
        ErrorCode _code;
    };
}
