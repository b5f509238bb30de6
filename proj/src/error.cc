#include <silp/error.hh>

using namespace silp;

auto silp::error_name(ErrorCode code) -> std::string_view
{
    switch (code) {
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::InvalidName: return "InvalidName";
        case ErrorCode::DuplicateName: return "DuplicateName";
        case ErrorCode::DuplicateTerm: return "DuplicateTerm";
        case ErrorCode::ZeroCoefficient: return "ZeroCoefficient";
        case ErrorCode::UnknownVariable: return "UnknownVariable";
        case ErrorCode::SparsityViolation: return "SparsityViolation";
        case ErrorCode::BoxViolation: return "BoxViolation";
        case ErrorCode::EmptyBox: return "EmptyBox";
        case ErrorCode::BoxTooWide: return "BoxTooWide";
        case ErrorCode::DomainViolation: return "DomainViolation";
        case ErrorCode::ArityTooSmall: return "ArityTooSmall";
        case ErrorCode::BoxMismatch: return "BoxMismatch";
        case ErrorCode::NotPowerOfTwo: return "NotPowerOfTwo";
        case ErrorCode::NonIntegerCoefficient: return "NonIntegerCoefficient";
        case ErrorCode::PointOutOfBox: return "PointOutOfBox";
        case ErrorCode::SupportTooLarge: return "SupportTooLarge";
        case ErrorCode::MixedVertexCounts: return "MixedVertexCounts";
        case ErrorCode::EmptyFamily: return "EmptyFamily";
        case ErrorCode::BadK: return "BadK";
        case ErrorCode::BadGraph: return "BadGraph";
        case ErrorCode::NotCanonicalBox: return "NotCanonicalBox";
        case ErrorCode::RTooSmall: return "RTooSmall";
        case ErrorCode::DLessThanTwo: return "DLessThanTwo";
        case ErrorCode::UnboundedVariable: return "UnboundedVariable";
        case ErrorCode::UnsupportedMagnitude: return "UnsupportedMagnitude";
        case ErrorCode::SpaceTooLarge: return "SpaceTooLarge";
        case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string & message) :
    std::runtime_error(std::string{error_name(code)} + ": " + message),
    _code(code)
{
}
