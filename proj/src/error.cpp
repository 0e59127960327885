#include "rtasm/error.hpp"

namespace rtasm {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::IllegalValue: return "IllegalValue";
    case ErrorCode::UnknownSymbol: return "UnknownSymbol";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::UnboundVariable: return "UnboundVariable";
    case ErrorCode::TypeError: return "TypeError";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::OutOfHorizon: return "OutOfHorizon";
    case ErrorCode::UnknownAgent: return "UnknownAgent";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::InvalidPattern: return "InvalidPattern";
    case ErrorCode::HorizonTooSmall: return "HorizonTooSmall";
    case ErrorCode::BadDelays: return "BadDelays";
    case ErrorCode::NotRegular: return "NotRegular";
    case ErrorCode::InvalidRun: return "InvalidRun";
    case ErrorCode::NoWitness: return "NoWitness";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::Unsupported: return "Unsupported";
    }
    return "Error";
}

} // namespace rtasm
