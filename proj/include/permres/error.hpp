#pragma once

#include <stdexcept>
#include <string>

namespace permres
{

enum class ErrorKind
{
    InvalidInput,
    DimensionMismatch,
    CapExceeded,
    NotInjective,
    GroupMismatch,
    NotPermutationBasis,
    NotResolution,
    OddLength,
    LiftFailed,
    SelectionFailed,
    InternalError
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error
{
    public:
        Error(ErrorKind kind, const std::string& message)
            : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind)
        {
        }

        ErrorKind kind() const { return kind_; }

    private:
        ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind)
{
    switch (kind)
    {
        case ErrorKind::InvalidInput:        return "InvalidInput";
        case ErrorKind::DimensionMismatch:   return "DimensionMismatch";
        case ErrorKind::CapExceeded:         return "CapExceeded";
        case ErrorKind::NotInjective:        return "NotInjective";
        case ErrorKind::GroupMismatch:       return "GroupMismatch";
        case ErrorKind::NotPermutationBasis: return "NotPermutationBasis";
        case ErrorKind::NotResolution:       return "NotResolution";
        case ErrorKind::OddLength:           return "OddLength";
        case ErrorKind::LiftFailed:          return "LiftFailed";
        case ErrorKind::SelectionFailed:     return "SelectionFailed";
        case ErrorKind::InternalError:       return "InternalError";
    }
    return "Unknown";
}

}   // namespace permres
