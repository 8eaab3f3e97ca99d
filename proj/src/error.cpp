#include "tlsub/error.hpp"

namespace tlsub {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::NotTemperleyLieb: return "NotTemperleyLieb";
    case ErrorCode::TraceTooSmall: return "TraceTooSmall";
    case ErrorCode::CanonicalizationFailed: return "CanonicalizationFailed";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::RankAmbiguous: return "RankAmbiguous";
    case ErrorCode::RequiresAntidiagonal: return "RequiresAntidiagonal";
    case ErrorCode::LevelOutOfRange: return "LevelOutOfRange";
    case ErrorCode::WindowTooSmall: return "WindowTooSmall";
    case ErrorCode::InvalidQ: return "InvalidQ";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Parse: return "Parse";
    }
    return "Unknown";
}

} // namespace tlsub
