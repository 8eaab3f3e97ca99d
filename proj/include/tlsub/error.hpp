#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tlsub {

enum class ErrorCode {
    InvalidArgument,
    SingularMatrix,
    NotTemperleyLieb,
    TraceTooSmall,
    CanonicalizationFailed,
    BudgetExceeded,
    RankAmbiguous,
    RequiresAntidiagonal,
    LevelOutOfRange,
    WindowTooSmall,
    InvalidQ,
    Io,
    Parse,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

} // namespace tlsub
