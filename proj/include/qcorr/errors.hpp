#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qcorr {

enum class ErrorKind {
    NotSquare,
    NotHermitian,
    DimensionMismatch,
    NotUnitTrace,
    NotPSD,
    NotUnitary,
    OutOfRange,
    NotAProbabilityVector,
    NotPure,
    InvalidProjectors,
    NotProjector,
    NotCyclicOrthogonal,
    BadSpectrum,
    UnsupportedDims,
    BudgetExhausted,
    NotMonotone,
    NoBoundary,
    ParseError,
    IoError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library. `margin` carries the violated
/// quantity where one exists (e.g. the most negative eigenvalue for NotPSD,
/// the best margin reached for BudgetExhausted); it is NaN otherwise.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what, double margin = kNoMargin);

    ErrorKind kind() const noexcept { return kind_; }
    double margin() const noexcept { return margin_; }
    bool has_margin() const noexcept { return !(margin_ != margin_); }

    static constexpr double kNoMargin = std::numeric_limits<double>::quiet_NaN();

private:
    ErrorKind kind_;
    double margin_;
};

/// True for kinds that mean "the input state or spectrum is invalid".
bool is_invalid_input(ErrorKind kind) noexcept;

}  // namespace qcorr
