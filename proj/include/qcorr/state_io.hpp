#pragma once

#include <string>
#include <string_view>

#include "qcorr/states.hpp"

namespace qcorr {

/// {"dims": [dA, dB], "matrix": [[[re, im], ...], ...]}, row-major.
/// Throws ParseError with a line/column diagnostic, or the validation
/// errors of make_density.
DensityMatrix parse_state_json(std::string_view text, const Tolerances& tol = {});

/// Throws IoError when the file cannot be read.
DensityMatrix load_state_file(const std::string& path, const Tolerances& tol = {});

std::string state_to_json(const ComplexMatrix& m, Dims dims);

}  // namespace qcorr
