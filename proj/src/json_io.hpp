#pragma once

#include <complex>
#include <string>

#include "json.hpp"

namespace scfr::jsonio {

/// Deterministic serialization: object keys come out sorted (nlohmann keeps
/// them in a std::map) and every floating-point number is rendered with
/// %.17g, so two runs over the same data emit byte-identical text.
std::string dump(const nlohmann::json& j);

std::string format_double(double v);

/// "re+imj" cell used by matrix CSV exports.
std::string format_complex_cell(const std::complex<double>& z);

nlohmann::json complex_json(const std::complex<double>& z);  // [re, im]

}  // namespace scfr::jsonio
