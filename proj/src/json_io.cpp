#include "json_io.hpp"

#include <cstdio>

namespace scfr::jsonio {

std::string format_double(double v) {
  if (v == 0.0) return "0";  // normalize negative zero
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

void dump_into(const nlohmann::json& j, std::string& out) {
  using value_t = nlohmann::json::value_t;
  switch (j.type()) {
    case value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += nlohmann::json(it.key()).dump();
        out += ':';
        dump_into(it.value(), out);
      }
      out += '}';
      break;
    }
    case value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& item : j) {
        if (!first) out += ',';
        first = false;
        dump_into(item, out);
      }
      out += ']';
      break;
    }
    case value_t::number_float:
      out += format_double(j.get<double>());
      break;
    default:
      out += j.dump();
      break;
  }
}

}  // namespace

std::string dump(const nlohmann::json& j) {
  std::string out;
  dump_into(j, out);
  return out;
}

std::string format_complex_cell(const std::complex<double>& z) {
  const std::string re = format_double(z.real());
  std::string im = format_double(z.imag());
  if (!im.empty() && im[0] != '-') im.insert(im.begin(), '+');
  return re + im + "j";
}

nlohmann::json complex_json(const std::complex<double>& z) {
  return nlohmann::json::array({z.real(), z.imag()});
}

}  // namespace scfr::jsonio
