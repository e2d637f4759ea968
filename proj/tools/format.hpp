#pragma once

// Text forms used by the command-line tool: "RE,IM" complex literals, CSV
// rows and JSON records. Every double is written in its shortest form that
// reads back to the same bits.

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "papperitz/equation.hpp"
#include "papperitz/numeric.hpp"

namespace papperitz::cli {

/// Parses "RE,IM". Throws Error(InvalidArgument) on malformed or non-finite input.
cplx parse_complex(std::string_view text);

std::string render_double(double x);
std::string render_complex(cplx x);

/// Parses "z0;z1;..." with each point in "RE,IM" form.
std::vector<cplx> parse_path(std::string_view text);

struct OutputRow {
  cplx z;
  cplx y;
  cplx dy;
  double residual_abs;
};

inline constexpr std::string_view kCsvHeader = "z_re,z_im,y_re,y_im,dy_re,dy_im,residual_abs";

std::string render_csv(const std::vector<OutputRow>& rows);

nlohmann::json to_json(cplx x);
nlohmann::json to_json(const EquationParams& p);
nlohmann::json to_json(const DerivedParams& d);
nlohmann::json to_json(const OutputRow& row);

}  // namespace papperitz::cli
