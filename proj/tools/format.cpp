#include "format.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <sstream>

#include "papperitz/error.hpp"

namespace papperitz::cli {

namespace {

double parse_double(std::string_view text, std::string_view whole) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorKind::InvalidArgument, "malformed complex literal '" + std::string(whole) + "'");
  }
  if (!std::isfinite(value)) {
    throw Error(ErrorKind::InvalidArgument, "non-finite complex literal '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

cplx parse_complex(std::string_view text) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos || text.find(',', comma + 1) != std::string_view::npos) {
    throw Error(ErrorKind::InvalidArgument, "expected RE,IM but got '" + std::string(text) + "'");
  }
  return {parse_double(text.substr(0, comma), text), parse_double(text.substr(comma + 1), text)};
}

std::string render_double(double x) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), ptr);
}

std::string render_complex(cplx x) { return render_double(x.real()) + "," + render_double(x.imag()); }

std::vector<cplx> parse_path(std::string_view text) {
  std::vector<cplx> points;
  std::size_t start = 0;
  for (;;) {
    const auto semi = text.find(';', start);
    points.push_back(parse_complex(text.substr(start, semi == std::string_view::npos ? semi : semi - start)));
    if (semi == std::string_view::npos) break;
    start = semi + 1;
  }
  return points;
}

std::string render_csv(const std::vector<OutputRow>& rows) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << render_complex(r.z) << ',' << render_complex(r.y) << ',' << render_complex(r.dy) << ','
        << render_double(r.residual_abs) << '\n';
  }
  return out.str();
}

nlohmann::json to_json(cplx x) { return nlohmann::json::array({x.real(), x.imag()}); }

nlohmann::json to_json(const EquationParams& p) {
  return {{"a", to_json(p.a)}, {"b", to_json(p.b)}, {"c", to_json(p.c)}};
}

nlohmann::json to_json(const DerivedParams& d) {
  return {{"delta", to_json(d.delta)},   {"delta_star", to_json(d.delta_star)},
          {"lambda", to_json(d.lambda)}, {"lambda2", to_json(d.lambda2)},
          {"alpha", to_json(d.alpha)},   {"beta", to_json(d.beta)},
          {"gamma", to_json(d.gamma)},   {"degeneracy", std::string(to_string(d.degeneracy))}};
}

nlohmann::json to_json(const OutputRow& row) {
  return {{"z", to_json(row.z)}, {"y", to_json(row.y)}, {"dy", to_json(row.dy)}, {"residual_abs", row.residual_abs}};
}

}  // namespace papperitz::cli
