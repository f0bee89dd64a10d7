#include "dvflow/cli/output.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "dvflow/dynamics.hpp"
#include "dvflow/serialize.hpp"

namespace dvflow::cli {

const std::vector<std::string>& timeseries_columns() {
  static const std::vector<std::string> columns = {
      "t",
      "mass",
      "energy",
      "entropy",
      "min_rho",
      "max_rho",
      "max_w",
      "min_w",
      "l2_w",
      "dissipation_energy",
      "dissipation_entropy",
      "power_in_energy",
      "power_in_entropy",
      "h1_rho",
      "h2_rho",
      "h1_u",
      "density_floor_bound",
      "residual_mass",
      "residual_energy",
      "residual_entropy",
      "residual_w_l2",
  };
  return columns;
}

double timeseries_value(const DiagnosticsRecord& r, const std::string& c) {
  if (c == "t") return r.t;
  if (c == "mass") return r.mass;
  if (c == "energy") return r.energy;
  if (c == "entropy") return r.entropy;
  if (c == "min_rho") return r.min_rho;
  if (c == "max_rho") return r.max_rho;
  if (c == "max_w") return r.max_w;
  if (c == "min_w") return r.min_w;
  if (c == "l2_w") return r.l2_w;
  if (c == "dissipation_energy") return r.dissipation_energy;
  if (c == "dissipation_entropy") return r.dissipation_entropy;
  if (c == "power_in_energy") return r.power_in_energy;
  if (c == "power_in_entropy") return r.power_in_entropy;
  if (c == "h1_rho") return r.hk_rho[0];
  if (c == "h2_rho") return r.hk_rho[1];
  if (c == "h1_u") return r.hk_u[0];
  if (c == "density_floor_bound") {
    return r.density_floor_bound ? *r.density_floor_bound : std::nan("");
  }
  if (c == "residual_mass") return r.residual_mass;
  if (c == "residual_energy") return r.residual_energy;
  if (c == "residual_entropy") return r.residual_entropy;
  if (c == "residual_w_l2") return r.residual_w_l2;
  throw std::invalid_argument("unknown time-series column '" + c + "'");
}

std::string timeseries_cell(const DiagnosticsRecord& r, const std::string& c) {
  if (c == "density_floor_bound" && !r.density_floor_bound) return {};
  return format_double(timeseries_value(r, c));
}

std::string timeseries_csv(const std::vector<DiagnosticsRecord>& records) {
  const auto& cols = timeseries_columns();
  std::string out;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    out += (i ? "," : "") + cols[i];
  }
  out += '\n';
  for (const auto& r : records) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (i) out += ',';
      out += timeseries_cell(r, cols[i]);
    }
    out += '\n';
  }
  return out;
}

std::string snapshot_csv(const FluidState& state, const ConstitutiveLaw& law,
                         const Grid& grid) {
  const Field w = active_potential(state, law, grid);
  const Field X = bd_velocity(state, law, grid);
  std::string out = "x,rho,u,w,X\n";
  for (std::size_t j = 0; j < state.rho.size(); ++j) {
    out += format_double(grid.x(j)) + ',' + format_double(state.rho[j]) + ',' +
           format_double(state.u[j]) + ',' + format_double(w[j]) + ',' +
           format_double(X[j]) + '\n';
  }
  return out;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n\r") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

namespace {

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string label(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

}  // namespace

std::string svg_line_plot(const PlotSeries& s) {
  constexpr double width = 640, height = 400;
  constexpr double left = 80, right = 20, top = 40, bottom = 50;
  const double pw = width - left - right;
  const double ph = height - top - bottom;

  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  std::vector<std::size_t> finite;
  for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
    if (std::isfinite(s.x[i]) && std::isfinite(s.y[i])) finite.push_back(i);
  }
  if (!finite.empty()) {
    x0 = x1 = s.x[finite[0]];
    y0 = y1 = s.y[finite[0]];
    for (std::size_t i : finite) {
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  }
  if (x1 == x0) x1 = x0 + 1.0;
  if (y1 == y0) {
    const double pad = y0 == 0.0 ? 1.0 : std::abs(y0) * 1e-3;
    y0 -= pad;
    y1 += pad;
  }
  auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
  auto py = [&](double y) { return top + (1.0 - (y - y0) / (y1 - y0)) * ph; };

  std::ostringstream os;
  os.precision(6);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
     << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' ' << height
     << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        "font-family=\"sans-serif\" font-size=\"16\">"
     << escape_xml(s.title) << "</text>\n";
  os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw
     << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"#444\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double fx = x0 + (x1 - x0) * k / 4.0;
    const double fy = y0 + (y1 - y0) * k / 4.0;
    os << "<line x1=\"" << px(fx) << "\" y1=\"" << top + ph << "\" x2=\"" << px(fx)
       << "\" y2=\"" << top + ph + 5 << "\" stroke=\"#444\"/>\n";
    os << "<text x=\"" << px(fx) << "\" y=\"" << top + ph + 18
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
       << label(fx) << "</text>\n";
    os << "<line x1=\"" << left - 5 << "\" y1=\"" << py(fy) << "\" x2=\"" << left
       << "\" y2=\"" << py(fy) << "\" stroke=\"#444\"/>\n";
    os << "<text x=\"" << left - 8 << "\" y=\"" << py(fy) + 4
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
       << label(fy) << "</text>\n";
  }
  os << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 10
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
     << escape_xml(s.x_label) << "</text>\n";
  os << "<text x=\"16\" y=\"" << top + ph / 2
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
        "transform=\"rotate(-90 16 "
     << top + ph / 2 << ")\">" << escape_xml(s.y_label) << "</text>\n";
  if (!finite.empty()) {
    os << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
    for (std::size_t n = 0; n < finite.size(); ++n) {
      const std::size_t i = finite[n];
      os << (n ? " " : "") << px(s.x[i]) << ',' << py(s.y[i]);
    }
    os << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << content;
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace dvflow::cli
