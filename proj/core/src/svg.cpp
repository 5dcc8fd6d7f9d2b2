#include "ivm/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <vector>

#include "ivm/errors.hpp"

namespace ivm {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 600.0;
constexpr double kLeft = 80.0, kRight = 160.0, kTop = 50.0, kBottom = 60.0;
constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

std::string escape_xml(std::string_view s) {
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

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string label(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

std::optional<double> coordinate(const std::string& cell, bool log_scale) {
  char* end = nullptr;
  const double v = std::strtod(cell.c_str(), &end);
  if (end == cell.c_str() || !std::isfinite(v)) return std::nullopt;
  if (log_scale) {
    if (v <= 0.0) return std::nullopt;
    return std::log10(v);
  }
  return v;
}

}  // namespace

std::string render_svg(const CsvTable& table, std::string_view x_col,
                       std::span<const std::string> y_cols, bool log_log, std::string_view title) {
  const std::size_t xi = table.column(x_col);
  std::vector<std::size_t> yi;
  for (const auto& c : y_cols) yi.push_back(table.column(c));

  struct Series {
    std::vector<std::pair<double, double>> pts;
  };
  std::vector<Series> series(yi.size());
  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = x_lo, y_hi = -x_lo;
  for (const auto& row : table.rows) {
    const auto x = coordinate(row[xi], log_log);
    if (!x) continue;
    for (std::size_t s = 0; s < yi.size(); ++s) {
      const auto y = coordinate(row[yi[s]], log_log);
      if (!y) continue;
      series[s].pts.emplace_back(*x, *y);
      x_lo = std::min(x_lo, *x);
      x_hi = std::max(x_hi, *x);
      y_lo = std::min(y_lo, *y);
      y_hi = std::max(y_hi, *y);
    }
  }
  if (!std::isfinite(x_lo)) x_lo = 0.0, x_hi = 1.0, y_lo = 0.0, y_hi = 1.0;
  if (x_hi - x_lo <= 0.0) x_lo -= 0.5, x_hi += 0.5;
  if (y_hi - y_lo <= 0.0) y_lo -= 0.5, y_hi += 0.5;

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto sx = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * pw; };
  auto sy = [&](double y) { return kTop + ph - (y - y_lo) / (y_hi - y_lo) * ph; };
  auto tick_text = [&](double v) { return label(log_log ? std::pow(10.0, v) : v); };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"600\" "
         "viewBox=\"0 0 800 600\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
  if (!title.empty())
    out += "<text x=\"400\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"16\">" + escape_xml(title) + "</text>\n";
  out += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(pw) +
         "\" height=\"" + num(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";

  constexpr int kTicks = 5;
  for (int t = 0; t <= kTicks; ++t) {
    const double fx = x_lo + (x_hi - x_lo) * t / kTicks;
    const double fy = y_lo + (y_hi - y_lo) * t / kTicks;
    out += "<line x1=\"" + num(sx(fx)) + "\" y1=\"" + num(kTop + ph) + "\" x2=\"" + num(sx(fx)) +
           "\" y2=\"" + num(kTop + ph + 5) + "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + num(sx(fx)) + "\" y=\"" + num(kTop + ph + 20) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
           escape_xml(tick_text(fx)) + "</text>\n";
    out += "<line x1=\"" + num(kLeft - 5) + "\" y1=\"" + num(sy(fy)) + "\" x2=\"" + num(kLeft) +
           "\" y2=\"" + num(sy(fy)) + "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + num(kLeft - 8) + "\" y=\"" + num(sy(fy) + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
           escape_xml(tick_text(fy)) + "</text>\n";
  }
  const std::string x_name = std::string(x_col) + (log_log ? " (log)" : "");
  out += "<text x=\"" + num(kLeft + pw / 2) + "\" y=\"" + num(kHeight - 15) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
         escape_xml(x_name) + "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kColors[s % std::size(kColors)];
    if (!series[s].pts.empty()) {
      out += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
             "\" stroke-width=\"2\" points=\"";
      for (std::size_t p = 0; p < series[s].pts.size(); ++p) {
        if (p) out += ' ';
        out += num(sx(series[s].pts[p].first)) + "," + num(sy(series[s].pts[p].second));
      }
      out += "\"/>\n";
    }
    const double ly = kTop + 20.0 + 20.0 * static_cast<double>(s);
    out += "<line x1=\"" + num(kWidth - kRight + 15) + "\" y1=\"" + num(ly) + "\" x2=\"" +
           num(kWidth - kRight + 40) + "\" y2=\"" + num(ly) + "\" stroke=\"" + color +
           "\" stroke-width=\"2\"/>\n";
    out += "<text x=\"" + num(kWidth - kRight + 45) + "\" y=\"" + num(ly + 4) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" + escape_xml(y_cols[s]) +
           "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

void write_svg(const CsvTable& table, std::string_view x_col, std::span<const std::string> y_cols,
               const std::filesystem::path& path, bool log_log, std::string_view title) {
  const std::string text = render_svg(table, x_col, y_cols, log_log, title);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace ivm
