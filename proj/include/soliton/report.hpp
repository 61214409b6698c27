#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace soliton::report {

/// Floating-point text with 17 significant digits, '.' decimal separator,
/// locale independent.
std::string format_double(double v);

/// CSV with a header row, '\n' line ends, fields joined by ','.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

/// Single-polyline SVG plot of (x, y) samples, legend-free.
void write_svg_polyline(const std::string& path, const std::vector<double>& xs,
                        const std::vector<double>& ys);

/// Grayscale |value| heat map over an nx-by-ny grid (row-major values),
/// legend-free.
void write_svg_heatmap(const std::string& path, int nx, int ny,
                       const std::vector<double>& values);

/// FNV-1a 64-bit hash of a byte string, as fixed-width hex; used as the
/// stable config hash in run reports.
std::string fnv1a64_hex(const std::string& bytes);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace soliton::report
