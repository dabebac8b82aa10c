#ifndef ZONTAIN_IO_HPP_
#define ZONTAIN_IO_HPP_

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "zontain/zonotope.hpp"

namespace zontain::io {

/// Reads a numeric CSV matrix: one row per line, comma separated, '.' decimal
/// separator. Blank lines are ignored.
Eigen::MatrixXd read_matrix_csv(const std::string& path);

/// Writes a matrix as CSV with LF line endings and round-trip-safe floats.
void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m);

std::string format_double(double v);

/// Reads a generator matrix and wraps it as a zonotope.
Zonotope read_zonotope_csv(const std::string& path);

/// Writes W.csv plus the {d, n, dropped_zero_columns} metadata sidecar
/// (path with .csv replaced by .meta.json).
void write_zonotope_csv(const std::string& path, const Zonotope& z);

std::string meta_sidecar_path(const std::string& csv_path);

void write_points_csv(const std::string& path, const std::vector<Eigen::VectorXd>& points);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace zontain::io

#endif  // ZONTAIN_IO_HPP_
