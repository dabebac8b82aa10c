#include "zontain/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "zontain/errors.hpp"

namespace zontain::io {

Eigen::MatrixXd read_matrix_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);

    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw IoError("bad numeric cell '" + cell + "' in " + path);
            }
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw IoError("ragged CSV rows in " + path);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw IoError("empty CSV " + path);

    Eigen::MatrixXd m(rows.size(), rows.front().size());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
    return m;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m) {
    std::ofstream out(path, std::ios::binary);  // binary keeps LF on every platform
    if (!out) throw IoError("cannot write " + path);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            out << format_double(m(i, j));
        }
        out << '\n';
    }
}

Zonotope read_zonotope_csv(const std::string& path) {
    return Zonotope(read_matrix_csv(path));
}

std::string meta_sidecar_path(const std::string& csv_path) {
    std::string base = csv_path;
    if (base.size() > 4 && base.substr(base.size() - 4) == ".csv")
        base = base.substr(0, base.size() - 4);
    return base + ".meta.json";
}

void write_zonotope_csv(const std::string& path, const Zonotope& z) {
    write_matrix_csv(path, z.generators());
    nlohmann::json meta = {{"d", z.dim()},
                           {"n", z.count()},
                           {"dropped_zero_columns", z.dropped_zero_columns()}};
    write_text_file(meta_sidecar_path(path), meta.dump(2) + "\n");
}

void write_points_csv(const std::string& path, const std::vector<Eigen::VectorXd>& points) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    for (const auto& p : points) {
        for (Eigen::Index j = 0; j < p.size(); ++j) {
            if (j) out << ',';
            out << format_double(p(j));
        }
        out << '\n';
    }
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << content;
}

}  // namespace zontain::io
