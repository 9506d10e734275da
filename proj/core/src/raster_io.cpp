#include "gaclutter/raster_io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace gaclutter::raster_io {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(std::ostream& out, const Matrix& m) {
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            out << format_double(m(i, j));
        }
        out << '\n';
    }
}

void write_csv_file(const std::string& path, const Matrix& m) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    write_csv(out, m);
    if (!out) throw std::runtime_error("write failed: " + path);
}

Matrix read_csv(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw std::runtime_error("read_csv: non-numeric cell '" + cell + "' at line " +
                                         std::to_string(line_no));
            }
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw std::runtime_error("read_csv: ragged row at line " + std::to_string(line_no));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::runtime_error("read_csv: no data rows");
    Matrix m(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            m(i, j) = rows[i][j];
    return m;
}

Matrix read_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    return read_csv(in);
}

void write_pgm16(std::ostream& out, const Matrix& m, double min, double max) {
    if (!(max > min)) throw std::invalid_argument("write_pgm16: max must exceed min");
    out << "P5\n" << m.cols() << ' ' << m.rows() << "\n65535\n";
    const double scale = 65535.0 / (max - min);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            double q = std::round((m(i, j) - min) * scale);
            if (q < 0.0) q = 0.0;
            if (q > 65535.0) q = 65535.0;
            const auto s = static_cast<std::uint16_t>(q);
            out.put(static_cast<char>(s >> 8));
            out.put(static_cast<char>(s & 0xff));
        }
}

void write_pgm16_file(const std::string& path, const Matrix& m, double min, double max) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    write_pgm16(out, m, min, max);
    if (!out) throw std::runtime_error("write failed: " + path);
    std::ofstream sidecar(path + ".bounds.txt", std::ios::binary);
    if (!sidecar) throw std::runtime_error("cannot open for writing: " + path + ".bounds.txt");
    sidecar << "min " << format_double(min) << "\nmax " << format_double(max) << "\n";
}

} // namespace gaclutter::raster_io
