#include "gaclutter/corr_models.hpp"
#include "gaclutter/errors.hpp"

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

namespace gaclutter::corr_models {

namespace {

constexpr double kMatrixThreshold = 1e-3;  // magnitudes below this are treated as 0

double threshold(double x, double eps) {
    return (std::fabs(x) < eps) ? 0.0 : x;
}

} // namespace

double parametric_rho(const ParametricCorr& model, int k, int l) {
    if (!model.valid())
        throw std::domain_error("corr_models::parametric_rho: requires 0<a<1, even L>=2, eps>0");
    if (k < 0 || l < 0)
        throw std::domain_error("corr_models::parametric_rho: lags must be nonnegative");
    if (k == 0 && l == 0) return 1.0;
    const double L2 = static_cast<double>(model.L) * model.L;
    if (k >= l) return threshold(model.a * std::exp(-static_cast<double>(k) * k / L2), model.eps);
    return -threshold(model.a * std::exp(-static_cast<double>(l) * l / L2), model.eps);
}

Matrix materialize_r1(const ParametricCorr& model, int size) {
    if (size < 4 || size % 2 != 0)
        throw std::domain_error("corr_models::materialize_r1: size must be even and >= 4");
    const int half = size / 2;
    Matrix base(half + 1, half + 1);
    for (int k = 0; k <= half; ++k)
        for (int l = 0; l <= half; ++l)
            base(k, l) = parametric_rho(model, k, l);
    return base;
}

MatrixCorr load_matrix(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (!rows.empty())
                throw std::runtime_error("load_matrix: comment lines are only allowed before data (line " +
                                         std::to_string(line_no) + ")");
            continue;
        }
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            std::size_t pos = 0;
            double v;
            try {
                v = std::stod(cell, &pos);
            } catch (const std::exception&) {
                throw std::runtime_error("load_matrix: non-numeric cell '" + cell + "' at line " +
                                         std::to_string(line_no));
            }
            while (pos < cell.size() && std::isspace(static_cast<unsigned char>(cell[pos]))) ++pos;
            if (pos != cell.size())
                throw std::runtime_error("load_matrix: trailing junk in cell '" + cell + "' at line " +
                                         std::to_string(line_no));
            row.push_back(v);
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw std::runtime_error("load_matrix: ragged row at line " + std::to_string(line_no));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::runtime_error("load_matrix: no data rows");
    if (rows.size() != rows.front().size())
        throw std::runtime_error("load_matrix: matrix must be square");

    MatrixCorr mc;
    const int n = static_cast<int>(rows.size());
    mc.values = Matrix(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double v = rows[i][j];
            if (!(std::fabs(v) <= 1.0))
                throw std::runtime_error("load_matrix: correlation out of range [-1,1] at (" +
                                         std::to_string(i) + "," + std::to_string(j) + ")");
            mc.values(i, j) = (i == 0 && j == 0) ? v : threshold(v, kMatrixThreshold);
        }
    }
    if (mc.values(0, 0) != 1.0)
        throw std::runtime_error("load_matrix: entry (0,0) must be exactly 1.0");
    return mc;
}

MatrixCorr load_matrix(const std::string& text) {
    std::istringstream in(text);
    return load_matrix(in);
}

SampleCorrelation pearson_estimate(const Matrix& image, int window) {
    const int rows = image.rows(), cols = image.cols();
    if (window < 1) throw std::domain_error("pearson_estimate: window must be >= 1");
    const int n_f = rows / (2 * window);  // row blocks
    const int n_c = cols / (2 * window);  // column blocks
    if (n_f < 1 || n_c < 1 || n_f * n_c < 2)
        throw std::domain_error("pearson_estimate: image too small for window " +
                                std::to_string(window) + " (need at least 2 blocks of size " +
                                std::to_string(2 * window) + ")");

    const int nb = n_f * n_c;
    const int w2 = window * window;

    // Per-position block means.
    std::vector<double> mean(w2, 0.0);
    for (int bj = 0; bj < n_f; ++bj)
        for (int bi = 0; bi < n_c; ++bi)
            for (int m = 0; m < window; ++m)
                for (int n = 0; n < window; ++n)
                    mean[m * window + n] += image(2 * window * bj + m, 2 * window * bi + n);
    for (double& v : mean) v /= nb;

    // Centered samples per position, then sums of squares and cross products
    // against position (0,0).
    std::vector<double> centered(static_cast<std::size_t>(nb) * w2);
    for (int bj = 0; bj < n_f; ++bj)
        for (int bi = 0; bi < n_c; ++bi) {
            const int b = bj * n_c + bi;
            for (int m = 0; m < window; ++m)
                for (int n = 0; n < window; ++n) {
                    const int pos = m * window + n;
                    centered[static_cast<std::size_t>(b) * w2 + pos] =
                        image(2 * window * bj + m, 2 * window * bi + n) - mean[pos];
                }
        }

    std::vector<double> ssq(w2, 0.0);
    for (int b = 0; b < nb; ++b)
        for (int pos = 0; pos < w2; ++pos) {
            const double c = centered[static_cast<std::size_t>(b) * w2 + pos];
            ssq[pos] += c * c;
        }
    for (int pos = 0; pos < w2; ++pos)
        if (ssq[pos] == 0.0)
            throw std::domain_error("pearson_estimate: degenerate variance at position (" +
                                    std::to_string(pos / window) + "," +
                                    std::to_string(pos % window) + ") across blocks");

    SampleCorrelation sc;
    sc.window = window;
    sc.col_blocks = n_c;
    sc.row_blocks = n_f;
    sc.corr = Matrix(window, window);
    for (int k = 0; k < window; ++k)
        for (int l = 0; l < window; ++l) {
            const int pos = k * window + l;
            double cross = 0.0;
            for (int b = 0; b < nb; ++b)
                cross += centered[static_cast<std::size_t>(b) * w2] *
                         centered[static_cast<std::size_t>(b) * w2 + pos];
            sc.corr(k, l) = cross / std::sqrt(ssq[0] * ssq[pos]);
        }
    return sc;
}

namespace {

Matrix window_to_r1(const Matrix& corr, int size, const char* where) {
    if (size < 4 || size % 2 != 0)
        throw std::domain_error(std::string(where) + ": size must be even and >= 4");
    const int half = size / 2;
    if (corr.rows() > half + 1)
        throw std::domain_error(std::string(where) + ": correlation window larger than N/2+1");
    Matrix base(half + 1, half + 1, 0.0);
    for (int k = 0; k < corr.rows(); ++k)
        for (int l = 0; l < corr.cols(); ++l)
            base(k, l) = corr(k, l);
    base(0, 0) = 1.0;
    return base;
}

} // namespace

Matrix to_r1_rho(const SampleCorrelation& sc, int size) {
    return window_to_r1(sc.corr, size, "corr_models::to_r1_rho");
}

Matrix to_r1_rho(const MatrixCorr& mc, int size) {
    return window_to_r1(mc.values, size, "corr_models::to_r1_rho");
}

} // namespace gaclutter::corr_models
