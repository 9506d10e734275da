#ifndef GACLUTTER_GRID_HPP
#define GACLUTTER_GRID_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace gaclutter {

/// Dense row-major matrix of doubles. Index order is (row, col) everywhere;
/// lag (k,l) means (row lag, column lag).
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols, double fill = 0.0)
        : rows_(rows), cols_(cols), v_(static_cast<std::size_t>(rows) * cols, fill) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("Matrix: negative dimensions");
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::size_t size() const { return v_.size(); }

    double& operator()(int r, int c) { return v_[static_cast<std::size_t>(r) * cols_ + c]; }
    double operator()(int r, int c) const { return v_[static_cast<std::size_t>(r) * cols_ + c]; }

    double* data() { return v_.data(); }
    const double* data() const { return v_.data(); }
    const std::vector<double>& values() const { return v_; }
    std::vector<double>& values() { return v_; }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<double> v_;
};

/// Square N x N raster on the torus (white noise, Gaussian field, or clutter).
struct FieldGrid {
    explicit FieldGrid(int n = 0) : values(n, n) {}
    Matrix values;
    int size() const { return values.rows(); }
    double& operator()(int r, int c) { return values(r, c); }
    double operator()(int r, int c) const { return values(r, c); }
};

} // namespace gaclutter

#endif
