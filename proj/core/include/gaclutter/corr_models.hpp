#ifndef GACLUTTER_CORR_MODELS_HPP
#define GACLUTTER_CORR_MODELS_HPP

#include "gaclutter/grid.hpp"

#include <iosfwd>
#include <string>

namespace gaclutter::corr_models {

/// Exponential-decay wedge model: positive along rows (k >= l), negative
/// across (k < l); magnitudes below eps are zeroed.
struct ParametricCorr {
    double a;
    int L;
    double eps = 0.001;

    bool valid() const { return a > 0.0 && a < 1.0 && L >= 2 && L % 2 == 0 && eps > 0.0; }
};

/// Non-parametric target correlation given as an order x order lag matrix.
struct MatrixCorr {
    Matrix values;   // (0,0) entry 1, |entries| <= 1, sub-1e-3 magnitudes zeroed
    int order() const { return values.rows(); }
};

/// Block-Pearson lag correlation estimated from an image; lag (k,l) is
/// (row lag, column lag), corr(k,l) = r((0,0),(k,l)).
struct SampleCorrelation {
    int window = 0;     // n_v
    Matrix corr;        // window x window
    int col_blocks = 0; // n_c = floor(cols / (2 n_v))
    int row_blocks = 0; // n_f = floor(rows / (2 n_v))
};

double parametric_rho(const ParametricCorr& model, int k, int l);

/// Materialize the parametric model on the base quadrant {0..N/2}^2.
Matrix materialize_r1(const ParametricCorr& model, int size);

/// Parse a correlation matrix from CSV ('#' comment lines allowed before
/// data); validates range and unit origin, zeroes magnitudes below 1e-3.
MatrixCorr load_matrix(std::istream& in);
MatrixCorr load_matrix(const std::string& text);

SampleCorrelation pearson_estimate(const Matrix& image, int window);

/// Bridge an estimated or loaded structure into the base quadrant for
/// extend_rho: in-window lags keep their value, lags beyond are zero.
Matrix to_r1_rho(const SampleCorrelation& sc, int size);
Matrix to_r1_rho(const MatrixCorr& mc, int size);

} // namespace gaclutter::corr_models

#endif
