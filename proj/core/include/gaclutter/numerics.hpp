#ifndef GACLUTTER_NUMERICS_HPP
#define GACLUTTER_NUMERICS_HPP

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace gaclutter::numerics {

/// Physicists' Gauss-Hermite rule: integrates f against exp(-t^2) on the real line.
/// Nodes are strictly increasing, weights positive, sum of weights = sqrt(pi).
struct QuadratureRule {
    int order = 0;
    std::vector<double> nodes;
    std::vector<double> weights;
};

struct RootBracket {
    double lo, hi;
    double f_lo, f_hi;
};

double ln_gamma(double x);

/// Regularized incomplete beta I_x(a,b), continued-fraction evaluation with the
/// symmetry switch at x = (a+1)/(a+b+2).
double reg_inc_beta(double a, double b, double x);

/// Inverse of reg_inc_beta in x for fixed (a,b).
double inv_reg_inc_beta(double a, double b, double p);

/// Lower-tail inverse that stays accurate for very small p (result near 0).
/// inv_reg_inc_beta is built from this and the a<->b symmetry.
double inv_reg_inc_beta_lower(double a, double b, double p);

/// CDF of Snedecor's F with (nu1, nu2) degrees of freedom; 0 for x <= 0.
double f_cdf(double nu1, double nu2, double x);

/// Quantile of Snedecor's F; throws infinite_value_error at p = 1.
double f_quantile(double nu1, double nu2, double p);

/// Upper-tail quantile: x with 1 - f_cdf(x) = q, accurate for tiny q.
double f_quantile_upper(double nu1, double nu2, double q);

double normal_cdf(double x);

/// Inverse of normal_cdf (Wichura's AS241, ~1e-15 accurate on (0,1)).
double normal_quantile(double p);

QuadratureRule gauss_hermite(int order);

/// Brent's method with bisection fallback. The result never leaves [lo, hi].
/// tol is an absolute tolerance on the argument.
template <class F>
double find_root(F&& f, RootBracket br, double tol = 1e-12) {
    double a = br.lo, b = br.hi, fa = br.f_lo, fb = br.f_hi;
    if (!(a < b)) throw std::invalid_argument("find_root: bracket requires lo < hi");
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0))
        throw std::invalid_argument("find_root: endpoints do not bracket a root");

    double c = a, fc = fa;
    double d = b - a, e = d;
    for (int iter = 0; iter < 200; ++iter) {
        if ((fb > 0.0) == (fc > 0.0)) { c = a; fc = fa; d = e = b - a; }
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * 2.220446049250313e-16 * std::fabs(b) + 0.5 * tol;
        const double xm = 0.5 * (c - b);
        if (std::fabs(xm) <= tol1 || fb == 0.0) return b;
        if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
            double p, q, r;
            const double s = fb / fa;
            if (a == c) { p = 2.0 * xm * s; q = 1.0 - s; }
            else {
                q = fa / fc; r = fb / fc;
                p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
                q = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::fabs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::fabs(tol1 * q), std::fabs(e * q))) {
                e = d; d = p / q;
            } else { d = xm; e = d; }
        } else { d = xm; e = d; }
        a = b; fa = fb;
        b += (std::fabs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
        fb = f(b);
    }
    return b;
}

/// Convenience overload evaluating f at the endpoints.
template <class F>
double find_root(F&& f, double lo, double hi, double tol = 1e-12) {
    RootBracket br{lo, hi, f(lo), f(hi)};
    return find_root(std::forward<F>(f), br, tol);
}

} // namespace gaclutter::numerics

#endif
