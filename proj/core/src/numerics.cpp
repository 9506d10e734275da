#include "gaclutter/numerics.hpp"
#include "gaclutter/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gaclutter::numerics {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Continued fraction for the incomplete beta (modified Lentz).
double beta_cont_frac(double a, double b, double x) {
    constexpr double fpmin = 1e-300;
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < fpmin) d = fpmin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 300; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 3.0 * kEps) break;
    }
    return h;
}

} // namespace

double ln_gamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("ln_gamma: argument must be positive");
    return std::lgamma(x);
}

double reg_inc_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("reg_inc_beta: a, b must be positive");
    if (!(x >= 0.0) || !(x <= 1.0)) throw std::domain_error("reg_inc_beta: x must be in [0,1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double ln_bt = ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b)
                       + a * std::log(x) + b * std::log1p(-x);
    const double bt = std::exp(ln_bt);
    if (x < (a + 1.0) / (a + b + 2.0))
        return bt * beta_cont_frac(a, b, x) / a;
    return 1.0 - bt * beta_cont_frac(b, a, 1.0 - x) / b;
}

double inv_reg_inc_beta_lower(double a, double b, double p) {
    if (!(a > 0.0) || !(b > 0.0))
        throw std::domain_error("inv_reg_inc_beta: a, b must be positive");
    if (!(p >= 0.0) || !(p <= 1.0))
        throw std::domain_error("inv_reg_inc_beta: p must be in [0,1]");
    if (p == 0.0) return 0.0;
    if (p == 1.0) return 1.0;

    // Closed forms when one shape parameter is 1.
    if (a == 1.0) return -std::expm1(std::log1p(-p) / b);
    if (b == 1.0) return std::exp(std::log(p) / a);

    const double ln_beta = ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b);

    // Initial guess: small-x asymptotic I_x ~ x^a / (a B(a,b)), otherwise the
    // normal approximation via Wilson-Hilferty style mapping.
    double x;
    const double ln_small = (std::log(p) + std::log(a) + ln_beta) / a;
    if (ln_small < std::log(0.05)) {
        x = std::exp(ln_small);
    } else if (a >= 1.0 && b >= 1.0) {
        const double z = normal_quantile(p);
        const double al = (z * z - 3.0) / 6.0;
        const double h = 2.0 / (1.0 / (2.0 * a - 1.0) + 1.0 / (2.0 * b - 1.0));
        const double w = z * std::sqrt(al + h) / h
                       - (1.0 / (2.0 * b - 1.0) - 1.0 / (2.0 * a - 1.0))
                       * (al + 5.0 / 6.0 - 2.0 / (3.0 * h));
        x = a / (a + b * std::exp(2.0 * w));
    } else {
        const double lna = std::log(a / (a + b)), lnb = std::log(b / (a + b));
        const double t = std::exp(a * lna) / a, u = std::exp(b * lnb) / b;
        const double w = t + u;
        x = (p < t / w) ? std::pow(a * w * p, 1.0 / a)
                        : 1.0 - std::pow(b * w * (1.0 - p), 1.0 / b);
    }
    x = std::clamp(x, 1e-300, 1.0 - 1e-15);

    // Newton with a maintained bracket; multiplicative (log-space) steps when
    // the solution is tiny so relative accuracy is preserved.
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 60; ++it) {
        const double err = reg_inc_beta(a, b, x) - p;
        if (err > 0.0) hi = x; else lo = x;
        const double ln_pdf = (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - ln_beta;
        double xn;
        if (x < 0.01) {
            // d(log x) step: err / (x * pdf)
            const double step = err * std::exp(-std::log(x) - ln_pdf);
            xn = x * std::exp(-std::clamp(step, -20.0, 20.0));
        } else {
            xn = x - err * std::exp(-ln_pdf);
        }
        if (!(xn > lo) || !(xn < hi)) xn = 0.5 * (lo + hi);
        const double dx = std::fabs(xn - x);
        x = xn;
        if (dx <= 1e-15 * x + 1e-300) break;
    }
    return x;
}

double inv_reg_inc_beta(double a, double b, double p) {
    if (!(p >= 0.0) || !(p <= 1.0))
        throw std::domain_error("inv_reg_inc_beta: p must be in [0,1]");
    if (p <= 0.5) return inv_reg_inc_beta_lower(a, b, p);
    return 1.0 - inv_reg_inc_beta_lower(b, a, 1.0 - p);
}

double f_cdf(double nu1, double nu2, double x) {
    if (!(nu1 > 0.0) || !(nu2 > 0.0)) throw std::domain_error("f_cdf: degrees of freedom must be positive");
    if (x <= 0.0) return 0.0;
    const double y = nu1 * x / (nu1 * x + nu2);
    return reg_inc_beta(0.5 * nu1, 0.5 * nu2, y);
}

double f_quantile(double nu1, double nu2, double p) {
    if (!(nu1 > 0.0) || !(nu2 > 0.0)) throw std::domain_error("f_quantile: degrees of freedom must be positive");
    if (!(p >= 0.0) || !(p < 1.0)) {
        if (p == 1.0) throw infinite_value_error("f_quantile: quantile at p=1 is infinite");
        throw std::domain_error("f_quantile: p must be in [0,1)");
    }
    if (p == 0.0) return 0.0;
    if (p <= 0.5) {
        const double y = inv_reg_inc_beta_lower(0.5 * nu1, 0.5 * nu2, p);
        return nu2 * y / (nu1 * (1.0 - y));
    }
    return f_quantile_upper(nu1, nu2, 1.0 - p);
}

double f_quantile_upper(double nu1, double nu2, double q) {
    if (!(nu1 > 0.0) || !(nu2 > 0.0)) throw std::domain_error("f_quantile_upper: degrees of freedom must be positive");
    if (!(q > 0.0) || !(q <= 1.0)) {
        if (q == 0.0) throw infinite_value_error("f_quantile_upper: quantile at q=0 is infinite");
        throw std::domain_error("f_quantile_upper: q must be in (0,1]");
    }
    // 1 - I_x(a,b) = I_{1-x}(b,a): solve the complement, which is small.
    const double y = inv_reg_inc_beta_lower(0.5 * nu2, 0.5 * nu1, q);
    return nu2 * (1.0 - y) / (nu1 * y);
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x * 0.7071067811865475244);
}

double normal_quantile(double p) {
    // Wichura, Applied Statistics 37 (1988), algorithm AS241 (PPND16).
    if (!(p > 0.0) || !(p < 1.0)) throw std::domain_error("normal_quantile: p must be in (0,1)");
    const double q = p - 0.5;
    double r;
    if (std::fabs(q) <= 0.425) {
        r = 0.180625 - q * q;
        return q *
            (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                  6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
                1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
              1.3314166789178437745e2) * r + 3.3871328727963666080e0) /
            (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                  3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
                5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
              4.2313330701600911252e1) * r + 1.0);
    }
    r = (q < 0.0) ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double v;
    if (r <= 5.0) {
        r -= 1.6;
        v = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
                3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
              4.63033784615654529590e0) * r + 1.42343711074968357734e0) /
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
              2.05319162663775882187e0) * r + 1.0);
    } else {
        r -= 5.0;
        v = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
              5.46378491116411436990e0) * r + 6.65790464350110377720e0) /
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                  1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
              5.99832206555887937690e-1) * r + 1.0);
    }
    return (q < 0.0) ? -v : v;
}

QuadratureRule gauss_hermite(int order) {
    if (order < 2) throw std::domain_error("gauss_hermite: order must be >= 2");
    QuadratureRule rule;
    rule.order = order;
    rule.nodes.resize(order);
    rule.weights.resize(order);

    const int n = order;
    const double pim4 = 0.75112554446494248286; // pi^{-1/4}
    const int m = (n + 1) / 2;
    double z = 0.0, pp = 0.0;
    for (int i = 0; i < m; ++i) {
        if (i == 0) z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -0.16667);
        else if (i == 1) z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
        else if (i == 2) z = 1.86 * z - 0.86 * rule.nodes[n - 1];
        else if (i == 3) z = 1.91 * z - 0.91 * rule.nodes[n - 2];
        else z = 2.0 * z - rule.nodes[n - i + 1];
        for (int it = 0; it < 100; ++it) {
            double p1 = pim4, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / (j + 1.0)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1.0)) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::fabs(z - z1) <= 1e-14) break;
        }
        rule.nodes[n - 1 - i] = z;
        rule.nodes[i] = -z;
        rule.weights[n - 1 - i] = 2.0 / (pp * pp);
        rule.weights[i] = rule.weights[n - 1 - i];
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

} // namespace gaclutter::numerics
