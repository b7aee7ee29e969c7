#ifndef AGR_NUMERICS_HPP
#define AGR_NUMERICS_HPP

#include <span>
#include <vector>

namespace agr {

// Deterministic pairwise summation. Used for every reduction whose result
// must not depend on the number of worker threads.
double pairwise_sum(std::span<const double> v);

// First-order Richardson extrapolation of a one-sided limit from samples at
// offsets h, 2h, 4h. `error` is the disagreement between the two
// extrapolants and serves as the reported error bar.
struct Extrapolated {
    double value = 0.0;
    double error = 0.0;
};
Extrapolated richardson_limit(double v_h, double v_2h, double v_4h);

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    std::size_t size() const { return nodes.size(); }
};

// Gauss-Legendre on [-1, 1] (cached per n) and on [a, b].
const QuadratureRule& gauss_legendre(int n);
QuadratureRule gauss_legendre(int n, double a, double b);

// Rules for unbounded coordinates, obtained from Gauss-Legendre through the
// tangent substitution x = s*tan(u). Integrates smooth integrands with
// Gaussian or algebraic decay; `scale` should match the integrand's width.
QuadratureRule real_line_rule(int n, double scale = 1.0);
QuadratureRule half_line_rule(int n, double scale = 1.0);

// Uniform periodic (trapezoid) rule on [0, 2*pi); spectrally accurate for
// smooth periodic integrands.
QuadratureRule circle_rule(int n);

// Surface area of the unit sphere S^m in R^{m+1}: 2 pi^{(m+1)/2} / Gamma((m+1)/2).
double sphere_surface_area(int m);

// Thin wrappers over Boost.Math (kept out of public headers).
double upper_incomplete_gamma(double a, double x);  // Gamma(a, x)
double incomplete_beta(double a, double b, double x); // B_x(a,b), non-normalized
double legendre_p(int l, double x);
double assoc_legendre(int l, int m, double x);

// Two-sample Kolmogorov-Smirnov: asymptotic p-value for samples of sizes
// n1, n2 with statistic d.
double ks_two_sample_pvalue(double d, std::size_t n1, std::size_t n2);
double ks_statistic(std::vector<double> a, std::vector<double> b);

} // namespace agr

#endif
