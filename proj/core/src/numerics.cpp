#include "agr/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/legendre.hpp>

namespace agr {

double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 16) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

Extrapolated richardson_limit(double v_h, double v_2h, double v_4h) {
    const double e1 = 2.0 * v_h - v_2h;
    const double e2 = 2.0 * v_2h - v_4h;
    return {e1, std::abs(e1 - e2)};
}

namespace {

QuadratureRule compute_gauss_legendre(int n) {
    // Newton iteration on P_n with the three-term recurrence.
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

} // namespace

const QuadratureRule& gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
    static std::map<int, QuadratureRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
    return it->second;
}

QuadratureRule gauss_legendre(int n, double a, double b) {
    const QuadratureRule& base = gauss_legendre(n);
    QuadratureRule rule;
    rule.nodes.resize(base.size());
    rule.weights.resize(base.size());
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (std::size_t i = 0; i < base.size(); ++i) {
        rule.nodes[i] = mid + half * base.nodes[i];
        rule.weights[i] = half * base.weights[i];
    }
    return rule;
}

QuadratureRule real_line_rule(int n, double scale) {
    // x = scale * tan(u), u in (-pi/2, pi/2)
    const QuadratureRule& base = gauss_legendre(n);
    QuadratureRule rule;
    rule.nodes.resize(base.size());
    rule.weights.resize(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
        const double u = 0.5 * M_PI * base.nodes[i];
        const double c = std::cos(u);
        rule.nodes[i] = scale * std::tan(u);
        rule.weights[i] = base.weights[i] * 0.5 * M_PI * scale / (c * c);
    }
    return rule;
}

QuadratureRule half_line_rule(int n, double scale) {
    const QuadratureRule& base = gauss_legendre(n);
    QuadratureRule rule;
    rule.nodes.resize(base.size());
    rule.weights.resize(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
        const double u = 0.25 * M_PI * (base.nodes[i] + 1.0);
        const double c = std::cos(u);
        rule.nodes[i] = scale * std::tan(u);
        rule.weights[i] = base.weights[i] * 0.25 * M_PI * scale / (c * c);
    }
    return rule;
}

QuadratureRule circle_rule(int n) {
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = 2.0 * M_PI * i / n;
        rule.weights[i] = 2.0 * M_PI / n;
    }
    return rule;
}

double sphere_surface_area(int m) {
    if (m < 0) throw std::invalid_argument("sphere_surface_area: m must be >= 0");
    return 2.0 * std::pow(M_PI, 0.5 * (m + 1)) / std::tgamma(0.5 * (m + 1));
}

double upper_incomplete_gamma(double a, double x) {
    return boost::math::tgamma(a, x);
}

double incomplete_beta(double a, double b, double x) {
    return boost::math::beta(a, b, x);
}

double legendre_p(int l, double x) {
    return boost::math::legendre_p(l, x);
}

double assoc_legendre(int l, int m, double x) {
    return boost::math::legendre_p(l, m, x);
}

double ks_two_sample_pvalue(double d, std::size_t n1, std::size_t n2) {
    const double ne = static_cast<double>(n1) * n2 / (n1 + n2);
    const double lambda = (std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne)) * d;
    // Kolmogorov tail series.
    double sum = 0.0;
    double sign = 1.0;
    for (int j = 1; j <= 100; ++j) {
        const double term = std::exp(-2.0 * j * j * lambda * lambda);
        sum += sign * term;
        sign = -sign;
        if (term < 1e-12) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j])
            ++i;
        else
            ++j;
        const double fa = static_cast<double>(i) / a.size();
        const double fb = static_cast<double>(j) / b.size();
        d = std::max(d, std::abs(fa - fb));
    }
    return d;
}

} // namespace agr
