#include "agr/funk.hpp"

#include <cmath>
#include <stdexcept>

#include "agr/fracint.hpp"
#include "agr/numerics.hpp"
#include "agr/spline.hpp"

namespace agr {

void FunkConfig::validate() const {
    if (n < 3) throw std::invalid_argument("FunkConfig: need n >= 3");
    if (kprime < 2 || kprime > n - 1)
        throw std::invalid_argument("FunkConfig: need 2 <= k' <= n-1");
    if (circle_points < 8 || r_nodes < 8)
        throw std::invalid_argument("FunkConfig: quadrature budgets too small");
}

double funk_forward(const GrassFn& phi, const GrassmannPoint& eta, const FunkConfig& cfg) {
    cfg.validate();
    const int kp = eta.k();
    if (kp < 2) throw std::invalid_argument("funk_forward: eta must have k' > 1");
    if (kp == 2) {
        // great-circle average of lines in the 2-plane eta
        const QuadratureRule circle = circle_rule(cfg.circle_points);
        const Vec b1 = eta.frame().col(0), b2 = eta.frame().col(1);
        std::vector<double> terms(circle.size());
        Mat dir(eta.n(), 1);
        for (std::size_t i = 0; i < circle.size(); ++i) {
            const double th = circle.nodes[i];
            dir.col(0) = std::cos(th) * b1 + std::sin(th) * b2;
            terms[i] = phi(GrassmannPoint(dir));
        }
        return pairwise_sum(terms) / static_cast<double>(circle.size());
    }
    // Haar average of lines inside eta.
    RngStream rng = RngStream(cfg.seed).child("funk_forward").child(subspace_key(eta));
    std::vector<double> terms(cfg.mc_budget);
    Mat dir(eta.n(), 1);
    for (int i = 0; i < cfg.mc_budget; ++i) {
        dir.col(0) = random_unit_in_span(eta.frame(), rng);
        terms[i] = phi(GrassmannPoint(dir));
    }
    return pairwise_sum(terms) / cfg.mc_budget;
}

double funk_dual(const GrassFn& psi, const GrassmannPoint& xi, const FunkConfig& cfg) {
    cfg.validate();
    if (xi.k() != 1) throw std::invalid_argument("funk_dual: xi must be a line");
    const int n = xi.n(), kp = cfg.kprime;
    const Mat comp = xi.orthocomplement().frame(); // n x (n-1)
    if (kp == 2 && n == 3) {
        const QuadratureRule circle = circle_rule(cfg.circle_points);
        std::vector<double> terms(circle.size());
        Mat frame(n, 2);
        frame.col(0) = xi.frame().col(0);
        for (std::size_t i = 0; i < circle.size(); ++i) {
            const double th = circle.nodes[i];
            frame.col(1) = std::cos(th) * comp.col(0) + std::sin(th) * comp.col(1);
            terms[i] = psi(GrassmannPoint(frame));
        }
        return pairwise_sum(terms) / static_cast<double>(circle.size());
    }
    RngStream rng = RngStream(cfg.seed).child("funk_dual").child(subspace_key(xi));
    std::vector<double> terms(cfg.mc_budget);
    for (int i = 0; i < cfg.mc_budget; ++i) {
        GrassmannPoint fill = sample_grassmann(n - 1, kp - 1, rng);
        Mat frame(n, kp);
        frame.col(0) = xi.frame().col(0);
        frame.rightCols(kp - 1) = comp * fill.frame();
        terms[i] = psi(GrassmannPoint(std::move(frame)));
    }
    return pairwise_sum(terms) / cfg.mc_budget;
}

double mean_value_mstar(const GrassFn& psi, const GrassmannPoint& xi, double r,
                        const FunkConfig& cfg) {
    cfg.validate();
    if (xi.k() != 1) throw std::invalid_argument("mean_value_mstar: xi must be a line");
    if (r < 0.0 || r > 1.0)
        throw std::invalid_argument("mean_value_mstar: r must lie in [0, 1]");
    const int n = xi.n(), kp = cfg.kprime;
    const Vec y = xi.frame().col(0);

    if (kp == 2 && n == 3) {
        // Level set of 2-planes via their unit normals: (sigma . y)^2 = 1 - r.
        const Mat comp = xi.orthocomplement().frame();
        const double c = std::sqrt(std::max(0.0, 1.0 - r));
        const double s = std::sqrt(std::max(0.0, r));
        const QuadratureRule circle = circle_rule(cfg.circle_points);
        std::vector<double> terms(circle.size());
        for (std::size_t i = 0; i < circle.size(); ++i) {
            const double th = circle.nodes[i];
            const Vec sigma = c * y + s * (std::cos(th) * comp.col(0) +
                                           std::sin(th) * comp.col(1));
            Mat frame(3, 2);
            // orthonormal basis of sigma^perp
            Vec v1 = Vec(3);
            v1 << sigma(1) * y(2) - sigma(2) * y(1), sigma(2) * y(0) - sigma(0) * y(2),
                sigma(0) * y(1) - sigma(1) * y(0);
            if (v1.norm() < 1e-12) v1 = comp.col(0); // sigma parallel to y (r = 0)
            v1 /= v1.norm();
            Vec v2 = Vec(3);
            v2 << sigma(1) * v1(2) - sigma(2) * v1(1), sigma(2) * v1(0) - sigma(0) * v1(2),
                sigma(0) * v1(1) - sigma(1) * v1(0);
            v2 /= v2.norm();
            frame.col(0) = v1;
            frame.col(1) = v2;
            terms[i] = psi(GrassmannPoint(std::move(frame)));
        }
        return pairwise_sum(terms) / static_cast<double>(circle.size());
    }

    // General level set as a homogeneous space of Stab(y): eta = span(p) + eta1,
    // p = sqrt(r) y + sqrt(1-r) w, w uniform on S(y^perp), eta1 Haar in {y,w}^perp.
    RngStream rng = RngStream(cfg.seed)
                        .child("mstar")
                        .child(subspace_key(xi),
                               static_cast<std::uint64_t>(std::llround(r / 1e-9)));
    const Mat comp = xi.orthocomplement().frame();
    std::vector<double> terms(cfg.mc_budget);
    for (int i = 0; i < cfg.mc_budget; ++i) {
        const Vec w = random_unit_in_span(comp, rng);
        const Vec p = std::sqrt(r) * y + std::sqrt(1.0 - r) * w;
        Mat yp(n, 2);
        yp.col(0) = y;
        yp.col(1) = w;
        const Mat rest = GrassmannPoint::span_of(yp).orthocomplement().frame(); // n x (n-2)
        Mat frame(n, kp);
        frame.col(0) = p;
        if (kp > 1) {
            GrassmannPoint fill = sample_grassmann(n - 2, kp - 1, rng);
            frame.rightCols(kp - 1) = rest * fill.frame();
        }
        terms[i] = psi(GrassmannPoint(std::move(frame)));
    }
    return pairwise_sum(terms) / cfg.mc_budget;
}

double funk_invert(const GrassFn& psi, const GrassmannPoint& xi, const FunkConfig& cfg) {
    cfg.validate();
    if (1 + cfg.kprime > cfg.n)
        throw std::domain_error("Funk transform not injective: requires k + k' <= n");
    const double alpha = cfg.alpha();
    const int m = cfg.smallest_m();

    // Chebyshev-style grid on [0,1] clustered toward the boundary r = 1.
    const int N = cfg.r_nodes;
    std::vector<double> nodes(N + 1), vals(N + 1);
    for (int j = 0; j <= N; ++j) nodes[j] = std::sin(0.5 * M_PI * j / N);
    nodes[N] = 1.0;
    for (int j = 0; j <= N; ++j) {
        const double r = nodes[j];
        const double weight = (alpha == 0.5) ? 1.0 : std::pow(r, alpha - 0.5);
        vals[j] = weight * mean_value_mstar(psi, xi, r, cfg);
    }
    RadialGridFn tilde(std::move(nodes), std::move(vals));

    RadialGridFn smoothed = (std::abs(m - alpha) < 1e-12)
                                ? tilde
                                : rl_integral(tilde, m - alpha, FracSide::Plus);
    RadialGridFn deriv = grid_derivative(smoothed, m, +1);

    CubicSpline s(deriv.nodes, deriv.values);
    const double eps = std::max(1.0 - deriv.nodes[N - 1], 1e-4);
    const Extrapolated lim = richardson_limit(s(1.0 - eps), s(1.0 - 2 * eps), s(1.0 - 4 * eps));
    const double c = std::tgamma(0.5) / std::tgamma(0.5 * cfg.kprime);
    const double value = c * lim.value;
    const double tol = cfg.limit_rel_tol * std::max(std::abs(value), 1e-10) + 1e-8;
    if (c * lim.error > tol)
        throw std::runtime_error("boundary limit at r -> 1 not resolved (disagreement " +
                                 std::to_string(c * lim.error) + ")");
    return value;
}

GrassFn orthocomplement_pullback(GrassFn psi) {
    return [psi = std::move(psi)](const GrassmannPoint& g) {
        return psi(g.orthocomplement());
    };
}

GrassFn funk_dual_invert(const GrassFn& f, const FunkConfig& cfg) {
    cfg.validate();
    if (1 + cfg.kprime < cfg.n)
        throw std::domain_error("dual Funk transform not injective: requires k + k' >= n");
    if (cfg.kprime != cfg.n - 1)
        throw std::domain_error(
            "scalar-cone dual inversion needs k' = n-1 (matrix cones are out of scope)");
    FunkConfig tilde_cfg = cfg;
    tilde_cfg.kprime = cfg.n - 1; // pair G(n, n-k') = G(n,1) -> G(n, n-1)
    GrassFn tf = orthocomplement_pullback(f);
    return [tf, tilde_cfg](const GrassmannPoint& eta) {
        return funk_invert(tf, eta.orthocomplement(), tilde_cfg);
    };
}

} // namespace agr
