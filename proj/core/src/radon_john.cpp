#include "agr/radon_john.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "agr/numerics.hpp"
#include "agr/parallel.hpp"

namespace agr {

double dplane_transform(const PointFieldFn& f, const AffinePlane& tau,
                        int quad_points, double quad_scale) {
    const int d = tau.k();
    if (!(f.mu > d))
        throw std::domain_error(
            "d-plane transform undefined for the declared decay: both restrictions "
            "mu > d and 1 <= p < n/d are sharp");
    const QuadratureRule line = real_line_rule(quad_points, quad_scale);

    // Tensor rule over the plane coordinates, d <= 3 at desk scale.
    Vec coords = Vec::Zero(d);
    std::vector<double> terms;
    terms.reserve(static_cast<std::size_t>(std::pow(line.size(), d)));
    std::vector<std::size_t> idx(d, 0);
    for (;;) {
        double w = 1.0;
        for (int j = 0; j < d; ++j) {
            coords(j) = line.nodes[idx[j]];
            w *= line.weights[idx[j]];
        }
        terms.push_back(w * f.eval(tau.point(coords)));
        int j = 0;
        for (; j < d; ++j) {
            if (++idx[j] < line.size()) break;
            idx[j] = 0;
        }
        if (j == d) break;
    }
    return pairwise_sum(terms);
}

double shifted_mean(const PlaneFieldFn& phi, const Vec& x, int d, double t,
                    int mc_budget, RngStream& rng) {
    if (t < 0.0) throw std::invalid_argument("shifted_mean: t must be >= 0");
    const int n = static_cast<int>(x.size());
    std::vector<double> terms(mc_budget);
    for (int i = 0; i < mc_budget; ++i) {
        const RotationSample gamma = sample_rotation(n, rng);
        GrassmannPoint sub{Mat(gamma.matrix.leftCols(d))};
        Vec offset = project(x, sub, true) + t * gamma.matrix.col(n - 1);
        terms[i] = phi.eval(AffinePlane(std::move(sub), std::move(offset)));
    }
    return pairwise_sum(terms) / mc_budget;
}

Reconstructed dplane_invert(const PlaneFieldFn& phi, const Vec& x, int d,
                            const DPlaneConfig& cfg) {
    const int n = static_cast<int>(x.size());
    if (d < 1 || d > n - 1) throw std::invalid_argument("dplane_invert: need 1 <= d <= n-1");

    std::vector<double> nodes = RadialGridFn::uniform_nodes(cfg.t_max, cfg.t_nodes);
    std::vector<double> values(nodes.size());

    // One stream identity per reconstruction point; re-created for every t so
    // all F_x(t) share the same rotation set and F_x is smooth in t.
    std::uint64_t xkey = mix_u64(cfg.seed);
    for (int i = 0; i < n; ++i)
        xkey = hash_combine(xkey, static_cast<std::uint64_t>(
                                      std::llround(x(i) / tolerances().plane_quantum)));

    parallel_for(nodes.size(), [&](std::size_t j) {
        RngStream stream = RngStream(cfg.seed).child(xkey).child("shifted_mean");
        values[j] = shifted_mean(phi, x, d, nodes[j], cfg.mc_budget, stream);
    });

    RadialGridFn f_x(std::move(nodes), std::move(values), cfg.tail);
    const FracOrder order{0.5 * d, FracSide::Minus, FracKind::ErdelyiKober};
    const RadialGridFn deriv = frac_derivative(f_x, order);

    const double h = cfg.t_max / cfg.t_nodes;
    const double scale = std::pow(M_PI, -0.5 * d);
    const Extrapolated lim = richardson_limit(scale * deriv.values[1],
                                              scale * deriv.values[2],
                                              scale * deriv.values[4]);
    const double tol = cfg.limit_rel_tol * std::max(std::abs(lim.value), 1e-12) + 1e-9;
    if (lim.error > tol)
        throw std::runtime_error("limit at t->0 not resolved (extrapolant disagreement " +
                                 std::to_string(lim.error) + " at h = " + std::to_string(h) +
                                 ")");
    return {lim.value, lim.error};
}

} // namespace agr
