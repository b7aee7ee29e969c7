#ifndef AGR_RADON_JOHN_HPP
#define AGR_RADON_JOHN_HPP

#include <cstdint>
#include <functional>
#include <limits>

#include "agr/fracint.hpp"
#include "agr/geometry.hpp"

namespace agr {

// Analytic phantom f on R^m with its declared decay class C_mu
// (f(x) = O(|x|^-mu)). The transform is only defined for mu > d.
struct PointFieldFn {
    std::function<double(const Vec&)> eval;
    double mu = std::numeric_limits<double>::infinity();
};

// A function of d-planes in R^m.
struct PlaneFieldFn {
    std::function<double(const AffinePlane&)> eval;
};

struct DPlaneConfig {
    int quad_points = 128;   // tangent-mapped Gauss nodes per plane coordinate
    double quad_scale = 1.0; // width hint of the integrand
    int mc_budget = 20000;   // Haar samples per shifted mean
    int t_nodes = 64;        // radial grid for F_x
    double t_max = 6.0;
    TailModel tail = TailModel::gaussian();
    std::uint64_t seed = 1;
    double limit_rel_tol = 0.5; // extrapolant disagreement guard (relative)
};

// Integral of f over the d-plane tau (d = tau.k()) by a tensor
// tangent-mapped Gauss rule along the plane's coordinates.
double dplane_transform(const PointFieldFn& f, const AffinePlane& tau,
                        int quad_points, double quad_scale = 1.0);

// F_x(t): Haar average of phi over planes gamma R^d + x + t gamma e_n.
// Deterministic given the stream.
double shifted_mean(const PlaneFieldFn& phi, const Vec& x, int d, double t,
                    int mc_budget, RngStream& rng);

struct Reconstructed {
    double value = 0.0;
    double error_bar = 0.0;
};

// Inversion f(x) = lim_{t->0} pi^{-d/2} (D^{d/2}_{-,2} F_x)(t). The limit is
// a Richardson extrapolation from t in {4h, 2h, h}; the extrapolant
// disagreement is the error bar.
Reconstructed dplane_invert(const PlaneFieldFn& phi, const Vec& x, int d,
                            const DPlaneConfig& cfg);

} // namespace agr

#endif
