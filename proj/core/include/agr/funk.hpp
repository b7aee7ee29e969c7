#ifndef AGR_FUNK_HPP
#define AGR_FUNK_HPP

#include <cstdint>
#include <functional>

#include "agr/geometry.hpp"

namespace agr {

// Scalar-cone (k = 1) Funk-Radon machinery between compact Grassmannians
// G(n,1) and G(n,k'). For n = 3, k' = 2 all averages are spectrally accurate
// circle quadratures; other dimensions fall back to seeded Monte Carlo.
struct FunkConfig {
    int n = 3;
    int kprime = 2;
    int circle_points = 256; // level-set / great-circle quadrature
    int r_nodes = 48;        // grid on (0,1], clustered toward r = 1
    int band_limit = 8;
    int mc_budget = 8192;    // Haar fallback for higher dimensions
    std::uint64_t seed = 1;
    double limit_rel_tol = 1.0; // boundary extrapolation guard

    void validate() const;
    double alpha() const { return 0.5 * (kprime - 1); }
    int smallest_m() const { return static_cast<int>(kprime + 1) / 2; } // > (k'-1)/2
};

// Functions on a compact Grassmannian are plain evaluators; the sample-table
// and harmonic representations wrap into this.
using GrassFn = std::function<double(const GrassmannPoint&)>;

// (F Phi)(eta): probability average of Phi over lines inside eta.
double funk_forward(const GrassFn& phi, const GrassmannPoint& eta, const FunkConfig& cfg);

// (F* Psi)(xi): probability average of Psi over k'-subspaces containing xi.
double funk_dual(const GrassFn& psi, const GrassmannPoint& xi, const FunkConfig& cfg);

// Mean value operator (M*_r Psi)(xi): average of Psi over the level set
// {eta : Cos^2(eta, xi) = r}, r in (0, 1].
double mean_value_mstar(const GrassFn& psi, const GrassmannPoint& xi, double r,
                        const FunkConfig& cfg);

// Inversion Phi = c lim_{r->1} (d/dr)^m I_+^{m-alpha} [r^{alpha-1/2} M*_r Psi],
// with c = Gamma(1/2)/Gamma(k'/2). Requires 1 + k' <= n.
double funk_invert(const GrassFn& psi, const GrassmannPoint& xi, const FunkConfig& cfg);

// (F*)^{-1} through the orthocomplement conjugation T F~^{-1} T; scalar-cone
// restriction means k' = n-1.
GrassFn funk_dual_invert(const GrassFn& f, const FunkConfig& cfg);

// T: pull a function back through the orthocomplement.
GrassFn orthocomplement_pullback(GrassFn psi);

} // namespace agr

#endif
