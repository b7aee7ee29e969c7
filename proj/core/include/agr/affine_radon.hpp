#ifndef AGR_AFFINE_RADON_HPP
#define AGR_AFFINE_RADON_HPP

#include <functional>
#include <limits>
#include <memory>

#include "agr/fracint.hpp"
#include "agr/funk.hpp"
#include "agr/geometry.hpp"
#include "agr/radon_john.hpp"

namespace agr {

// Desk-scale pipeline configuration. The frozen instantiations are
// (n,k,k') = (3,1,2) for the quasi-radial pipelines, (4,1,2) with kappa = 1
// for the general inversion, and (3,1,2) with kappa = 0 for the general dual
// inversion.
struct PipelineConfig {
    int n = 3;
    int k = 1;
    int kprime = 2;
    int kappa = 1;

    // declared function-class tags of the phantom / image (undecidable from
    // samples; spot-checked, not inferred)
    double mu = std::numeric_limits<double>::infinity();
    double p_class = 0.0; // 0 = not declared

    // quadrature / MC budgets
    int grass_points = 32;        // lines-in-a-plane circle averages
    int line_points = 32;         // 1-dim unbounded quadratures
    double line_scale = 2.0;
    int dual_circle_points = 512; // K0 average when n-k = 2
    int dual_mc = 20000;          // K0 Haar budget otherwise
    int m_avg_points = 48;        // spherical mean M_xi in the dual pipelines
    int radial_nodes = 48;
    double r_max = 6.0;
    TailModel tail = TailModel::gaussian();
    FunkConfig funk{};            // budgets for the embedded Funk inversions
    int step2_sphere_band = 11;   // SO(xi^perp) hyperplane average
    int step2_t_nodes = 6;
    double step2_h = 0.15;
    int so_mc = 96;               // rotation MC fallback
    DPlaneConfig dplane{};        // embedded Radon-John inversion (dual general)
    std::uint64_t seed = 1;
    double limit_rel_tol = 1.0;

    int k1() const { return kprime - k + kappa; }
    double alpha() const { return 0.5 * (kprime - k); }
    int ell() const { return kprime + kappa; }

    void validate_dims() const;
    void validate_forward_inversion() const; // k <= kappa < n-k', injectivity of R
    void validate_dual_inversion() const;    // n-k'-1 <= kappa < k+1, injectivity of R*
};

// A function on the affine Grassmannian AG(n,k), with caller-declared class
// tags. quasi_radial means f(xi,u) depends on u only through |u|.
struct AffineFieldFn {
    std::function<double(const AffinePlane&)> eval;
    bool quasi_radial = false;
    double mu = std::numeric_limits<double>::infinity();
    double p_class = 0.0;
};

// Concurrent value cache keyed by quantized plane keys. Values must be
// deterministic; a lost race recomputes the same number.
class PlaneCache {
public:
    explicit PlaneCache(std::size_t max_entries = 1 << 22);
    bool lookup(std::uint64_t key, double& out) const;
    void store(std::uint64_t key, double value);
    std::size_t size() const;

private:
    struct Impl;
    std::shared_ptr<Impl> impl_;
};

// Memoizing wrapper for an on-demand Radon-transform evaluator.
class MemoizedPlaneFn {
public:
    MemoizedPlaneFn(std::function<double(const AffinePlane&)> fn,
                    PlaneCache cache = PlaneCache());
    double operator()(const AffinePlane& plane) const;
    const PlaneCache& cache() const { return cache_; }

private:
    std::function<double(const AffinePlane&)> fn_;
    mutable PlaneCache cache_;
};

// (R f)(zeta): integral over all k-planes inside the k'-plane zeta.
double radon_forward(const AffineFieldFn& f, const AffinePlane& zeta,
                     const PipelineConfig& cfg);

// (R* phi)(tau): probability average over all k'-planes containing tau.
double radon_dual(const AffineFieldFn& phi, const AffinePlane& tau,
                  const PipelineConfig& cfg);

// Quasi-radial profile produced by the inversion pipelines: a radial grid
// per subspace, cached on the subspace projector.
class QuasiRadialProfile {
public:
    explicit QuasiRadialProfile(
        std::function<RadialGridFn(const GrassmannPoint&)> builder);
    const RadialGridFn& grid(const GrassmannPoint& s) const;
    double operator()(const GrassmannPoint& s, double r) const;
    AffineFieldFn as_field() const;

private:
    struct Impl;
    std::shared_ptr<Impl> impl_;
};

// Quasi-radial inversion (pair Funk^{-1} then EK derivative):
// f0(xi,r) = pi^{-alpha} (D^alpha_{-,2} h_xi)(r), h_xi(s) = (F^{-1} phi_s)(xi).
QuasiRadialProfile invert_quasi_radial(const AffineFieldFn& phi,
                                       const PipelineConfig& cfg);

// Triple (h, xi, a): h in G(n, k'+kappa), xi a k-subspace of h, a in h^perp.
struct TripleSample {
    GrassmannPoint h;
    GrassmannPoint xi;
    Vec a;
    TripleSample(GrassmannPoint h_, GrassmannPoint xi_, Vec a_);
};

// Step 1: reconstruct g(h, ., a) on lines inside h from Rf, via the line
// integral G_{h,a} and a Funk inversion inside h.
struct Step1Result {
    std::function<double(const GrassmannPoint&)> g; // on G_k(h)
    std::function<double(const GrassmannPoint&)> G_of_eta; // on G_k'(h), for tests
};
Step1Result step1_g(const std::function<double(const AffinePlane&)>& Rf,
                    const TripleSample& triple, const PipelineConfig& cfg);

// Step 2: k1-plane Radon-John inversion inside xi^perp from g = G_xi(omega).
Reconstructed step2_reconstruct(const std::function<double(const AffinePlane&)>& g_omega,
                                const AffinePlane& tau, const PipelineConfig& cfg);

// Full general inversion: step2 o step1 with (h, a) built from each needed
// k1-plane omega = omega0 + a as h = omega0 + xi.
double invert_general(const std::function<double(const AffinePlane&)>& Rf,
                      const AffinePlane& tau, const PipelineConfig& cfg);

// Dual quasi-radial inversion:
// phi0(eta,t) = c^{-1} t^{k'+2-n} (D^{(k'-k)/2}_{+,2} Psi_.(eta))(t),
// Psi_r(eta) = r^{n-k-2} ((F*)^{-1} [M_. f](r))(eta).
QuasiRadialProfile dual_quasi_radial_invert(const AffineFieldFn& f,
                                            const PipelineConfig& cfg);

// Spherical mean M_xi f(r): average of f(xi, u) over |u| = r in xi^perp.
double spherical_mean_m(const AffineFieldFn& f, const GrassmannPoint& xi, double r,
                        const PipelineConfig& cfg);

// General dual inversion through the Kelvin map and the quasi-orthogonal
// transform: phi(zeta) = |zeta|^{k-n} (FR^{-1} f1)(nu(zeta)),
// f1(t~) = c^{-1} |t~|^{k'-n} f(nu^{-1}(t~)).
double dual_general_invert(const AffineFieldFn& f, const AffinePlane& zeta,
                           const PipelineConfig& cfg);

// Constant of the dual quasi-radial factorization:
// pi^{(k'-k)/2} sigma_{n-k'-1} / sigma_{n-k-1}. The sigma index in the
// denominator is pinned by the constants fixed point M_xi R* 1 = 1.
double dual_mean_constant(int n, int k, int kprime);

// The constant linking R* with the quasi-orthogonal transform:
// sigma_{n-k'-1} / sigma_{n-k-1}.
double kelvin_chain_constant(int n, int k, int kprime);

} // namespace agr

#endif
