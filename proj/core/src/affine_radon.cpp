#include "agr/affine_radon.hpp"

#include <cmath>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "agr/numerics.hpp"
#include "agr/sphere.hpp"
#include "agr/spline.hpp"

namespace agr {

// ---------------------------------------------------------------------------
// Config validation

void PipelineConfig::validate_dims() const {
    if (!(0 < k && k < kprime && kprime < n))
        throw std::invalid_argument("PipelineConfig: need 0 < k < k' < n");
}

void PipelineConfig::validate_forward_inversion() const {
    validate_dims();
    if (!(k <= kappa && kappa < n - kprime))
        throw std::invalid_argument("PipelineConfig: k <= kappa < n-k' required (kappa = " +
                                    std::to_string(kappa) + ")");
    if (!(k + kprime <= n - 1))
        throw std::invalid_argument(
            "PipelineConfig: k+k' <= n-1 required for injectivity of R");
}

void PipelineConfig::validate_dual_inversion() const {
    validate_dims();
    if (!(n - kprime - 1 <= kappa && kappa < k + 1))
        throw std::invalid_argument(
            "PipelineConfig: n-k'-1 <= kappa < k+1 required (kappa = " +
            std::to_string(kappa) + ")");
    if (!(k + kprime >= n - 1))
        throw std::invalid_argument(
            "PipelineConfig: k+k' >= n-1 required for injectivity of R*");
}

double dual_mean_constant(int n, int k, int kprime) {
    return std::pow(M_PI, 0.5 * (kprime - k)) * surface_area(n - kprime - 1) /
           surface_area(n - k - 1);
}

double kelvin_chain_constant(int n, int k, int kprime) {
    return surface_area(n - kprime - 1) / surface_area(n - k - 1);
}

// ---------------------------------------------------------------------------
// Plane cache

struct PlaneCache::Impl {
    mutable std::shared_mutex mtx;
    std::unordered_map<std::uint64_t, double> map;
    std::size_t cap;
};

PlaneCache::PlaneCache(std::size_t max_entries) : impl_(std::make_shared<Impl>()) {
    impl_->cap = max_entries;
}

bool PlaneCache::lookup(std::uint64_t key, double& out) const {
    std::shared_lock lock(impl_->mtx);
    auto it = impl_->map.find(key);
    if (it == impl_->map.end()) return false;
    out = it->second;
    return true;
}

void PlaneCache::store(std::uint64_t key, double value) {
    std::unique_lock lock(impl_->mtx);
    if (impl_->map.size() >= impl_->cap) impl_->map.clear(); // values are deterministic
    impl_->map[key] = value;
}

std::size_t PlaneCache::size() const {
    std::shared_lock lock(impl_->mtx);
    return impl_->map.size();
}

MemoizedPlaneFn::MemoizedPlaneFn(std::function<double(const AffinePlane&)> fn,
                                 PlaneCache cache)
    : fn_(std::move(fn)), cache_(std::move(cache)) {}

double MemoizedPlaneFn::operator()(const AffinePlane& plane) const {
    const std::uint64_t key = plane_key(plane);
    double v;
    if (cache_.lookup(key, v)) return v;
    v = fn_(plane);
    cache_.store(key, v);
    return v;
}

// ---------------------------------------------------------------------------
// Forward and dual transforms

double radon_forward(const AffineFieldFn& f, const AffinePlane& zeta,
                     const PipelineConfig& cfg) {
    cfg.validate_dims();
    if (cfg.k != 1 || cfg.kprime != 2)
        throw std::invalid_argument("radon_forward: desk-scale instantiation has k=1, k'=2");
    const bool mu_ok = f.mu > cfg.kprime - cfg.k;
    const bool p_ok = f.p_class > 0.0 &&
                      f.p_class < double(cfg.n - cfg.k) / (cfg.kprime - cfg.k);
    if (!mu_ok && !p_ok)
        throw std::domain_error(
            "Radon transform undefined for the declared class: the conditions "
            "mu > k'-k and p < (n-k)/(k'-k) are sharp");
    if (zeta.k() != cfg.kprime || zeta.n() != cfg.n)
        throw std::invalid_argument("radon_forward: zeta has wrong dimensions");

    const Vec b1 = zeta.subspace().frame().col(0);
    const Vec b2 = zeta.subspace().frame().col(1);
    const Vec& v = zeta.offset();
    const QuadratureRule circle = circle_rule(cfg.grass_points);
    const QuadratureRule line = real_line_rule(cfg.line_points, cfg.line_scale);

    std::vector<double> outer(circle.size());
    Mat dir(cfg.n, 1);
    for (std::size_t i = 0; i < circle.size(); ++i) {
        const double th = circle.nodes[i];
        dir.col(0) = std::cos(th) * b1 + std::sin(th) * b2;
        const Vec w = -std::sin(th) * b1 + std::cos(th) * b2; // xi^perp within eta
        const GrassmannPoint xi(dir);
        std::vector<double> inner(line.size());
        for (std::size_t j = 0; j < line.size(); ++j)
            inner[j] = line.weights[j] * f.eval(AffinePlane(xi, Vec(v + line.nodes[j] * w)));
        outer[i] = pairwise_sum(inner);
    }
    return pairwise_sum(outer) / static_cast<double>(circle.size());
}

double radon_dual(const AffineFieldFn& phi, const AffinePlane& tau,
                  const PipelineConfig& cfg) {
    cfg.validate_dims();
    if (tau.k() != cfg.k || tau.n() != cfg.n)
        throw std::invalid_argument("radon_dual: tau has wrong dimensions");
    const int n = cfg.n, k = cfg.k, kp = cfg.kprime;
    const Mat comp = tau.subspace().orthocomplement().frame(); // n x (n-k)
    const Vec& u = tau.offset();

    if (n - k == 2 && kp - k == 1) {
        // K0 is a circle: spectrally accurate trapezoid average.
        const QuadratureRule circle = circle_rule(cfg.dual_circle_points);
        std::vector<double> terms(circle.size());
        Mat frame(n, kp);
        frame.leftCols(k) = tau.subspace().frame();
        for (std::size_t i = 0; i < circle.size(); ++i) {
            const double th = circle.nodes[i];
            const Vec w = std::cos(th) * comp.col(0) + std::sin(th) * comp.col(1);
            frame.col(kp - 1) = w;
            GrassmannPoint eta(frame);
            Vec off = u - w * w.dot(u); // Pr_{eta^perp} u
            terms[i] = phi.eval(AffinePlane(std::move(eta), std::move(off)));
        }
        return pairwise_sum(terms) / static_cast<double>(circle.size());
    }

    // Haar Monte Carlo over the isotropy subgroup.
    RngStream rng = RngStream(cfg.seed).child("radon_dual").child(plane_key(tau));
    std::vector<double> terms(cfg.dual_mc);
    for (int i = 0; i < cfg.dual_mc; ++i) {
        GrassmannPoint fill = sample_grassmann(n - k, kp - k, rng);
        Mat frame(n, kp);
        frame.leftCols(k) = tau.subspace().frame();
        frame.rightCols(kp - k) = comp * fill.frame();
        GrassmannPoint eta(std::move(frame));
        Vec off = project(u, eta, true);
        terms[i] = phi.eval(AffinePlane(std::move(eta), std::move(off)));
    }
    return pairwise_sum(terms) / cfg.dual_mc;
}

// ---------------------------------------------------------------------------
// Quasi-radial profile plumbing

struct QuasiRadialProfile::Impl {
    std::function<RadialGridFn(const GrassmannPoint&)> builder;
    mutable std::shared_mutex mtx;
    mutable std::unordered_map<std::uint64_t, std::shared_ptr<const RadialGridFn>> cache;
};

QuasiRadialProfile::QuasiRadialProfile(
    std::function<RadialGridFn(const GrassmannPoint&)> builder)
    : impl_(std::make_shared<Impl>()) {
    impl_->builder = std::move(builder);
}

const RadialGridFn& QuasiRadialProfile::grid(const GrassmannPoint& s) const {
    const double q = tolerances().plane_quantum;
    const Mat p = s.projector();
    std::uint64_t key = mix_u64(0x9d0fULL + static_cast<std::uint64_t>(s.k()));
    for (int i = 0; i < p.rows(); ++i)
        for (int j = 0; j <= i; ++j)
            key = hash_combine(key, static_cast<std::uint64_t>(std::llround(p(i, j) / q)));
    {
        std::shared_lock lock(impl_->mtx);
        auto it = impl_->cache.find(key);
        if (it != impl_->cache.end()) return *it->second;
    }
    auto grid = std::make_shared<const RadialGridFn>(impl_->builder(s));
    std::unique_lock lock(impl_->mtx);
    auto [it, inserted] = impl_->cache.emplace(key, grid);
    return *it->second;
}

double QuasiRadialProfile::operator()(const GrassmannPoint& s, double r) const {
    const RadialGridFn& g = grid(s);
    CubicSpline spline(g.nodes, g.values);
    return spline(r);
}

AffineFieldFn QuasiRadialProfile::as_field() const {
    QuasiRadialProfile self = *this;
    AffineFieldFn out;
    out.quasi_radial = true;
    out.eval = [self](const AffinePlane& plane) {
        return self(plane.subspace(), plane.distance());
    };
    return out;
}

namespace {

// Spot check of a declared quasi-radial tag: the evaluator must give the
// same value at rotated offsets of equal norm.
void spot_check_quasi_radial(const AffineFieldFn& f, int n, int dim,
                             std::uint64_t seed, const char* who) {
    if (!f.quasi_radial)
        throw std::invalid_argument(std::string(who) +
                                    ": input must be declared quasi-radial");
    RngStream rng = RngStream(seed).child("qr_spot_check");
    for (int trial = 0; trial < 2; ++trial) {
        const GrassmannPoint s = sample_grassmann(n, dim, rng);
        const Mat comp = s.orthocomplement().frame();
        const double radius = 0.5 + rng.uniform();
        const Vec w1 = random_unit_in_span(comp, rng);
        const Vec w2 = random_unit_in_span(comp, rng);
        const double v1 = f.eval(AffinePlane(s, Vec(radius * w1)));
        const double v2 = f.eval(AffinePlane(s, Vec(radius * w2)));
        const double scale = std::max({std::abs(v1), std::abs(v2), 1e-9});
        if (std::abs(v1 - v2) > 1e-3 * scale)
            throw std::invalid_argument(
                std::string(who) +
                ": declared quasi-radial evaluator varies over rotated offsets "
                "(spot check failed)");
    }
}

} // namespace

// ---------------------------------------------------------------------------
// Quasi-radial inversion (forward side)

QuasiRadialProfile invert_quasi_radial(const AffineFieldFn& phi,
                                       const PipelineConfig& cfg) {
    cfg.validate_dims();
    if (cfg.k + cfg.kprime > cfg.n)
        throw std::domain_error("Funk transform not injective: requires k + k' <= n");
    spot_check_quasi_radial(phi, cfg.n, cfg.kprime, cfg.seed, "invert_quasi_radial");
    const double alpha = cfg.alpha();
    const PipelineConfig cfg_copy = cfg;

    auto builder = [phi, cfg_copy, alpha](const GrassmannPoint& xi) {
        // h_xi(s) = (F^{-1} phi_s)(xi) on the radial grid, then
        // f0(xi, .) = pi^{-alpha} D^alpha_{-,2} h_xi.
        std::vector<double> nodes =
            RadialGridFn::uniform_nodes(cfg_copy.r_max, cfg_copy.radial_nodes);
        std::vector<double> vals(nodes.size());
        FunkConfig fcfg = cfg_copy.funk;
        fcfg.n = cfg_copy.n;
        fcfg.kprime = cfg_copy.kprime;
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            const double s = nodes[j];
            GrassFn phi_s = [&phi, s](const GrassmannPoint& eta) {
                // any unit offset direction: phi is quasi-radial
                const Vec w = eta.orthocomplement().frame().col(0);
                return phi.eval(AffinePlane(eta, Vec(s * w)));
            };
            vals[j] = funk_invert(phi_s, xi, fcfg);
        }
        RadialGridFn h(std::move(nodes), std::move(vals), cfg_copy.tail);
        RadialGridFn f0 =
            frac_derivative(h, {alpha, FracSide::Minus, FracKind::ErdelyiKober});
        const double scale = std::pow(M_PI, -alpha);
        for (auto& v : f0.values) v *= scale;
        f0.tail = cfg_copy.tail;
        return f0;
    };
    return QuasiRadialProfile(std::move(builder));
}

// ---------------------------------------------------------------------------
// Step 1 / Step 2 general inversion

TripleSample::TripleSample(GrassmannPoint h_, GrassmannPoint xi_, Vec a_)
    : h(std::move(h_)), xi(std::move(xi_)), a(std::move(a_)) {
    if (!h.contains(xi))
        throw std::invalid_argument("TripleSample: xi must be contained in h");
    if ((h.frame().transpose() * a).norm() > tolerances().offset_orthogonality)
        throw std::invalid_argument("TripleSample: a must lie in h^perp");
}

Step1Result step1_g(const std::function<double(const AffinePlane&)>& Rf,
                    const TripleSample& triple, const PipelineConfig& cfg) {
    cfg.validate_forward_inversion();
    if (cfg.ell() != 3 || cfg.k != 1 || cfg.kprime != 2)
        throw std::invalid_argument(
            "step1_g: desk-scale instantiation has k=1, k'=2, k'+kappa=3");
    if (triple.h.k() != cfg.ell())
        throw std::invalid_argument("step1_g: h must have dimension k'+kappa");
    const bool mu_ok = cfg.mu > cfg.kprime - cfg.k + cfg.kappa;
    const bool p_ok = cfg.p_class > 0.0 &&
                      cfg.p_class < double(cfg.n - cfg.k) / (cfg.kprime - cfg.k + cfg.kappa);
    if (!mu_ok && !p_ok)
        throw std::domain_error(
            "step 1 requires mu > k'-k+kappa or 1 <= p < (n-k)/(k'-k+kappa)");

    const Mat bh = triple.h.frame(); // n x 3
    const Vec a = triple.a;
    const QuadratureRule line = real_line_rule(cfg.line_points, cfg.line_scale);

    // G_{h,a}(eta) = int_pi (Rf)(eta, v) dv over the kappa-dimensional affine
    // plane pi = (eta^perp cap h) + a, in h-coordinates eta_bar in G(3,2).
    auto G_bar = [Rf, bh, a, line, n = cfg.n](const GrassmannPoint& eta_bar) {
        Mat eta_frame(n, 2);
        eta_frame = bh * eta_bar.frame();
        const GrassmannPoint eta(eta_frame);
        const Vec nbar = eta_bar.orthocomplement().frame().col(0); // in R^3
        const Vec w = bh * nbar; // spans eta^perp cap h
        std::vector<double> terms(line.size());
        for (std::size_t j = 0; j < line.size(); ++j)
            terms[j] =
                line.weights[j] * Rf(AffinePlane(eta, Vec(a + line.nodes[j] * w)));
        return pairwise_sum(terms);
    };

    FunkConfig fcfg = cfg.funk;
    fcfg.n = 3;
    fcfg.kprime = 2;
    Mat bh_copy = bh;
    auto g = [G_bar, fcfg, bh_copy](const GrassmannPoint& xi_prime) {
        // conjugate to h-coordinates and invert the Funk transform inside h
        Vec dir = xi_prime.frame().col(0);
        Vec dir_bar = bh_copy.transpose() * dir;
        const double nrm = dir_bar.norm();
        if (nrm < 1.0 - 1e-8)
            throw std::invalid_argument("step1_g: evaluation line must lie inside h");
        Mat fb(3, 1);
        fb.col(0) = dir_bar / nrm;
        return funk_invert(G_bar, GrassmannPoint(fb), fcfg);
    };

    Mat bh2 = bh;
    auto G_public = [G_bar, bh2](const GrassmannPoint& eta) {
        Mat bar = bh2.transpose() * eta.frame();
        return G_bar(GrassmannPoint::span_of(bar));
    };
    return Step1Result{std::move(g), std::move(G_public)};
}

Reconstructed step2_reconstruct(const std::function<double(const AffinePlane&)>& g_omega,
                                const AffinePlane& tau, const PipelineConfig& cfg) {
    cfg.validate_forward_inversion();
    const int k1 = cfg.k1();
    const GrassmannPoint comp = tau.subspace().orthocomplement(); // xi^perp, dim n-k
    const int dim_perp = comp.k();
    const Mat b = comp.frame(); // n x (n-k)
    const Vec u_bar = b.transpose() * tau.offset();

    if (k1 % 2 != 0)
        throw std::invalid_argument(
            "step2_reconstruct: desk-scale instantiation needs even k1 (local form)");

    // F_{xi,u}(t): average of G_xi over k1-planes in xi^perp at distance t
    // from u. For hyperplanes (k1 = dim-1) this is an exact sphere average.
    std::vector<double> nodes(cfg.step2_t_nodes);
    for (int j = 0; j < cfg.step2_t_nodes; ++j) nodes[j] = (j + 1) * cfg.step2_h;
    std::vector<double> values(nodes.size());

    if (k1 == dim_perp - 1 && dim_perp == 3) {
        const SphereRule sphere = sphere_rule(cfg.step2_sphere_band);
        const double total = 4.0 * M_PI;
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            const double t = nodes[j];
            std::vector<double> terms(sphere.size());
            for (std::size_t q = 0; q < sphere.size(); ++q) {
                const Eigen::Vector3d& sig = sphere.points[q];
                Vec sigma(3);
                sigma << sig.x(), sig.y(), sig.z();
                // plane {y : sigma.y = t + sigma.u} in xi^perp coordinates
                const double dist = t + sigma.dot(u_bar);
                Mat basis(3, 2);
                // any orthonormal basis of sigma^perp in R^3
                Vec e = Vec::Zero(3);
                e(std::abs(sigma(0)) < 0.9 ? 0 : 1) = 1.0;
                Vec v1 = e - sigma * sigma.dot(e);
                v1 /= v1.norm();
                Vec v2(3);
                v2 << sigma(1) * v1(2) - sigma(2) * v1(1),
                    sigma(2) * v1(0) - sigma(0) * v1(2),
                    sigma(0) * v1(1) - sigma(1) * v1(0);
                basis.col(0) = v1;
                basis.col(1) = v2;
                GrassmannPoint omega0(Mat(b * basis));
                Vec offset = b * Vec(sigma * dist);
                terms[q] = sphere.weights[q] *
                           g_omega(AffinePlane(std::move(omega0), std::move(offset)));
            }
            values[j] = pairwise_sum(terms) / total;
        }
    } else {
        // Haar fallback over rotations of xi^perp; the rotation set is shared
        // across the t-grid so F_{xi,u} stays smooth in t.
        RngStream base = RngStream(cfg.seed).child("step2").child(plane_key(tau));
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            const double t = nodes[j];
            RngStream rng = base;
            std::vector<double> terms(cfg.so_mc);
            for (int q = 0; q < cfg.so_mc; ++q) {
                const RotationSample rot = sample_rotation(dim_perp, rng);
                Mat omega0_bar = rot.matrix.leftCols(k1);
                const Vec normal_bar = rot.matrix.col(dim_perp - 1);
                // gamma omega_t + u with canonical offset Pr_{omega0^perp} u + ...
                Vec off_bar =
                    u_bar - omega0_bar * (omega0_bar.transpose() * u_bar) + t * normal_bar;
                GrassmannPoint omega0(Mat(b * omega0_bar));
                terms[q] = g_omega(AffinePlane(std::move(omega0), Vec(b * off_bar)));
            }
            values[j] = pairwise_sum(terms) / cfg.so_mc;
        }
    }

    RadialGridFn f_grid(std::move(nodes), std::move(values), cfg.tail);
    RadialGridFn deriv = half_derivative_operator(f_grid, k1 / 2, -1);
    const double scale = std::pow(M_PI, -0.5 * k1);
    // nodes are {h, 2h, ...}: Richardson from (h, 2h, 4h)
    const Extrapolated lim = richardson_limit(scale * deriv.values[0],
                                              scale * deriv.values[1],
                                              scale * deriv.values[3]);
    const double tol = cfg.limit_rel_tol * std::max(std::abs(lim.value), 1e-10) + 1e-8;
    if (lim.error > tol)
        throw std::runtime_error("limit at t->0 not resolved in step 2 (disagreement " +
                                 std::to_string(lim.error) + ")");
    return {lim.value, lim.error};
}

double invert_general(const std::function<double(const AffinePlane&)>& Rf,
                      const AffinePlane& tau, const PipelineConfig& cfg) {
    cfg.validate_forward_inversion();
    const GrassmannPoint& xi = tau.subspace();

    // Cache step-1 outputs: each needed omega = omega0 + a determines the
    // triple (h = omega0 + xi, a) uniquely.
    PlaneCache g_cache(1 << 20);
    auto g_omega = [Rf, xi, cfg, g_cache](const AffinePlane& omega) mutable -> double {
        const std::uint64_t key = hash_combine(plane_key(omega), 0x57e91ULL);
        double cached;
        if (g_cache.lookup(key, cached)) return cached;
        Mat spanning(cfg.n, omega.k() + xi.k());
        spanning.leftCols(omega.k()) = omega.subspace().frame();
        spanning.rightCols(xi.k()) = xi.frame();
        GrassmannPoint h = GrassmannPoint::span_of(spanning);
        if (h.k() != cfg.ell())
            throw std::runtime_error("invert_general: degenerate omega (h dimension)");
        const TripleSample triple(h, xi, omega.offset());
        const double value = step1_g(Rf, triple, cfg).g(xi);
        g_cache.store(key, value);
        return value;
    };
    return step2_reconstruct(g_omega, tau, cfg).value;
}

// ---------------------------------------------------------------------------
// Dual pipelines

double spherical_mean_m(const AffineFieldFn& f, const GrassmannPoint& xi, double r,
                        const PipelineConfig& cfg) {
    const int n = xi.n();
    const Mat comp = xi.orthocomplement().frame(); // n x (n-k)
    if (comp.cols() == 2) {
        const QuadratureRule circle = circle_rule(cfg.m_avg_points);
        std::vector<double> terms(circle.size());
        for (std::size_t i = 0; i < circle.size(); ++i) {
            const double th = circle.nodes[i];
            const Vec w = std::cos(th) * comp.col(0) + std::sin(th) * comp.col(1);
            terms[i] = f.eval(AffinePlane(xi, Vec(r * w)));
        }
        return pairwise_sum(terms) / static_cast<double>(circle.size());
    }
    RngStream rng = RngStream(cfg.seed)
                        .child("m_avg")
                        .child(subspace_key(xi),
                               static_cast<std::uint64_t>(std::llround(r / 1e-9)));
    std::vector<double> terms(cfg.so_mc);
    for (int i = 0; i < cfg.so_mc; ++i) {
        const Vec w = random_unit_in_span(comp, rng);
        terms[i] = f.eval(AffinePlane(xi, Vec(r * w)));
    }
    return pairwise_sum(terms) / cfg.so_mc;
}

QuasiRadialProfile dual_quasi_radial_invert(const AffineFieldFn& f,
                                            const PipelineConfig& cfg) {
    cfg.validate_dims();
    if (cfg.k + cfg.kprime < cfg.n)
        throw std::domain_error(
            "dual Funk transform not injective: requires k + k' >= n");
    const PipelineConfig cfgc = cfg;
    const double alpha = cfg.alpha();
    const double c = dual_mean_constant(cfg.n, cfg.k, cfg.kprime);

    auto builder = [f, cfgc, alpha, c](const GrassmannPoint& eta) {
        FunkConfig fcfg = cfgc.funk;
        fcfg.n = cfgc.n;
        fcfg.kprime = cfgc.kprime;

        std::vector<double> nodes =
            RadialGridFn::uniform_nodes(cfgc.r_max, cfgc.radial_nodes);

        // Memoized radial profiles of M_xi f: the Funk-inversion level sets
        // revisit the same lines for every r.
        PlaneCache m_cache(1 << 20);
        auto m_profile = [&](const GrassmannPoint& line, double r) {
            std::uint64_t key =
                hash_combine(plane_key(AffinePlane(line, Vec(Vec::Zero(cfgc.n)))),
                             static_cast<std::uint64_t>(std::llround(r / 1e-9)));
            double v;
            if (m_cache.lookup(key, v)) return v;
            v = spherical_mean_m(f, line, r, cfgc);
            m_cache.store(key, v);
            return v;
        };

        std::vector<double> psi_vals(nodes.size());
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            const double r = nodes[j];
            GrassFn chi = [&m_profile, r](const GrassmannPoint& line) {
                return m_profile(line, r);
            };
            GrassFn inv = funk_dual_invert(chi, fcfg);
            psi_vals[j] = std::pow(r, cfgc.n - cfgc.k - 2) * inv(eta);
        }
        RadialGridFn psi(nodes, std::move(psi_vals));
        RadialGridFn d =
            frac_derivative(psi, {alpha, FracSide::Plus, FracKind::ErdelyiKober});
        RadialGridFn out = d.times_power(cfgc.kprime + 2 - cfgc.n);
        for (auto& v : out.values) v /= c;
        // t = 0: the weighted derivative is a 0 * (C/t) limit on the grid;
        // take the value by continuity from the next nodes.
        extrapolate_first_node(out);
        out.tail = cfgc.tail;
        return out;
    };
    return QuasiRadialProfile(std::move(builder));
}

double dual_general_invert(const AffineFieldFn& f, const AffinePlane& zeta,
                           const PipelineConfig& cfg) {
    cfg.validate_dual_inversion();
    if (cfg.n != 3 || cfg.k != 1 || cfg.kprime != 2 || cfg.kappa != 0)
        throw std::invalid_argument(
            "dual_general_invert: desk-scale instantiation is (n,k,k',kappa) = (3,1,2,0)");
    if (zeta.distance() <= 0.0) throw std::domain_error("Kelvin map undefined at |u| = 0");
    const bool mu_ok = cfg.mu > cfg.kprime - cfg.k + cfg.kappa;
    const bool p_ok = cfg.p_class > 0.0 &&
                      cfg.p_class < double(cfg.kprime + 1) / (cfg.kprime - cfg.k + cfg.kappa);
    if (!mu_ok && !p_ok)
        throw std::domain_error(
            "dual general inversion requires phi in C~_mu with mu > k'-k+kappa or "
            "L~^p with 1 <= p < (k'+1)/(k'-k+kappa)");

    const double c = kelvin_chain_constant(cfg.n, cfg.k, cfg.kprime);

    // f1 on lines of R^3 through the Kelvin map.
    PlaneFieldFn f1;
    auto f_eval = f.eval;
    const int kp = cfg.kprime, n = cfg.n;
    f1.eval = [f_eval, c, kp, n](const AffinePlane& line) {
        if (line.distance() <= 0.0)
            throw std::domain_error("Kelvin map undefined at |u| = 0");
        const AffinePlane pre = kelvin(line); // nu^{-1} = nu
        return (1.0 / c) * std::pow(line.distance(), kp - n) * f_eval(pre);
    };

    // x = nu(zeta): for a 2-plane in R^3 the Kelvin image is the point
    // -v/|v|^2.
    const Vec x = -zeta.offset() / (zeta.distance() * zeta.distance());

    // The quasi-orthogonal transform takes point functions to functions on
    // (n-k-1)-planes; inverting it is a Radon-John inversion.
    DPlaneConfig dcfg = cfg.dplane;
    dcfg.seed = cfg.seed;
    const Reconstructed rec = dplane_invert(f1, x, /*d=*/n - cfg.k - 1, dcfg);
    return std::pow(zeta.distance(), cfg.k - cfg.n) * rec.value;
}

} // namespace agr
