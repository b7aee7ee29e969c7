#include "agr/phantoms.hpp"

#include <cmath>
#include <stdexcept>

namespace agr {

PointFieldFn gaussian_point() {
    PointFieldFn f;
    f.eval = [](const Vec& x) { return std::exp(-x.squaredNorm()); };
    return f;
}

PointFieldFn rational_point(double nu) {
    PointFieldFn f;
    f.eval = [nu](const Vec& x) { return std::pow(1.0 + x.squaredNorm(), -nu); };
    f.mu = 2.0 * nu;
    return f;
}

AffineFieldFn gaussian_affine() {
    AffineFieldFn f;
    f.eval = [](const AffinePlane& tau) { return std::exp(-tau.offset().squaredNorm()); };
    f.quasi_radial = true;
    return f;
}

AffineFieldFn shifted_gaussian_affine(Vec a) {
    AffineFieldFn f;
    f.eval = [a = std::move(a)](const AffinePlane& tau) {
        const Vec c = project(a, tau.subspace(), true);
        return std::exp(-(tau.offset() - c).squaredNorm());
    };
    f.quasi_radial = false;
    return f;
}

AffineFieldFn rational_affine(double nu) {
    AffineFieldFn f;
    f.eval = [nu](const AffinePlane& tau) {
        return std::pow(1.0 + tau.offset().squaredNorm(), -nu);
    };
    f.quasi_radial = true;
    f.mu = 2.0 * nu;
    return f;
}

AffineFieldFn abs_component_affine(int axis) {
    AffineFieldFn f;
    f.eval = [axis](const AffinePlane& zeta) { return std::abs(zeta.offset()(axis)); };
    // quasi-radial on AG(n, n-1): the offset space is one-dimensional
    f.quasi_radial = true;
    f.mu = -1.0;
    f.p_class = 1.0;
    return f;
}

AffineFieldFn cauchy_affine() {
    AffineFieldFn f;
    f.eval = [](const AffinePlane& zeta) { return 1.0 / (1.0 + zeta.offset().squaredNorm()); };
    f.quasi_radial = true;
    f.mu = 2.0;
    return f;
}

AffinePhantom make_affine_phantom(const std::string& name,
                                  const std::map<std::string, double>& params, int n) {
    auto get = [&params](const std::string& key, double fallback) {
        auto it = params.find(key);
        return it == params.end() ? fallback : it->second;
    };
    AffinePhantom out;
    out.name = name;

    if (name == "gaussian") {
        out.field = gaussian_affine();
        // (Rf)(eta, v) = sqrt(pi) exp(-|v|^2) for one extra dimension inside eta
        out.radon_exact = [](const AffinePlane& zeta) {
            return std::sqrt(M_PI) * std::exp(-zeta.offset().squaredNorm());
        };
        // (R* phi)(xi, u) for n-k = 2: circle average of exp(-(w.u)^2)
        out.dual_exact = [](const AffinePlane& tau) {
            const double h = 0.5 * tau.offset().squaredNorm();
            return std::exp(-h) * std::cyl_bessel_i(0.0, h);
        };
        out.profile = [](double r) { return std::exp(-r * r); };
        return out;
    }
    if (name == "shifted_gaussian") {
        const int axis = static_cast<int>(get("shift_axis", n - 1));
        const double scale = get("shift_scale", 1.0);
        if (axis < 0 || axis >= n)
            throw std::invalid_argument("shifted_gaussian: shift_axis out of range");
        Vec a = Vec::Zero(n);
        a(axis) = scale;
        out.field = shifted_gaussian_affine(a);
        Vec a2 = a;
        out.radon_exact = [a2](const AffinePlane& zeta) {
            const Vec c = project(a2, zeta.subspace(), true);
            return std::sqrt(M_PI) * std::exp(-(zeta.offset() - c).squaredNorm());
        };
        return out;
    }
    if (name == "rational") {
        const double nu = get("nu", 2.0);
        out.field = rational_affine(nu);
        out.profile = [nu](double r) { return std::pow(1.0 + r * r, -nu); };
        if (nu == 2.0) {
            // one-dimensional fiber integral: int (1+s^2+t^2)^-2 dt
            out.radon_exact = [](const AffinePlane& zeta) {
                const double q = 1.0 + zeta.offset().squaredNorm();
                return 0.5 * M_PI * std::pow(q, -1.5);
            };
        }
        return out;
    }
    if (name == "abs_component") {
        const int axis = static_cast<int>(get("axis", 1));
        if (axis < 0 || axis >= n)
            throw std::invalid_argument("abs_component: axis out of range");
        out.field = abs_component_affine(axis);
        return out;
    }
    if (name == "cauchy") {
        out.field = cauchy_affine();
        // (R* phi)(tau) = 1/sqrt(1+|tau|^2) for n-k = 2
        out.dual_exact = [](const AffinePlane& tau) {
            return 1.0 / std::sqrt(1.0 + tau.offset().squaredNorm());
        };
        out.profile = [](double t) { return 1.0 / (1.0 + t * t); };
        return out;
    }
    throw std::invalid_argument("unknown phantom: " + name);
}

} // namespace agr
