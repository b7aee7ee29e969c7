#include "agr/sphere.hpp"

#include <cmath>
#include <stdexcept>

#include "agr/numerics.hpp"

namespace agr {

double legendre_p0(int l) {
    if (l < 0) throw std::invalid_argument("legendre_p0: l must be >= 0");
    if (l % 2 == 1) return 0.0;
    // P_l(0) = (-1)^{l/2} (l-1)!! / l!!
    double v = 1.0;
    for (int j = 2; j <= l; j += 2) v *= (j - 1.0) / j;
    return (l / 2) % 2 == 0 ? v : -v;
}

double real_sph_harmonic(int l, int m, const Eigen::Vector3d& u) {
    const double x = std::clamp(u.z(), -1.0, 1.0);
    const double phi = std::atan2(u.y(), u.x());
    const int ma = std::abs(m);
    // Orthonormal normalization via log-gamma to dodge factorial overflow.
    const double norm = std::sqrt((2.0 * l + 1.0) / (4.0 * M_PI) *
                                  std::exp(std::lgamma(l - ma + 1.0) -
                                           std::lgamma(l + ma + 1.0)));
    const double p = assoc_legendre(l, ma, x);
    if (m == 0) return norm * p;
    const double angular = (m > 0) ? std::cos(ma * phi) : std::sin(ma * phi);
    return std::sqrt(2.0) * norm * p * angular;
}

SphereRule sphere_rule(int band) {
    const int n_theta = band / 2 + 1;     // exact for cos-degree <= 2*n_theta - 1
    const int n_phi = band + 1;           // kills azimuthal modes 1..band
    const QuadratureRule& gl = gauss_legendre(n_theta);
    SphereRule rule;
    rule.points.reserve(static_cast<std::size_t>(n_theta) * n_phi);
    rule.weights.reserve(rule.points.capacity());
    for (int i = 0; i < n_theta; ++i) {
        const double z = gl.nodes[i];
        const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
        for (int j = 0; j < n_phi; ++j) {
            const double phi = 2.0 * M_PI * j / n_phi;
            rule.points.emplace_back(s * std::cos(phi), s * std::sin(phi), z);
            rule.weights.push_back(gl.weights[i] * 2.0 * M_PI / n_phi);
        }
    }
    return rule;
}

EvenHarmonicFn::EvenHarmonicFn(int band) : band_(band) {
    if (band < 0 || band % 2 != 0)
        throw std::invalid_argument("EvenHarmonicFn: band must be even and >= 0");
    const int i_max = band / 2;
    // sum over even degrees l = 2i of (2l+1) terms: (2I+1)(I+1)
    c_.assign(static_cast<std::size_t>((2 * i_max + 1) * (i_max + 1)), 0.0);
}

std::size_t EvenHarmonicFn::index(int l, int m) const {
    if (l < 0 || l > band_ || l % 2 != 0 || std::abs(m) > l)
        throw std::out_of_range("EvenHarmonicFn: bad (l, m)");
    const int i = l / 2;
    const std::size_t offset = static_cast<std::size_t>(2 * i * i - i);
    return offset + static_cast<std::size_t>(m + l);
}

EvenHarmonicFn EvenHarmonicFn::random(int band, RngStream& rng) {
    EvenHarmonicFn f(band);
    for (auto& c : f.c_) c = rng.normal();
    return f;
}

EvenHarmonicFn EvenHarmonicFn::project(
    const std::function<double(const Eigen::Vector3d&)>& f, int band) {
    EvenHarmonicFn out(band);
    const SphereRule rule = sphere_rule(2 * band + 2);
    for (int l = 0; l <= band; l += 2)
        for (int m = -l; m <= l; ++m) {
            double acc = 0.0;
            for (std::size_t q = 0; q < rule.size(); ++q)
                acc += rule.weights[q] * f(rule.points[q]) *
                       real_sph_harmonic(l, m, rule.points[q]);
            out.coeff(l, m) = acc;
        }
    return out;
}

double EvenHarmonicFn::operator()(const Eigen::Vector3d& u) const {
    double acc = 0.0;
    for (int l = 0; l <= band_; l += 2)
        for (int m = -l; m <= l; ++m) acc += coeff(l, m) * real_sph_harmonic(l, m, u);
    return acc;
}

EvenHarmonicFn EvenHarmonicFn::funk_multiplied() const {
    EvenHarmonicFn out = *this;
    for (int l = 0; l <= band_; l += 2) {
        const double p0 = legendre_p0(l);
        for (int m = -l; m <= l; ++m) out.coeff(l, m) *= p0;
    }
    return out;
}

EvenHarmonicFn EvenHarmonicFn::funk_divided() const {
    EvenHarmonicFn out = *this;
    for (int l = 0; l <= band_; l += 2) {
        const double p0 = legendre_p0(l);
        for (int m = -l; m <= l; ++m) out.coeff(l, m) /= p0;
    }
    return out;
}

double EvenHarmonicFn::l2_norm() const {
    double acc = 0.0;
    for (double c : c_) acc += c * c;
    return std::sqrt(acc);
}

double EvenHarmonicFn::l2_distance(const EvenHarmonicFn& other) const {
    if (other.band_ != band_)
        throw std::invalid_argument("EvenHarmonicFn: band mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        const double d = c_[i] - other.c_[i];
        acc += d * d;
    }
    return std::sqrt(acc);
}

} // namespace agr
