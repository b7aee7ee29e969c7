#ifndef AGR_SPHERE_HPP
#define AGR_SPHERE_HPP

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "agr/rng.hpp"

namespace agr {

// P_l(0), the multiplier of the great-circle Funk transform on degree-l
// harmonics.
double legendre_p0(int l);

// Real orthonormal spherical harmonic basis on S^2.
double real_sph_harmonic(int l, int m, const Eigen::Vector3d& u);

// Product quadrature on S^2 (Gauss-Legendre in the polar cosine, uniform in
// azimuth), exact for spherical polynomials of degree <= band. Weights sum
// to 4 pi.
struct SphereRule {
    std::vector<Eigen::Vector3d> points;
    std::vector<double> weights;
    std::size_t size() const { return points.size(); }
};
SphereRule sphere_rule(int band);

// Band-limited even function on S^2 = function on G(3,1) (representation by
// even-degree spherical-harmonic coefficients).
class EvenHarmonicFn {
public:
    explicit EvenHarmonicFn(int band);
    static EvenHarmonicFn random(int band, RngStream& rng);
    static EvenHarmonicFn project(const std::function<double(const Eigen::Vector3d&)>& f,
                                  int band);

    int band() const { return band_; }
    double coeff(int l, int m) const { return c_[index(l, m)]; }
    double& coeff(int l, int m) { return c_[index(l, m)]; }
    const std::vector<double>& coeffs() const { return c_; }

    double operator()(const Eigen::Vector3d& u) const;

    // Coefficient-wise action of the Funk transform: c_{l,m} *= P_l(0).
    EvenHarmonicFn funk_multiplied() const;
    EvenHarmonicFn funk_divided() const;

    double l2_norm() const;
    double l2_distance(const EvenHarmonicFn& other) const;

private:
    std::size_t index(int l, int m) const;
    int band_;
    std::vector<double> c_;
};

} // namespace agr

#endif
