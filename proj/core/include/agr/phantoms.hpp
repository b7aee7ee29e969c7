#ifndef AGR_PHANTOMS_HPP
#define AGR_PHANTOMS_HPP

#include <map>
#include <string>

#include "agr/affine_radon.hpp"
#include "agr/radon_john.hpp"

namespace agr {

// Analytic phantoms with the closed forms used as reconstruction ground
// truth. Keeping them as callables (not voxel grids) removes interpolation
// error from the test chain.

PointFieldFn gaussian_point();                  // exp(-|x|^2)
PointFieldFn rational_point(double nu);         // (1+|x|^2)^{-nu}, mu = 2nu

// Phantoms on AG(n,k) (offset-dependent; the subspace argument is free).
AffineFieldFn gaussian_affine();                // exp(-|u|^2), quasi-radial
AffineFieldFn shifted_gaussian_affine(Vec a);   // exp(-|u - Pr_{perp} a|^2)
AffineFieldFn rational_affine(double nu);       // (1+|u|^2)^{-nu}, quasi-radial
AffineFieldFn abs_component_affine(int axis);   // |v . e_axis|
AffineFieldFn cauchy_affine();                  // 1/(1+|v|^2), quasi-radial

// A named phantom bundle for the experiment harness.
struct AffinePhantom {
    std::string name;
    AffineFieldFn field;
    // closed-form forward transform (k -> k' side), when available
    std::function<double(const AffinePlane&)> radon_exact;
    // closed-form dual transform (k' -> k side), when available
    std::function<double(const AffinePlane&)> dual_exact;
    // quasi-radial profile f0(r), when the phantom has one
    std::function<double(double)> profile;
};

// name in {gaussian, shifted_gaussian, rational, abs_component, cauchy};
// parameters: nu, shift_axis, shift_scale, axis.
AffinePhantom make_affine_phantom(const std::string& name,
                                  const std::map<std::string, double>& params, int n);

} // namespace agr

#endif
