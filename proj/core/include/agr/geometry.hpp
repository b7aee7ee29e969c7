#ifndef AGR_GEOMETRY_HPP
#define AGR_GEOMETRY_HPP

#include <Eigen/Dense>
#include <string>

#include "agr/rng.hpp"

namespace agr {

// Desk-scale ambient dimensions only; fixed capacity keeps every vector and
// frame on the stack, which matters in the quadrature loops.
inline constexpr int kMaxDim = 8;

using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxDim, kMaxDim>;

// Frozen numerical tolerances, collected in one place.
struct Tolerances {
    double frame_orthonormality = 1e-12;
    double projector_equality = 1e-10;
    double offset_orthogonality = 1e-10;
    double rotation_det = 1e-10;
    double gram_schmidt_pivot = 1e-10;
    double plane_quantum = 1e-8; // rounding used for memo keys
};
const Tolerances& tolerances();

// A k-dimensional linear subspace of R^n, stored as an n x k orthonormal
// frame. The frame gauge (right O(k) action) is arbitrary; equality is
// always tested through the projector frame*frame^T.
class GrassmannPoint {
public:
    GrassmannPoint(Mat frame); // frame columns must already be orthonormal

    // Orthonormalizes an arbitrary spanning set (pivoted Gram-Schmidt).
    static GrassmannPoint span_of(const Mat& columns);

    int n() const { return static_cast<int>(frame_.rows()); }
    int k() const { return static_cast<int>(frame_.cols()); }
    const Mat& frame() const { return frame_; }
    Mat projector() const { return frame_ * frame_.transpose(); }
    GrassmannPoint orthocomplement() const;
    bool same_subspace(const GrassmannPoint& other,
                       double tol = tolerances().projector_equality) const;
    bool contains(const GrassmannPoint& sub,
                  double tol = tolerances().projector_equality) const;

private:
    Mat frame_;
};

// A k-plane tau(xi, u) in R^n: linear part xi plus an offset u in xi^perp.
// |tau| = |u| is the distance of the plane to the origin.
class AffinePlane {
public:
    AffinePlane(GrassmannPoint subspace, Vec offset);

    const GrassmannPoint& subspace() const { return subspace_; }
    const Vec& offset() const { return offset_; }
    int n() const { return subspace_.n(); }
    int k() const { return subspace_.k(); }
    double distance() const { return offset_.norm(); }

    // A point of the plane: offset + frame * coords.
    Vec point(const Vec& coords) const;

private:
    GrassmannPoint subspace_;
    Vec offset_;
};

struct RotationSample {
    Mat matrix; // n x n, det +1
    std::string provenance;
};

// Orthogonal projection of v onto s (or onto s^perp). The two variants sum
// back to v.
Vec project(const Vec& v, const GrassmannPoint& s, bool onto_complement = false);

// Cos^2(eta, xi) = |Pr_eta y|^2 for a line xi = span(y). In [0,1]; 1 iff
// xi within eta, 0 iff xi perpendicular to eta.
double cos2_angle(const GrassmannPoint& eta, const GrassmannPoint& xi);

// Haar rotation / uniform subspace via QR of a Gaussian matrix with
// sign-fixed R diagonal.
RotationSample sample_rotation(int n, RngStream& rng);
GrassmannPoint sample_grassmann(int n, int k, RngStream& rng);

// Kelvin-type involution: tau(xi, u) -> ({tau}^perp, -u/|u|^2), where {tau}
// is the smallest linear subspace containing tau. Swaps AG(n,k) with
// AG(n, n-k-1) and reciprocates distances. Undefined at u = 0.
AffinePlane kelvin(const AffinePlane& tau);

// Surface area of S^m (sigma_m).
double surface_area(int m);

// Uniform unit vector inside the span of an orthonormal basis (n x d).
Vec random_unit_in_span(const Mat& basis, RngStream& rng);

// Quantized hash of a linear subspace (projector entries only).
std::uint64_t subspace_key(const GrassmannPoint& s);

// Quantized memo key of a plane: projector entries and offset rounded to
// the plane quantum. Collisions are broken by full 128-bit-ish mixing.
std::uint64_t plane_key(const AffinePlane& tau);

} // namespace agr

#endif
