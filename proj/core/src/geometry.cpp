#include "agr/geometry.hpp"

#include <cmath>
#include <stdexcept>

#include "agr/numerics.hpp"

namespace agr {

const Tolerances& tolerances() {
    static const Tolerances tol;
    return tol;
}

GrassmannPoint::GrassmannPoint(Mat frame) : frame_(std::move(frame)) {
    if (frame_.rows() < 1 || frame_.cols() < 0 || frame_.cols() > frame_.rows())
        throw std::invalid_argument("GrassmannPoint: invalid frame shape");
    const Mat gram = frame_.transpose() * frame_;
    const double err = (gram - Mat::Identity(frame_.cols(), frame_.cols())).norm();
    if (err > 1e-8)
        throw std::invalid_argument("GrassmannPoint: frame columns not orthonormal");
    if (err > tolerances().frame_orthonormality) {
        // Re-orthonormalize mild drift instead of rejecting it.
        Eigen::HouseholderQR<Mat> qr(frame_);
        Mat q = qr.householderQ() * Mat::Identity(frame_.rows(), frame_.cols());
        Mat r = qr.matrixQR().topRows(frame_.cols()).template triangularView<Eigen::Upper>();
        for (int j = 0; j < q.cols(); ++j)
            if (r(j, j) < 0) q.col(j) = -q.col(j);
        frame_ = q;
    }
}

GrassmannPoint GrassmannPoint::span_of(const Mat& columns) {
    const double pivot_tol = tolerances().gram_schmidt_pivot;
    Mat basis(columns.rows(), columns.cols());
    int rank = 0;
    for (int j = 0; j < columns.cols(); ++j) {
        Vec v = columns.col(j);
        for (int pass = 0; pass < 2; ++pass) // twice for stability
            for (int i = 0; i < rank; ++i) v -= basis.col(i).dot(v) * basis.col(i);
        const double norm = v.norm();
        if (norm > pivot_tol) {
            basis.col(rank) = v / norm;
            ++rank;
        }
    }
    return GrassmannPoint(Mat(basis.leftCols(rank)));
}

GrassmannPoint GrassmannPoint::orthocomplement() const {
    const int nn = n(), kk = k();
    Eigen::HouseholderQR<Mat> qr(frame_);
    Mat q = qr.householderQ() * Mat::Identity(nn, nn);
    return GrassmannPoint(Mat(q.rightCols(nn - kk)));
}

bool GrassmannPoint::same_subspace(const GrassmannPoint& other, double tol) const {
    if (n() != other.n() || k() != other.k()) return false;
    return (projector() - other.projector()).norm() <= tol;
}

bool GrassmannPoint::contains(const GrassmannPoint& sub, double tol) const {
    if (n() != sub.n() || sub.k() > k()) return false;
    return (projector() * sub.frame() - sub.frame()).norm() <= tol;
}

AffinePlane::AffinePlane(GrassmannPoint subspace, Vec offset)
    : subspace_(std::move(subspace)), offset_(std::move(offset)) {
    if (offset_.size() != subspace_.n())
        throw std::invalid_argument("AffinePlane: offset dimension mismatch");
    const double leak = (subspace_.frame().transpose() * offset_).norm();
    if (leak > tolerances().offset_orthogonality) {
        if (leak > 1e-6)
            throw std::invalid_argument("AffinePlane: offset not orthogonal to subspace");
        offset_ -= subspace_.frame() * (subspace_.frame().transpose() * offset_);
    }
}

Vec AffinePlane::point(const Vec& coords) const {
    return offset_ + subspace_.frame() * coords;
}

Vec project(const Vec& v, const GrassmannPoint& s, bool onto_complement) {
    if (v.size() != s.n())
        throw std::invalid_argument("project: vector dimension does not match ambient dimension");
    const Vec inside = s.frame() * (s.frame().transpose() * v);
    return onto_complement ? Vec(v - inside) : inside;
}

double cos2_angle(const GrassmannPoint& eta, const GrassmannPoint& xi) {
    if (xi.k() != 1)
        throw std::invalid_argument("cos2_angle: xi must be a line (k = 1)");
    if (eta.n() != xi.n())
        throw std::invalid_argument("cos2_angle: ambient dimension mismatch");
    const Vec y = xi.frame().col(0);
    return (eta.frame().transpose() * y).squaredNorm();
}

namespace {
Mat haar_orthogonal(int n, RngStream& rng) {
    Mat g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = rng.normal();
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ() * Mat::Identity(n, n);
    Mat r = qr.matrixQR().template triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j)
        if (r(j, j) < 0) q.col(j) = -q.col(j);
    return q;
}
} // namespace

RotationSample sample_rotation(int n, RngStream& rng) {
    Mat q = haar_orthogonal(n, rng);
    if (q.determinant() < 0) q.col(n - 1) = -q.col(n - 1);
    return RotationSample{std::move(q), rng.provenance()};
}

GrassmannPoint sample_grassmann(int n, int k, RngStream& rng) {
    if (k < 1 || k >= n) throw std::invalid_argument("sample_grassmann: need 1 <= k < n");
    Mat g(n, k);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < k; ++j) g(i, j) = rng.normal();
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ() * Mat::Identity(n, k);
    Mat r = qr.matrixQR().topRows(k).template triangularView<Eigen::Upper>();
    for (int j = 0; j < k; ++j)
        if (r(j, j) < 0) q.col(j) = -q.col(j);
    return GrassmannPoint(std::move(q));
}

AffinePlane kelvin(const AffinePlane& tau) {
    const double dist = tau.distance();
    if (dist <= 0.0)
        throw std::domain_error("Kelvin map undefined at |u| = 0");
    // {tau} = span(frame columns, u), then the new subspace is its null space.
    Mat spanning(tau.n(), tau.k() + 1);
    spanning.leftCols(tau.k()) = tau.subspace().frame();
    spanning.col(tau.k()) = tau.offset();
    const GrassmannPoint hull = GrassmannPoint::span_of(spanning);
    const GrassmannPoint tilde_xi = hull.orthocomplement();
    const Vec tilde_u = -tau.offset() / (dist * dist);
    return AffinePlane(tilde_xi, tilde_u);
}

double surface_area(int m) {
    if (m < 0) throw std::invalid_argument("surface_area: m must be >= 0");
    return sphere_surface_area(m);
}

Vec random_unit_in_span(const Mat& basis, RngStream& rng) {
    Vec coeff(basis.cols());
    for (int i = 0; i < basis.cols(); ++i) coeff(i) = rng.normal();
    Vec v = basis * coeff;
    const double nrm = v.norm();
    if (nrm < 1e-14) return Vec(basis.col(0));
    return Vec(v / nrm);
}

std::uint64_t subspace_key(const GrassmannPoint& s) {
    const double q = tolerances().plane_quantum;
    const Mat p = s.projector();
    std::uint64_t h = mix_u64(0x5117ULL + static_cast<std::uint64_t>(s.k()));
    for (int i = 0; i < p.rows(); ++i)
        for (int j = 0; j <= i; ++j)
            h = hash_combine(h, static_cast<std::uint64_t>(std::llround(p(i, j) / q)));
    return h;
}

std::uint64_t plane_key(const AffinePlane& tau) {
    const double q = tolerances().plane_quantum;
    const Mat p = tau.subspace().projector();
    std::uint64_t h = mix_u64(0xa5a5a5a5ULL + static_cast<std::uint64_t>(tau.k()));
    auto push = [&h, q](double x) {
        const auto ticks = static_cast<std::int64_t>(std::llround(x / q));
        h = hash_combine(h, static_cast<std::uint64_t>(ticks));
    };
    for (int i = 0; i < p.rows(); ++i)
        for (int j = 0; j <= i; ++j) push(p(i, j));
    for (int i = 0; i < tau.offset().size(); ++i) push(tau.offset()(i));
    return h;
}

} // namespace agr
