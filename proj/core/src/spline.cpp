#include "agr/spline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace agr {

CubicSpline::CubicSpline(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n < 4) throw std::invalid_argument("CubicSpline: need at least 4 nodes");
    if (y.size() != n) throw std::invalid_argument("CubicSpline: size mismatch");
    for (std::size_t i = 1; i < n; ++i)
        if (!(x[i] > x[i - 1]))
            throw std::invalid_argument("CubicSpline: nodes must be strictly increasing");

    x_.assign(x.begin(), x.end());
    a_.assign(y.begin(), y.end());

    std::vector<double> h(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) h[i] = x[i + 1] - x[i];

    // Solve for second-derivative-related coefficients c with not-a-knot end
    // conditions; generic banded system solved by LU on a tridiagonal-with-
    // corners matrix via the Thomas algorithm on an extended system.
    std::vector<double> sub(n, 0.0), diag(n, 0.0), sup(n, 0.0), rhs(n, 0.0);
    // Not-a-knot at the left: third derivative continuous across x1.
    diag[0] = h[1];
    sup[0] = -(h[0] + h[1]);
    rhs[0] = 0.0;
    double corner_left = h[0]; // coefficient on c_2 in row 0
    for (std::size_t i = 1; i + 1 < n; ++i) {
        sub[i] = h[i - 1];
        diag[i] = 2.0 * (h[i - 1] + h[i]);
        sup[i] = h[i];
        rhs[i] = 3.0 * ((a_[i + 1] - a_[i]) / h[i] - (a_[i] - a_[i - 1]) / h[i - 1]);
    }
    // Not-a-knot at the right.
    sub[n - 1] = -(h[n - 2] + h[n - 3]);
    diag[n - 1] = h[n - 3];
    rhs[n - 1] = 0.0;
    double corner_right = h[n - 2]; // coefficient on c_{n-3} in the last row

    // Eliminate the two corner entries first, then run Thomas.
    // Row 0: corner_left * c2. Use row 1 to remove it.
    {
        const double f = corner_left / sup[1];
        // row0 -= f * (row1 shifted): row1 covers c0,c1,c2
        // row0 currently covers c0(diag), c1(sup), c2(corner)
        diag[0] -= f * sub[1];
        sup[0] -= f * diag[1];
        rhs[0] -= f * rhs[1];
    }
    // Last row: corner_right * c_{n-3}. Use row n-2 to remove it.
    {
        const double f = corner_right / sub[n - 2];
        sub[n - 1] -= f * diag[n - 2];
        diag[n - 1] -= f * sup[n - 2];
        rhs[n - 1] -= f * rhs[n - 2];
    }

    std::vector<double> c(n, 0.0);
    // Forward sweep.
    for (std::size_t i = 1; i < n; ++i) {
        const double m = sub[i] / diag[i - 1];
        diag[i] -= m * sup[i - 1];
        rhs[i] -= m * rhs[i - 1];
    }
    c[n - 1] = rhs[n - 1] / diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;)
        c[i] = (rhs[i] - sup[i] * c[i + 1]) / diag[i];

    b_.resize(n - 1);
    d_.resize(n - 1);
    c_ = std::move(c);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        b_[i] = (a_[i + 1] - a_[i]) / h[i] - h[i] * (2.0 * c_[i] + c_[i + 1]) / 3.0;
        d_[i] = (c_[i + 1] - c_[i]) / (3.0 * h[i]);
    }
}

std::size_t CubicSpline::interval(double t) const {
    const auto it = std::upper_bound(x_.begin(), x_.end(), t);
    std::size_t i = (it == x_.begin()) ? 0 : static_cast<std::size_t>(it - x_.begin() - 1);
    return std::min(i, x_.size() - 2);
}

double CubicSpline::operator()(double t) const {
    const std::size_t i = interval(t);
    const double dt = t - x_[i];
    return a_[i] + dt * (b_[i] + dt * (c_[i] + dt * d_[i]));
}

double CubicSpline::deriv(double t) const {
    const std::size_t i = interval(t);
    const double dt = t - x_[i];
    return b_[i] + dt * (2.0 * c_[i] + 3.0 * dt * d_[i]);
}

double CubicSpline::deriv2(double t) const {
    const std::size_t i = interval(t);
    const double dt = t - x_[i];
    return 2.0 * c_[i] + 6.0 * dt * d_[i];
}

} // namespace agr
