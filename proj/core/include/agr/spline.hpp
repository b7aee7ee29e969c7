#ifndef AGR_SPLINE_HPP
#define AGR_SPLINE_HPP

#include <span>
#include <vector>

namespace agr {

// Not-a-knot cubic spline. Used wherever a sampled radial function has to be
// differentiated smoothly up to the ends of its grid.
class CubicSpline {
public:
    CubicSpline(std::span<const double> x, std::span<const double> y);

    double operator()(double t) const;
    double deriv(double t) const;
    double deriv2(double t) const;

private:
    std::size_t interval(double t) const;
    std::vector<double> x_, a_, b_, c_, d_; // s(t) = a + b dt + c dt^2 + d dt^3
};

} // namespace agr

#endif
