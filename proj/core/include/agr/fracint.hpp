#ifndef AGR_FRACINT_HPP
#define AGR_FRACINT_HPP

#include <functional>
#include <vector>

namespace agr {

// Extrapolation model for a sampled radial function beyond its last node.
// Right-sided (minus) fractional integrals see the whole half-line, so the
// tail matters; the model is fit to the last 10% of the grid and integrated
// in closed form (Gaussian tails via the incomplete gamma function, power
// tails via the incomplete beta function).
enum class TailKind { Zero, GaussianFit, PowerFit };

struct TailModel {
    TailKind kind = TailKind::Zero;
    double exponent = 0.0; // PowerFit: f(r) ~ A r^exponent

    static TailModel zero() { return {TailKind::Zero, 0.0}; }
    static TailModel gaussian() { return {TailKind::GaussianFit, 0.0}; }
    static TailModel power(double e) { return {TailKind::PowerFit, e}; }
};

// A scalar function of one radial variable, sampled on a strictly
// increasing grid. Most operators require the grid to start at 0; the
// integer-order derivative forms are local and accept restricted grids.
struct RadialGridFn {
    std::vector<double> nodes;
    std::vector<double> values;
    TailModel tail = TailModel::zero();

    RadialGridFn() = default;
    RadialGridFn(std::vector<double> nodes_, std::vector<double> values_,
                 TailModel tail_ = TailModel::zero());

    std::size_t size() const { return nodes.size(); }
    double r_max() const { return nodes.back(); }
    void validate() const;

    // Piecewise-cubic evaluation (for reading results off the grid).
    double interpolate(double t) const;

    // values[i] *= nodes[i]^p; power tails shift their exponent. The value
    // at a zero node becomes 0 for p > 0 and NaN for p < 0 (the weighted
    // compositions repair that node by extrapolation).
    RadialGridFn times_power(double p) const;

    static std::vector<double> uniform_nodes(double r_maximum, int n);
    static std::vector<double> cheb_nodes_clustered_right(double r_maximum, int n);
    static RadialGridFn sample(const std::function<double(double)>& f,
                               std::vector<double> nodes_,
                               TailModel tail_ = TailModel::zero());
};

enum class FracSide { Plus, Minus };
enum class FracKind { RiemannLiouville, ErdelyiKober };

struct FracOrder {
    double alpha = 0.5;
    FracSide side = FracSide::Minus;
    FracKind kind = FracKind::ErdelyiKober;
};

// Analytic forms of the left-inverse derivative. Auto picks the integer
// form for integer alpha and the alternative form otherwise (half-integer
// orders then need no fractional machinery on the outside).
enum class DerivativeForm { Auto, Integer, Weighted, Alternative, Simplified };

// I^a_{+-} f (Riemann-Liouville) or I^a_{+-,2} f (Erdelyi-Kober), sampled on
// the same grid. Plus-sided kinds require the grid to start at 0.
RadialGridFn frac_integral(const RadialGridFn& f, const FracOrder& o);

// Left inverse of frac_integral: D^a_{+-} / D^a_{+-,2}.
RadialGridFn frac_derivative(const RadialGridFn& phi, const FracOrder& o,
                             DerivativeForm form = DerivativeForm::Auto);

// (sign * D)^times with D = (1/2t) d/dt, spline-differentiated; the value at
// a zero node uses the one-sided limit f''(0)/2.
RadialGridFn half_derivative_operator(const RadialGridFn& f, int times, int sign);

// (sign * d/dt)^times via cubic spline.
RadialGridFn grid_derivative(const RadialGridFn& f, int times, int sign);

// Weighted Erdelyi-Kober integral I^a_{+-,2}[ r^p f ](t) evaluated at one
// point or on the whole grid. This is the workhorse behind the inversion
// formulas, which weave power weights through the kernels.
double ek_integral_at(const RadialGridFn& f, double alpha, FracSide side,
                      double weight_power, double t);
RadialGridFn ek_integral(const RadialGridFn& f, double alpha, FracSide side,
                         double weight_power = 0.0);

// Riemann-Liouville integral (unweighted), same conventions.
double rl_integral_at(const RadialGridFn& f, double alpha, FracSide side, double t);
RadialGridFn rl_integral(const RadialGridFn& f, double alpha, FracSide side);

// Replace the first node's value by quadratic extrapolation from the next
// three nodes. Used where a weighted composition leaves a removable 0 * inf
// artifact at t = 0.
void extrapolate_first_node(RadialGridFn& g);

} // namespace agr

#endif
