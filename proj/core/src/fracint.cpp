#include "agr/fracint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "agr/numerics.hpp"
#include "agr/spline.hpp"

namespace agr {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool near_integer(double x, double tol = 1e-12) {
    return std::abs(x - std::llround(x)) < tol;
}

// ---------------------------------------------------------------------------
// Tail models fitted to the last 10% of a grid.

struct FittedTail {
    TailKind kind = TailKind::Zero;
    double amplitude = 0.0;
    double gauss_b = 0.0;   // f ~ A exp(-b r^2)
    double exponent = 0.0;  // f ~ A r^e
};

FittedTail fit_tail(const RadialGridFn& f) {
    FittedTail out;
    out.kind = f.tail.kind;
    if (f.tail.kind == TailKind::Zero) return out;

    const std::size_t n = f.size();
    const std::size_t window = std::max<std::size_t>(4, n / 10);
    const std::size_t begin = n - std::min(window, n - 1);

    if (f.tail.kind == TailKind::PowerFit) {
        out.exponent = f.tail.exponent;
        double acc = 0.0;
        int cnt = 0;
        for (std::size_t i = begin; i < n; ++i) {
            if (f.nodes[i] <= 0.0) continue;
            acc += f.values[i] * std::pow(f.nodes[i], -out.exponent);
            ++cnt;
        }
        out.amplitude = cnt ? acc / cnt : 0.0;
        return out;
    }

    // Gaussian fit: least squares of log|f| against (1, -r^2).
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    double sign = 0.0;
    for (std::size_t i = begin; i < n; ++i) {
        const double v = f.values[i];
        if (v == 0.0 || !std::isfinite(v)) continue;
        const double x = f.nodes[i] * f.nodes[i];
        const double y = std::log(std::abs(v));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        sign = (v > 0) ? 1.0 : -1.0;
        ++cnt;
    }
    if (cnt < 3) {
        out.kind = TailKind::Zero;
        return out;
    }
    const double det = cnt * sxx - sx * sx;
    if (std::abs(det) < 1e-300) {
        out.kind = TailKind::Zero;
        return out;
    }
    const double slope = (cnt * sxy - sx * sy) / det; // = -b
    const double inter = (sy - slope * sx) / cnt;
    out.gauss_b = -slope;
    out.amplitude = sign * std::exp(inter);
    if (out.gauss_b <= 0.0)
        throw std::domain_error(
            "gaussian tail fit produced a non-decaying tail: the right-sided integral "
            "requires int_a^inf |f(r)| r^(2 alpha - 1) dr < inf");
    return out;
}

// ---------------------------------------------------------------------------
// Product-integration engine in the working coordinate w.
//
// Integrates  |w - tau|^(alpha-1) * w^gamma * f_pw(w)  over the grid span,
// where f_pw is piecewise linear between breakpoints. Each piece is mapped
// with v = sqrt(|w - tau|), which turns the kernel into v^(2 alpha - 1); for
// integer and half-integer alpha that factor is a polynomial and the fixed
// Gauss rule integrates the piece exactly, which is what keeps the weighted
// compositions accurate next to t = 0.

double piece_integral_minus(double x1, double x2, double tau, double alpha,
                            double gamma, double c0, double c1) {
    const double v1 = std::sqrt(std::max(0.0, x1 - tau));
    const double v2 = std::sqrt(std::max(0.0, x2 - tau));
    if (!(v2 > v1)) return 0.0;
    const double kexp = 2.0 * alpha - 1.0;
    const QuadratureRule& gl = gauss_legendre(12);
    const double mid = 0.5 * (v1 + v2), half = 0.5 * (v2 - v1);
    double acc = 0.0;
    for (std::size_t q = 0; q < gl.size(); ++q) {
        const double v = mid + half * gl.nodes[q];
        const double w = tau + v * v;
        double kern = 2.0;
        if (kexp == 0.0) {
        } else if (kexp == 1.0) {
            kern *= v;
        } else if (kexp == 2.0) {
            kern *= v * v;
        } else {
            kern *= std::pow(v, kexp);
        }
        const double wt = (gamma == 0.0) ? 1.0 : std::pow(w, gamma);
        acc += gl.weights[q] * kern * wt * (c0 + c1 * w);
    }
    return half * acc;
}

double piece_integral_plus(double x1, double x2, double tau, double alpha,
                           double gamma, double c0, double c1) {
    // kernel (tau - w)^(alpha-1); v = sqrt(tau - w)
    const double v1 = std::sqrt(std::max(0.0, tau - x2));
    const double v2 = std::sqrt(std::max(0.0, tau - x1));
    if (!(v2 > v1)) return 0.0;
    const double kexp = 2.0 * alpha - 1.0;
    const QuadratureRule& gl = gauss_legendre(12);
    const double mid = 0.5 * (v1 + v2), half = 0.5 * (v2 - v1);
    double acc = 0.0;
    for (std::size_t q = 0; q < gl.size(); ++q) {
        const double v = mid + half * gl.nodes[q];
        const double w = tau - v * v;
        if (w < 0.0) continue;
        double kern = 2.0;
        if (kexp == 0.0) {
        } else if (kexp == 1.0) {
            kern *= v;
        } else if (kexp == 2.0) {
            kern *= v * v;
        } else {
            kern *= std::pow(v, kexp);
        }
        const double wt = (gamma == 0.0) ? 1.0 : (w == 0.0 ? 0.0 : std::pow(w, gamma));
        acc += gl.weights[q] * kern * wt * (c0 + c1 * w);
    }
    return half * acc;
}

// Breakpoints for one side: grid nodes restricted to the integration span,
// plus dyadic refinement toward the kernel point and (for gamma != 0)
// octave points that keep the power weight tame on every piece.
void add_dyadic(std::vector<double>& pts, double from, double toward, int levels = 24) {
    double span = from - toward;
    for (int k = 1; k <= levels; ++k) {
        span *= 0.5;
        if (std::abs(span) < 1e-14 * std::abs(from - toward) + 1e-300) break;
        pts.push_back(toward + span);
    }
}

struct Segment {
    double c0, c1;
};

// Linear segment of the sampled function covering w (grid in the working
// coordinate). Assumes w within [w.front(), w.back()].
Segment segment_at(const std::vector<double>& w, const std::vector<double>& f, double x) {
    auto it = std::upper_bound(w.begin(), w.end(), x);
    std::size_t i = (it == w.begin()) ? 0 : static_cast<std::size_t>(it - w.begin() - 1);
    i = std::min(i, w.size() - 2);
    const double slope = (f[i + 1] - f[i]) / (w[i + 1] - w[i]);
    return {f[i] - slope * w[i], slope};
}

double grid_part_minus(const std::vector<double>& w, const std::vector<double>& f,
                       double alpha, double gamma, double tau) {
    const double w_end = w.back();
    if (tau >= w_end) return 0.0;
    std::vector<double> pts;
    pts.reserve(w.size() + 64);
    pts.push_back(tau);
    for (double x : w)
        if (x > tau && x < w_end) pts.push_back(x);
    pts.push_back(w_end);
    // refine toward the kernel singularity at w = tau
    double first_above = w_end;
    for (double x : w)
        if (x > tau) {
            first_above = x;
            break;
        }
    if (!near_integer(2.0 * alpha - 1.0) || gamma != 0.0)
        add_dyadic(pts, std::min(first_above, w_end), tau);
    if (gamma != 0.0 && tau > 0.0)
        for (double x = 2.0 * tau; x < w_end; x *= 2.0) pts.push_back(x);
    if (gamma != 0.0 && tau == 0.0 && first_above > 0.0)
        add_dyadic(pts, first_above, 0.0);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double a = pts[i], b = pts[i + 1];
        if (!(b > a)) continue;
        const Segment s = segment_at(w, f, 0.5 * (a + b));
        acc += piece_integral_minus(a, b, tau, alpha, gamma, s.c0, s.c1);
    }
    return acc;
}

double grid_part_plus(const std::vector<double>& w, const std::vector<double>& f,
                      double alpha, double gamma, double tau) {
    const double w_begin = w.front();
    if (tau <= w_begin) return 0.0;
    const double hi = std::min(tau, w.back());
    std::vector<double> pts;
    pts.reserve(w.size() + 64);
    pts.push_back(w_begin);
    for (double x : w)
        if (x > w_begin && x < hi) pts.push_back(x);
    pts.push_back(hi);
    if (!near_integer(2.0 * alpha - 1.0) || gamma != 0.0) {
        double last_below = w_begin;
        for (double x : w)
            if (x < hi) last_below = std::max(last_below, x);
        add_dyadic(pts, std::max(last_below, w_begin), hi);
    }
    if (gamma != 0.0 && w_begin == 0.0) {
        double first_above = hi;
        for (double x : w)
            if (x > 0.0) {
                first_above = std::min(first_above, x);
                break;
            }
        add_dyadic(pts, std::min(first_above, hi), 0.0);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double a = pts[i], b = pts[i + 1];
        if (!(b > a)) continue;
        const Segment s = segment_at(w, f, 0.5 * (a + b));
        acc += piece_integral_plus(a, b, tau, alpha, gamma, s.c0, s.c1);
    }
    return acc;
}

[[noreturn]] void throw_divergent_power_tail(double needed, double have) {
    throw std::domain_error(
        "right-sided integral diverges: the finiteness condition "
        "int_a^inf |f(r)| r^(2 alpha - 1) dr < inf fails (power tail exponent " +
        std::to_string(have) + " is too large; needs < " + std::to_string(needed) + ")");
}

// Tail contribution of the Erdelyi-Kober minus integral in w coordinates,
// with extra weight w^gamma and tau = t^2 <= w_max.
double ek_tail_minus(const FittedTail& tail, double w_max, double alpha, double gamma,
                     double tau) {
    if (tail.kind == TailKind::Zero || tail.amplitude == 0.0) return 0.0;
    if (tail.kind == TailKind::PowerFit) {
        // f ~ A r^e = A w^{e/2}; combined exponent c = e/2 + gamma.
        const double c = 0.5 * tail.exponent + gamma;
        if (alpha + c >= 0.0)
            throw_divergent_power_tail(-2.0 * alpha - 2.0 * gamma, tail.exponent);
        if (tau <= 0.0)
            return tail.amplitude * std::pow(w_max, alpha + c) / (-(alpha + c));
        const double u0 = tau / w_max;
        return tail.amplitude * std::pow(tau, alpha + c) *
               incomplete_beta(-(alpha + c), alpha, u0);
    }
    // Gaussian A exp(-b w) with weight w^gamma; integrate numerically on the
    // decay length (exact to roundoff because of the cutoff at exp(-40)).
    const double b = tail.gauss_b;
    const double x_end = w_max + 40.0 / b;
    const double v1 = std::sqrt(w_max - tau);
    const double v2 = std::sqrt(x_end - tau);
    const QuadratureRule& gl = gauss_legendre(64);
    const double mid = 0.5 * (v1 + v2), half = 0.5 * (v2 - v1);
    double acc = 0.0;
    for (std::size_t q = 0; q < gl.size(); ++q) {
        const double v = mid + half * gl.nodes[q];
        const double w = tau + v * v;
        const double kern = 2.0 * std::pow(v, 2.0 * alpha - 1.0);
        const double wt = (gamma == 0.0) ? 1.0 : std::pow(w, gamma);
        acc += gl.weights[q] * kern * wt * tail.amplitude * std::exp(-b * w);
    }
    return half * acc;
}

// Tail of the Riemann-Liouville minus integral in r coordinates.
double rl_tail_minus(const FittedTail& tail, double r_maxv, double alpha, double t) {
    if (tail.kind == TailKind::Zero || tail.amplitude == 0.0) return 0.0;
    if (tail.kind == TailKind::PowerFit) {
        const double e = tail.exponent;
        if (alpha + e >= 0.0) throw_divergent_power_tail(-alpha, e);
        if (t <= 0.0) return tail.amplitude * std::pow(r_maxv, alpha + e) / (-(alpha + e));
        return tail.amplitude * std::pow(t, alpha + e) *
               incomplete_beta(-(alpha + e), alpha, t / r_maxv);
    }
    const double b = tail.gauss_b;
    const double r_end = r_maxv + std::sqrt(40.0 / b) + 40.0 / (b * std::max(r_maxv, 1e-6));
    const double v1 = std::sqrt(r_maxv - t);
    const double v2 = std::sqrt(r_end - t);
    const QuadratureRule& gl = gauss_legendre(64);
    const double mid = 0.5 * (v1 + v2), half = 0.5 * (v2 - v1);
    double acc = 0.0;
    for (std::size_t q = 0; q < gl.size(); ++q) {
        const double v = mid + half * gl.nodes[q];
        const double r = t + v * v;
        const double kern = 2.0 * std::pow(v, 2.0 * alpha - 1.0);
        acc += gl.weights[q] * kern * tail.amplitude * std::exp(-b * r * r);
    }
    return half * acc;
}

// Repairs a grid value destroyed by a singular weight at the first node.
void repair_first_node(RadialGridFn& g) {
    if (g.size() < 4) return;
    if (std::isfinite(g.values[0])) return;
    extrapolate_first_node(g);
}

} // namespace

void extrapolate_first_node(RadialGridFn& g) {
    if (g.size() < 4) return;
    const double t = g.nodes[0];
    const double x1 = g.nodes[1], x2 = g.nodes[2], x3 = g.nodes[3];
    const double y1 = g.values[1], y2 = g.values[2], y3 = g.values[3];
    const double l1 = (t - x2) * (t - x3) / ((x1 - x2) * (x1 - x3));
    const double l2 = (t - x1) * (t - x3) / ((x2 - x1) * (x2 - x3));
    const double l3 = (t - x1) * (t - x2) / ((x3 - x1) * (x3 - x2));
    g.values[0] = l1 * y1 + l2 * y2 + l3 * y3;
}

// ---------------------------------------------------------------------------

RadialGridFn::RadialGridFn(std::vector<double> nodes_, std::vector<double> values_,
                           TailModel tail_)
    : nodes(std::move(nodes_)), values(std::move(values_)), tail(tail_) {
    validate();
}

void RadialGridFn::validate() const {
    if (nodes.size() != values.size())
        throw std::invalid_argument("RadialGridFn: nodes/values size mismatch");
    if (nodes.size() < 4) throw std::invalid_argument("RadialGridFn: need at least 4 nodes");
    if (nodes.front() < 0.0)
        throw std::invalid_argument("RadialGridFn: nodes must be non-negative");
    for (std::size_t i = 1; i < nodes.size(); ++i)
        if (!(nodes[i] > nodes[i - 1]))
            throw std::invalid_argument("RadialGridFn: nodes must be strictly increasing");
}

double RadialGridFn::interpolate(double t) const {
    CubicSpline s(nodes, values);
    return s(t);
}

RadialGridFn RadialGridFn::times_power(double p) const {
    RadialGridFn out = *this;
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double t = out.nodes[i];
        if (!std::isfinite(out.values[i])) continue; // keep NaN markers
        if (t == 0.0) {
            if (p > 0.0)
                out.values[i] = 0.0;
            else if (p < 0.0)
                out.values[i] = kNaN;
        } else {
            out.values[i] *= std::pow(t, p);
        }
    }
    if (out.tail.kind == TailKind::PowerFit) out.tail.exponent += p;
    return out;
}

std::vector<double> RadialGridFn::uniform_nodes(double r_maximum, int n) {
    std::vector<double> nodes(n + 1);
    for (int i = 0; i <= n; ++i) nodes[i] = r_maximum * i / n;
    return nodes;
}

std::vector<double> RadialGridFn::cheb_nodes_clustered_right(double r_maximum, int n) {
    std::vector<double> nodes(n + 1);
    for (int i = 0; i <= n; ++i) nodes[i] = r_maximum * std::sin(0.5 * M_PI * i / n);
    return nodes;
}

RadialGridFn RadialGridFn::sample(const std::function<double(double)>& f,
                                  std::vector<double> nodes_, TailModel tail_) {
    std::vector<double> vals(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) vals[i] = f(nodes_[i]);
    return RadialGridFn(std::move(nodes_), std::move(vals), tail_);
}

// ---------------------------------------------------------------------------

double ek_integral_at(const RadialGridFn& f, double alpha, FracSide side,
                      double weight_power, double t) {
    if (alpha <= 0.0) throw std::invalid_argument("ek_integral: alpha must be positive");
    const double gamma = 0.5 * weight_power;
    std::vector<double> w(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) w[i] = f.nodes[i] * f.nodes[i];
    const double tau = t * t;
    const double inv_gamma_a = 1.0 / std::tgamma(alpha);
    if (side == FracSide::Minus) {
        if (tau <= 0.0 && gamma < 0.0 && alpha + gamma <= 0.0) return kNaN;
        const FittedTail tail = fit_tail(f);
        const double grid = grid_part_minus(w, f.values, alpha, gamma, tau);
        const double tl = ek_tail_minus(tail, w.back(), alpha, gamma, tau);
        return inv_gamma_a * (grid + tl);
    }
    if (f.nodes.front() != 0.0)
        throw std::invalid_argument("left-sided integral requires a grid starting at 0");
    return inv_gamma_a * grid_part_plus(w, f.values, alpha, gamma, tau);
}

RadialGridFn ek_integral(const RadialGridFn& f, double alpha, FracSide side,
                         double weight_power) {
    RadialGridFn out = f;
    const double gamma = 0.5 * weight_power;
    std::vector<double> w(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) w[i] = f.nodes[i] * f.nodes[i];
    const double inv_gamma_a = 1.0 / std::tgamma(alpha);

    if (side == FracSide::Minus) {
        const FittedTail tail = fit_tail(f);
        for (std::size_t j = 0; j < f.size(); ++j) {
            const double tau = w[j];
            if (tau <= 0.0 && gamma < 0.0 && alpha + gamma <= 0.0) {
                out.values[j] = kNaN; // divergent at t = 0; repaired downstream
                continue;
            }
            const double grid = grid_part_minus(w, f.values, alpha, gamma, tau);
            const double tl = ek_tail_minus(tail, w.back(), alpha, gamma, tau);
            out.values[j] = inv_gamma_a * (grid + tl);
        }
        if (out.tail.kind == TailKind::PowerFit)
            out.tail.exponent += 2.0 * alpha + weight_power;
    } else {
        if (f.nodes.front() != 0.0)
            throw std::invalid_argument("left-sided integral requires a grid starting at 0");
        for (std::size_t j = 0; j < f.size(); ++j)
            out.values[j] = inv_gamma_a * grid_part_plus(w, f.values, alpha, gamma, w[j]);
        if (out.tail.kind == TailKind::PowerFit)
            out.tail.exponent += 2.0 * alpha + weight_power;
    }
    return out;
}

double rl_integral_at(const RadialGridFn& f, double alpha, FracSide side, double t) {
    if (alpha <= 0.0) throw std::invalid_argument("rl_integral: alpha must be positive");
    const double inv_gamma_a = 1.0 / std::tgamma(alpha);
    if (side == FracSide::Minus) {
        const FittedTail tail = fit_tail(f);
        return inv_gamma_a * (grid_part_minus(f.nodes, f.values, alpha, 0.0, t) +
                              rl_tail_minus(tail, f.r_max(), alpha, t));
    }
    if (f.nodes.front() != 0.0)
        throw std::invalid_argument("left-sided integral requires a grid starting at 0");
    return inv_gamma_a * grid_part_plus(f.nodes, f.values, alpha, 0.0, t);
}

RadialGridFn rl_integral(const RadialGridFn& f, double alpha, FracSide side) {
    RadialGridFn out = f;
    for (std::size_t j = 0; j < f.size(); ++j)
        out.values[j] = rl_integral_at(f, alpha, side, f.nodes[j]);
    if (out.tail.kind == TailKind::PowerFit) out.tail.exponent += alpha;
    return out;
}

RadialGridFn frac_integral(const RadialGridFn& f, const FracOrder& o) {
    f.validate();
    for (double v : f.values)
        if (!std::isfinite(v))
            throw std::invalid_argument("frac_integral: values must be finite");
    if (o.kind == FracKind::ErdelyiKober) return ek_integral(f, o.alpha, o.side, 0.0);
    return rl_integral(f, o.alpha, o.side);
}

RadialGridFn grid_derivative(const RadialGridFn& f, int times, int sign) {
    RadialGridFn out = f;
    for (int it = 0; it < times; ++it) {
        CubicSpline s(out.nodes, out.values);
        for (std::size_t i = 0; i < out.size(); ++i)
            out.values[i] = sign * s.deriv(out.nodes[i]);
    }
    if (out.tail.kind == TailKind::PowerFit) out.tail.exponent -= times;
    return out;
}

RadialGridFn half_derivative_operator(const RadialGridFn& f, int times, int sign) {
    RadialGridFn out = f;
    for (int it = 0; it < times; ++it) {
        CubicSpline s(out.nodes, out.values);
        for (std::size_t i = 0; i < out.size(); ++i) {
            const double t = out.nodes[i];
            // D = (1/2t) d/dt; at t = 0 the one-sided limit is f''(0)/2.
            out.values[i] = (t == 0.0) ? sign * 0.5 * s.deriv2(0.0)
                                       : sign * s.deriv(t) / (2.0 * t);
        }
    }
    if (out.tail.kind == TailKind::PowerFit) out.tail.exponent -= 2 * times;
    return out;
}

namespace {

// Riemann-Liouville derivative of (possibly fractional) order a > 0 acting
// from the given side: (+-d/dt)^(m+1) I^{1-a0}_{+-}.
RadialGridFn rl_derivative(const RadialGridFn& phi, double a, FracSide side) {
    const int sign = (side == FracSide::Plus) ? 1 : -1;
    if (near_integer(a)) return grid_derivative(phi, static_cast<int>(std::llround(a)), sign);
    const int m = static_cast<int>(std::floor(a));
    const double a0 = a - m;
    RadialGridFn smoothed = rl_integral(phi, 1.0 - a0, side);
    return grid_derivative(smoothed, m + 1, sign);
}

} // namespace

RadialGridFn frac_derivative(const RadialGridFn& phi, const FracOrder& o,
                             DerivativeForm form) {
    const double a = o.alpha;
    if (a <= 0.0) throw std::invalid_argument("frac_derivative: alpha must be positive");
    const bool integer_order = near_integer(a);
    const int m_int = integer_order ? static_cast<int>(std::llround(a))
                                    : static_cast<int>(std::floor(a));
    const double a0 = integer_order ? 0.0 : a - m_int;

    if (o.kind == FracKind::RiemannLiouville) {
        return rl_derivative(phi, a, o.side);
    }

    // Erdelyi-Kober.
    if (o.side == FracSide::Plus) {
        if (integer_order) return half_derivative_operator(phi, m_int, +1);
        RadialGridFn smoothed = ek_integral(phi, 1.0 - a0, FracSide::Plus, 0.0);
        return half_derivative_operator(smoothed, m_int + 1, +1);
    }

    // Minus side: form dispatch.
    DerivativeForm chosen = form;
    if (chosen == DerivativeForm::Auto)
        chosen = integer_order ? DerivativeForm::Integer : DerivativeForm::Alternative;

    switch (chosen) {
    case DerivativeForm::Integer: {
        if (!integer_order)
            throw std::invalid_argument("integer derivative form requires integer alpha");
        return half_derivative_operator(phi, m_int, -1);
    }
    case DerivativeForm::Alternative: {
        // 2^{-2a} D^{2a}_- [ t I^a_{-,2} t^{-2a-1} phi ]
        RadialGridFn inner = ek_integral(phi, a, FracSide::Minus, -2.0 * a - 1.0);
        inner = inner.times_power(1.0);
        repair_first_node(inner);
        RadialGridFn outer = rl_derivative(inner, 2.0 * a, FracSide::Minus);
        const double scale = std::pow(2.0, -2.0 * a);
        for (auto& v : outer.values) v *= scale;
        return outer;
    }
    case DerivativeForm::Weighted: {
        // t^{2(1-a+m)} (-D)^{m+1} t^{2a} psi,  psi = I^{1-a0}_{-,2} t^{-2m-2} phi
        if (integer_order)
            throw std::invalid_argument("weighted derivative form requires non-integer alpha");
        RadialGridFn psi =
            ek_integral(phi, 1.0 - a0, FracSide::Minus, -2.0 * (m_int + 1));
        psi = psi.times_power(2.0 * a);
        repair_first_node(psi);
        RadialGridFn deriv = half_derivative_operator(psi, m_int + 1, -1);
        RadialGridFn out = deriv.times_power(2.0 * (1.0 - a0));
        repair_first_node(out);
        return out;
    }
    case DerivativeForm::Simplified: {
        // (-D)^{m+1} I^{1-a0}_{-,2} phi, valid under the stronger decay
        // int_a^inf |f(t)| t^(2m+1) dt < inf.
        if (phi.tail.kind == TailKind::PowerFit &&
            phi.tail.exponent >= 2.0 * a0 - 2.0)
            throw std::domain_error(
                "simplified derivative form needs int_a^inf |f(t)| t^(2m+1) dt < inf; "
                "declared tail decay is insufficient");
        if (integer_order) return half_derivative_operator(phi, m_int, -1);
        RadialGridFn smoothed = ek_integral(phi, 1.0 - a0, FracSide::Minus, 0.0);
        return half_derivative_operator(smoothed, m_int + 1, -1);
    }
    case DerivativeForm::Auto:
        break;
    }
    throw std::logic_error("frac_derivative: unreachable form");
}

} // namespace agr
