#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <functional>
#include <vector>

#include "agr/fracint.hpp"

using namespace agr;

namespace {

// sup-distance over the interior 80% of the grid
double interior_sup_error(const RadialGridFn& got,
                          const std::function<double(double)>& want) {
    const double lo = 0.1 * got.r_max(), hi = 0.9 * got.r_max();
    double err = 0.0;
    for (std::size_t i = 0; i < got.size(); ++i) {
        const double t = got.nodes[i];
        if (t < lo || t > hi) continue;
        err = std::max(err, std::abs(got.values[i] - want(t)));
    }
    return err;
}

RadialGridFn gaussian_grid(int n, double r_max = 6.0) {
    return RadialGridFn::sample([](double r) { return std::exp(-r * r); },
                                RadialGridFn::uniform_nodes(r_max, n),
                                TailModel::gaussian());
}

} // namespace

TEST_CASE("left EK integral of 1 is t^(2a)/Gamma(a+1)") {
    auto one = RadialGridFn::sample([](double) { return 1.0; },
                                    RadialGridFn::uniform_nodes(4.0, 128));
    for (double a : {0.5, 1.0, 1.5}) {
        auto got = frac_integral(one, {a, FracSide::Plus, FracKind::ErdelyiKober});
        double err = interior_sup_error(
            got, [a](double t) { return std::pow(t, 2.0 * a) / std::tgamma(a + 1.0); });
        CHECK(err < 1e-8);
    }
}

TEST_CASE("right EK integral maps exp(-r^2) to exp(-t^2) for every order") {
    auto f = gaussian_grid(512);
    for (double a : {0.5, 1.0, 1.5}) {
        auto got = frac_integral(f, {a, FracSide::Minus, FracKind::ErdelyiKober});
        double err =
            interior_sup_error(got, [](double t) { return std::exp(-t * t); });
        CHECK(err < 1e-4);
    }
}

TEST_CASE("Riemann-Liouville I^1_+ of 1 is t") {
    auto one = RadialGridFn::sample([](double) { return 1.0; },
                                    RadialGridFn::uniform_nodes(4.0, 64));
    auto got = frac_integral(one, {1.0, FracSide::Plus, FracKind::RiemannLiouville});
    double err = interior_sup_error(got, [](double t) { return t; });
    CHECK(err < 1e-10);
}

TEST_CASE("D = (1/2t) d/dt of t^2 is 1") {
    auto f = RadialGridFn::sample([](double t) { return t * t; },
                                  RadialGridFn::uniform_nodes(4.0, 64));
    auto got = half_derivative_operator(f, 1, +1);
    double err = interior_sup_error(got, [](double) { return 1.0; });
    CHECK(err < 1e-9);
}

TEST_CASE("EK half derivative inverts the Gaussian example") {
    auto phi = RadialGridFn::sample([](double t) { return std::exp(-t * t); },
                                    RadialGridFn::uniform_nodes(6.0, 512),
                                    TailModel::gaussian());
    auto got = frac_derivative(phi, {0.5, FracSide::Minus, FracKind::ErdelyiKober});
    double err = interior_sup_error(got, [](double r) { return std::exp(-r * r); });
    CHECK(err < 1e-3);
}

TEST_CASE("integer-order right EK derivative on a restricted grid") {
    // (-D) t^-2 = t^-4, checked on [1, 10] with a declared power tail.
    auto phi = RadialGridFn::sample([](double t) { return 1.0 / (t * t); },
                                    [] {
                                        std::vector<double> n(129);
                                        for (int i = 0; i <= 128; ++i)
                                            n[i] = 1.0 + 9.0 * i / 128.0;
                                        return n;
                                    }(),
                                    TailModel::power(-2.0));
    auto got = frac_derivative(phi, {1.0, FracSide::Minus, FracKind::ErdelyiKober});
    double max_rel = 0.0;
    for (std::size_t i = 0; i < got.size(); ++i) {
        const double t = got.nodes[i];
        if (t < 2.0 || t > 9.0) continue;
        const double want = std::pow(t, -4.0);
        max_rel = std::max(max_rel, std::abs(got.values[i] - want) / want);
    }
    CHECK(max_rel < 1e-6);
}

TEST_CASE("left-inverse identity on the smooth test set") {
    struct Case {
        std::function<double(double)> f;
        TailModel tail;
    };
    const std::vector<Case> cases = {
        {[](double r) { return std::exp(-r * r); }, TailModel::gaussian()},
        {[](double r) { return std::pow(1.0 + r * r, -2.0); }, TailModel::power(-4.0)},
        {[](double r) { return r * r * std::exp(-r * r); }, TailModel::gaussian()},
    };
    for (const auto& c : cases) {
        auto f = RadialGridFn::sample(c.f, RadialGridFn::uniform_nodes(6.0, 512), c.tail);
        for (double a : {0.5, 1.0, 1.5}) {
            for (FracSide side : {FracSide::Plus, FracSide::Minus}) {
                const FracOrder o{a, side, FracKind::ErdelyiKober};
                auto phi = frac_integral(f, o);
                auto back = frac_derivative(phi, o);
                const double err = interior_sup_error(back, c.f);
                INFO("alpha=", a, " side=", side == FracSide::Plus ? "+" : "-");
                CHECK(err <= 1e-3);
            }
        }
    }
}

TEST_CASE("order additivity: I^1/2 I^1/2 = I^1 on the Gaussian") {
    auto f = gaussian_grid(512);
    const FracOrder half{0.5, FracSide::Minus, FracKind::ErdelyiKober};
    auto twice = frac_integral(frac_integral(f, half), half);
    auto once = frac_integral(f, {1.0, FracSide::Minus, FracKind::ErdelyiKober});
    double err = 0.0;
    for (std::size_t i = 0; i < twice.size(); ++i) {
        const double t = twice.nodes[i];
        if (t < 0.6 || t > 5.4) continue;
        err = std::max(err, std::abs(twice.values[i] - once.values[i]));
    }
    CHECK(err < 1e-3);
}

TEST_CASE("positivity: integral of a nonnegative function is nonnegative") {
    auto f = RadialGridFn::sample([](double r) { return std::abs(std::sin(3 * r)) + 0.1; },
                                  RadialGridFn::uniform_nodes(5.0, 200));
    for (FracSide side : {FracSide::Plus, FracSide::Minus}) {
        auto got = frac_integral(f, {0.5, side, FracKind::ErdelyiKober});
        for (double v : got.values) CHECK(v >= 0.0);
    }
}

TEST_CASE("grid refinement improves the left-inverse error") {
    const FracOrder o{0.5, FracSide::Minus, FracKind::ErdelyiKober};
    auto err_at = [&](int n) {
        auto f = gaussian_grid(n);
        auto back = frac_derivative(frac_integral(f, o), o);
        return interior_sup_error(back, [](double r) { return std::exp(-r * r); });
    };
    const double coarse = err_at(256), fine = err_at(512);
    CHECK(fine * 2.0 <= coarse + 1e-14);
}

TEST_CASE("all minus-side derivative forms agree on smooth data") {
    auto f = gaussian_grid(512);
    const FracOrder o{0.5, FracSide::Minus, FracKind::ErdelyiKober};
    auto phi = frac_integral(f, o);
    for (auto form : {DerivativeForm::Alternative, DerivativeForm::Weighted,
                      DerivativeForm::Simplified}) {
        auto back = frac_derivative(phi, o, form);
        const double err = interior_sup_error(back, [](double r) { return std::exp(-r * r); });
        INFO("form=", static_cast<int>(form));
        CHECK(err <= 1e-3);
    }
}

TEST_CASE("divergent power tail is rejected with the finiteness condition") {
    auto f = RadialGridFn::sample([](double r) { return 1.0 / (1.0 + r); },
                                  RadialGridFn::uniform_nodes(6.0, 64),
                                  TailModel::power(-1.0));
    CHECK_THROWS_AS(frac_integral(f, {1.0, FracSide::Minus, FracKind::ErdelyiKober}),
                    std::domain_error);
}

TEST_CASE("simplified form guards the stronger decay requirement") {
    auto phi = RadialGridFn::sample([](double r) { return std::pow(1.0 + r * r, -0.5); },
                                    RadialGridFn::uniform_nodes(6.0, 64),
                                    TailModel::power(-1.0));
    CHECK_THROWS_AS(frac_derivative(phi, {0.5, FracSide::Minus, FracKind::ErdelyiKober},
                                    DerivativeForm::Simplified),
                    std::domain_error);
}
