#include "doctest.h"

#include <cmath>

#include "agr/geometry.hpp"
#include "agr/numerics.hpp"
#include "agr/rng.hpp"

using namespace agr;

namespace {
GrassmannPoint coord_span(int n, std::initializer_list<int> axes) {
    Mat frame(n, static_cast<int>(axes.size()));
    frame.setZero();
    int j = 0;
    for (int a : axes) frame(a, j++) = 1.0;
    return GrassmannPoint(frame);
}
Vec unit(int n, int axis) {
    Vec v = Vec::Zero(n);
    v(axis) = 1.0;
    return v;
}
} // namespace

TEST_CASE("projection: coordinate examples") {
    const auto s12 = coord_span(3, {0, 1});
    const auto s1 = coord_span(3, {0});
    CHECK(project(unit(3, 1), s12, true).norm() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK((project(unit(3, 1), s1, true) - unit(3, 1)).norm() < 1e-12);

    Vec v(3);
    v << 1.0 / std::sqrt(2.0), 0.0, 1.0 / std::sqrt(2.0);
    Vec expect(3);
    expect << 1.0 / std::sqrt(2.0), 0.0, 0.0;
    CHECK((project(v, s1) - expect).norm() < 1e-12);
}

TEST_CASE("projection decomposition is exact") {
    RngStream rng(20240601);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 3 + trial % 2;
        const int k = 1 + trial % (n - 1);
        auto s = sample_grassmann(n, k, rng);
        Vec v(n);
        for (int i = 0; i < n; ++i) v(i) = rng.normal();
        const Vec back = project(v, s) + project(v, s, true);
        CHECK((back - v).norm() < 1e-12);
    }
}

TEST_CASE("projection dimension mismatch throws") {
    const auto s1 = coord_span(3, {0});
    CHECK_THROWS(project(unit(4, 1), s1));
}

TEST_CASE("cos2_angle: containment, orthogonality, oblique") {
    const auto eta = coord_span(3, {0, 1});
    CHECK(cos2_angle(eta, coord_span(3, {0})) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cos2_angle(eta, coord_span(3, {2})) == doctest::Approx(0.0).epsilon(1e-12));

    Mat f(3, 1);
    f << 1.0 / std::sqrt(2.0), 0.0, 1.0 / std::sqrt(2.0);
    CHECK(cos2_angle(eta, GrassmannPoint(f)) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("cos2_angle stays in [0,1]") {
    RngStream rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        auto eta = sample_grassmann(4, 2, rng);
        auto xi = sample_grassmann(4, 1, rng);
        const double c = cos2_angle(eta, xi);
        CHECK(c >= -1e-14);
        CHECK(c <= 1.0 + 1e-14);
    }
}

TEST_CASE("Haar samples are orthonormal with unit determinant") {
    RngStream rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        auto rot = sample_rotation(4, rng);
        CHECK((rot.matrix.transpose() * rot.matrix - Mat::Identity(4, 4)).norm() < 1e-12);
        CHECK(rot.matrix.determinant() == doctest::Approx(1.0).epsilon(1e-10));
        auto g = sample_grassmann(3, 2, rng);
        CHECK((g.frame().transpose() * g.frame() - Mat::Identity(2, 2)).norm() < 1e-12);
    }
}

TEST_CASE("sphere moment: E[(sigma.e3)^2] = 1/3") {
    RngStream rng(123456);
    const int n_samples = 1000000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n_samples; ++i) {
        auto line = sample_grassmann(3, 1, rng);
        const double c = line.frame()(2, 0);
        sum += c * c;
        sum2 += c * c * c * c;
    }
    const double mean = sum / n_samples;
    const double var = sum2 / n_samples - mean * mean;
    const double stderr3 = 3.0 * std::sqrt(var / n_samples);
    CHECK(std::abs(mean - 1.0 / 3.0) < stderr3);
}

TEST_CASE("trace identity: E[cos2(eta, xi)] = k'/n on G(3,2)") {
    RngStream rng(77);
    const auto xi = coord_span(3, {0});
    const int n_samples = 200000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n_samples; ++i) {
        const double c = cos2_angle(sample_grassmann(3, 2, rng), xi);
        sum += c;
        sum2 += c * c;
    }
    const double mean = sum / n_samples;
    const double var = sum2 / n_samples - mean * mean;
    CHECK(std::abs(mean - 2.0 / 3.0) < 3.0 * std::sqrt(var / n_samples));
}

TEST_CASE("Haar invariance: rotated cos2 sample matches unrotated (KS)") {
    RngStream rng(2024);
    const auto xi = coord_span(3, {0});
    RngStream fixed_stream = rng.child("fixed");
    auto fixed_rot = sample_rotation(3, fixed_stream);
    const int n_samples = 100000;
    std::vector<double> plain(n_samples), rotated(n_samples);
    RngStream a = rng.child("a"), b = rng.child("b");
    for (int i = 0; i < n_samples; ++i) {
        plain[i] = cos2_angle(sample_grassmann(3, 2, a), xi);
        auto eta = sample_grassmann(3, 2, b);
        GrassmannPoint g_eta(Mat(fixed_rot.matrix * eta.frame()));
        rotated[i] = cos2_angle(g_eta, xi);
    }
    const double d = ks_statistic(plain, rotated);
    CHECK(ks_two_sample_pvalue(d, n_samples, n_samples) > 0.01);
}

TEST_CASE("kelvin: coordinate example in R^3") {
    const AffinePlane tau(coord_span(3, {0}), unit(3, 1));
    const AffinePlane tilde = kelvin(tau);
    CHECK(tilde.subspace().same_subspace(coord_span(3, {2})));
    CHECK((tilde.offset() + unit(3, 1)).norm() < 1e-12);

    const AffinePlane tau2(coord_span(3, {0}), Vec(2.0 * unit(3, 1)));
    const AffinePlane tilde2 = kelvin(tau2);
    CHECK((tilde2.offset() + 0.5 * unit(3, 1)).norm() < 1e-12);
    CHECK(tilde2.distance() == doctest::Approx(0.5));
}

TEST_CASE("kelvin involution and distance reciprocity") {
    RngStream rng(31337);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 3 + trial % 2;
        const int k = 1 + trial % (n - 2 ? n - 2 : 1);
        auto xi = sample_grassmann(n, std::min(k, n - 2), rng);
        Vec u(n);
        for (int i = 0; i < n; ++i) u(i) = rng.normal();
        u = project(u, xi, true);
        if (u.norm() < 1e-3) continue;
        const AffinePlane tau(xi, u);
        const AffinePlane tilde = kelvin(tau);
        CHECK(std::abs(tilde.distance() * tau.distance() - 1.0) < 1e-10);
        const AffinePlane back = kelvin(tilde);
        CHECK(back.subspace().same_subspace(tau.subspace()));
        CHECK((back.offset() - tau.offset()).norm() < 1e-10);
    }
}

TEST_CASE("kelvin rejects planes through the origin") {
    CHECK_THROWS_WITH_AS(kelvin(AffinePlane(coord_span(3, {0}), Vec(Vec::Zero(3)))),
                         "Kelvin map undefined at |u| = 0", std::domain_error);
}

TEST_CASE("surface areas of low-dimensional spheres") {
    CHECK(surface_area(2) == doctest::Approx(4.0 * M_PI).epsilon(1e-14));
    CHECK(surface_area(1) == doctest::Approx(2.0 * M_PI).epsilon(1e-14));
    CHECK(surface_area(0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK_THROWS(surface_area(-1));
}

TEST_CASE("plane memo keys distinguish planes and ignore frame gauge") {
    const AffinePlane a(coord_span(3, {0}), unit(3, 1));
    Mat flipped(3, 1);
    flipped << -1.0, 0.0, 0.0; // same line, opposite gauge
    const AffinePlane b(GrassmannPoint(flipped), unit(3, 1));
    CHECK(plane_key(a) == plane_key(b));
    const AffinePlane c(coord_span(3, {0}), Vec(2.0 * unit(3, 1)));
    CHECK(plane_key(a) != plane_key(c));
}
