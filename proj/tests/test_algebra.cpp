#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "jres/algebra.hpp"
#include "jres/error.hpp"

using namespace jres;

namespace {

bool near_poly(const Poly& a, const Poly& b, double tol) { return coeff_distance(a, b) <= tol; }

Poly real_poly(std::vector<double> c) { return Poly::from_real(c); }

int total_multiplicity(const RootList& r) {
    int m = 0;
    for (auto& x : r) m += x.multiplicity;
    return m;
}

}  // namespace

TEST_CASE("evaluation and arithmetic") {
    CHECK(real_poly({1, 0, 1})(cplx(0.0)) == cplx(1.0));
    CHECK(near_poly(real_poly({1, 1}) * real_poly({-1, 1}), real_poly({-1, 0, 1}), 1e-15));
    CHECK(real_poly({0, 2})(1.5) == doctest::Approx(3.0));
    Poly p = real_poly({1, -2, 3});
    CHECK(near_poly(p - p, Poly(), 0.0));
    CHECK((p - p).is_zero());
    CHECK(p.derivative()(2.0) == doctest::Approx(10.0));
}

TEST_CASE("division with remainder") {
    Poly a = real_poly({-1, 0, 0, 1});
    auto [q, r] = divmod(a, real_poly({-1, 1}));
    CHECK(near_poly(q, real_poly({1, 1, 1}), 1e-14));
    CHECK(r.is_zero());
}

TEST_CASE("roots with multiplicity") {
    auto r = poly_roots(real_poly({-1, 0, 1}));
    REQUIRE(r.size() == 2);
    std::vector<double> x{r[0].location.real(), r[1].location.real()};
    std::sort(x.begin(), x.end());
    CHECK(x[0] == doctest::Approx(-1.0));
    CHECK(x[1] == doctest::Approx(1.0));

    auto d = poly_roots(real_poly({4, -4, 1}));
    REQUIRE(d.size() == 1);
    CHECK(d[0].multiplicity == 2);
    CHECK(std::abs(d[0].location - 2.0) < 1e-7);

    CHECK(poly_roots(Poly::constant(3.0)).empty());
    CHECK_THROWS_AS(poly_roots(Poly()), Error);
    try {
        poly_roots(Poly());
    } catch (const Error& e) {
        CHECK(e.code() == Errc::DegreeZero);
    }
}

TEST_CASE("discriminant roots of a period-two background") {
    // Δ = (λ² - 17/4)/2 from the recurrence with a0 = (1/2, 2), b0 = 0.
    Poly D = real_poly({-17.0 / 8.0, 0, 0.5});
    auto r = poly_roots(D * D - Poly::constant(1.0));
    REQUIRE(r.size() == 4);
    std::vector<double> x;
    for (auto& z : r) {
        CHECK(z.multiplicity == 1);
        x.push_back(z.location.real());
    }
    std::sort(x.begin(), x.end());
    std::vector<double> want{-2.5, -1.5, 1.5, 2.5};
    for (int k = 0; k < 4; ++k) CHECK(std::abs(x[k] - want[k]) < 1e-12);
}

TEST_CASE("interpolation") {
    Poly p = poly_interpolate({0.0, 1.0, 2.0}, {1.0, 2.0, 5.0});
    CHECK(near_poly(p, real_poly({1, 0, 1}), 1e-14));
    CHECK(near_poly(poly_interpolate({0.0}, {7.0}), Poly::constant(7.0), 0.0));

    auto nodes = chebyshev_nodes(6, -3.0, 3.0);
    std::vector<cplx> x, y;
    for (double t : nodes) {
        x.push_back(t);
        y.push_back(std::pow(t, 5));
    }
    Poly q = poly_interpolate(x, y);
    for (int k = 0; k <= 5; ++k) CHECK(std::abs(q[k] - (k == 5 ? 1.0 : 0.0)) < 1e-10);

    CHECK_THROWS_AS(poly_interpolate({1.0, 1.0}, {0.0, 1.0}), Error);
}

TEST_CASE("square roots") {
    Poly a = real_poly({1, 0, 1});
    CHECK(near_poly(poly_sqrt(a * a, +1), a, 1e-12));
    Poly b = real_poly({-1, 1}) * real_poly({2, 1});
    CHECK(near_poly(poly_sqrt(b * b, -1), -b, 1e-12));
    try {
        poly_sqrt(real_poly({-1, 0, 1}), +1);
        FAIL("expected NotAPerfectSquare");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NotAPerfectSquare);
    }
}

TEST_CASE("property: roots reassemble random real polynomials") {
    std::mt19937_64 rng(20261016);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::uniform_int_distribution<int> deg(1, 12);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> c(deg(rng) + 1);
        for (double& x : c) x = U(rng);
        if (std::abs(c.back()) < 0.1) c.back() = 0.5;
        Poly p = real_poly(c);
        RootList r = poly_roots(p);
        CHECK(total_multiplicity(r) == p.degree());
        for (std::size_t i = 0; i < r.size(); ++i)
            for (std::size_t j = i + 1; j < r.size(); ++j)
                CHECK(std::abs(r[i].location - r[j].location) >
                      kDefaultClusterRadius * std::max(1.0, std::abs(r[i].location)));
        CHECK(coeff_distance(poly_from_roots(r, p.lead()), p) < 1e-8);
    }
}

TEST_CASE("property: square root of a square") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> c(2 + trial % 6);
        for (double& x : c) x = U(rng);
        if (std::abs(c.back()) < 0.2) c.back() = 1.0;
        Poly r = real_poly(c);
        int s = c.back() > 0 ? 1 : -1;
        CHECK(coeff_distance(poly_sqrt(r * r, s), r) < 1e-8);
        CHECK(coeff_distance(poly_sqrt(r * r, -s), -r) < 1e-8);
    }
}

TEST_CASE("property: interpolation is the identity on polynomials") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        int d = 1 + trial % 10;
        std::vector<double> c(d + 1);
        for (double& x : c) x = U(rng);
        Poly p = real_poly(c);
        std::vector<cplx> x, y;
        for (double t : chebyshev_nodes(d + 1, -2.0, 2.0)) {
            x.push_back(t);
            y.push_back(p(cplx(t)));
        }
        CHECK(coeff_distance(poly_interpolate(x, y), p) < 1e-10);
    }
}
