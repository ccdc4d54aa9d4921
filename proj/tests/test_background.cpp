#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "jres/background.hpp"
#include "jres/error.hpp"
#include "oracle.hpp"

using namespace jres;

namespace {

PeriodicBackground bg2() { return PeriodicBackground({0.5, 2.0}, {0.0, 0.0}); }

struct Random {
    std::vector<double> a0, b0;
};

Random random_background(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(0.0, 1.0);
    int q = 2 + int(3 * U(rng)) % 3;
    Random r;
    double prod = 1.0;
    for (int k = 0; k < q; ++k) {
        r.a0.push_back(0.6 + U(rng));
        r.b0.push_back(U(rng) - 0.5);
        prod *= r.a0.back();
    }
    for (double& a : r.a0) a *= std::pow(prod, -1.0 / q);
    return r;
}

}  // namespace

TEST_CASE("period-two background exact values") {
    auto bg = bg2();
    auto oracle_bg = oracle::periodic({0.5, 2.0}, {0.0, 0.0});
    // Δ from the scalar transfer matrix agrees with (λ² - 17/4)/2.
    for (double x : {-3.0, -1.0, 0.0, 0.7, 2.0}) {
        CHECK(std::abs(oracle::discriminant(oracle_bg, 2, x) - (x * x - 4.25) / 2) < 1e-13);
        CHECK(std::abs(bg.Delta()(x) - (x * x - 4.25) / 2) < 1e-13);
        CHECK(std::abs(bg.phi_half()(x) - (x * x + 3.75) / 2) < 1e-13);
    }
    const auto& b = bg.bands();
    std::vector<double> want{-2.5, -1.5, 1.5, 2.5};
    for (int k = 0; k < 4; ++k) CHECK(std::abs(b.edges[k] - want[k]) < 1e-10);
    REQUIRE(b.mu.size() == 1);
    CHECK(std::abs(b.mu[0]) < 1e-10);
    REQUIRE(b.alpha.size() == 1);
    CHECK(std::abs(b.alpha[0]) < 1e-10);
    // h₁ = arccosh|Δ(α₁)| with Δ(α₁) taken from the scalar oracle.
    double D_alpha = oracle::discriminant(oracle_bg, 2, b.alpha[0]).real();
    CHECK(std::abs(b.h[0] - std::acosh(std::abs(D_alpha))) < 1e-10);
    CHECK(std::abs(b.h[0] - std::acosh(17.0 / 8.0)) < 1e-10);
    CHECK_FALSE(b.closed[0]);
}

TEST_CASE("free background has a closed gap") {
    PeriodicBackground bg({1.0, 1.0}, {0.0, 0.0});
    for (double x : {-1.0, 0.5, 3.0}) CHECK(std::abs(bg.Delta()(x) - (x * x - 2) / 2) < 1e-13);
    const auto& b = bg.bands();
    std::vector<double> want{-2.0, 0.0, 0.0, 2.0};
    for (int k = 0; k < 4; ++k) CHECK(std::abs(b.edges[k] - want[k]) < 1e-7);
    CHECK(b.closed[0]);
}

TEST_CASE("normalization is enforced") {
    try {
        PeriodicBackground({0.5, 1.0}, {0.0, 0.0});
        FAIL("expected NormalizationViolated");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NormalizationViolated);
        CHECK(int(e.category()) == 3);
    }
    CHECK_THROWS_AS(PeriodicBackground({2.0, -0.5}, {0.0, 0.0}), Error);
    CHECK_THROWS_AS(PeriodicBackground({1.0}, {0.0}), Error);
}

TEST_CASE("band edge values") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t) {
        auto r = random_background(rng);
        PeriodicBackground bg(r.a0, r.b0, 1e-9);
        const auto& b = bg.bands();
        int q = bg.q();
        CHECK(bg.Delta()(b.edges.back()) == doctest::Approx(1.0).epsilon(1e-9));
        for (int j = 1; j <= q; ++j) {
            double s = (q - j) % 2 == 0 ? 1.0 : -1.0;
            CHECK(bg.Delta()(b.band_hi(j)) == doctest::Approx(s).epsilon(1e-8));
        }
    }
}

TEST_CASE("omega, Weyl functions and Bloch solutions at a band point") {
    auto bg = bg2();
    SurfacePoint p1{2.0, 1, +1}, p2{2.0, 2, +1};
    CHECK(std::abs(bg.omega(p1) - (-std::sqrt(63.0) / 8)) < 1e-14);
    CHECK(std::abs(bg.omega(p2) - std::sqrt(63.0) / 8) < 1e-14);
    CHECK(std::abs(bg.omega(SurfacePoint{2.5, 1, +1})) < 1e-12);
    CHECK(std::abs(bg.omega(SurfacePoint{2.5, 2, +1})) < 1e-12);

    cplx mp = bg.weyl_m(p1, +1), mm = bg.weyl_m(p1, -1);
    CHECK(std::abs(mp - cplx(31.0, -std::sqrt(63.0)) / 32.0) < 1e-14);
    CHECK(std::abs(mm - cplx(31.0, std::sqrt(63.0)) / 32.0) < 1e-14);
    CHECK(std::abs(std::norm(mp) - 1.0) < 1e-14);

    cplx psi2 = bg.bloch_psi(2, p1, +1);
    CHECK(std::abs(psi2 - cplx(-0.125, -std::sqrt(63.0) / 8)) < 1e-12);
    CHECK(std::abs(std::abs(psi2) - 1.0) < 1e-12);
    CHECK(bg.bloch_psi(0, p1, +1) == cplx(1.0));
    CHECK(std::abs(bg.bloch_psi(1, p1, -1) - mm) < 1e-15);
}

TEST_CASE("pole of a Weyl function at a Dirichlet point") {
    auto bg = bg2();
    SurfacePoint mu{0.0, 1, +1};
    int poles = 0;
    for (int s : {+1, -1}) {
        try {
            bg.weyl_m(mu, s);
        } catch (const Error& e) {
            CHECK(e.code() == Errc::PoleAtDirichletPoint);
            ++poles;
        }
    }
    CHECK(poles == 1);
}

TEST_CASE("quasimomentum at the edges") {
    auto bg = bg2();
    auto e = bg.quasimomentum(SurfacePoint{2.5, 1, +1});
    CHECK(std::abs(e.kappa) < 1e-7);
    CHECK(std::abs(e.z - 1.0) < 1e-7);
    auto l = bg.quasimomentum(SurfacePoint{-2.5, 1, +1});
    CHECK(std::abs(l.kappa - (-M_PI)) < 1e-7);
    CHECK(std::abs(l.z + 1.0) < 1e-7);
    auto m = bg.quasimomentum(SurfacePoint{1.5, 1, +1});
    CHECK(std::abs(m.kappa - (-M_PI / 2)) < 1e-7);
    CHECK(std::abs(m.z - cplx(0.0, -1.0)) < 1e-7);

    auto back = bg.lambda_of_z(1.0);
    CHECK(std::abs(back.lambda - 2.5) < 1e-7);
    for (cplx z : {cplx(0.5), cplx(2.0)}) {
        auto pt = bg.lambda_of_z(z);
        CHECK(std::abs(bg.quasimomentum(pt).z - z) < 1e-9);
        CHECK(pt.sheet == (std::abs(z) < 1 ? 1 : 2));
    }
    CHECK_THROWS_AS(bg.lambda_of_z(cplx(0.0, 1.0)), Error);
}

TEST_CASE("polynomial identities of the fundamental system") {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 20; ++t) {
        auto r = random_background(rng);
        PeriodicBackground bg(r.a0, r.b0, 1e-9);
        int q = bg.q();
        Poly lhs = bg.phi_half() * bg.phi_half() + Poly::constant(1.0) - bg.Delta() * bg.Delta();
        Poly rhs = -(bg.phi_q() * bg.theta_q1());
        CHECK(coeff_distance(lhs, rhs) < 1e-10);
        for (int n = 0; n <= 2 * q; ++n) {
            Poly W = (bg.theta(n) * bg.phi(n + 1) - bg.theta(n + 1) * bg.phi(n)) * bg.a(n);
            CHECK(coeff_distance(W, Poly::constant(bg.a(0))) < 1e-12);
        }
    }
}

TEST_CASE("property: cos q kappa equals the discriminant") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    int checked = 0;
    double worst = 0.0;
    for (int t = 0; t < 10; ++t) {
        auto r = random_background(rng);
        PeriodicBackground bg(r.a0, r.b0, 1e-9);
        auto ob = oracle::periodic(r.a0, r.b0);
        int q = bg.q();
        for (int k = 0; k < 20; ++k) {
            cplx lam(3.0 * U(rng), 1.5 * U(rng));
            SurfacePoint pt{lam, k % 2 ? 2 : 1, +1};
            cplx kap = bg.quasimomentum(pt).kappa;
            worst = std::max(worst, std::abs(std::cos(double(q) * kap) - oracle::discriminant(ob, q, lam)));
            ++checked;
        }
    }
    CHECK(checked == 200);
    CHECK(worst < 1e-10);
}

TEST_CASE("property: z map round trip") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    double worst = 0.0;
    int checked = 0;
    for (int t = 0; t < 10; ++t) {
        auto r = random_background(rng);
        PeriodicBackground bg(r.a0, r.b0, 1e-9);
        for (int k = 0; k < 10; ++k) {
            cplx z = std::polar(0.2 + 2.5 * U(rng), 2 * M_PI * U(rng));
            SurfacePoint pt;
            try {
                pt = bg.lambda_of_z(z);
            } catch (const Error& e) {
                CHECK(e.code() == Errc::OnSlit);
                continue;
            }
            worst = std::max(worst, std::abs(bg.quasimomentum(pt).z - z));
            // Back through λ: the same surface point comes out.
            auto again = bg.lambda_of_z(bg.quasimomentum(pt).z);
            CHECK(again.sheet == pt.sheet);
            CHECK(std::abs(again.lambda - pt.lambda) < 1e-8 * std::max(1.0, std::abs(pt.lambda)));
            ++checked;
        }
    }
    CHECK(checked > 80);
    CHECK(worst < 1e-9);
}

TEST_CASE("property: Bloch solutions solve the background recurrence") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int t = 0; t < 10; ++t) {
        auto r = random_background(rng);
        PeriodicBackground bg(r.a0, r.b0, 1e-9);
        auto ob = oracle::periodic(r.a0, r.b0);
        int q = bg.q();
        for (int k = 0; k < 5; ++k) {
            SurfacePoint pt{cplx(2.5 * U(rng), 0.2 + std::abs(U(rng))), 1 + k % 2, +1};
            cplx Om = bg.omega(pt);
            CHECK(std::abs(Om * Om - (1.0 - std::pow(bg.Delta()(pt.lambda), 2))) < 1e-10 * (1 + std::norm(Om)));
            for (int s : {+1, -1}) {
                for (int n = -2 * q; n <= 2 * q; ++n) {
                    cplx want = oracle::bloch(ob, q, pt.lambda, Om, s, n);
                    CHECK(std::abs(bg.bloch_psi(n, pt, s) - want) < 1e-9 * std::max(1.0, std::abs(want)));
                }
                // Floquet multiplier Δ ± iΩ is z^{±q} on sheet 1.
                cplx z = bg.quasimomentum(pt).z;
                cplx mult = bg.bloch_psi(q, pt, s) / bg.bloch_psi(0, pt, s);
                CHECK(std::abs(mult - std::pow(z, double(s * q))) < 1e-8 * std::max(1.0, std::abs(mult)));
            }
        }
    }
}
