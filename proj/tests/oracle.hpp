#pragma once

// Independent reference computations for the tests. Everything here works on
// plain scalar recurrences and dense linear algebra; nothing calls into the
// polynomial machinery of the library.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
constexpr cplx I(0.0, 1.0);

// Coefficients of a Jacobi operator as functions of the site index.
struct Jacobi {
    std::function<double(int)> a, b;
};

inline Jacobi periodic(std::vector<double> a0, std::vector<double> b0) {
    int q = int(a0.size());
    auto idx = [q](int n) { return ((n - 1) % q + q) % q; };
    return {[=](int n) { return a0[idx(n)]; }, [=](int n) { return b0[idx(n)]; }};
}

inline Jacobi perturbed(std::vector<double> a0, std::vector<double> b0, std::vector<double> u,
                        std::vector<double> v) {
    Jacobi bg = periodic(std::move(a0), std::move(b0));
    int p = int(u.size()) - 1;
    return {[=](int n) { return bg.a(n) + (n >= 0 && n <= p ? u[n] : 0.0); },
            [=](int n) { return bg.b(n) + (n >= 0 && n <= p ? v[n] : 0.0); }};
}

// Solution of a_{n-1}y_{n-1} + a_n y_{n+1} + b_n y_n = λ y_n on [lo, hi]
// with y at sites s, s+1 prescribed; index n - lo.
inline std::vector<cplx> solve(const Jacobi& J, cplx lam, int lo, int hi, int s, cplx ys, cplx ys1) {
    std::vector<cplx> y(hi - lo + 1);
    y[s - lo] = ys;
    y[s + 1 - lo] = ys1;
    for (int n = s + 1; n < hi; ++n) y[n + 1 - lo] = ((lam - J.b(n)) * y[n - lo] - J.a(n - 1) * y[n - 1 - lo]) / J.a(n);
    for (int n = s; n > lo; --n) y[n - 1 - lo] = ((lam - J.b(n)) * y[n - lo] - J.a(n) * y[n + 1 - lo]) / J.a(n - 1);
    return y;
}

struct Fundamental {
    cplx theta, phi;
};

// θ_n, φ_n of the periodic operator at λ (θ₀ = φ₁ = 1, θ₁ = φ₀ = 0).
inline Fundamental fundamental(const Jacobi& bg, cplx lam, int n) {
    int lo = std::min(0, n), hi = std::max(1, n);
    auto th = solve(bg, lam, lo, hi, 0, 1.0, 0.0);
    auto ph = solve(bg, lam, lo, hi, 0, 0.0, 1.0);
    return {th[n - lo], ph[n - lo]};
}

// Half trace of the period transfer matrix.
inline cplx discriminant(const Jacobi& bg, int q, cplx lam) {
    return 0.5 * (fundamental(bg, lam, q).theta + fundamental(bg, lam, q + 1).phi);
}

// Weyl function (φ ± iΩ)/φ_q for a given branch value Ω.
inline cplx weyl(const Jacobi& bg, int q, cplx lam, cplx Om, int sign) {
    cplx ph = 0.5 * (fundamental(bg, lam, q + 1).phi - fundamental(bg, lam, q).theta);
    return (ph + double(sign) * I * Om) / fundamental(bg, lam, q).phi;
}

// Bloch solution θ_n + m φ_n by plain recurrence (fine for moderate |n|).
inline cplx bloch(const Jacobi& bg, int q, cplx lam, cplx Om, int sign, int n) {
    Fundamental f = fundamental(bg, lam, n);
    return f.theta + weyl(bg, q, lam, Om, sign) * f.phi;
}

// Jost solutions on [lo, hi]: f⁺ from the Bloch tail at p+1, p+2, f⁻ from −1, 0.
struct JostPair {
    int lo;
    std::vector<cplx> plus, minus;
    cplx fp(int n) const { return plus[n - lo]; }
    cplx fm(int n) const { return minus[n - lo]; }
};

inline JostPair jost(const Jacobi& bg, const Jacobi& H, int q, int p, cplx lam, cplx Om, int lo, int hi) {
    JostPair r{lo, {}, {}};
    r.plus = solve(H, lam, lo, hi, p + 1, bloch(bg, q, lam, Om, +1, p + 1), bloch(bg, q, lam, Om, +1, p + 2));
    r.minus = solve(H, lam, lo, hi, -1, bloch(bg, q, lam, Om, -1, -1), bloch(bg, q, lam, Om, -1, 0));
    return r;
}

// Wronskian a_n(f_n g_{n+1} - f_{n+1} g_n) of f⁻, f⁺ at site n.
inline cplx wronskian(const Jacobi& H, const JostPair& j, int n) {
    return H.a(n) * (j.fm(n) * j.fp(n + 1) - j.fm(n + 1) * j.fp(n));
}

// Regularized Wronskian φ_q w / a⁰₀ computed from Jost solutions.
inline cplx w_hat(const Jacobi& bg, const Jacobi& H, int q, int p, cplx lam, cplx Om) {
    JostPair j = jost(bg, H, q, p, lam, Om, -2, p + 3);
    return fundamental(bg, lam, q).phi * wronskian(H, j, 0) / bg.a(0);
}

// Minimal (decaying) solution toward +∞ (dir = +1) or −∞ (dir = −1) at a
// real gap point, by backward recurrence from far out; index n - lo on
// [lo, hi], normalized so that y at site `norm` is 1.
inline std::vector<double> minimal_solution(const Jacobi& H, double lam, int lo, int hi, int dir, int norm,
                                            int far = 4000) {
    std::vector<double> y;
    if (dir > 0) {
        int top = hi + far;
        std::vector<double> t(top - lo + 2, 0.0);
        t[top + 1 - lo] = 0.0;
        t[top - lo] = 1e-300;
        for (int n = top; n > lo; --n) {
            t[n - 1 - lo] = ((lam - H.b(n)) * t[n - lo] - H.a(n) * t[n + 1 - lo]) / H.a(n - 1);
            double m = std::abs(t[n - 1 - lo]);
            if (m > 1e250)
                for (double& x : t) x /= m;
        }
        y.assign(t.begin(), t.begin() + (hi - lo + 1));
    } else {
        int bot = lo - far;
        std::vector<double> t(hi - bot + 2, 0.0);
        t[0] = 0.0;
        t[1] = 1e-300;
        for (int n = bot + 1; n < hi; ++n) {
            t[n + 1 - bot] = ((lam - H.b(n)) * t[n - bot] - H.a(n - 1) * t[n - 1 - bot]) / H.a(n);
            double m = std::abs(t[n + 1 - bot]);
            if (m > 1e250)
                for (double& x : t) x /= m;
        }
        y.assign(t.begin() + (lo - bot), t.begin() + (hi - bot + 1));
    }
    double s = y[norm - lo];
    for (double& x : y) x /= s;
    return y;
}

// 1 / Σ_n |D f^±_n(ρ)|² with f⁺ normalized by f⁺ = ψ⁺ (ψ₀ = 1) to the right of
// the support and f⁻ by ψ⁻ on n ≤ 0. Both are the unique decaying solutions.
inline double l2_norming_at(const Jacobi& bg, const Jacobi& H, int p, double rho, double D, int sign, int N) {
    const int lo = -N, hi = N;
    double total = 0.0;
    if (sign > 0) {
        // ψ⁺ of the background, ψ⁺₀ = 1, continued through the support.
        auto psi = minimal_solution(bg, rho, 0, p + 3, +1, 0, N);
        auto right = minimal_solution(H, rho, p + 1, hi, +1, p + 1, N);
        double scale = psi[p + 1];
        auto left = minimal_solution(H, rho, lo, p + 2, -1, p + 1, N);
        // Match the left solution to the right one at p+1, p+2: they are the
        // same eigenfunction up to a constant when ρ is an eigenvalue.
        double cl = scale / left[p + 1 - lo];
        for (int n = lo; n <= p; ++n) total += std::pow(D * cl * left[n - lo], 2);
        for (int n = p + 1; n <= hi; ++n) total += std::pow(D * scale * right[n - (p + 1)], 2);
    } else {
        auto psi = minimal_solution(bg, rho, -3, 0, -1, 0, N);
        auto left = minimal_solution(H, rho, lo, 0, -1, 0, N);
        double scale = psi[3];
        auto right = minimal_solution(H, rho, -1, hi, +1, 0, N);
        double cr = scale / right[1];
        for (int n = lo; n <= 0; ++n) total += std::pow(D * scale * left[n - lo], 2);
        for (int n = 1; n <= hi; ++n) total += std::pow(D * cr * right[n + 1], 2);
    }
    return 1.0 / total;
}

// Window doubled until the sum settles; near-edge states decay slowly.
inline double l2_norming(const Jacobi& bg, const Jacobi& H, int p, double rho, double D, int sign) {
    double prev = l2_norming_at(bg, H, p, rho, D, sign, 2000);
    for (int N = 4000; N <= 512000; N *= 2) {
        double g = l2_norming_at(bg, H, p, rho, D, sign, N);
        if (std::abs(g - prev) <= 1e-13 * std::abs(g)) return g;
        prev = g;
    }
    return prev;
}

// Monomial coefficients of the interpolant through (x_k, y_k).
inline std::vector<double> interpolate(const std::vector<double>& x, const std::vector<double>& y) {
    int n = int(x.size());
    // Scale to [-1,1] for conditioning, then expand back.
    double lo = *std::min_element(x.begin(), x.end()), hi = *std::max_element(x.begin(), x.end());
    double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    Eigen::MatrixXd V(n, n);
    Eigen::VectorXd rhs(n);
    for (int i = 0; i < n; ++i) {
        double t = (x[i] - c) / h, pw = 1.0;
        for (int k = 0; k < n; ++k, pw *= t) V(i, k) = pw;
        rhs[i] = y[i];
    }
    Eigen::VectorXd s = V.fullPivLu().solve(rhs);
    // Σ s_k ((λ - c)/h)^k expanded in λ.
    std::vector<double> out(n, 0.0), basis{1.0};
    for (int k = 0; k < n; ++k) {
        for (int j = 0; j < int(basis.size()); ++j) out[j] += s[k] * basis[j];
        std::vector<double> nb(basis.size() + 1, 0.0);
        for (int j = 0; j < int(basis.size()); ++j) {
            nb[j + 1] += basis[j] / h;
            nb[j] -= basis[j] * c / h;
        }
        basis = nb;
    }
    return out;
}

}  // namespace oracle
