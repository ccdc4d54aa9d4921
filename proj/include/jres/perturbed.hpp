#pragma once

#include <string>
#include <vector>

#include "jres/background.hpp"

namespace jres {

/// Finitely supported perturbation a_n = a⁰_n + u_n, b_n = b⁰_n + v_n on 0..p.
struct Perturbation {
    int p = 0;
    std::vector<double> u, v;
    int nu = 0;
};

struct ClassReport {
    int nu = 0;
    std::vector<std::string> warnings;
};

/// Class index ν of (u, v); throws ClassViolation.
ClassReport validate_class(const PeriodicBackground& bg, const std::vector<double>& u, const std::vector<double>& v);
Perturbation make_perturbation(const PeriodicBackground& bg, std::vector<double> u, std::vector<double> v);

class PerturbedOperator {
public:
    PerturbedOperator(PeriodicBackground bg, Perturbation pert);

    const PeriodicBackground& background() const { return bg_; }
    const Perturbation& perturbation() const { return pert_; }
    int p() const { return pert_.p; }
    int nu() const { return pert_.nu; }
    int kappa() const { return pert_.nu + 2 * bg_.q() - 1; }
    double a(int n) const;
    double b(int n) const;

    double c1() const { return c1_; }
    double c2() const { return c2_; }
    double c3() const { return c3_; }
    double Ap() const { return Ap_; }

    // θ_n^±, φ_n^± for jmin() <= n <= jmax().
    int jmin() const { return lo_; }
    int jmax() const { return hi_; }
    const Poly& theta_plus(int n) const { return thp_.at(n - lo_); }
    const Poly& phi_plus(int n) const { return php_.at(n - lo_); }
    const Poly& theta_minus(int n) const { return thm_.at(n - lo_); }
    const Poly& phi_minus(int n) const { return phm_.at(n - lo_); }

    const Poly& A() const { return A_; }
    const Poly& one_plus_A() const { return onepA_; }
    const Poly& J() const { return J_; }
    /// 𝓕 = 4(1-Δ²)(1+A)² + J², degree κ.
    const Poly& F() const { return F_; }

    /// Jost solution f_n^± at λ on the branch Ω.
    cplx jost(int n, cplx lambda, cplx Om, int sign) const;
    cplx jost(int n, const SurfacePoint& pt, int sign) const { return jost(n, pt.lambda, bg_.omega(pt), sign); }

    struct Wronskians {
        cplx w, s, w_hat, s_hat;
    };
    /// Direct evaluation from the Jost solutions.
    Wronskians wronskians(cplx lambda, cplx Om) const;
    Wronskians wronskians(const SurfacePoint& pt) const { return wronskians(pt.lambda, bg_.omega(pt)); }

    /// ŵ = 2iΩ(1+A) - J
    cplx w_hat(cplx lambda, cplx Om) const;
    /// ŝ = 2iΩ f₀⁺ - ŵ
    cplx s_hat(cplx lambda, cplx Om) const;
    /// dŵ/dλ along the branch Ω.
    cplx w_hat_prime(cplx lambda, cplx Om) const;

private:
    PeriodicBackground bg_;
    Perturbation pert_;
    double c1_ = 0, c2_ = 0, c3_ = 0, Ap_ = 0;
    int lo_ = 0, hi_ = 0;
    std::vector<Poly> thp_, php_, thm_, phm_;
    Poly A_, onepA_, J_, F_;
};

}  // namespace jres
