#include "jres/perturbed.hpp"

#include <cmath>

#include "jres/error.hpp"

namespace jres {

namespace {

constexpr cplx I(0.0, 1.0);

// Truncate to degree d after checking that the dropped part is rounding noise.
Poly cut_degree(const Poly& p, int d, const char* what, bool exact = true) {
    double scale = std::max(p.max_abs(), 1e-300);
    for (int k = d + 1; k <= p.degree(); ++k)
        if (std::abs(p[k]) > 1e-8 * scale)
            fail(Errc::DegreeMismatch, std::string(what) + " has a coefficient at degree " + std::to_string(k) +
                                           " beyond the expected " + std::to_string(d));
    Poly r = p.truncated(d);
    if (exact && (r.degree() != d || std::abs(r.lead()) <= 1e-12 * scale))
        fail(Errc::DegreeMismatch, std::string(what) + " degree is below the expected " + std::to_string(d));
    return r;
}

}  // namespace

ClassReport validate_class(const PeriodicBackground& bg, const std::vector<double>& u, const std::vector<double>& v) {
    if (u.size() != v.size()) fail(Errc::ClassViolation, "u and v lengths differ");
    if (u.size() < 2) fail(Errc::ClassViolation, "p must be at least 1");
    int p = int(u.size()) - 1;
    for (int n = 0; n <= p; ++n)
        if (!(bg.a(n) + u[n] > 0.0)) fail(Errc::ClassViolation, "a_" + std::to_string(n) + " is not positive");
    if (v[0] == 0.0) fail(Errc::ClassViolation, "v_0 must be nonzero");
    ClassReport rep;
    if (u[p] != 0.0) rep.nu = 2 * p;
    else if (v[p] != 0.0) rep.nu = 2 * p - 1;
    else fail(Errc::ClassViolation, "u_p and v_p both vanish");
    if (rep.nu + 2 * bg.q() - 1 < 2 * bg.q() + 1)
        rep.warnings.push_back("kappa = nu + 2q - 1 is below 2q + 1; the inverse problem is not covered");
    return rep;
}

Perturbation make_perturbation(const PeriodicBackground& bg, std::vector<double> u, std::vector<double> v) {
    ClassReport rep = validate_class(bg, u, v);
    Perturbation pt;
    pt.p = int(u.size()) - 1;
    pt.u = std::move(u);
    pt.v = std::move(v);
    pt.nu = rep.nu;
    return pt;
}

PerturbedOperator::PerturbedOperator(PeriodicBackground bg, Perturbation pert)
    : bg_(std::move(bg)), pert_(std::move(pert)) {
    validate_class(bg_, pert_.u, pert_.v);
    const int p = pert_.p, q = bg_.q();
    lo_ = -2 * q - 2;
    hi_ = p + 2 * q + 2;
    auto [th, ph] = bg_.fundamental_solutions(lo_, hi_ + 1);
    const Poly lam = Poly::monomial(1);
    int cnt = hi_ - lo_ + 1;
    thp_.assign(cnt, Poly{});
    php_.assign(cnt, Poly{});
    thm_.assign(cnt, Poly{});
    phm_.assign(cnt, Poly{});
    auto step = [&](const Poly& yn, const Poly& ynext, int n, double acoef_next, double acoef_prev) {
        return ((lam - Poly::constant(b(n))) * yn - acoef_next * ynext) * (1.0 / acoef_prev);
    };
    for (int which = 0; which < 2; ++which) {
        const auto& src = which == 0 ? th : ph;
        auto& plus = which == 0 ? thp_ : php_;
        auto& minus = which == 0 ? thm_ : phm_;
        // Right family: background for n >= p+1, backward recurrence below.
        for (int n = hi_; n >= p + 1; --n) plus[n - lo_] = src[n - lo_];
        for (int n = p + 1; n > lo_; --n)
            plus[n - 1 - lo_] = step(plus[n - lo_], plus[n + 1 - lo_], n, a(n), a(n - 1));
        // Left family: background for n <= 0, forward recurrence above.
        for (int n = lo_; n <= 0; ++n) minus[n - lo_] = src[n - lo_];
        for (int n = 0; n < hi_; ++n)
            minus[n + 1 - lo_] = step(minus[n - lo_], minus[n - 1 - lo_], n, a(n - 1), a(n));
    }

    // f₀⁺ = θ₀⁺ + m₊φ₀⁺ with deg θ₀⁺ <= ν-2 and deg φ₀⁺ = ν-1; drop the rounding residue above.
    thp_[-lo_] = cut_degree(thp_[-lo_].real_part(), pert_.nu - 2, "theta_0^+", false);
    php_[-lo_] = cut_degree(php_[-lo_].real_part(), pert_.nu - 1, "phi_0^+");

    c1_ = 1.0;
    Ap_ = 1.0;
    for (int j = 0; j <= p; ++j) {
        c1_ /= a(j);
        Ap_ *= bg_.a(j);
    }
    if (pert_.nu == 2 * p) c2_ = c1_ * pert_.u[p] * (bg_.a(p) + a(p));
    else c2_ = c1_ * bg_.a(p) * bg_.a(p) * pert_.v[p];
    c3_ = c1_ * c2_;

    const double a00 = bg_.a(0);
    const double r0 = a(0) / a00, v0 = pert_.v[0] / a00;
    const Poly& phq = bg_.phi_q();
    const Poly& phh = bg_.phi_half();
    Poly A = (r0 * phi_plus(1) + v0 * phi_plus(0) + theta_plus(0)) * 0.5 - Poly::constant(1.0);
    Poly J = r0 * (phq * theta_plus(1)) + phh * (r0 * phi_plus(1) - theta_plus(0)) +
             v0 * (phq * theta_plus(0) + phh * phi_plus(0)) + bg_.theta_q1() * phi_plus(0);
    J = -J;
    A_ = cut_degree(A.real_part(), pert_.nu - 1, "A");
    onepA_ = A_ + Poly::constant(1.0);
    J_ = cut_degree(J.real_part(), pert_.nu + q - 1, "J");
    Poly oneD = Poly::constant(1.0) - bg_.Delta() * bg_.Delta();
    Poly F = 4.0 * (oneD * onepA_ * onepA_) + J_ * J_;
    F_ = cut_degree(F, kappa(), "F");
}

double PerturbedOperator::a(int n) const {
    return bg_.a(n) + (n >= 0 && n <= pert_.p ? pert_.u[n] : 0.0);
}

double PerturbedOperator::b(int n) const {
    return bg_.b(n) + (n >= 0 && n <= pert_.p ? pert_.v[n] : 0.0);
}

cplx PerturbedOperator::jost(int n, cplx lambda, cplx Om, int sign) const {
    if (sign > 0) {
        if (n >= pert_.p + 1) return bg_.bloch_psi(n, lambda, Om, +1);
        if (n < lo_) throw std::out_of_range("jost index below stored range");
        return theta_plus(n)(lambda) + bg_.weyl_m(lambda, Om, +1) * phi_plus(n)(lambda);
    }
    if (n <= 0) return bg_.bloch_psi(n, lambda, Om, -1);
    if (n > hi_) throw std::out_of_range("jost index above stored range");
    return theta_minus(n)(lambda) + bg_.weyl_m(lambda, Om, -1) * phi_minus(n)(lambda);
}

PerturbedOperator::Wronskians PerturbedOperator::wronskians(cplx lambda, cplx Om) const {
    const double a00 = bg_.a(0);
    const double v0 = pert_.v[0];
    cplx mp = bg_.weyl_m(lambda, Om, +1);
    cplx mm = bg_.weyl_m(lambda, Om, -1);
    cplx f0 = jost(0, lambda, Om, +1);
    cplx f1 = jost(1, lambda, Om, +1);
    Wronskians r;
    r.w = a(0) * f1 + (v0 - a00 * mm) * f0;
    r.s = (a00 * mp - v0) * f0 - a(0) * f1;
    cplx pq = bg_.phi_q()(lambda);
    r.w_hat = pq * r.w / a00;
    r.s_hat = pq * r.s / a00;
    return r;
}

cplx PerturbedOperator::w_hat(cplx lambda, cplx Om) const {
    return 2.0 * I * Om * onepA_(lambda) - J_(lambda);
}

cplx PerturbedOperator::s_hat(cplx lambda, cplx Om) const {
    return 2.0 * I * Om * jost(0, lambda, Om, +1) - w_hat(lambda, Om);
}

cplx PerturbedOperator::w_hat_prime(cplx lambda, cplx Om) const {
    cplx D = bg_.Delta()(lambda), dD = bg_.dDelta()(lambda);
    cplx dOm = -D * dD / Om;
    return 2.0 * I * dOm * onepA_(lambda) + 2.0 * I * Om * onepA_.derivative()(lambda) - J_.derivative()(lambda);
}

}  // namespace jres
