#include "jres/reconstruct.hpp"

#include <algorithm>
#include <cmath>

#include "jres/error.hpp"

namespace jres {

namespace {

void require(bool ok, const std::string& clause) {
    if (!ok) fail(Errc::ClassMembershipFailed, clause);
}

}  // namespace

Poly f_from_states(const ReconstructionInput& in, double tol) {
    Poly F = Poly::constant(in.c3 * in.v0);
    for (auto& s : in.states)
        for (int k = 0; k < s.multiplicity; ++k) F = F * Poly::linear_factor(s.lambda);
    if (!F.is_real(tol)) fail(Errc::NonRealCoefficients, "state set is not closed under conjugation");
    return F.real_part();
}

WPair what_from_F(const Poly& F, const Poly& A, const PeriodicBackground& bg, double c3, double v0) {
    Poly onepA = A + Poly::constant(1.0);
    Poly oneD = Poly::constant(1.0) - bg.Delta() * bg.Delta();
    Poly J2 = F - 4.0 * (oneD * onepA * onepA);
    int sign = c3 * v0 > 0 ? +1 : -1;
    return {onepA, poly_sqrt(J2, sign)};
}

Poly jost_product(const PeriodicBackground& bg, const Poly& P1, const Poly& P2) {
    return bg.phi_q() * P1 * P1 + 2.0 * (bg.phi_half() * P1 * P2) - bg.theta_q1() * P2 * P2;
}

JostPair jost0_from_zeros(const ReconstructionInput& in, const PeriodicBackground& bg) {
    const int nu = in.nu(), q = bg.q();
    if (int(in.r_zeros.size()) != nu + q - 1)
        fail(Errc::BranchSelectionFailed, "expected " + std::to_string(nu + q - 1) + " zeros of R_- + 1, got " +
                                              std::to_string(in.r_zeros.size()));
    Poly Ff = poly_from_roots(in.r_zeros, -in.c3 * bg.phi_q().lead());
    if (!Ff.is_real(1e-8)) fail(Errc::NonRealCoefficients, "zeros of R_- + 1 are not closed under conjugation");
    Ff = Ff.real_part();
    const Poly& P2 = in.phi0_plus;
    Poly disc = (bg.Delta() * bg.Delta() - Poly::constant(1.0)) * P2 * P2 + bg.phi_q() * Ff;
    Poly S = poly_sqrt(disc, +1, 1e-6);

    const auto& bs = bg.bands();
    const int nfit = std::max(1, nu - 1);
    double lo = bs.edges.front() - 1.0, hi = bs.edges.back() + 1.0;
    auto clear_of_mu = [&](const std::vector<double>& xs) {
        for (double x : xs)
            for (double m : bs.mu)
                if (std::abs(x - m) < 1e-6 * (hi - lo)) return false;
        return true;
    };
    // Widen the interval until no fit node sits on a Dirichlet point.
    std::vector<double> fit = chebyshev_nodes(nfit, lo, hi);
    for (int k = 0; k < 8 && !clear_of_mu(fit); ++k) {
        hi += 0.1 * (hi - lo);
        fit = chebyshev_nodes(nfit, lo, hi);
    }
    if (!clear_of_mu(fit)) fail(Errc::BranchSelectionFailed, "interpolation nodes collide with Dirichlet points");
    std::vector<double> check;
    for (double x : chebyshev_nodes(2 * nfit + 7, lo, hi))
        if (clear_of_mu({x})) check.push_back(x);

    JostPair best;
    best.residual = INFINITY;
    double scale = std::max(1.0, Ff.max_abs());
    for (double sgn : {+1.0, -1.0}) {
        std::vector<cplx> xs, ys;
        for (double x : fit) {
            xs.emplace_back(x);
            ys.emplace_back((sgn * S(x) - bg.phi_half()(x) * P2(x)) / bg.phi_q()(x));
        }
        Poly P1 = poly_interpolate(xs, ys).real_part();
        Poly prod = jost_product(bg, P1, P2);
        double res = 0.0;
        for (double x : check) res = std::max(res, std::abs(prod(x) - Ff(x)));
        res /= scale;
        if (res < best.residual) best = {P1, P2, res};
    }
    if (best.residual > 1e-6)
        fail(Errc::BranchSelectionFailed, "no branch reproduces F_f (residual " + std::to_string(best.residual) + ")");
    return best;
}

ScatteringData scattering_from_pair(const PeriodicBackground& bg, const Poly& F, const WPair& w, const JostPair& f,
                                    const std::vector<double>& rho, Side side) {
    const int nu = w.one_plus_A.degree() + 1, q = bg.q();
    const auto& bs = bg.bands();
    require(w.J.degree() == nu + q - 1, "degrees: J must have degree nu + q - 1");
    require(f.P2.degree() == nu - 1, "degrees: P2 must have degree nu - 1");
    require(f.P1.degree() <= nu - 2, "degrees: P1 must have degree at most nu - 2");
    Poly Fw = 4.0 * ((Poly::constant(1.0) - bg.Delta() * bg.Delta()) * w.one_plus_A * w.one_plus_A) + w.J * w.J;
    require(coeff_distance(Fw.truncated(F.degree()), F) < 1e-8, "identity: 4(1-D^2)(1+A)^2 + J^2 != F");

    for (double r : rho) require(!bs.locate(r).band, "condition 1: bound state outside the gaps");
    for (int j = 1; j < q; ++j) {
        if (bs.closed[j - 1]) continue;
        int count = 0;
        for (auto& root : poly_roots(F)) {
            double x = root.location.real();
            if (std::abs(root.location.imag()) < 1e-9 && x >= bs.gap_lo(j) - 1e-9 && x <= bs.gap_hi(j) + 1e-9)
                count += root.multiplicity;
        }
        require(count % 2 == 0, "condition 2: odd number of zeros of F on gap " + std::to_string(j));
    }
    Carriers c{w.one_plus_A, w.J, f.P1, f.P2};
    for (std::size_t k = 0; k < bs.edges.size(); ++k) {
        double e = bs.edges[k];
        if (std::abs(bg.phi_q()(e)) > 1e-9) continue;
        // At a Dirichlet edge f₀⁺ has a square-root pole; compare the regular parts.
        double x = e + (k % 2 == 0 ? 1e-9 : -1e-9);
        cplx Om = bg.omega1(x, +1);
        cplx sv = c.s_hat(bg, x, Om), wv = c.w_hat(bg, x, Om);
        require(std::abs(sv - wv) < 1e-3 * (1.0 + std::abs(wv)), "condition 4: s(edge) != w(edge) at a Dirichlet edge");
    }
    try {
        return scattering_from_carriers(bg, nu, c, rho, side);
    } catch (const Error& e) {
        if (e.code() == Errc::NonPositiveNorming) fail(Errc::ClassMembershipFailed, std::string("condition 3: ") + e.what());
        throw;
    }
}

ReconstructionInput extract_reconstruction_input(const PerturbedOperator& op, const StateCatalog& cat) {
    const auto& bg = op.background();
    ReconstructionInput in;
    in.a0 = bg.a0();
    in.b0 = bg.b0();
    for (auto& s : cat.states) in.states.push_back({s.location.lambda, s.location.sheet, s.multiplicity});
    for (auto& s : cat.excluded) in.states.push_back({s.location.lambda, s.location.sheet, s.multiplicity});
    Poly Ff = jost_product(bg, op.theta_plus(0), op.phi_plus(0)).real_part();
    Ff = Ff.truncated(op.nu() + bg.q() - 1);
    in.r_zeros = poly_roots_flat(Ff);
    in.A = op.A();
    in.phi0_plus = op.phi_plus(0).real_part();
    in.c3 = op.c3();
    in.v0 = op.perturbation().v[0];
    return in;
}

std::string reconstruction_hypothesis_failure(const ReconstructionInput& in, const PeriodicBackground& bg,
                                              double sep) {
    const auto& bs = bg.bands();
    std::vector<double> special = bs.edges;
    special.insert(special.end(), bs.mu.begin(), bs.mu.end());
    auto near_special = [&](cplx x) {
        for (double s : special)
            if (std::abs(x - s) < sep) return true;
        return false;
    };
    for (auto& s : in.states) {
        if (s.multiplicity != 1) return "non-simple state";
        if (near_special(s.lambda)) return "state at an edge or Dirichlet point";
    }
    for (std::size_t i = 0; i < in.r_zeros.size(); ++i) {
        if (near_special(in.r_zeros[i])) return "zero of R_- + 1 at an edge or Dirichlet point";
        for (std::size_t j = i + 1; j < in.r_zeros.size(); ++j)
            if (std::abs(in.r_zeros[i] - in.r_zeros[j]) < sep) return "non-simple zero of R_- + 1";
    }
    return {};
}

ReconstructionResult reconstruct(const ReconstructionInput& in, Side side, const QuadratureOptions& opt) {
    PeriodicBackground bg(in.a0, in.b0, 1e-9);
    if (in.c3 == 0.0 || in.v0 == 0.0) fail(Errc::ClassMembershipFailed, "c3 and v0 must be nonzero");
    int total = 0;
    for (auto& s : in.states) total += s.multiplicity;
    if (total != in.nu() + 2 * bg.q() - 1)
        fail(Errc::ClassMembershipFailed, "state multiplicities sum to " + std::to_string(total) + ", expected " +
                                              std::to_string(in.nu() + 2 * bg.q() - 1));
    ReconstructionResult r;
    r.F = f_from_states(in);
    r.w = what_from_F(r.F, in.A, bg, in.c3, in.v0);
    r.f = jost0_from_zeros(in, bg);
    std::vector<double> rho;
    for (auto& s : in.states)
        if (s.sheet == 1 && s.lambda.imag() == 0.0 && bg.bands().edge_index(s.lambda.real(), 1e-7) < 0)
            rho.push_back(s.lambda.real());
    r.data = scattering_from_pair(bg, r.F, r.w, r.f, rho, side);
    r.recovery = invert_scattering(r.data, opt);
    return r;
}

}  // namespace jres
