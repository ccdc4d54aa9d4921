#include "jres/scattering.hpp"

#include <algorithm>
#include <cmath>

#include "jres/error.hpp"

namespace jres {

namespace {
constexpr cplx I(0.0, 1.0);
}

const char* side_name(Side s) { return s == Side::Right ? "right" : "left"; }

PoleSplit pole_split(const PeriodicBackground& bg, double tol) {
    PoleSplit ps;
    ps.D_plus = Poly::constant(1.0);
    ps.D_minus = Poly::constant(1.0);
    for (double mu : bg.bands().mu) {
        if (bg.bands().edge_index(mu, tol) >= 0) {
            ps.M_edge.push_back(mu);
            ps.D_plus = ps.D_plus * Poly::linear_factor(mu);
            continue;
        }
        cplx Om = bg.omega1(mu);
        cplx ph = bg.phi_half()(mu);
        double plus = std::abs(ph + I * Om), minus = std::abs(ph - I * Om);
        double scale = std::abs(ph) + std::abs(Om) + 1e-300;
        if (std::min(plus, minus) > 1e-6 * scale)
            fail(Errc::AmbiguousAssignment, "neither phi +- i Omega vanishes at mu = " + std::to_string(mu));
        // The non-vanishing numerator is the pole of its m.
        if (plus > minus) {
            ps.M_plus.push_back(mu);
            ps.D_plus = ps.D_plus * Poly::linear_factor(mu);
        } else {
            ps.M_minus.push_back(mu);
            ps.D_minus = ps.D_minus * Poly::linear_factor(mu);
        }
    }
    ps.D_plus = ps.D_plus.real_part();
    ps.D_minus = ps.D_minus.real_part();
    return ps;
}

cplx Carriers::w_hat(const PeriodicBackground&, cplx lambda, cplx Om) const {
    return 2.0 * I * Om * one_plus_A(lambda) - J(lambda);
}

cplx Carriers::w_hat_prime(const PeriodicBackground& bg, cplx lambda, cplx Om) const {
    cplx dOm = -bg.Delta()(lambda) * bg.dDelta()(lambda) / Om;
    return 2.0 * I * dOm * one_plus_A(lambda) + 2.0 * I * Om * one_plus_A.derivative()(lambda) -
           J.derivative()(lambda);
}

cplx Carriers::jost0(const PeriodicBackground& bg, cplx lambda, cplx Om) const {
    return P1(lambda) + bg.weyl_m(lambda, Om, +1) * P2(lambda);
}

cplx Carriers::s_hat(const PeriodicBackground& bg, cplx lambda, cplx Om) const {
    return 2.0 * I * Om * jost0(bg, lambda, Om) - w_hat(bg, lambda, Om);
}

Carriers carriers_of(const PerturbedOperator& op) {
    return {op.one_plus_A(), op.J(), op.theta_plus(0).real_part(), op.phi_plus(0).real_part()};
}

Carriers free_carriers() {
    return {Poly::constant(1.0), Poly::constant(0.0), Poly::constant(1.0), Poly::constant(0.0)};
}

SMatrix smatrix_at(const PeriodicBackground& bg, const Carriers& c, double lambda, int side) {
    cplx Om = bg.omega1(lambda, side);
    if (std::abs(Om) == 0.0) fail(Errc::AtBandEdge, "S-matrix requested at a band edge");
    cplx w = c.w_hat(bg, lambda, Om);
    SMatrix s;
    s.T = 2.0 * I * Om / w;
    s.R_minus = c.s_hat(bg, lambda, Om) / w;
    s.R_plus = c.s_hat(bg, lambda, -Om) / w;
    s.alpha = 1.0 / s.T;
    s.beta_minus = s.alpha * s.R_minus;
    s.beta_plus = s.alpha * s.R_plus;
    return s;
}

SMatrix smatrix(const PerturbedOperator& op, cplx z) { return smatrix(op.background(), carriers_of(op), z); }

SMatrix smatrix(const PeriodicBackground& bg, const Carriers& c, cplx z) {
    if (std::abs(std::abs(z) - 1.0) > 1e-10) fail(Errc::AtBandEdge, "z is not on the unit circle");
    if (std::abs(std::pow(z, 2 * bg.q()) - 1.0) < 1e-12) fail(Errc::AtBandEdge, "z^{2q} = 1");
    SurfacePoint pt = bg.lambda_of_z(z);
    return smatrix_at(bg, c, pt.lambda.real(), pt.side);
}

NormingConstant norming_constant(const PeriodicBackground& bg, const PoleSplit& split, const Carriers& c,
                                 double rho) {
    cplx Om = bg.omega1(rho);
    cplx wp = c.w_hat_prime(bg, rho, Om);
    cplx s = c.s_hat(bg, rho, Om);
    cplx g = -(split.D_minus(cplx(rho)) / split.D_plus(cplx(rho))) * 2.0 * I * Om / (s * wp);
    NormingConstant nc;
    nc.rho = rho;
    nc.w_prime = wp;
    nc.gamma_plus = g.real();
    nc.gamma_minus = (1.0 / (g * wp * wp)).real();
    if (!(nc.gamma_plus > 0.0) || !(nc.gamma_minus > 0.0) || !std::isfinite(nc.gamma_plus) ||
        !std::isfinite(nc.gamma_minus))
        fail(Errc::NonPositiveNorming, "norming constants at rho = " + std::to_string(rho) + " are " +
                                           std::to_string(nc.gamma_plus) + ", " + std::to_string(nc.gamma_minus));
    return nc;
}

std::vector<NormingConstant> norming_constants(const PerturbedOperator& op, const StateCatalog& cat) {
    PoleSplit split = pole_split(op.background());
    Carriers c = carriers_of(op);
    std::vector<NormingConstant> out;
    for (double rho : cat.bound_states()) out.push_back(norming_constant(op.background(), split, c, rho));
    return out;
}

double norming_l2(const PerturbedOperator& op, const PoleSplit& split, double rho, int sign) {
    const auto& bg = op.background();
    const int q = bg.q(), p = op.p();
    cplx Om = bg.omega1(rho);
    double D = std::abs((sign > 0 ? split.D_plus : split.D_minus)(cplx(rho)));
    auto term = [&](int n) { return std::norm(D * op.jost(n, rho, Om, sign)); };
    double core = 0.0, right = 0.0, left = 0.0;
    for (int n = -q + 1; n <= p + q; ++n) core += term(n);
    for (int n = p + 1 + q; n <= p + 2 * q; ++n) right += term(n);
    for (int n = -2 * q + 1; n <= -q; ++n) left += term(n);
    double r2 = std::norm(bg.Delta()(rho) + I * Om);
    return 1.0 / (core + (right + left) / (1.0 - r2));
}

cplx ScatteringData::reflection(const PeriodicBackground& bg, double lambda, int rim) const {
    cplx Om = bg.omega1(lambda, rim);
    cplx w = carriers.w_hat(bg, lambda, Om);
    return carriers.s_hat(bg, lambda, side == Side::Right ? -Om : Om) / w;
}

ScatteringData scattering_from_carriers(const PeriodicBackground& bg, int nu, const Carriers& c,
                                        const std::vector<double>& rho, Side side) {
    ScatteringData d;
    d.side = side;
    d.a0 = bg.a0();
    d.b0 = bg.b0();
    d.nu = nu;
    d.carriers = c;
    d.split = pole_split(bg);
    d.rho = rho;
    std::sort(d.rho.begin(), d.rho.end());
    for (double r : d.rho) {
        NormingConstant nc = norming_constant(bg, d.split, c, r);
        d.gamma_plus.push_back(nc.gamma_plus);
        d.gamma_minus.push_back(nc.gamma_minus);
    }
    return d;
}

ScatteringData assemble_scattering_data(const PerturbedOperator& op, Side side, const StateCatalog& cat) {
    return scattering_from_carriers(op.background(), op.nu(), carriers_of(op), cat.bound_states(), side);
}

HypothesisReport check_hypothesis1(const ScatteringData& data, int grid) {
    PeriodicBackground bg = data.background();
    return check_hypothesis1(
        data, [&data, bg](double lambda, int rim) { return data.reflection(bg, lambda, rim); }, grid);
}

HypothesisReport check_hypothesis1(const ScatteringData& data, const ReflectionFn& R, int grid) {
    PeriodicBackground bg = data.background();
    const auto& bs = bg.bands();
    const int q = bg.q();
    HypothesisReport rep;
    auto violate = [&](const std::string& s) {
        rep.pass = false;
        rep.violations.push_back(s);
    };
    std::vector<cplx> zl;
    for (double e : bs.edges) zl.push_back(bg.quasimomentum({e, 1, +1}).z);
    double C = INFINITY;
    for (int j = 1; j <= q; ++j) {
        double lo = bs.band_lo(j), hi = bs.band_hi(j);
        if (hi - lo <= 0.0) continue;
        for (int k = 0; k < grid; ++k) {
            double x = lo + (hi - lo) * (k + 0.5) / grid;
            cplx up = R(x, +1), down = R(x, -1);
            rep.max_symmetry_error = std::max(rep.max_symmetry_error, std::abs(down - std::conj(up)));
            rep.max_abs_R = std::max({rep.max_abs_R, std::abs(up), std::abs(down)});
            cplx z = bg.quasimomentum({x, 1, +1}).z;
            double prod = 1.0;
            for (cplx e : zl) prod *= std::norm(z - e);
            C = std::min(C, (1.0 - std::norm(up)) / prod);

            SMatrix su = smatrix_at(bg, data.carriers, x, +1), sd = smatrix_at(bg, data.carriers, x, -1);
            cplx lhs = su.R_minus / sd.R_plus, rhs = -su.T / sd.T;
            rep.max_consistency_error =
                std::max(rep.max_consistency_error, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
        }
    }
    rep.fitted_C = C;
    if (rep.max_symmetry_error > 1e-9) violate("symmetry: R(conj z) != conj R(z)");
    if (!(rep.max_abs_R < 1.0)) violate("unit-bound: |R| >= 1 on a band interior");
    if (!(C > 0.0)) violate("lower-bound: fitted constant is not positive");
    if (rep.max_consistency_error > 1e-9) violate("consistency: R_-(z)/R_+(conj z) != -T(z)/T(conj z)");

    // Band-edge limits of sqrt(Δ²-1)(R ± 1)/T; the minus sign at edges that are Dirichlet points.
    PoleSplit split = pole_split(bg);
    for (int k = 0; k < int(bs.edges.size()); ++k) {
        if (!bs.edge_gap_open(k)) continue;
        double e = bs.edges[k];
        bool at_mu = false;
        for (double m : split.M_edge) at_mu |= std::abs(m - e) < 1e-8;
        double into = (k % 2 == 0) ? +1.0 : -1.0;
        double x = e + into * 1e-10 * std::max(1.0, std::abs(e));
        cplx Om = bg.omega1(x, +1);
        SMatrix s = smatrix_at(bg, data.carriers, x, +1);
        cplx Rv = data.side == Side::Right ? s.R_plus : s.R_minus;
        cplx val = I * Om * (Rv + (at_mu ? -1.0 : 1.0)) / s.T;
        rep.max_edge_limit = std::max(rep.max_edge_limit, std::abs(val));
    }
    if (rep.max_edge_limit > 1e-3) violate("edge-limit: sqrt(D^2-1)(R+-1)/T does not vanish at an edge");

    if (data.gamma_plus.size() != data.rho.size() || data.gamma_minus.size() != data.rho.size())
        violate("norming: one constant per bound state required");
    for (std::size_t k = 0; k < data.rho.size(); ++k) {
        double r = data.rho[k];
        if (bs.locate(r).band) violate("bound-state: rho outside the gaps");
        if (k > 0 && !(r > data.rho[k - 1])) violate("bound-state: rho not distinct");
        if (k >= data.gamma_plus.size() || k >= data.gamma_minus.size()) continue;
        if (!(data.gamma_plus[k] > 0.0) || !(data.gamma_minus[k] > 0.0)) violate("norming: non-positive constant");
        cplx wp = data.carriers.w_hat_prime(bg, r, bg.omega1(r));
        double err = std::abs(data.gamma_plus[k] * data.gamma_minus[k] * std::norm(wp) - 1.0);
        rep.max_product_error = std::max(rep.max_product_error, err);
    }
    if (rep.max_product_error > 1e-8) violate("norming: gamma_+ gamma_- w'^2 != 1");
    return rep;
}

}  // namespace jres
