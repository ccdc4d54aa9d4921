#include "jres/states.hpp"

#include <algorithm>
#include <cmath>

#include "jres/error.hpp"

namespace jres {

const char* state_kind_name(StateKind k) {
    switch (k) {
        case StateKind::Bound: return "bound";
        case StateKind::Antibound: return "antibound";
        case StateKind::Resonance: return "resonance";
        case StateKind::Virtual: return "virtual";
    }
    return "unknown";
}

std::vector<double> StateCatalog::bound_states() const {
    std::vector<double> r;
    for (auto& s : states)
        if (s.kind == StateKind::Bound) r.push_back(s.location.lambda.real());
    std::sort(r.begin(), r.end());
    return r;
}

StateKind classify_state(const PeriodicBackground& bg, const SurfacePoint& pt, double tol) {
    const auto& bs = bg.bands();
    bool real = pt.lambda.imag() == 0.0;
    if (real && bs.edge_index(pt.lambda.real(), tol) >= 0) return StateKind::Virtual;
    if (pt.sheet == 1) return StateKind::Bound;
    if (real && !bs.locate(pt.lambda.real()).band) return StateKind::Antibound;
    return StateKind::Resonance;
}

StateCatalog locate_states(const PerturbedOperator& op, const StateOptions& opt) {
    const auto& bg = op.background();
    const auto& bs = bg.bands();
    StateCatalog cat;
    cat.expected_kappa = op.kappa();
    RootList roots = poly_roots(op.F(), opt.cluster_radius);
    for (auto& r : roots) {
        cat.kappa += r.multiplicity;
        cplx x = r.location;
        if (std::abs(x.imag()) < opt.real_tol * std::max(1.0, std::abs(x))) x = cplx(x.real(), 0.0);
        State st;
        st.multiplicity = r.multiplicity;
        const int edge = x.imag() == 0.0 ? bs.edge_index(x.real(), opt.cluster_radius) : -1;
        auto snap_to_edge = [&] {
            st.location = {bs.edges[edge], 1, +1};
            st.kind = StateKind::Virtual;
            (bs.edge_gap_open(edge) ? cat.states : cat.excluded).push_back(st);
        };
        // Near an edge only the band side, or a lift that cannot tell the sheets apart, is virtual.
        if (edge >= 0 && (!bs.edge_gap_open(edge) || bs.locate(x.real()).band)) {
            snap_to_edge();
            continue;
        }
        // Polish on each sheet with Newton on ŵ, never reaching toward another root of 𝓕.
        double reach = 1e-3 * std::max(1.0, std::abs(x));
        for (auto& o : roots)
            if (&o != &r) reach = std::min(reach, 0.1 * std::abs(o.location - r.location));
        auto polish = [&](int sheet, cplx& y) {
            auto om = [&](cplx t) { return sheet == 1 ? bg.omega1(t, +1) : -bg.omega1(t, +1); };
            auto resid = [&](cplx t) {
                cplx o = om(t);
                double sc = std::abs(2.0 * o * op.one_plus_A()(t)) + std::abs(op.J()(t)) + 1e-300;
                return std::abs(op.w_hat(t, o)) / sc;
            };
            y = x;
            double res = resid(y);
            if (r.multiplicity > 1) return res;
            for (int it = 0; it < 4 && res > 0.0; ++it) {
                cplx o = om(y);
                cplx step = op.w_hat(y, o) / op.w_hat_prime(y, o);
                if (x.imag() == 0.0) step = step.real();
                cplx t = y - step;
                if (std::abs(t - x) > reach) break;
                double rt = resid(t);
                if (!(rt < res)) break;
                y = t;
                res = rt;
            }
            return res;
        };
        cplx y1, y2;
        double r1 = polish(1, y1), r2 = polish(2, y2);
        double best = std::min(r1, r2);
        if (edge >= 0 && std::max(r1, r2) < opt.lift_tol) {
            snap_to_edge();
            continue;
        }
        if (best > opt.lift_tol)
            fail(Errc::LiftAmbiguous, "zero of F at (" + std::to_string(x.real()) + ", " + std::to_string(x.imag()) +
                                          ") lifts to neither sheet: residuals " + std::to_string(r1) + ", " +
                                          std::to_string(r2));
        if (std::max(r1, r2) < opt.lift_tol)
            fail(Errc::LiftAmbiguous, "zero of F at " + std::to_string(x.real()) + " lifts to both sheets");
        x = r1 <= r2 ? y1 : y2;
        st.location = {x, r1 <= r2 ? 1 : 2, +1};
        st.residual = best;
        st.kind = classify_state(bg, st.location, 1e-15);
        cat.states.push_back(st);
    }
    return cat;
}

LawReport validate_state_laws(const StateCatalog& cat, const PeriodicBackground& bg, const Poly* F, int grid,
                              double tol) {
    const auto& bs = bg.bands();
    LawReport rep;
    auto violate = [&](const std::string& s) {
        rep.pass = false;
        rep.violations.push_back(s);
    };
    if (cat.kappa != cat.expected_kappa)
        violate("state count " + std::to_string(cat.kappa) + " differs from nu + 2q - 1 = " +
                std::to_string(cat.expected_kappa));
    for (int j = 1; j < bg.q(); ++j) {
        if (bs.closed[j - 1]) continue;
        int count = 0;
        for (auto& s : cat.states) {
            if (s.location.lambda.imag() != 0.0) continue;
            double x = s.location.lambda.real();
            if (x >= bs.gap_lo(j) - tol && x <= bs.gap_hi(j) + tol) count += s.multiplicity;
        }
        if (count % 2 != 0) violate("even-count: gap " + std::to_string(j) + " holds " + std::to_string(count));
    }
    for (auto& s : cat.states) {
        if (s.kind == StateKind::Bound) {
            if (s.location.lambda.imag() != 0.0 || bs.locate(s.location.lambda.real()).band)
                violate("bound-location: sheet-1 state off the real gaps");
            if (s.multiplicity != 1) violate("simplicity: bound state of multiplicity " + std::to_string(s.multiplicity));
            for (auto& t : cat.states)
                if (t.kind == StateKind::Antibound &&
                    std::abs(t.location.lambda - s.location.lambda) < tol * std::max(1.0, std::abs(s.location.lambda)))
                    violate("exclusion: bound and antibound state coincide");
        }
        if (s.kind == StateKind::Virtual && s.multiplicity != 1)
            violate("simplicity: virtual state of multiplicity " + std::to_string(s.multiplicity));
    }
    for (std::size_t i = 0; i < cat.states.size(); ++i) {
        cplx x = cat.states[i].location.lambda;
        if (x.imag() == 0.0) continue;
        bool paired = false;
        for (auto& t : cat.states)
            if (std::abs(t.location.lambda - std::conj(x)) < tol * std::max(1.0, std::abs(x)) &&
                t.multiplicity == cat.states[i].multiplicity && t.location.sheet == cat.states[i].location.sheet)
                paired = true;
        if (!paired) violate("conjugation: complex state without conjugate partner");
    }
    if (F) {
        double mn = INFINITY;
        for (int j = 1; j <= bg.q(); ++j) {
            double lo = bs.band_lo(j), hi = bs.band_hi(j);
            for (int k = 0; k < grid; ++k) {
                double x = lo + (hi - lo) * (k + 0.5) / grid;
                mn = std::min(mn, (*F)(x));
            }
        }
        rep.min_F_on_bands = mn;
        if (!(mn > 0.0)) violate("band-positivity: F is not positive on a band interior");
    }
    return rep;
}

void enforce_state_laws(const StateCatalog& cat, const PeriodicBackground& bg, const Poly* F) {
    LawReport rep = validate_state_laws(cat, bg, F);
    if (!rep.pass) fail(Errc::LawViolation, rep.violations.front());
}

}  // namespace jres
