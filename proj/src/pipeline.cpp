#include "jres/pipeline.hpp"

#include <algorithm>
#include <cmath>

namespace jres {

Draw random_draw(std::mt19937_64& rng, int index) {
    std::uniform_real_distribution<double> U(0.0, 1.0);
    auto uni = [&](double lo, double hi) { return lo + (hi - lo) * U(rng); };
    Draw d;
    const int q = U(rng) < 0.5 ? 2 : 3;
    const int p = 1 + int(std::min(2.0, std::floor(3.0 * U(rng))));
    double prod = 1.0;
    for (int k = 0; k < q; ++k) {
        d.a0.push_back(uni(0.6, 1.6));
        d.b0.push_back(uni(-0.5, 0.5));
        prod *= d.a0.back();
    }
    double s = std::pow(prod, -1.0 / q);
    for (double& a : d.a0) a *= s;
    for (int n = 0; n <= p; ++n) {
        d.u.push_back(uni(-0.3, 0.3));
        d.v.push_back(uni(-0.8, 0.8));
    }
    // Keep v_0 and v_p away from zero so ν is what it claims to be.
    for (int n : {0, p})
        if (std::abs(d.v[n]) < 0.05) d.v[n] = std::copysign(0.05, d.v[n] == 0.0 ? 1.0 : d.v[n]);
    if (std::abs(d.u[p]) < 0.05) d.u[p] = std::copysign(0.05, d.u[p] == 0.0 ? 1.0 : d.u[p]);
    if (p >= 2 && index % 3 == 2) d.u[p] = 0.0;
    return d;
}

PerturbedOperator make_operator(const Draw& d) {
    PeriodicBackground bg(d.a0, d.b0, 1e-9);
    Perturbation pert = make_perturbation(bg, d.u, d.v);
    return PerturbedOperator(bg, pert);
}

double coefficient_error(const Perturbation& a, const Perturbation& b) {
    std::size_t n = std::max({a.u.size(), b.u.size(), a.v.size(), b.v.size()});
    auto at = [](const std::vector<double>& x, std::size_t k) { return k < x.size() ? x[k] : 0.0; };
    double e = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        e = std::max({e, std::abs(at(a.u, k) - at(b.u, k)), std::abs(at(a.v, k) - at(b.v, k))});
    return e;
}

RoundtripResult roundtrip(const PerturbedOperator& op, const QuadratureOptions& opt, const StateOptions& sopt) {
    StateCatalog cat = locate_states(op, sopt);
    RoundtripResult r;
    r.right = invert_scattering(assemble_scattering_data(op, Side::Right, cat), opt);
    r.left = invert_scattering(assemble_scattering_data(op, Side::Left, cat), opt);
    r.err_right = coefficient_error(op.perturbation(), r.right.pert);
    r.err_left = coefficient_error(op.perturbation(), r.left.pert);
    r.err_sides = coefficient_error(r.right.pert, r.left.pert);
    return r;
}

ReconstructionRoundtrip reconstruction_roundtrip(const PerturbedOperator& op, Side side, const QuadratureOptions& opt) {
    ReconstructionRoundtrip r;
    StateCatalog cat = locate_states(op);
    ReconstructionInput in = extract_reconstruction_input(op, cat);
    r.hypothesis_failure = reconstruction_hypothesis_failure(in, op.background());
    if (!r.hypothesis_failure.empty()) return r;
    r.result = reconstruct(in, side, opt);
    r.err = coefficient_error(op.perturbation(), r.result.recovery.pert);
    return r;
}

}  // namespace jres
