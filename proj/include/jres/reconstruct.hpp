#pragma once

#include <string>
#include <vector>

#include "jres/glm.hpp"

namespace jres {

struct StateSpec {
    cplx lambda;
    int sheet = 1;
    int multiplicity = 1;
};

/// Resonance data: states, zeros of R₋+1 (the zeros of f₀⁺ on the surface),
/// the polynomials A and φ₀⁺, and the constants c₃, v₀.
struct ReconstructionInput {
    std::vector<double> a0, b0;
    std::vector<StateSpec> states;
    std::vector<cplx> r_zeros;
    Poly A, phi0_plus;
    double c3 = 0.0, v0 = 0.0;

    int nu() const { return A.degree() + 1; }
};

/// 𝓕 = c₃v₀ ∏(λ - λ_j)^{m_j}.
Poly f_from_states(const ReconstructionInput& in, double tol = 1e-8);

struct WPair {
    Poly one_plus_A, J;
};
/// J = ±√(𝓕 - 4(1-Δ²)(1+A)²) with sign(lead J) = sign(c₃v₀).
WPair what_from_F(const Poly& F, const Poly& A, const PeriodicBackground& bg, double c3, double v0);

struct JostPair {
    Poly P1, P2;
    double residual = 0.0;
};
/// P₁ from φ_qP₁ + φP₂ = ±√((Δ²-1)P₂² + φ_q F_f), F_f = -c₃ a⁰₀ ∏(λ - r).
JostPair jost0_from_zeros(const ReconstructionInput& in, const PeriodicBackground& bg);

/// Class-membership checks on (ŵ, f₀⁺), then norming constants and data.
ScatteringData scattering_from_pair(const PeriodicBackground& bg, const Poly& F, const WPair& w, const JostPair& f,
                                    const std::vector<double>& rho, Side side);

/// Extract resonance data from a direct computation.
ReconstructionInput extract_reconstruction_input(const PerturbedOperator& op, const StateCatalog& cat);

/// φ_q f₀⁺ (f₀⁺)* = φ_qP₁² + 2φP₁P₂ - θ_{q+1}P₂².
Poly jost_product(const PeriodicBackground& bg, const Poly& P1, const Poly& P2);

/// Simplicity and disjointness from edges and Dirichlet points; empty when satisfied.
std::string reconstruction_hypothesis_failure(const ReconstructionInput& in, const PeriodicBackground& bg,
                                              double sep = 1e-4);

struct ReconstructionResult {
    Poly F;
    WPair w;
    JostPair f;
    ScatteringData data;
    Recovery recovery;
};

ReconstructionResult reconstruct(const ReconstructionInput& in, Side side = Side::Right,
                                 const QuadratureOptions& opt = {});

}  // namespace jres
