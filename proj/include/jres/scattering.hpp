#pragma once

#include <functional>
#include <string>
#include <vector>

#include "jres/states.hpp"

namespace jres {

struct PoleSplit {
    std::vector<double> M_plus, M_minus, M_edge;
    /// Monic; D⁺ carries M₊ and M_e, D⁻ carries M₋, φ_q = a⁰₀ D⁺ D⁻.
    Poly D_plus, D_minus;
};

PoleSplit pole_split(const PeriodicBackground& bg, double tol = 1e-8);

enum class Side { Left = -1, Right = +1 };
inline int side_sign(Side s) { return s == Side::Right ? +1 : -1; }
const char* side_name(Side s);

/// Polynomial carriers of ŵ = 2iΩ(1+A) - J and f₀⁺ = P₁ + m₊P₂, from which
/// ŝ = 2iΩ f₀⁺ - ŵ follows.
struct Carriers {
    Poly one_plus_A, J, P1, P2;

    cplx w_hat(const PeriodicBackground& bg, cplx lambda, cplx Om) const;
    cplx w_hat_prime(const PeriodicBackground& bg, cplx lambda, cplx Om) const;
    cplx jost0(const PeriodicBackground& bg, cplx lambda, cplx Om) const;
    cplx s_hat(const PeriodicBackground& bg, cplx lambda, cplx Om) const;
};

Carriers carriers_of(const PerturbedOperator& op);
/// Carriers of the unperturbed operator: ŵ = 2iΩ, f₀⁺ = 1.
Carriers free_carriers();

struct SMatrix {
    cplx T, R_plus, R_minus, alpha, beta_plus, beta_minus;
};

/// S-matrix at a band point on the given rim.
SMatrix smatrix_at(const PeriodicBackground& bg, const Carriers& c, double lambda, int side);
/// S-matrix at z on the unit circle; AtBandEdge when z^{2q} = 1.
SMatrix smatrix(const PerturbedOperator& op, cplx z);
SMatrix smatrix(const PeriodicBackground& bg, const Carriers& c, cplx z);

struct NormingConstant {
    double rho = 0.0;
    double gamma_plus = 0.0, gamma_minus = 0.0;
    cplx w_prime = 0.0;
};

/// γ₊ = -(D⁻/D⁺)(ρ)·2iΩ(ρ)/(ŝ ŵ′)(ρ), γ₋ = 1/(γ₊ ŵ′(ρ)²). Throws
/// NonPositiveNorming unless both are positive.
NormingConstant norming_constant(const PeriodicBackground& bg, const PoleSplit& split, const Carriers& c,
                                 double rho);
std::vector<NormingConstant> norming_constants(const PerturbedOperator& op, const StateCatalog& cat);

/// Reciprocal squared ℓ² norm of D^± f^± at a bound state, with geometric
/// tails summed through the Floquet multiplier.
double norming_l2(const PerturbedOperator& op, const PoleSplit& split, double rho, int sign);

struct ScatteringData {
    Side side = Side::Right;
    std::vector<double> a0, b0;
    int nu = 0;
    Carriers carriers;
    PoleSplit split;
    std::vector<double> rho;
    std::vector<double> gamma_plus, gamma_minus;

    PeriodicBackground background() const { return PeriodicBackground(a0, b0, 1e-9); }
    const std::vector<double>& gamma() const { return side == Side::Right ? gamma_plus : gamma_minus; }
    /// R_± on the rim `rim` above the band point λ, for this data's side.
    cplx reflection(const PeriodicBackground& bg, double lambda, int rim = +1) const;
};

ScatteringData assemble_scattering_data(const PerturbedOperator& op, Side side, const StateCatalog& cat);
/// Same but from carriers (reconstruction path); bound states supplied.
ScatteringData scattering_from_carriers(const PeriodicBackground& bg, int nu, const Carriers& c,
                                        const std::vector<double>& rho, Side side);

struct HypothesisReport {
    bool pass = true;
    std::vector<std::string> violations;
    double max_abs_R = 0.0;
    double fitted_C = 0.0;
    double max_symmetry_error = 0.0;
    double max_consistency_error = 0.0;
    double max_edge_limit = 0.0;
    double max_product_error = 0.0;
};

using ReflectionFn = std::function<cplx(double lambda, int rim)>;

HypothesisReport check_hypothesis1(const ScatteringData& data, int grid = 200);
/// As above with the reflection coefficient of the data's side replaced by R.
HypothesisReport check_hypothesis1(const ScatteringData& data, const ReflectionFn& R, int grid = 200);

}  // namespace jres
