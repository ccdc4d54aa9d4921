#pragma once

#include <string>
#include <vector>

#include "jres/perturbed.hpp"

namespace jres {

enum class StateKind { Bound, Antibound, Resonance, Virtual };
const char* state_kind_name(StateKind k);

struct State {
    SurfacePoint location;
    StateKind kind = StateKind::Resonance;
    int multiplicity = 1;
    /// |ŵ| at the lifted point relative to |2Ω(1+A)| + |J|.
    double residual = 0.0;
};

struct StateCatalog {
    std::vector<State> states;
    /// Zeros of 𝓕 at closed-gap points, which are not states.
    std::vector<State> excluded;
    /// Total multiplicity of all zeros of 𝓕, including excluded ones.
    int kappa = 0;
    int expected_kappa = 0;

    std::vector<double> bound_states() const;
};

struct StateOptions {
    double cluster_radius = kDefaultClusterRadius;
    double lift_tol = 1e-6;
    /// Roots with |Im| below this (relative) are taken as real.
    double real_tol = 1e-9;
};

StateCatalog locate_states(const PerturbedOperator& op, const StateOptions& opt = {});

/// Classification by surface position alone; an edge point (within tol) is virtual.
StateKind classify_state(const PeriodicBackground& bg, const SurfacePoint& pt, double tol = kDefaultClusterRadius);

struct LawReport {
    bool pass = true;
    std::vector<std::string> violations;
    /// Smallest 𝓕 over band interiors, when 𝓕 was supplied.
    double min_F_on_bands = 0.0;
};

/// Structural laws of the state set. 𝓕 is optional; when given, its
/// positivity on band interiors is sampled on `grid` points per band.
LawReport validate_state_laws(const StateCatalog& cat, const PeriodicBackground& bg, const Poly* F = nullptr,
                              int grid = 200, double tol = kDefaultClusterRadius);
/// Same, throwing LawViolation on the first failure.
void enforce_state_laws(const StateCatalog& cat, const PeriodicBackground& bg, const Poly* F = nullptr);

}  // namespace jres
