#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "jres/reconstruct.hpp"

namespace jres {

struct Draw {
    std::vector<double> a0, b0, u, v;
};

/// One random (background, perturbation) pair with q in {2,3}, p in {1,2,3}
/// and ν >= 2. Every third index has u_p = 0 (odd ν) when p >= 2.
Draw random_draw(std::mt19937_64& rng, int index);
PerturbedOperator make_operator(const Draw& d);

/// max over n of |u_n - u'_n|, |v_n - v'_n| with zero padding.
double coefficient_error(const Perturbation& a, const Perturbation& b);

struct RoundtripResult {
    double err_right = 0.0, err_left = 0.0;
    /// Disagreement between the two sides.
    double err_sides = 0.0;
    Recovery right, left;
    double max_error() const { return std::max(err_right, err_left); }
};

RoundtripResult roundtrip(const PerturbedOperator& op, const QuadratureOptions& opt = {},
                          const StateOptions& sopt = {});

struct ReconstructionRoundtrip {
    /// Empty when the hypotheses hold.
    std::string hypothesis_failure;
    double err = 0.0;
    ReconstructionResult result;
};

/// Direct data, then reconstruction; skips (with a reason) when hypotheses fail.
ReconstructionRoundtrip reconstruction_roundtrip(const PerturbedOperator& op, Side side = Side::Right,
                                                 const QuadratureOptions& opt = {});

}  // namespace jres
