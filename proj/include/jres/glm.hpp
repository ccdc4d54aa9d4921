#pragma once

#include <vector>

#include "jres/scattering.hpp"

namespace jres {

/// Weight w(t) of the band-j arc, λ(t) = c + r cos t, such that
/// (1/2πi)∮ G dω = Re Σ_j ∫₀^π G(λ(t) + i0) w_j(t) dt.
double measure_weight(const PeriodicBackground& bg, int band, double t);

struct QuadratureOptions {
    int n_start = 64;
    int n_max = 262144;
    double tol = 1e-10;
};

struct GLMKernel {
    Side side = Side::Right;
    int nu = 0;
    /// Table covers lo <= l, m <= hi.
    int lo = 0, hi = 0;
    std::vector<double> table;
    int nodes = 0;
    /// max |F₀ + Σγψ̂ψ̂| over checked entries beyond the cutoff.
    double residue_residual = 0.0;
    double max_imag = 0.0;

    /// Whether F(l,m) vanishes identically by the finite-support law.
    bool beyond_cutoff(int l, int m) const { return side == Side::Right ? l + m >= nu + 1 : l + m <= 0; }
    double F(int l, int m) const;
};

/// F₀(l, m) for l, m in [lo, hi] (row-major) by band quadrature with node
/// doubling; QuadratureNotConverged past n_max nodes.
std::vector<double> glm_F0_table(const ScatteringData& data, int lo, int hi, const QuadratureOptions& opt,
                               int* nodes_used = nullptr);
/// Σ γ_j D(ρ_j)² ψ_l(ρ_j) ψ_m(ρ_j) for one entry.
double glm_bound_sum(const ScatteringData& data, const PeriodicBackground& bg, int l, int m);

/// Kernel F over the window needed for rows nlo..nhi.
GLMKernel glm_kernel_F(const ScatteringData& data, int nlo, int nhi, const QuadratureOptions& opt = {});

struct KernelRow {
    int n = 0;
    /// K[j] = K(n, n ± j), sign by side.
    std::vector<double> K;
    double min_eigenvalue = 0.0;
    double residual = 0.0;
};

KernelRow solve_glm(const GLMKernel& kernel, int n);

struct Recovery {
    Side side = Side::Right;
    int nlo = 0, nhi = 0;
    /// u_n, v_n for nlo <= n <= nhi at index n - nlo.
    std::vector<double> u, v;
    Perturbation pert;
    double leak = 0.0;
    double max_row_residual = 0.0;
    double min_eigenvalue = 0.0;
    int quadrature_nodes = 0;
    double residue_residual = 0.0;
    std::vector<KernelRow> rows;
};

/// Coefficients from kernel rows; support expected in [0, p_max].
Recovery recover_perturbation(const PeriodicBackground& bg, const GLMKernel& kernel, int p_max,
                              double leak_tol = 1e-6);

/// Full inverse step: kernel, rows and recovery for p_max = ceil(ν/2).
Recovery invert_scattering(const ScatteringData& data, const QuadratureOptions& opt = {}, double leak_tol = 1e-6);

}  // namespace jres
