#pragma once

// Eigenvalues of the finite section of a Jacobi operator on sites -N..N with
// Dirichlet ends, through LAPACK's bisection routine for symmetric
// tridiagonal matrices.

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "oracle.hpp"

namespace oracle {

inline std::vector<double> section_eigenvalues(const Jacobi& H, int N, double lo, double hi) {
    int n = 2 * N + 1;
    std::vector<double> d(n), e(n - 1);
    for (int k = 0; k < n; ++k) d[k] = H.b(k - N);
    for (int k = 0; k < n - 1; ++k) e[k] = H.a(k - N);
    std::vector<double> w(n);
    std::vector<lapack_int> iblock(n), isplit(n);
    lapack_int m = 0, nsplit = 0;
    lapack_int info = LAPACKE_dstebz('V', 'E', n, lo, hi, 0, 0, 0.0, d.data(), e.data(), &m, &nsplit, w.data(),
                                     iblock.data(), isplit.data());
    if (info != 0) throw std::runtime_error("dstebz failed");
    w.resize(m);
    std::sort(w.begin(), w.end());
    return w;
}

// Eigenvalues of the perturbed section inside [lo, hi] that are not
// eigenvalues of the unperturbed section. The Dirichlet ends create surface
// states in the gaps; they sit far from the perturbation and appear in both
// sections to machine precision, so the difference removes them.
inline std::vector<double> section_bound_states(const Jacobi& bg, const Jacobi& H, int N, double lo, double hi,
                                                double match = 1e-9) {
    auto pert = section_eigenvalues(H, N, lo, hi);
    auto free = section_eigenvalues(bg, N, lo, hi);
    std::vector<double> out;
    for (double x : pert) {
        bool surface = std::any_of(free.begin(), free.end(), [&](double y) { return std::abs(x - y) < match; });
        if (!surface) out.push_back(x);
    }
    return out;
}

}  // namespace oracle
