#pragma once

#include <vector>

#include "jres/algebra.hpp"

namespace jres {

/// A point of the two-sheeted surface. For real projections the side picks
/// the rim (+1 upper, -1 lower); it is ignored elsewhere.
struct SurfacePoint {
    cplx lambda;
    int sheet = 1;
    int side = +1;
};

struct BandStructure {
    int q = 0;
    /// λ₀⁺ < λ₁⁻ ≤ λ₁⁺ < ... < λ_q⁻; band j is [edges[2j-2], edges[2j-1]],
    /// finite gap j is (edges[2j-1], edges[2j]).
    std::vector<double> edges;
    std::vector<double> mu;
    std::vector<double> alpha;
    std::vector<double> h;
    std::vector<bool> closed;  // gap j at index j-1

    double band_lo(int j) const { return edges[2 * j - 2]; }
    double band_hi(int j) const { return edges[2 * j - 1]; }
    double gap_lo(int j) const { return edges[2 * j - 1]; }
    double gap_hi(int j) const { return edges[2 * j]; }

    struct Location {
        bool band;
        int index;  // band 1..q or gap 0..q (0 and q are the infinite gaps)
    };
    /// Edges count as band points.
    Location locate(double x) const;
    /// Index into edges of an edge within tol*max(1,|x|), or -1.
    int edge_index(double x, double tol) const;
    /// Whether the gap adjacent to edges[k] is open (infinite gaps always are).
    bool edge_gap_open(int k) const;
};

/// The period-q operator with a⁰_n = a0[(n-1) mod q], so a⁰₀ = a⁰_q.
class PeriodicBackground {
public:
    PeriodicBackground(std::vector<double> a0, std::vector<double> b0, double norm_tol = 1e-12,
                       double cluster_radius = kDefaultClusterRadius);

    int q() const { return q_; }
    const std::vector<double>& a0() const { return a0_; }
    const std::vector<double>& b0() const { return b0_; }
    double a(int n) const;
    double b(int n) const;
    double cluster_radius() const { return cluster_radius_; }

    // Fundamental polynomials θ_n, φ_n for nmin() <= n <= nmax().
    int nmin() const { return nmin_; }
    int nmax() const { return nmax_; }
    const Poly& theta(int n) const;
    const Poly& phi(int n) const;
    /// θ_n, φ_n for lo <= n <= hi (any range containing 0 and 1), index n - lo.
    std::pair<std::vector<Poly>, std::vector<Poly>> fundamental_solutions(int lo, int hi) const;

    const Poly& Delta() const { return Delta_; }
    const Poly& dDelta() const { return dDelta_; }
    /// φ = (φ_{q+1} - θ_q)/2
    const Poly& phi_half() const { return phih_; }
    const Poly& phi_q() const { return phiq_; }
    const Poly& theta_q1() const { return thq1_; }

    const BandStructure& bands() const { return bands_; }

    /// Ω on sheet 1; for real λ in a band the side selects the rim.
    cplx omega1(cplx lambda, int side = +1) const;
    cplx omega(const SurfacePoint& pt) const;

    /// m_± = (φ ± iΩ)/φ_q for a given branch value Ω.
    cplx weyl_m(cplx lambda, cplx Om, int sign) const;
    cplx weyl_m(const SurfacePoint& pt, int sign) const { return weyl_m(pt.lambda, omega(pt), sign); }

    struct Quasi {
        cplx kappa;
        cplx z;
    };
    Quasi quasimomentum(const SurfacePoint& pt) const;
    SurfacePoint lambda_of_z(cplx z) const;

    /// ψ_n^± = θ_n + m_± φ_n, evaluated through the Floquet shift
    /// ψ_{n+q}^± = (Δ ± iΩ) ψ_n^±.
    cplx bloch_psi(int n, cplx lambda, cplx Om, int sign) const;
    cplx bloch_psi(int n, const SurfacePoint& pt, int sign) const {
        return bloch_psi(n, pt.lambda, omega(pt), sign);
    }

private:
    cplx qkappa_real(double x) const;
    cplx qkappa_upper(cplx lambda) const;

    int q_;
    std::vector<double> a0_, b0_;
    double cluster_radius_;
    int nmin_, nmax_;
    std::vector<Poly> theta_, phi_;
    Poly Delta_, dDelta_, phih_, phiq_, thq1_;
    BandStructure bands_;
};

}  // namespace jres
