#pragma once

#include <complex>
#include <vector>

namespace jres {

using cplx = std::complex<double>;

/// Dense polynomial with complex coefficients in ascending order.
class Poly {
public:
    Poly() = default;
    Poly(std::initializer_list<cplx> c) : c_(c) { normalize(); }
    explicit Poly(std::vector<cplx> c) : c_(std::move(c)) { normalize(); }
    static Poly from_real(const std::vector<double>& c);
    static Poly constant(cplx v) { return Poly({v}); }
    static Poly monomial(int k, cplx lead = 1.0);
    /// (λ - r)
    static Poly linear_factor(cplx r) { return Poly({-r, 1.0}); }

    const std::vector<cplx>& coeffs() const { return c_; }
    cplx operator[](int k) const { return k >= 0 && k < int(c_.size()) ? c_[k] : cplx(0.0); }
    bool is_zero() const { return c_.empty(); }
    // -1 for the zero polynomial.
    int degree() const { return int(c_.size()) - 1; }
    cplx lead() const { return c_.empty() ? cplx(0.0) : c_.back(); }

    cplx operator()(cplx x) const;
    double operator()(double x) const { return (*this)(cplx(x)).real(); }

    Poly derivative() const;
    /// Drop coefficients above degree d.
    Poly truncated(int d) const;
    /// Drop leading coefficients whose modulus is below tol * max|coeff|.
    Poly trimmed(double rel_tol) const;
    double max_abs() const;
    bool is_real(double tol = 1e-9) const;
    Poly real_part() const;
    std::vector<double> real_coeffs() const;

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(cplx s);

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(Poly a) { return a *= -1.0; }
    friend Poly operator*(Poly a, cplx s) { return a *= s; }
    friend Poly operator*(cplx s, Poly a) { return a *= s; }
    friend Poly operator*(const Poly& a, const Poly& b);

private:
    void normalize();
    std::vector<cplx> c_;
};

/// Quotient and remainder of a / b.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);

/// Relative coefficient distance max|a_k - b_k| / max(max|a|, max|b|, tiny).
double coeff_distance(const Poly& a, const Poly& b);

struct Root {
    cplx location;
    int multiplicity = 1;
};
using RootList = std::vector<Root>;

constexpr double kDefaultClusterRadius = 1e-7;

/// Companion-matrix eigenvalues, one Newton polish, then clustering of roots
/// closer than radius * max(1, |root|).
RootList poly_roots(const Poly& p, double cluster_radius = kDefaultClusterRadius);
/// Roots without clustering, each listed once per multiplicity.
std::vector<cplx> poly_roots_flat(const Poly& p);

/// Monic product of (λ - r)^m over the list, times lead.
Poly poly_from_roots(const RootList& roots, cplx lead = 1.0);
Poly poly_from_roots(const std::vector<cplx>& roots, cplx lead = 1.0);

Poly poly_interpolate(const std::vector<cplx>& nodes, const std::vector<cplx>& values);

/// Real square root r of p with sign(lead r) = leading_sign.
/// Throws NotAPerfectSquare when r^2 misses p by more than tol relative.
Poly poly_sqrt(const Poly& p, int leading_sign, double tol = 1e-7);

/// Chebyshev points of the first kind on [lo, hi].
std::vector<double> chebyshev_nodes(int n, double lo, double hi);

}  // namespace jres
