#include "jres/background.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "jres/error.hpp"

namespace jres {

namespace {

constexpr cplx I(0.0, 1.0);

int sgn(double x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

// Small root of ζ² - 2Δζ + 1 = 0, as the reciprocal of the large one to avoid cancellation.
cplx small_root(cplx D) {
    cplx r = std::sqrt(D * D - 1.0);
    cplx z1 = D - r, z2 = D + r;
    return 1.0 / (std::abs(z1) > std::abs(z2) ? z1 : z2);
}

double seg_distance(cplx z, cplx a, cplx b) {
    cplx d = b - a;
    double t = std::clamp(std::real((z - a) * std::conj(d)) / std::norm(d), 0.0, 1.0);
    return std::abs(z - (a + t * d));
}

}  // namespace

BandStructure::Location BandStructure::locate(double x) const {
    if (x < edges.front()) return {false, 0};
    if (x > edges.back()) return {false, q};
    for (int j = 1; j <= q; ++j) {
        if (x >= band_lo(j) && x <= band_hi(j)) return {true, j};
        if (j < q && x > band_hi(j) && x < edges[2 * j]) return {false, j};
    }
    return {true, q};
}

int BandStructure::edge_index(double x, double tol) const {
    for (int k = 0; k < int(edges.size()); ++k)
        if (std::abs(x - edges[k]) < tol * std::max(1.0, std::abs(x))) return k;
    return -1;
}

bool BandStructure::edge_gap_open(int k) const {
    if (k == 0 || k == int(edges.size()) - 1) return true;
    int j = (k + 1) / 2;  // edges 2j-1, 2j bound gap j
    return !closed[j - 1];
}

PeriodicBackground::PeriodicBackground(std::vector<double> a0, std::vector<double> b0, double norm_tol,
                                       double cluster_radius)
    : q_(int(a0.size())), a0_(std::move(a0)), b0_(std::move(b0)), cluster_radius_(cluster_radius) {
    if (q_ < 2) fail(Errc::NormalizationViolated, "period must be at least 2");
    if (int(b0_.size()) != q_) fail(Errc::NormalizationViolated, "a0 and b0 lengths differ");
    double prod = 1.0;
    for (double x : a0_) {
        if (!(x > 0.0)) fail(Errc::NormalizationViolated, "a0 entries must be positive");
        prod *= x;
    }
    if (std::abs(prod - 1.0) > norm_tol)
        fail(Errc::NormalizationViolated, "product of a0 is " + std::to_string(prod) + ", expected 1");

    nmin_ = -3 * q_ - 4;
    nmax_ = 3 * q_ + 4;
    std::tie(theta_, phi_) = fundamental_solutions(nmin_, nmax_);
    Delta_ = ((phi(q_ + 1) + theta(q_)) * 0.5).real_part();
    phih_ = ((phi(q_ + 1) - theta(q_)) * 0.5).real_part();
    phiq_ = phi(q_).real_part();
    thq1_ = theta(q_ + 1).real_part();
    dDelta_ = Delta_.derivative();

    auto& bs = bands_;
    bs.q = q_;
    auto real_sorted = [](const std::vector<cplx>& r) {
        std::vector<double> v;
        for (auto& x : r) v.push_back(x.real());
        std::sort(v.begin(), v.end());
        return v;
    };
    bs.edges = real_sorted(poly_roots_flat(Delta_ * Delta_ - Poly::constant(1.0)));
    bs.mu = real_sorted(poly_roots_flat(phiq_));
    bs.alpha = real_sorted(poly_roots_flat(dDelta_));
    bs.closed.assign(q_ - 1, false);
    bs.h.assign(q_ - 1, 0.0);
    for (int j = 1; j < q_; ++j) {
        double lo = bs.edges[2 * j - 1], hi = bs.edges[2 * j];
        if (hi - lo < 10.0 * cluster_radius_ * std::max(1.0, std::abs(lo))) {
            bs.closed[j - 1] = true;
            bs.edges[2 * j - 1] = bs.edges[2 * j] = 0.5 * (lo + hi);
            continue;
        }
        double s = ((q_ - j) % 2 == 0) ? 1.0 : -1.0;
        bs.h[j - 1] = std::acosh(std::max(1.0, s * Delta_(bs.alpha[j - 1])));
    }
}

std::pair<std::vector<Poly>, std::vector<Poly>> PeriodicBackground::fundamental_solutions(int lo, int hi) const {
    if (lo > 0 || hi < 1) throw std::out_of_range("fundamental range must contain 0 and 1");
    int cnt = hi - lo + 1;
    std::vector<Poly> th(cnt), ph(cnt);
    const Poly lam = Poly::monomial(1);
    for (int which = 0; which < 2; ++which) {
        auto& y = which == 0 ? th : ph;
        auto at = [&](int n) -> Poly& { return y[n - lo]; };
        at(0) = Poly::constant(which == 0 ? 1.0 : 0.0);
        at(1) = Poly::constant(which == 0 ? 0.0 : 1.0);
        for (int n = 1; n < hi; ++n)
            at(n + 1) = ((lam - Poly::constant(b(n))) * at(n) - a(n - 1) * at(n - 1)) * (1.0 / a(n));
        for (int n = 0; n > lo; --n)
            at(n - 1) = ((lam - Poly::constant(b(n))) * at(n) - a(n) * at(n + 1)) * (1.0 / a(n - 1));
    }
    return {std::move(th), std::move(ph)};
}

double PeriodicBackground::a(int n) const { return a0_[((n - 1) % q_ + q_) % q_]; }
double PeriodicBackground::b(int n) const { return b0_[((n - 1) % q_ + q_) % q_]; }

const Poly& PeriodicBackground::theta(int n) const {
    if (n < nmin_ || n > nmax_) throw std::out_of_range("theta index");
    return theta_[n - nmin_];
}

const Poly& PeriodicBackground::phi(int n) const {
    if (n < nmin_ || n > nmax_) throw std::out_of_range("phi index");
    return phi_[n - nmin_];
}

cplx PeriodicBackground::omega1(cplx lambda, int side) const {
    if (lambda.imag() == 0.0) {
        double x = lambda.real();
        double D = Delta_(x);
        if (std::abs(D) <= 1.0) return -double(side) * sgn(dDelta_(x)) * std::sqrt(std::max(0.0, 1.0 - D * D));
        cplx zeta = small_root(D);
        return (zeta - 1.0 / zeta) / (2.0 * I);
    }
    cplx zeta = small_root(Delta_(lambda));
    return (zeta - 1.0 / zeta) / (2.0 * I);
}

cplx PeriodicBackground::omega(const SurfacePoint& pt) const {
    cplx o = omega1(pt.lambda, pt.side);
    return pt.sheet == 2 ? -o : o;
}

cplx PeriodicBackground::weyl_m(cplx lambda, cplx Om, int sign) const {
    cplx ph = phih_(lambda);
    cplx num = ph + double(sign) * I * Om;
    cplx other = ph - double(sign) * I * Om;
    cplx pq = phiq_(lambda);
    double scale = 1.0 + std::abs(ph) + std::abs(Om);
    if (std::abs(pq) >= std::abs(other)) {
        if (std::abs(pq) < 1e-14 * scale) {
            if (std::abs(num) < 1e-10 * scale)
                fail(Errc::SquareRootSingularity, "Dirichlet point at a band edge");
            fail(Errc::PoleAtDirichletPoint, "m has a pole at this Dirichlet point");
        }
        return num / pq;
    }
    // (φ+iΩ)(φ-iΩ) = -φ_q θ_{q+1}
    return -thq1_(lambda) / other;
}

cplx PeriodicBackground::qkappa_real(double x) const {
    const int q = q_;
    double D = Delta_(x);
    auto loc = bands_.locate(x);
    double s = ((q - loc.index) % 2 == 0) ? 1.0 : -1.0;
    double base = -double(q - loc.index) * M_PI;
    if (loc.band) return base - std::acos(std::clamp(s * D, -1.0, 1.0));
    return cplx(base, std::acosh(std::max(1.0, s * D)));
}

cplx PeriodicBackground::qkappa_upper(cplx lambda) const {
    double x = lambda.real();
    cplx w = qkappa_real(x);
    if (lambda.imag() == 0.0) return w;
    const int steps = 256;
    cplx prev = w;
    for (int k = 1; k <= steps; ++k) {
        cplx l(x, lambda.imag() * double(k) / steps);
        cplx base = -I * std::log(small_root(Delta_(l)));
        double shift = std::round((prev.real() - base.real()) / (2.0 * M_PI));
        prev = base + 2.0 * M_PI * shift;
    }
    return prev;
}

PeriodicBackground::Quasi PeriodicBackground::quasimomentum(const SurfacePoint& pt) const {
    cplx lam = pt.lambda;
    cplx qk;
    if (lam.imag() > 0.0 || (lam.imag() == 0.0 && pt.side > 0)) qk = qkappa_upper(lam);
    else qk = -std::conj(qkappa_upper(std::conj(lam)));
    cplx kappa = qk / double(q_);
    if (pt.sheet == 2) kappa = -kappa;
    return {kappa, std::exp(I * kappa)};
}

SurfacePoint PeriodicBackground::lambda_of_z(cplx z) const {
    const double r = cluster_radius_;
    if (std::abs(z) < r) fail(Errc::OnSlit, "z = 0 is the point at infinity");
    for (int j = 1; j < q_; ++j) {
        if (bands_.closed[j - 1]) continue;
        double th = double(q_ - j) * M_PI / q_;
        double ext = std::exp(bands_.h[j - 1] / q_);
        for (int s : {-1, 1}) {
            cplx dir = std::polar(1.0, s * th);
            if (seg_distance(z, dir / ext, dir * ext) < r * std::max(1.0, std::abs(z)))
                fail(Errc::OnSlit, "z lies on the image of gap " + std::to_string(j));
        }
    }
    bool on_circle = std::abs(std::abs(z) - 1.0) < 1e-12;
    int sheet = (std::abs(z) < 1.0 || on_circle) ? 1 : 2;
    cplx zq = std::pow(z, q_);
    cplx rhs = 0.5 * (zq + 1.0 / zq);
    std::vector<cplx> cands = poly_roots_flat(Delta_ - Poly::constant(rhs));
    SurfacePoint best{};
    double best_err = INFINITY;
    for (cplx c : cands) {
        bool real = on_circle || std::abs(c.imag()) < 1e-12 * std::max(1.0, std::abs(c));
        if (real) c = cplx(c.real(), 0.0);
        for (int side : {+1, -1}) {
            if (!real && side < 0) break;
            SurfacePoint pt{c, sheet, side};
            double err = std::abs(quasimomentum(pt).z - z);
            if (err < best_err) {
                best_err = err;
                best = pt;
            }
        }
    }
    return best;
}

cplx PeriodicBackground::bloch_psi(int n, cplx lambda, cplx Om, int sign) const {
    int r = ((n % q_) + q_) % q_;
    int k = (n - r) / q_;
    cplx m = weyl_m(lambda, Om, sign);
    cplx val = theta(r)(lambda) + m * phi(r)(lambda);
    cplx D = Delta_(lambda);
    cplx mult = k >= 0 ? D + double(sign) * I * Om : D - double(sign) * I * Om;
    for (int i = 0; i < std::abs(k); ++i) val *= mult;
    return val;
}

}  // namespace jres
