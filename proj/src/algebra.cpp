#include "jres/algebra.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "jres/error.hpp"

namespace jres {

Poly Poly::from_real(const std::vector<double>& c) {
    std::vector<cplx> v(c.begin(), c.end());
    return Poly(std::move(v));
}

Poly Poly::monomial(int k, cplx lead) {
    std::vector<cplx> v(k + 1, 0.0);
    v[k] = lead;
    return Poly(std::move(v));
}

void Poly::normalize() {
    while (!c_.empty() && c_.back() == cplx(0.0)) c_.pop_back();
}

cplx Poly::operator()(cplx x) const {
    cplx acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<cplx> d(c_.size() - 1);
    for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * double(k);
    return Poly(std::move(d));
}

Poly Poly::truncated(int d) const {
    if (d < 0) return {};
    std::vector<cplx> v(c_.begin(), c_.begin() + std::min<size_t>(c_.size(), size_t(d) + 1));
    return Poly(std::move(v));
}

double Poly::max_abs() const {
    double m = 0.0;
    for (auto& x : c_) m = std::max(m, std::abs(x));
    return m;
}

Poly Poly::trimmed(double rel_tol) const {
    double m = max_abs();
    std::vector<cplx> v = c_;
    while (!v.empty() && std::abs(v.back()) <= rel_tol * m) v.pop_back();
    return Poly(std::move(v));
}

bool Poly::is_real(double tol) const {
    double m = std::max(1.0, max_abs());
    return std::all_of(c_.begin(), c_.end(), [&](cplx x) { return std::abs(x.imag()) <= tol * m; });
}

Poly Poly::real_part() const {
    std::vector<cplx> v;
    v.reserve(c_.size());
    for (auto& x : c_) v.emplace_back(x.real(), 0.0);
    return Poly(std::move(v));
}

std::vector<double> Poly::real_coeffs() const {
    std::vector<double> v;
    v.reserve(c_.size());
    for (auto& x : c_) v.push_back(x.real());
    return v;
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0);
    for (size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    normalize();
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0);
    for (size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    normalize();
    return *this;
}

Poly& Poly::operator*=(cplx s) {
    for (auto& x : c_) x *= s;
    normalize();
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<cplx> r(a.c_.size() + b.c_.size() - 1, 0.0);
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(r));
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<cplx> rem = a.coeffs();
    int db = b.degree();
    int da = a.degree();
    if (da < db) return {Poly{}, a};
    std::vector<cplx> q(da - db + 1, 0.0);
    for (int k = da - db; k >= 0; --k) {
        cplx t = rem[k + db] / b.lead();
        q[k] = t;
        for (int j = 0; j <= db; ++j) rem[k + j] -= t * b[j];
    }
    rem.resize(db);
    return {Poly(std::move(q)), Poly(std::move(rem))};
}

double coeff_distance(const Poly& a, const Poly& b) {
    double scale = std::max({a.max_abs(), b.max_abs(), 1e-300});
    return (a - b).max_abs() / scale;
}

std::vector<cplx> poly_roots_flat(const Poly& p) {
    if (p.is_zero()) fail(Errc::DegreeZero, "roots of the zero polynomial");
    int n = p.degree();
    if (n == 0) return {};
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) comp(i, n - 1) = -p[i] / p.lead();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    std::vector<cplx> r(n);
    Poly dp = p.derivative();
    for (int i = 0; i < n; ++i) {
        cplx x = es.eigenvalues()[i];
        cplx d = dp(x);
        if (std::abs(d) > 0.0) {
            cplx y = x - p(x) / d;
            if (std::abs(p(y)) < std::abs(p(x))) x = y;
        }
        r[i] = x;
    }
    return r;
}

RootList poly_roots(const Poly& p, double cluster_radius) {
    std::vector<cplx> flat = poly_roots_flat(p);
    int n = int(flat.size());
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double scale = std::max(1.0, std::max(std::abs(flat[i]), std::abs(flat[j])));
            if (std::abs(flat[i] - flat[j]) < cluster_radius * scale) parent[find(i)] = find(j);
        }
    RootList out;
    std::vector<int> slot(n, -1);
    for (int i = 0; i < n; ++i) {
        int r = find(i);
        if (slot[r] < 0) {
            slot[r] = int(out.size());
            out.push_back({0.0, 0});
        }
        out[slot[r]].location += flat[i];
        out[slot[r]].multiplicity += 1;
    }
    for (auto& e : out) e.location /= double(e.multiplicity);
    std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) {
        if (a.location.real() != b.location.real()) return a.location.real() < b.location.real();
        return a.location.imag() < b.location.imag();
    });
    return out;
}

Poly poly_from_roots(const RootList& roots, cplx lead) {
    Poly r = Poly::constant(lead);
    for (auto& e : roots)
        for (int k = 0; k < e.multiplicity; ++k) r = r * Poly::linear_factor(e.location);
    return r;
}

Poly poly_from_roots(const std::vector<cplx>& roots, cplx lead) {
    Poly r = Poly::constant(lead);
    for (auto& x : roots) r = r * Poly::linear_factor(x);
    return r;
}

Poly poly_interpolate(const std::vector<cplx>& nodes, const std::vector<cplx>& values) {
    if (nodes.size() != values.size()) fail(Errc::DuplicateNode, "node/value count mismatch");
    int n = int(nodes.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (nodes[i] == nodes[j]) fail(Errc::DuplicateNode, "interpolation nodes must be distinct");
    // Newton divided differences, then expansion into the monomial basis.
    std::vector<cplx> dd = values;
    for (int k = 1; k < n; ++k)
        for (int i = n - 1; i >= k; --i) dd[i] = (dd[i] - dd[i - 1]) / (nodes[i] - nodes[i - k]);
    Poly r;
    for (int k = n - 1; k >= 0; --k) r = r * Poly::linear_factor(nodes[k]) + Poly::constant(dd[k]);
    return r;
}

namespace {

// Seed from the roots: each double root appears as a close pair.
Eigen::VectorXd sqrt_seed_roots(const Poly& p, double lead) {
    std::vector<cplx> r = poly_roots_flat(p), mids;
    std::vector<bool> used(r.size(), false);
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        std::size_t best = i;
        double bd = INFINITY;
        for (std::size_t j = 0; j < r.size(); ++j)
            if (!used[j] && std::abs(r[j] - r[i]) < bd) {
                bd = std::abs(r[j] - r[i]);
                best = j;
            }
        if (best == i) break;
        used[best] = true;
        mids.push_back(0.5 * (r[i] + r[best]));
    }
    std::vector<double> c = poly_from_roots(mids, lead).real_coeffs();
    c.resize(p.degree() / 2 + 1, 0.0);
    return Eigen::Map<Eigen::VectorXd>(c.data(), Eigen::Index(c.size()));
}

Eigen::VectorXd sqrt_seed_topdown(const std::vector<double>& c, int d, double lead) {
    Eigen::VectorXd r = Eigen::VectorXd::Zero(d + 1);
    r[d] = lead;
    for (int k = 1; k <= d; ++k) {
        int deg = 2 * d - k;
        double s = c[deg];
        for (int i = d - k + 1; i <= d; ++i) {
            int j = deg - i;
            if (j > d - k && j <= d) s -= r[i] * r[j];
        }
        r[d - k] = s / (2.0 * r[d]);
    }
    return r;
}

}  // namespace

Poly poly_sqrt(const Poly& p, int leading_sign, double tol) {
    if (p.is_zero()) return {};
    if (!p.is_real(1e-9)) fail(Errc::NotAPerfectSquare, "polynomial is not real");
    if (p.degree() % 2 != 0) fail(Errc::NotAPerfectSquare, "odd degree " + std::to_string(p.degree()));
    std::vector<double> c = p.real_coeffs();
    if (c.back() <= 0.0) fail(Errc::NotAPerfectSquare, "leading coefficient is not positive");
    const int d = p.degree() / 2;
    const double lead = (leading_sign >= 0 ? 1.0 : -1.0) * std::sqrt(c.back());
    Eigen::Map<const Eigen::VectorXd> target(c.data(), Eigen::Index(c.size()));
    auto square = [&](const Eigen::VectorXd& x) {
        Eigen::VectorXd s = Eigen::VectorXd::Zero(2 * d + 1);
        for (int i = 0; i <= d; ++i)
            for (int j = 0; j <= d; ++j) s[i + j] += x[i] * x[j];
        return s;
    };
    // Gauss-Newton on r*r = c over all 2d+1 coefficients.
    auto refine = [&](Eigen::VectorXd r) {
        for (int it = 0; it < 8; ++it) {
            Eigen::VectorXd res = square(r) - target;
            Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(2 * d + 1, d + 1);
            for (int i = 0; i <= d; ++i)
                for (int j = 0; j <= d; ++j) jac(i + j, i) += 2.0 * r[j];
            Eigen::VectorXd trial = r - jac.colPivHouseholderQr().solve(res);
            if ((square(trial) - target).norm() < res.norm()) r = trial;
            else break;
        }
        return r;
    };
    const double scale = target.cwiseAbs().maxCoeff();
    auto error = [&](const Eigen::VectorXd& r) { return (square(r) - target).cwiseAbs().maxCoeff() / scale; };
    Eigen::VectorXd r = refine(sqrt_seed_roots(p, lead));
    if (!(error(r) <= tol)) {
        Eigen::VectorXd alt = refine(sqrt_seed_topdown(c, d, lead));
        if (error(alt) < error(r) || !std::isfinite(error(r))) r = alt;
    }
    double err = error(r);
    if (!(err <= tol)) fail(Errc::NotAPerfectSquare, "relative residual " + std::to_string(err));
    return Poly::from_real(std::vector<double>(r.data(), r.data() + r.size()));
}

std::vector<double> chebyshev_nodes(int n, double lo, double hi) {
    std::vector<double> x(n);
    for (int k = 0; k < n; ++k)
        x[k] = 0.5 * (lo + hi) + 0.5 * (hi - lo) * std::cos(M_PI * (k + 0.5) / n);
    return x;
}

}  // namespace jres
