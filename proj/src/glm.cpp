#include "jres/glm.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "jres/error.hpp"

namespace jres {

namespace {
constexpr cplx I(0.0, 1.0);

// ψ_l^sign for l = lo..hi at one point, via the Floquet shift.
void bloch_row(const PeriodicBackground& bg, cplx lambda, cplx Om, int sign, int lo, int hi, std::vector<cplx>& out) {
    const int q = bg.q();
    out.resize(hi - lo + 1);
    cplx mult = bg.Delta()(lambda) + double(sign) * I * Om;
    for (int l = lo; l <= hi; ++l)
        out[l - lo] = l - q >= lo ? out[l - q - lo] * mult : bg.bloch_psi(l, lambda, Om, sign);
}
}  // namespace

namespace {
// c + r cos t, measured from the nearer edge to keep it off the edge itself.
double band_point(double lo, double hi, double t) {
    double r = 0.5 * (hi - lo);
    return t < 0.5 * M_PI ? hi - 2.0 * r * std::pow(std::sin(0.5 * t), 2) : lo + 2.0 * r * std::pow(std::cos(0.5 * t), 2);
}
}  // namespace

double measure_weight(const PeriodicBackground& bg, int band, double t) {
    const auto& bs = bg.bands();
    double lo = bs.band_lo(band), hi = bs.band_hi(band);
    double x = band_point(lo, hi, t);
    double ratio = 1.0;
    for (double m : bs.mu) ratio *= (x - m);
    for (double a : bs.alpha) ratio /= (x - a);
    // 1 - Δ² = L²(x-lo)(hi-x)∏'(x-E) and (x-lo)(hi-x) = (r sin t)², so the
    // band's own edges drop out and the weight stays finite at t = 0, π.
    double rest = 1.0;
    for (int k = 0; k < int(bs.edges.size()); ++k)
        if (k != 2 * band - 2 && k != 2 * band - 1) rest *= x - bs.edges[k];
    double L = std::abs(bg.Delta().lead().real());
    return ratio * std::abs(bg.dDelta()(x)) / (bg.q() * L * std::sqrt(std::abs(rest)) * M_PI);
}

std::vector<double> glm_F0_table(const ScatteringData& data, int lo, int hi, const QuadratureOptions& opt,
                                 int* nodes_used) {
    PeriodicBackground bg = data.background();
    const int sign = side_sign(data.side);
    const int w = hi - lo + 1;
    std::vector<cplx> psi;
    auto evaluate = [&](int N) {
        std::vector<cplx> acc(std::size_t(w) * w, 0.0);
        for (int j = 1; j <= bg.q(); ++j) {
            double blo = bg.bands().band_lo(j), bhi = bg.bands().band_hi(j);
            if (bhi - blo <= 0.0) continue;
            for (int k = 0; k < N; ++k) {
                double t = (k + 0.5) * M_PI / N;
                double dt = M_PI / N;
                double x = band_point(blo, bhi, t);
                cplx Om = bg.omega1(x, +1);
                if (Om == 0.0) continue;
                double wt = measure_weight(bg, j, t) * dt;
                cplx g = data.reflection(bg, x, +1) * wt;
                bloch_row(bg, x, Om, sign, lo, hi, psi);
                for (int a = 0; a < w; ++a) {
                    cplx ga = g * psi[a];
                    for (int b = a; b < w; ++b) acc[std::size_t(a) * w + b] += ga * psi[b];
                }
            }
        }
        std::vector<double> out(std::size_t(w) * w);
        for (int a = 0; a < w; ++a)
            for (int b = a; b < w; ++b) out[std::size_t(a) * w + b] = out[std::size_t(b) * w + a] = acc[std::size_t(a) * w + b].real();
        return out;
    };
    int N = opt.n_start;
    std::vector<double> prev = evaluate(N);
    while (true) {
        N *= 2;
        if (N > opt.n_max)
            fail(Errc::QuadratureNotConverged, "F0 table not stable to " + std::to_string(opt.tol) + " with " +
                                                   std::to_string(opt.n_max) + " nodes per band");
        std::vector<double> cur = evaluate(N);
        double diff = 0.0, scale = 1.0;
        for (std::size_t i = 0; i < cur.size(); ++i) {
            diff = std::max(diff, std::abs(cur[i] - prev[i]));
            scale = std::max(scale, std::abs(cur[i]));
        }
        prev = std::move(cur);
        if (diff < opt.tol * scale) break;
    }
    if (nodes_used) *nodes_used = N;
    return prev;
}

double glm_bound_sum(const ScatteringData& data, const PeriodicBackground& bg, int l, int m) {
    const int sign = side_sign(data.side);
    const Poly& D = sign > 0 ? data.split.D_plus : data.split.D_minus;
    const auto& gam = data.gamma();
    cplx s = 0.0;
    for (std::size_t k = 0; k < data.rho.size(); ++k) {
        double r = data.rho[k];
        cplx Om = bg.omega1(r);
        cplx d = D(cplx(r));
        s += gam[k] * d * d * bg.bloch_psi(l, r, Om, sign) * bg.bloch_psi(m, r, Om, sign);
    }
    return s.real();
}

double GLMKernel::F(int l, int m) const {
    if (beyond_cutoff(l, m)) return 0.0;
    if (l < lo || l > hi || m < lo || m > hi) throw std::out_of_range("GLM kernel entry outside the computed window");
    int w = hi - lo + 1;
    return table[std::size_t(l - lo) * w + (m - lo)];
}

GLMKernel glm_kernel_F(const ScatteringData& data, int nlo, int nhi, const QuadratureOptions& opt) {
    PeriodicBackground bg = data.background();
    GLMKernel K;
    K.side = data.side;
    K.nu = data.nu;
    if (data.side == Side::Right) {
        K.lo = nlo;
        K.hi = data.nu - nlo;
    } else {
        K.lo = 1 - nhi;
        K.hi = nhi;
    }
    const int qlo = K.lo - 2, qhi = K.hi + 2, qw = qhi - qlo + 1;
    std::vector<double> F0 = glm_F0_table(data, qlo, qhi, opt, &K.nodes);
    const int w = K.hi - K.lo + 1;
    K.table.assign(std::size_t(w) * w, 0.0);
    for (int l = qlo; l <= qhi; ++l)
        for (int m = l; m <= qhi; ++m) {
            double f0 = F0[std::size_t(l - qlo) * qw + (m - qlo)];
            if (K.beyond_cutoff(l, m)) {
                K.residue_residual = std::max(K.residue_residual, std::abs(f0 + glm_bound_sum(data, bg, l, m)));
                continue;
            }
            if (l < K.lo || m > K.hi) continue;
            double f = f0 + glm_bound_sum(data, bg, l, m);
            K.table[std::size_t(l - K.lo) * w + (m - K.lo)] = f;
            K.table[std::size_t(m - K.lo) * w + (l - K.lo)] = f;
        }
    return K;
}

KernelRow solve_glm(const GLMKernel& kernel, int n) {
    const int s = side_sign(kernel.side);
    const int L = (s > 0 ? std::max(1, kernel.nu + 1 - 2 * n) : std::max(1, 2 * n)) + 2;
    Eigen::MatrixXd M = Eigen::MatrixXd::Identity(L, L);
    for (int i = 0; i < L; ++i)
        for (int j = 0; j < L; ++j) M(i, j) += kernel.F(n + s * i, n + s * j);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
    KernelRow row;
    row.n = n;
    row.min_eigenvalue = es.eigenvalues().minCoeff();
    if (!(row.min_eigenvalue > 0.0))
        fail(Errc::NotPositive, "I + F_n is not positive definite at n = " + std::to_string(n) +
                                    " (smallest eigenvalue " + std::to_string(row.min_eigenvalue) + ")");
    Eigen::VectorXd e0 = Eigen::VectorXd::Unit(L, 0);
    Eigen::VectorXd x = M.llt().solve(e0);
    row.residual = (M * x - e0).cwiseAbs().maxCoeff();
    double knn = std::sqrt(x[0]);
    row.K.resize(L);
    for (int j = 0; j < L; ++j) row.K[j] = x[j] / knn;
    return row;
}

Recovery recover_perturbation(const PeriodicBackground& bg, const GLMKernel& kernel, int p_max, double leak_tol) {
    Recovery rec;
    rec.side = kernel.side;
    rec.nlo = -2;
    rec.nhi = p_max + 2;
    const int rlo = rec.nlo - 1, rhi = rec.nhi + 1;
    rec.min_eigenvalue = INFINITY;
    for (int n = rlo; n <= rhi; ++n) {
        rec.rows.push_back(solve_glm(kernel, n));
        rec.max_row_residual = std::max(rec.max_row_residual, rec.rows.back().residual);
        rec.min_eigenvalue = std::min(rec.min_eigenvalue, rec.rows.back().min_eigenvalue);
    }
    auto row = [&](int n) -> const KernelRow& { return rec.rows[n - rlo]; };
    for (int n = rec.nlo; n <= rec.nhi; ++n) {
        double a, v;
        if (kernel.side == Side::Right) {
            a = bg.a(n) * row(n + 1).K[0] / row(n).K[0];
            v = bg.a(n) * row(n).K[1] / row(n).K[0] - bg.a(n - 1) * row(n - 1).K[1] / row(n - 1).K[0];
        } else {
            a = bg.a(n) * row(n).K[0] / row(n + 1).K[0];
            v = bg.a(n - 1) * row(n).K[1] / row(n).K[0] - bg.a(n) * row(n + 1).K[1] / row(n + 1).K[0];
        }
        rec.u.push_back(a - bg.a(n));
        rec.v.push_back(v);
    }
    std::vector<double> u, v;
    for (int n = rec.nlo; n <= rec.nhi; ++n) {
        double un = rec.u[n - rec.nlo], vn = rec.v[n - rec.nlo];
        if (n < 0 || n > p_max) {
            rec.leak = std::max(rec.leak, std::abs(un) + std::abs(vn));
        } else {
            u.push_back(un);
            v.push_back(vn);
        }
    }
    // Odd ν means u_p = 0 by class.
    if (kernel.nu % 2 == 1) {
        rec.leak = std::max(rec.leak, std::abs(u.back()));
        u.back() = 0.0;
    }
    if (rec.leak > leak_tol)
        fail(Errc::SupportLeak, "recovered perturbation leaks outside [0, p] by " + std::to_string(rec.leak));
    double size = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) size = std::max({size, std::abs(u[k]), std::abs(v[k])});
    // Reflectionless data without bound states is the background itself.
    if (size <= leak_tol) {
        rec.pert.p = 0;
        rec.pert.u = rec.pert.v = {0.0};
        return rec;
    }
    rec.pert = make_perturbation(bg, u, v);
    return rec;
}

Recovery invert_scattering(const ScatteringData& data, const QuadratureOptions& opt, double leak_tol) {
    const int p_max = (data.nu + 1) / 2;
    GLMKernel K = glm_kernel_F(data, -3, p_max + 3, opt);
    Recovery rec = recover_perturbation(data.background(), K, p_max, leak_tol);
    rec.quadrature_nodes = K.nodes;
    rec.residue_residual = K.residue_residual;
    return rec;
}

}  // namespace jres
