#include "jres/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "jres/error.hpp"

namespace jres::io {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void schema(const std::string& msg) { fail(Errc::Schema, msg); }

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) schema(std::string("missing field '") + key + "'");
    return j.at(key);
}

double number(const json& j, const std::string& what) {
    if (!j.is_number()) schema(what + " must be a number");
    double x = j.get<double>();
    if (!std::isfinite(x)) schema(what + " must be finite");
    return x;
}

int integer(const json& j, const std::string& what) {
    if (!j.is_number_integer()) schema(what + " must be an integer");
    return j.get<int>();
}

std::vector<double> reals(const json& j, const std::string& what) {
    if (!j.is_array()) schema(what + " must be an array");
    std::vector<double> out;
    for (std::size_t k = 0; k < j.size(); ++k) out.push_back(number(j[k], what + "[" + std::to_string(k) + "]"));
    return out;
}

void check_header(const json& j, const char* kind) {
    if (!j.is_object()) schema("artifact must be a JSON object");
    if (integer(field(j, "schema_version"), "schema_version") != kSchemaVersion)
        schema("unsupported schema_version");
    if (!field(j, "kind").is_string() || j.at("kind").get<std::string>() != kind)
        schema(std::string("expected an artifact of kind '") + kind + "'");
}

json header(const char* kind) { return {{"schema_version", kSchemaVersion}, {"kind", kind}}; }

std::pair<std::vector<double>, std::vector<double>> parse_background(const json& j) {
    int q = integer(field(j, "q"), "background.q");
    if (q < 1) schema("background.q must be positive");
    auto a0 = reals(field(j, "a0"), "background.a0");
    auto b0 = reals(field(j, "b0"), "background.b0");
    if (int(a0.size()) != q || int(b0.size()) != q) schema("background.a0 and background.b0 must have q entries");
    return {a0, b0};
}

json kind_json(StateKind k) { return state_kind_name(k); }

json state_json(const PeriodicBackground& bg, const State& s) {
    cplx z = bg.quasimomentum(s.location).z;
    return {{"lambda", cplx_to_json(s.location.lambda)},
            {"sheet", s.location.sheet},
            {"kind", kind_json(s.kind)},
            {"multiplicity", s.multiplicity},
            {"z", cplx_to_json(z)},
            {"residual", s.residual}};
}

}  // namespace

RunConfig parse_config(const json& j) {
    if (!j.is_object()) schema("config must be a JSON object");
    RunConfig c;
    std::tie(c.a0, c.b0) = parse_background(field(j, "background"));
    if (j.contains("perturbation")) {
        const json& p = j.at("perturbation");
        int pp = integer(field(p, "p"), "perturbation.p");
        auto u = reals(field(p, "u"), "perturbation.u");
        auto v = reals(field(p, "v"), "perturbation.v");
        if (pp < 0 || int(u.size()) != pp + 1 || int(v.size()) != pp + 1)
            schema("perturbation.u and perturbation.v must have p + 1 entries");
        c.perturbation = std::make_pair(u, v);
    }
    if (j.contains("tolerances")) {
        const json& t = j.at("tolerances");
        if (!t.is_object()) schema("tolerances must be an object");
        if (t.contains("cluster_radius")) c.tol.cluster_radius = number(t["cluster_radius"], "cluster_radius");
        if (t.contains("quadrature_tol")) c.tol.quadrature_tol = number(t["quadrature_tol"], "quadrature_tol");
        if (t.contains("lift_tol")) c.tol.lift_tol = number(t["lift_tol"], "lift_tol");
        if (!(c.tol.cluster_radius > 0 && c.tol.quadrature_tol > 0 && c.tol.lift_tol > 0))
            schema("tolerances must be positive");
    }
    if (j.contains("grid")) c.grid = integer(j["grid"], "grid");
    if (c.grid < 16) schema("grid must be at least 16");
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) schema("seed must be a non-negative integer");
        c.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("draws")) c.draws = integer(j["draws"], "draws");
    if (c.draws < 0) schema("draws must be non-negative");
    return c;
}

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) schema("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        schema(path + ": " + e.what());
    }
}

RunConfig load_config(const std::string& path) { return parse_config(read_json(path)); }

void write_atomic(const std::string& path, const std::string& content) {
    fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, target);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json cplx_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx cplx_from_json(const json& j) {
    if (j.is_number()) return number(j, "value");
    if (!j.is_array() || j.size() != 2) schema("complex values are [re, im] pairs");
    return {number(j[0], "re"), number(j[1], "im")};
}

json poly_to_json(const Poly& p) {
    json out = json::array();
    for (cplx c : p.coeffs()) out.push_back(cplx_to_json(c));
    if (out.empty()) out.push_back(cplx_to_json(0.0));
    return out;
}

Poly poly_from_json(const json& j) {
    if (!j.is_array() || j.empty()) schema("polynomials are non-empty coefficient arrays");
    std::vector<cplx> c;
    for (auto& x : j) c.push_back(cplx_from_json(x));
    return Poly(c);
}

json background_json(const PeriodicBackground& bg) {
    return {{"q", bg.q()}, {"a0", bg.a0()}, {"b0", bg.b0()}};
}

json bands_json(const PeriodicBackground& bg) {
    const auto& bs = bg.bands();
    json j = header("bands");
    j["background"] = background_json(bg);
    j["edges"] = bs.edges;
    j["mu"] = bs.mu;
    j["alpha"] = bs.alpha;
    j["h"] = bs.h;
    json gaps = json::array();
    for (int g = 1; g < bg.q(); ++g)
        gaps.push_back({{"index", g}, {"lo", bs.gap_lo(g)}, {"hi", bs.gap_hi(g)}, {"closed", bool(bs.closed[g - 1])}});
    j["gaps"] = gaps;
    j["Delta"] = poly_to_json(bg.Delta());
    j["phi_q"] = poly_to_json(bg.phi_q());
    return j;
}

json states_json(const PerturbedOperator& op, const StateCatalog& cat, const LawReport& laws) {
    const auto& bg = op.background();
    json j = header("states");
    j["background"] = background_json(bg);
    j["perturbation"] = {{"p", op.p()}, {"u", op.perturbation().u}, {"v", op.perturbation().v}};
    j["constants"] = {{"A_p", op.Ap()}, {"c1", op.c1()}, {"c2", op.c2()}, {"c3", op.c3()}, {"nu", op.nu()}};
    j["F"] = poly_to_json(op.F());
    j["kappa"] = cat.kappa;
    j["expected_kappa"] = cat.expected_kappa;
    json st = json::array(), ex = json::array();
    for (auto& s : cat.states) st.push_back(state_json(bg, s));
    for (auto& s : cat.excluded) ex.push_back(state_json(bg, s));
    j["states"] = st;
    j["excluded"] = ex;
    j["law_report"] = {{"pass", laws.pass}, {"violations", laws.violations}, {"min_F_on_bands", laws.min_F_on_bands}};
    return j;
}

json scattering_json(const ScatteringData& d) {
    json j = header("scattering");
    j["background"] = {{"q", int(d.a0.size())}, {"a0", d.a0}, {"b0", d.b0}};
    j["side"] = side_name(d.side);
    j["nu"] = d.nu;
    j["rho"] = d.rho;
    j["gamma"] = d.gamma();
    j["w_hat"] = {{"one_plus_A", poly_to_json(d.carriers.one_plus_A)}, {"J", poly_to_json(d.carriers.J)}};
    j["s_carrier"] = {{"P1", poly_to_json(d.carriers.P1)}, {"P2", poly_to_json(d.carriers.P2)}};
    j["pole_split"] = {{"M_plus", d.split.M_plus}, {"M_minus", d.split.M_minus}, {"M_edge", d.split.M_edge}};
    return j;
}

ScatteringData scattering_from_json(const json& j) {
    check_header(j, "scattering");
    auto [a0, b0] = parse_background(field(j, "background"));
    PeriodicBackground bg(a0, b0, 1e-9);
    ScatteringData d;
    d.a0 = a0;
    d.b0 = b0;
    const json& side = field(j, "side");
    if (side == "right") d.side = Side::Right;
    else if (side == "left") d.side = Side::Left;
    else schema("side must be 'right' or 'left'");
    d.nu = integer(field(j, "nu"), "nu");
    if (d.nu < 0) schema("nu must be non-negative");
    d.rho = reals(field(j, "rho"), "rho");
    auto gamma = reals(field(j, "gamma"), "gamma");
    if (gamma.size() != d.rho.size()) schema("rho and gamma must have equal length");
    const json& w = field(j, "w_hat");
    const json& s = field(j, "s_carrier");
    d.carriers = {poly_from_json(field(w, "one_plus_A")), poly_from_json(field(w, "J")), poly_from_json(field(s, "P1")),
                  poly_from_json(field(s, "P2"))};
    d.split = pole_split(bg);
    for (std::size_t k = 0; k < d.rho.size(); ++k) {
        if (k > 0 && !(d.rho[k] > d.rho[k - 1])) fail(Errc::HypothesisViolation, "rho must be strictly increasing");
        if (!(gamma[k] > 0.0))
            fail(Errc::HypothesisViolation, "norming constant at rho = " + std::to_string(d.rho[k]) + " is not positive");
        cplx wp = d.carriers.w_hat_prime(bg, d.rho[k], bg.omega1(d.rho[k]));
        double other = 1.0 / (gamma[k] * std::norm(wp));
        d.gamma_plus.push_back(d.side == Side::Right ? gamma[k] : other);
        d.gamma_minus.push_back(d.side == Side::Right ? other : gamma[k]);
    }
    return d;
}

json glm_report_json(const Recovery& r, int nu) {
    json j = header("glm_report");
    j["side"] = side_name(r.side);
    j["nu"] = nu;
    j["quadrature_nodes"] = r.quadrature_nodes;
    j["residue_residual"] = r.residue_residual;
    j["min_eigenvalue"] = r.min_eigenvalue;
    j["max_row_residual"] = r.max_row_residual;
    j["leak"] = r.leak;
    j["recovered"] = {{"p", r.pert.p}, {"nu", r.pert.nu}, {"u", r.pert.u}, {"v", r.pert.v}};
    j["window"] = {{"n_lo", r.nlo}, {"n_hi", r.nhi}, {"u", r.u}, {"v", r.v}};
    return j;
}

json reconstruction_input_json(const ReconstructionInput& in) {
    json j = header("reconstruction_input");
    j["background"] = {{"q", int(in.a0.size())}, {"a0", in.a0}, {"b0", in.b0}};
    json st = json::array();
    for (auto& s : in.states)
        st.push_back({{"lambda", cplx_to_json(s.lambda)}, {"sheet", s.sheet}, {"multiplicity", s.multiplicity}});
    j["states"] = st;
    json rz = json::array();
    for (cplx r : in.r_zeros) rz.push_back(cplx_to_json(r));
    j["r_zeros"] = rz;
    j["A"] = poly_to_json(in.A);
    j["phi0_plus"] = poly_to_json(in.phi0_plus);
    j["c3"] = in.c3;
    j["v0"] = in.v0;
    return j;
}

ReconstructionInput reconstruction_input_from_json(const json& j) {
    check_header(j, "reconstruction_input");
    ReconstructionInput in;
    std::tie(in.a0, in.b0) = parse_background(field(j, "background"));
    const json& st = field(j, "states");
    if (!st.is_array()) schema("states must be an array");
    for (auto& s : st) {
        StateSpec sp;
        sp.lambda = cplx_from_json(field(s, "lambda"));
        sp.sheet = integer(field(s, "sheet"), "sheet");
        if (sp.sheet != 1 && sp.sheet != 2) schema("sheet must be 1 or 2");
        sp.multiplicity = s.contains("multiplicity") ? integer(s["multiplicity"], "multiplicity") : 1;
        if (sp.multiplicity < 1) schema("multiplicity must be positive");
        in.states.push_back(sp);
    }
    const json& rz = field(j, "r_zeros");
    if (!rz.is_array()) schema("r_zeros must be an array");
    for (auto& r : rz) in.r_zeros.push_back(cplx_from_json(r));
    in.A = poly_from_json(field(j, "A"));
    in.phi0_plus = poly_from_json(field(j, "phi0_plus"));
    in.c3 = number(field(j, "c3"), "c3");
    in.v0 = number(field(j, "v0"), "v0");
    return in;
}

std::string scattering_csv(const PeriodicBackground& bg, const Carriers& c, int grid) {
    const int q = bg.q();
    std::ostringstream os;
    os.precision(17);
    os << "z_re,z_im,T_re,T_im,Rm_re,Rm_im,Rp_re,Rp_im\n";
    for (int k = 0; k < grid; ++k) {
        double t = 2.0 * M_PI * (k + 0.5) / grid;
        cplx z = std::polar(1.0, t);
        // Keep clear of the band-edge images z^{2q} = 1.
        if (std::abs(std::pow(z, 2 * q) - 1.0) < 1e-8) z = std::polar(1.0, t + 1e-6);
        SMatrix s = smatrix(bg, c, z);
        os << z.real() << ',' << z.imag() << ',' << s.T.real() << ',' << s.T.imag() << ',' << s.R_minus.real() << ','
           << s.R_minus.imag() << ',' << s.R_plus.real() << ',' << s.R_plus.imag() << '\n';
    }
    return os.str();
}

namespace {

struct Canvas {
    std::ostringstream os;
    Canvas(int w, int h) {
        os.precision(6);
        os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 " << w
           << ' ' << h << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    }
    void line(double x1, double y1, double x2, double y2, const char* color, double width) {
        os << "<line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2 << "\" y2=\"" << y2 << "\" stroke=\"" << color
           << "\" stroke-width=\"" << width << "\"/>\n";
    }
    void circle(double cx, double cy, double r, const char* stroke, const char* fill) {
        os << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"" << r << "\" stroke=\"" << stroke << "\" fill=\""
           << fill << "\"/>\n";
    }
    void text(double x, double y, const std::string& s) {
        os << "<text x=\"" << x << "\" y=\"" << y << "\" font-family=\"sans-serif\" font-size=\"12\">" << s << "</text>\n";
    }
    std::string finish() {
        os << "</svg>\n";
        return os.str();
    }
};

// z-plane panel centred at (cx, cy): unit circle plus the slits of the open gaps.
double zplane(Canvas& c, const PeriodicBackground& bg, double cx, double cy, double half, double rmax = 1.0) {
    const auto& bs = bg.bands();
    const int q = bg.q();
    for (int g = 1; g < q; ++g)
        if (!bs.closed[g - 1]) rmax = std::max(rmax, std::exp(bs.h[g - 1] / q));
    double scale = 0.9 * half / rmax;
    c.line(cx - half, cy, cx + half, cy, "#bbbbbb", 1);
    c.line(cx, cy - half, cx, cy + half, "#bbbbbb", 1);
    c.circle(cx, cy, scale, "black", "none");
    for (int g = 1; g < q; ++g) {
        if (bs.closed[g - 1]) continue;
        double h = bs.h[g - 1] / q;
        for (double s : {+1.0, -1.0}) {
            double ang = s * (q - g) * M_PI / q;
            double r0 = std::exp(-h), r1 = std::exp(h);
            c.line(cx + scale * r0 * std::cos(ang), cy - scale * r0 * std::sin(ang), cx + scale * r1 * std::cos(ang),
                   cy - scale * r1 * std::sin(ang), "#c0392b", 2);
        }
    }
    return scale;
}

}  // namespace

std::string bands_svg(const PeriodicBackground& bg) {
    const auto& bs = bg.bands();
    Canvas c(900, 420);
    double lo = bs.edges.front(), hi = bs.edges.back();
    double pad = 0.1 * (hi - lo) + 0.5;
    auto X = [&](double x) { return 40 + 400 * (x - lo + pad) / (hi - lo + 2 * pad); };
    c.text(40, 30, "spectrum on the real line");
    c.line(X(lo - pad), 210, X(hi + pad), 210, "#888888", 1);
    for (int j = 1; j <= bg.q(); ++j) c.line(X(bs.band_lo(j)), 210, X(bs.band_hi(j)), 210, "#2471a3", 8);
    for (double m : bs.mu) c.circle(X(m), 230, 4, "#c0392b", "none");
    c.text(500, 30, "z-plane with slits");
    zplane(c, bg, 680, 220, 180);
    return c.finish();
}

std::string states_svg(const PeriodicBackground& bg, const StateCatalog& cat) {
    Canvas c(500, 500);
    c.text(20, 24, "states in the z-plane");
    double rmax = 1.0;
    std::vector<std::pair<cplx, StateKind>> pts;
    for (auto& s : cat.states) {
        cplx z = bg.quasimomentum(s.location).z;
        pts.emplace_back(z, s.kind);
        rmax = std::max(rmax, std::abs(z));
    }
    const double cx = 250, cy = 260, half = 220;
    double scale = zplane(c, bg, cx, cy, half, rmax);
    for (auto& [z, kind] : pts) {
        double x = cx + scale * z.real(), y = cy - scale * z.imag();
        switch (kind) {
            case StateKind::Bound: c.circle(x, y, 5, "#1e8449", "#1e8449"); break;
            case StateKind::Antibound: c.circle(x, y, 5, "#ca6f1e", "none"); break;
            case StateKind::Resonance:
                c.line(x - 5, y - 5, x + 5, y + 5, "#6c3483", 2);
                c.line(x - 5, y + 5, x + 5, y - 5, "#6c3483", 2);
                break;
            case StateKind::Virtual: c.circle(x, y, 7, "#2471a3", "none"); break;
        }
    }
    c.text(20, 490, "filled: bound, open: antibound, cross: resonance, ring: virtual");
    return c.finish();
}

}  // namespace jres::io
