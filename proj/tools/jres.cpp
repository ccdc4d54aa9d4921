#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>

#include "jres/error.hpp"
#include "jres/io.hpp"
#include "jres/pipeline.hpp"

using namespace jres;
using io::json;

namespace {

struct Args {
    std::string config, out = ".", format;
    int grid = 0;
    double tol = 0.0;
    long long seed = -1;
    bool plot = false;
};

std::string path_in(const Args& a, const std::string& name) { return (std::filesystem::path(a.out) / name).string(); }

void emit(const Args& a, const std::string& name, const std::string& content) {
    std::string p = path_in(a, name);
    io::write_atomic(p, content);
    std::cout << "wrote " << p << "\n";
}

bool want(const Args& a, const char* fmt) { return a.format.empty() || a.format == fmt; }

io::RunConfig config_of(const Args& a) {
    io::RunConfig c = io::load_config(a.config);
    if (a.grid) {
        if (a.grid < 16) fail(Errc::Schema, "grid must be at least 16");
        c.grid = a.grid;
    }
    if (a.tol > 0.0) c.tol.quadrature_tol = a.tol;
    if (a.seed >= 0) c.seed = std::uint64_t(a.seed);
    return c;
}

QuadratureOptions quad_of(double tol) {
    QuadratureOptions q;
    q.tol = tol;
    return q;
}

PerturbedOperator operator_of(const io::RunConfig& c) {
    if (!c.perturbation) fail(Errc::Schema, "config has no perturbation");
    PeriodicBackground bg(c.a0, c.b0, 1e-9, c.tol.cluster_radius);
    return PerturbedOperator(bg, make_perturbation(bg, c.perturbation->first, c.perturbation->second));
}

StateOptions states_of(const io::RunConfig& c) {
    StateOptions s;
    s.cluster_radius = c.tol.cluster_radius;
    s.lift_tol = c.tol.lift_tol;
    return s;
}

std::string recovery_csv(const Recovery& r) {
    std::string s = "n,u,v\n";
    char buf[128];
    for (std::size_t k = 0; k < r.u.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", r.nlo + int(k), r.u[k], r.v[k]);
        s += buf;
    }
    return s;
}

void cmd_bands(const Args& a) {
    io::RunConfig c = config_of(a);
    PeriodicBackground bg(c.a0, c.b0, 1e-9, c.tol.cluster_radius);
    emit(a, "bands.json", io::dump(io::bands_json(bg)));
    if (a.plot) emit(a, "bands.svg", io::bands_svg(bg));
}

void cmd_states(const Args& a) {
    io::RunConfig c = config_of(a);
    PerturbedOperator op = operator_of(c);
    StateCatalog cat = locate_states(op, states_of(c));
    LawReport laws = validate_state_laws(cat, op.background(), &op.F(), c.grid);
    emit(a, "states.json", io::dump(io::states_json(op, cat, laws)));
    emit(a, "states.svg", io::states_svg(op.background(), cat));
    emit(a, "reconstruction_input.json", io::dump(io::reconstruction_input_json(extract_reconstruction_input(op, cat))));
    if (!laws.pass) fail(Errc::LawViolation, laws.violations.front());
}

void cmd_scatter(const Args& a) {
    io::RunConfig c = config_of(a);
    PeriodicBackground bg(c.a0, c.b0, 1e-9, c.tol.cluster_radius);
    ScatteringData d;
    if (c.perturbation) {
        PerturbedOperator op = operator_of(c);
        d = assemble_scattering_data(op, Side::Right, locate_states(op, states_of(c)));
    } else {
        d = scattering_from_carriers(bg, 0, free_carriers(), {}, Side::Right);
    }
    if (want(a, "json")) emit(a, "scattering.json", io::dump(io::scattering_json(d)));
    if (want(a, "csv")) emit(a, "scattering.csv", io::scattering_csv(bg, d.carriers, c.grid));
}

double tol_or(const Args& a, double fallback) { return a.tol > 0.0 ? a.tol : fallback; }

void report(const Args& a, const Recovery& r, int nu) {
    if (want(a, "json")) emit(a, "glm_report.json", io::dump(io::glm_report_json(r, nu)));
    if (want(a, "csv")) emit(a, "glm_report.csv", recovery_csv(r));
}

void cmd_invert(const Args& a) {
    ScatteringData d = io::scattering_from_json(io::read_json(a.config));
    HypothesisReport h = check_hypothesis1(d, a.grid ? a.grid : 200);
    if (!h.pass) fail(Errc::HypothesisViolation, h.violations.front());
    report(a, invert_scattering(d, quad_of(tol_or(a, 1e-10))), d.nu);
}

void cmd_reconstruct(const Args& a) {
    ReconstructionInput in = io::reconstruction_input_from_json(io::read_json(a.config));
    PeriodicBackground bg(in.a0, in.b0, 1e-9);
    std::string why = reconstruction_hypothesis_failure(in, bg);
    if (!why.empty()) fail(Errc::HypothesisViolation, why);
    ReconstructionResult r = reconstruct(in, Side::Right, quad_of(tol_or(a, 1e-10)));
    if (want(a, "json")) emit(a, "scattering.json", io::dump(io::scattering_json(r.data)));
    report(a, r.recovery, in.nu());
}

void cmd_roundtrip(const Args& a) {
    io::RunConfig c = config_of(a);
    QuadratureOptions q = quad_of(c.tol.quadrature_tol);
    json j = {{"schema_version", io::kSchemaVersion}, {"kind", "roundtrip"}};
    double worst = 0.0;
    if (c.perturbation) {
        PerturbedOperator op = operator_of(c);
        RoundtripResult r = roundtrip(op, q, states_of(c));
        j["configured"] = {{"err_right", r.err_right},
                           {"err_left", r.err_left},
                           {"err_sides", r.err_sides},
                           {"recovered_right", {{"u", r.right.pert.u}, {"v", r.right.pert.v}}},
                           {"recovered_left", {{"u", r.left.pert.u}, {"v", r.left.pert.v}}}};
        worst = r.max_error();
    }
    if (c.draws > 0) {
        std::mt19937_64 rng(c.seed);
        json rows = json::array();
        int failures = 0;
        double rmax = 0.0;
        for (int i = 0; i < c.draws; ++i) {
            Draw dr = random_draw(rng, i);
            json row = {{"index", i}, {"a0", dr.a0}, {"b0", dr.b0}, {"u", dr.u}, {"v", dr.v}};
            try {
                PerturbedOperator op = make_operator(dr);
                RoundtripResult r = roundtrip(op, q, states_of(c));
                row["nu"] = op.nu();
                row["err_right"] = r.err_right;
                row["err_left"] = r.err_left;
                rmax = std::max(rmax, r.max_error());
            } catch (const Error& e) {
                ++failures;
                row["error"] = e.what();
            }
            rows.push_back(row);
        }
        j["random"] = {{"seed", c.seed}, {"draws", c.draws}, {"failures", failures}, {"max_error", rmax}, {"runs", rows}};
        worst = std::max(worst, rmax);
        if (failures > 0) worst = INFINITY;
    }
    j["max_error"] = std::isfinite(worst) ? json(worst) : json(nullptr);
    emit(a, "roundtrip.json", io::dump(j));
    std::cout << "max coefficient error " << worst << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Direct and inverse resonance problems for perturbed periodic Jacobi operators"};
    app.require_subcommand(1);
    Args a;
    auto common = [&](CLI::App* s) {
        s->add_option("--config", a.config, "input config or artifact (JSON)")->required()->check(CLI::ExistingFile);
        s->add_option("--out", a.out, "output directory");
        s->add_option("--grid", a.grid, "grid size (>= 16)");
        s->add_option("--tol", a.tol, "quadrature tolerance");
        s->add_option("--seed", a.seed, "seed for random draws");
        s->add_option("--format", a.format, "restrict output to json or csv")->check(CLI::IsMember({"json", "csv"}));
        s->add_flag("--plot", a.plot, "also write SVG plots");
    };
    struct Cmd {
        const char* name;
        const char* help;
        void (*run)(const Args&);
    };
    const Cmd cmds[] = {
        {"bands", "band structure of the background", cmd_bands},
        {"states", "state catalog and law report", cmd_states},
        {"scatter", "scattering data and S-matrix grid", cmd_scatter},
        {"invert", "GLM inversion of scattering.json", cmd_invert},
        {"reconstruct", "coefficients from reconstruction_input.json", cmd_reconstruct},
        {"roundtrip", "direct then inverse, configured pair and random draws", cmd_roundtrip},
    };
    for (auto& c : cmds) common(app.add_subcommand(c.name, c.help));
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    try {
        for (auto& c : cmds)
            if (app.got_subcommand(c.name)) c.run(a);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return int(e.category());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
