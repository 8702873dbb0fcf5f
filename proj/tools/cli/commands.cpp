#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bzwave/analysis.hpp"
#include "bzwave/error.hpp"
#include "bzwave/iteration.hpp"
#include "bzwave/pde_sim.hpp"
#include "bzwave/speed_bounds.hpp"
#include "bzwave/supersolutions.hpp"
#include "checks.hpp"
#include "cli.hpp"
#include "config.hpp"
#include "csv_io.hpp"

namespace bzwave::cli {

namespace {

using json = nlohmann::json;

// Raised by a command to end with a specific exit code and message.
struct Failure {
    int code;
    std::string message;
};

BzParams params_of(const RunConfig& c, bool need_all = true) {
    if (need_all && (!c.r || !c.b)) throw UsageError("--r and --b are required");
    try {
        return BzParams(c.r.value_or(0.0), c.b.value_or(0.0), c.h.value_or(0.0));
    } catch (const Error& e) {
        throw UsageError(std::string("invalid parameters: ") + e.what());
    }
}

// Output sink: the --out file when given, otherwise `fallback`.
class Sink {
public:
    Sink(const std::optional<std::string>& path, std::ostream& fallback) : os_(&fallback) {
        if (path) {
            file_ = std::make_unique<std::ofstream>(*path, std::ios::binary);
            if (!*file_) throw Failure{Exit::computation, "cannot write '" + *path + "'"};
            os_ = file_.get();
        }
    }
    std::ostream& operator*() { return *os_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* os_;
};

std::string opt_num(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

// ---------------------------------------------------------------- bounds

int cmd_bounds(const RunConfig& c, std::ostream& out) {
    BzParams base = params_of(c);
    const std::string format = c.format.value_or("csv");
    if (format != "csv" && format != "json") throw UsageError("--format must be csv or json");
    std::vector<BzParams> points;
    if (c.sweep) {
        const std::string& s = *c.sweep;
        const auto eq = s.find('=');
        const auto c1 = s.find(':', eq == std::string::npos ? 0 : eq);
        const auto c2 = c1 == std::string::npos ? std::string::npos : s.find(':', c1 + 1);
        if (eq == std::string::npos || c1 == std::string::npos || c2 == std::string::npos) {
            throw UsageError("--sweep must look like key=lo:hi:n");
        }
        const std::string key = s.substr(0, eq);
        double lo = 0.0, hi = 0.0;
        long n = 0;
        try {
            std::size_t used = 0;
            const std::string a = s.substr(eq + 1, c1 - eq - 1), b = s.substr(c1 + 1, c2 - c1 - 1),
                              k = s.substr(c2 + 1);
            lo = std::stod(a, &used);
            if (used != a.size()) throw std::invalid_argument(a);
            hi = std::stod(b, &used);
            if (used != b.size()) throw std::invalid_argument(b);
            n = std::stol(k, &used);
            if (used != k.size()) throw std::invalid_argument(k);
        } catch (const std::exception&) {
            throw UsageError("--sweep bounds must be numbers: " + s);
        }
        if (n < 1) throw UsageError("--sweep needs n >= 1");
        if (key != "r" && key != "b" && key != "h") throw UsageError("--sweep key must be r, b or h");
        for (long i = 0; i < n; ++i) {
            const double v = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
            RunConfig q = c;
            (key == "r" ? q.r : key == "b" ? q.b : q.h) = v;
            points.push_back(params_of(q));
        }
    } else {
        points.push_back(base);
    }

    Sink sink(c.out, out);
    json rows = json::array();
    if (format == "csv") *sink << "r,b,h,c_l,c_k,c_hash,c_circ,c_K_lo,c_K_hi,regime,note\n";
    for (const BzParams& p : points) {
        BoundsReport br = [&] {
            try {
                return bounds_report(p);
            } catch (const Error& e) {
                throw Failure{Exit::computation, std::string("bounds: ") + e.what()};
            }
        }();
        std::string note = br.existence_note;
        for (const std::string* why : {&br.c_k_reason, &br.c_circ_reason, &br.c_K_reason}) {
            if (!why->empty()) note += (note.empty() ? "" : "; ") + *why;
        }
        std::optional<double> klo, khi;
        if (br.c_K) {
            klo = br.c_K->lower;
            khi = br.c_K->upper;
        }
        const std::string regime(to_string(br.regime));
        if (format == "csv") {
            *sink << num(p.r()) << ',' << num(p.b()) << ',' << num(p.h()) << ',' << num(br.c_l) << ','
                  << opt_num(br.c_k) << ',' << num(br.c_hash) << ',' << opt_num(br.c_circ) << ','
                  << opt_num(klo) << ',' << opt_num(khi) << ',' << regime << ',' << csv_field(note)
                  << '\n';
        } else {
            rows.push_back({{"r", p.r()},
                            {"b", p.b()},
                            {"h", p.h()},
                            {"c_l", br.c_l},
                            {"c_k", opt_json(br.c_k)},
                            {"c_hash", br.c_hash},
                            {"c_circ", opt_json(br.c_circ)},
                            {"c_K_lo", opt_json(klo)},
                            {"c_K_hi", opt_json(khi)},
                            {"regime", regime},
                            {"note", note}});
        }
    }
    if (format == "json") *sink << rows.dump(2) << '\n';
    return Exit::ok;
}

// ---------------------------------------------------------------- front

Grid grid_of(const RunConfig& c, const BzParams& p) {
    const Grid d = default_grid(p);
    const long n = c.grid_points.value_or(static_cast<long>(d.n()));
    if (n < 3) throw UsageError("--grid-points must be >= 3");
    const double lo = c.grid_min.value_or(d.t_min());
    const double hi = c.grid_max.value_or(d.t_max());
    if (!(lo < hi)) throw UsageError("--grid-min must be below --grid-max");
    return Grid(lo, hi, static_cast<std::size_t>(n));
}

IterConfig iter_of(const RunConfig& c, const BzParams& p) {
    IterConfig cfg;
    if (c.B) cfg.B = *c.B;
    if (c.tol) cfg.tol = *c.tol;
    if (c.max_iter) cfg.max_iter = static_cast<int>(*c.max_iter);
    try {
        cfg.validate(p);
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    return cfg;
}

// Picks and builds the base super-solution, refusing speeds outside the
// existence range with the violated bound named.
BaseSuper choose_super(const BzParams& p, double c, const std::string& kind) {
    if (p.r() > 1.0) {
        throw Failure{Exit::computation,
                      "front construction needs r <= 1 (use simulate for bistable fronts)"};
    }
    if (p.r() < 1.0) {
        const double cl = 2.0 * std::sqrt(1.0 - p.r());
        if (!(c > cl)) {
            throw Failure{Exit::computation,
                          "c = " + num(c) + " does not exceed the linear bound 2*sqrt(1-r) = " + num(cl)};
        }
    }
    try {
        if (kind == "exp") return build_exponential(p, c);
        if (kind == "tangent") return build_tangent(p, c);
        const double ch = c_hash(p);
        if (c >= ch) return build_exponential(p, c);
        const double cc = c_circ(p);
        if (c > cc) return build_tangent(p, c);
        throw Failure{Exit::computation, "c = " + num(c) + " is not above c_circ = " + num(cc) +
                                             " (tangent construction) nor c_hash = " + num(ch)};
    } catch (const Error& e) {
        throw Failure{Exit::computation, std::string("super-solution: ") + e.what()};
    }
}

int cmd_front(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const BzParams p = params_of(c);
    if (!c.c) throw UsageError("--c is required");
    if (!c.out) throw UsageError("--out is required");
    const double speed = *c.c;
    const std::string kind = c.super_kind.value_or("auto");
    if (kind != "auto" && kind != "exp" && kind != "tangent") {
        throw UsageError("--super must be auto, exp or tangent");
    }
    const Grid g = grid_of(c, p);
    const IterConfig cfg = iter_of(c, p);
    const BaseSuper base = choose_super(p, speed, kind);

    UpperSolution up = [&] {
        try {
            return assemble_upper(p, speed, base, g);
        } catch (const Error& e) {
            throw Failure{Exit::computation, std::string("upper solution: ") + e.what()};
        }
    }();
    LowerPair lo = [&] {
        try {
            return build_lower(p, speed, g, up.profile);
        } catch (const Error& e) {
            throw Failure{Exit::computation, std::string("lower solution: ") + e.what()};
        }
    }();
    SolveDiagnostics diag;
    Front f = [&] {
        try {
            return solve_front(up.profile, lo.profile, p, speed, cfg, &diag);
        } catch (const Error& e) {
            throw Failure{Exit::computation, std::string("iteration: ") + e.what()};
        }
    }();

    const Residuals res = bvp_residuals(f.profile, p, speed);
    {
        Sink sink(c.out, out);
        write_front_csv(*sink, f.profile, res.res_phi, res.res_psi);
    }
    json side = {
        {"params", {{"r", p.r()}, {"b", p.b()}, {"h", p.h()}}},
        {"c", speed},
        {"super", std::holds_alternative<ExponentialSuper>(base) ? "exp" : "tangent"},
        {"nu", base_nu(base)},
        {"upper", {{"A", up.A}, {"halvings", up.halvings}}},
        {"lower",
         {{"kind", lo.kind == LowerKind::critical_plateau ? "plateau" : "kpp"},
          {"epsilon", lo.epsilon},
          {"T_n", lo.T_n},
          {"Q_n", lo.Q_n},
          {"kappa_n", lo.kappa_n},
          {"sigma_n", lo.sigma_n}}},
        {"grid", {{"min", g.t_min()}, {"max", g.t_max()}, {"points", g.n()}}},
        {"converged", f.converged},
        {"degenerate", f.degenerate},
        {"iterations", f.iterations},
        {"final_gap", f.final_gap},
        {"residual_inf", f.residual_inf},
        {"normalization_shift", f.normalization_shift},
        {"max_order_violation", diag.max_order_violation},
    };
    const auto checks = front_checks(f, p, &side);
    {
        std::ofstream js(*c.out + ".json", std::ios::binary);
        if (!js) throw Failure{Exit::computation, "cannot write '" + *c.out + ".json'"};
        js << side.dump(2) << '\n';
    }
    out << "converged " << (f.converged ? "yes" : "no") << " iterations " << f.iterations
        << " residual " << num(f.residual_inf) << '\n';
    for (const Check& k : checks) {
        out << (k.pass ? "PASS " : "FAIL ") << k.name << ": " << k.detail << '\n';
    }
    if (!f.converged || f.degenerate) {
        err << "front: " << (f.degenerate ? "limit is degenerate (not a front)" : "max_iter reached")
            << "; best iterate written to " << *c.out << '\n';
        return Exit::not_converged;
    }
    return Exit::ok;
}

// ---------------------------------------------------------------- simulate

SimConfig sim_of(const RunConfig& c, const BzParams& p) {
    SimConfig s;
    s.h = p.h();
    if (c.length) s.length = *c.length;
    if (c.dx) s.dx = *c.dx;
    if (c.dt) s.dt = *c.dt;
    if (c.t_end) s.t_end = *c.t_end;
    if (c.track_level) s.track_level = *c.track_level;
    if (c.transient_cut) s.transient_cut = *c.transient_cut;
    const std::string ic = c.ic.value_or("step");
    if (ic == "step") {
        s.ic = InitialCondition::step_front;
    } else if (ic == "bump") {
        s.ic = InitialCondition::compact_bump;
    } else {
        throw UsageError("--ic must be step or bump");
    }
    return s;
}

int cmd_simulate(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const BzParams p = params_of(c);
    const SimConfig s = sim_of(c, p);
    SpeedEstimate e;
    try {
        e = run_and_track(p, s);
    } catch (const Error& x) {
        throw Failure{Exit::computation, std::string("simulate: ") + x.what()};
    }
    std::ostream& summary = c.out ? out : err;
    {
        Sink sink(c.out, out);
        *sink << "t,x_front,u_mass\n";
        for (std::size_t i = 0; i < e.times.size(); ++i) {
            *sink << num(e.times[i]) << ',' << num(e.positions[i]) << ',' << num(e.masses[i]) << '\n';
        }
    }
    summary << "speed " << num(e.speed) << " r2 " << num(e.r_squared) << " delay_rounding "
            << num(e.delay_rounding_error) << '\n';
    return Exit::ok;
}

// ---------------------------------------------------------------- table1

struct Cell {
    std::string row, quantity;
    double computed, printed;
};

int cmd_table1(const RunConfig& c, std::ostream& out, std::ostream& err) {
    std::vector<Cell> cells;
    auto row = [&](double r, double b) {
        char name[32];
        std::snprintf(name, sizeof name, "(%g;%g)", r, b);
        return std::string(name);
    };
    try {
        struct Mono {
            double r, b, k, hash, circ, l;
        };
        for (const Mono& m : {Mono{0.5, 5, 2.0, 1.82, 1.62, 1.414}, Mono{0.5, 10, 2.0, 1.90, 1.71, 1.414},
                              Mono{1, 5, 2.0, 1.82, 1.47, 0.289}}) {
            const BzParams p(m.r, m.b, 0.0);
            const std::string n = row(m.r, m.b);
            cells.push_back({n, "c_k", c_k(m.r, m.b).value_or(NAN), m.k});
            cells.push_back({n, "c_hash", c_hash(p), m.hash});
            cells.push_back({n, "c_circ", c_circ(p), m.circ});
            cells.push_back({n, "c_l", c_l(m.r, m.b), m.l});
        }
        const BzParams p(5, 0.5, 0.0);
        const auto K = c_K_bistable(5, 0.5);
        const std::string n = row(5, 0.5);
        cells.push_back({n, "c_K_hi", K.upper, 1.41});
        cells.push_back({n, "c_hash", c_hash(p), 1.15});
        cells.push_back({n, "c_circ", c_circ(p), 0.59});
        cells.push_back({n, "c_K_lo", K.lower, 0.067});
        cells.push_back({n, "c_l", c_l(5, 0.5), 0.007});
    } catch (const Error& e) {
        throw Failure{Exit::computation, std::string("table1: ") + e.what()};
    }
    Sink sink(c.out, out);
    *sink << "row,quantity,computed,printed,abs_diff,status\n";
    std::vector<std::string> bad;
    for (const Cell& k : cells) {
        const double d = std::abs(k.computed - k.printed);
        const bool pass = d <= 0.01;
        if (!pass) bad.push_back(k.row + " " + k.quantity);
        *sink << csv_field(k.row) << ',' << k.quantity << ',' << num(k.computed) << ',' << num(k.printed)
              << ',' << num(d) << ',' << (pass ? "PASS" : "FAIL") << '\n';
    }
    if (!bad.empty()) {
        err << "table1: cells off by more than 0.01:";
        for (const auto& b : bad) err << ' ' << b;
        err << '\n';
        return Exit::mismatch;
    }
    return Exit::ok;
}

// ---------------------------------------------------------------- validate

int cmd_validate(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const BzParams p = params_of(c);
    if (!c.c) throw UsageError("--c is required");
    if (!c.front_file) throw UsageError("--front-file is required");
    std::ifstream in(*c.front_file, std::ios::binary);
    if (!in) throw UsageError("cannot read '" + *c.front_file + "'");
    Front f{read_front_csv(in), *c.c};
    f.converged = true;
    f.residual_inf = bvp_residual(f, p);
    const auto checks = front_checks(f, p, nullptr);
    out << "residual " << num(f.residual_inf) << '\n';
    const Check* first_fail = nullptr;
    for (const Check& k : checks) {
        out << (k.pass ? "PASS " : "FAIL ") << k.name << ": " << k.detail << '\n';
        if (!k.pass && !first_fail) first_fail = &k;
    }
    if (first_fail) {
        err << "validate: first failing check: " << first_fail->name << '\n';
        return Exit::computation;
    }
    return Exit::ok;
}

// ---------------------------------------------------------------- wiring

struct Flags {
    RunConfig cfg;
    std::optional<std::string> config_path;
};

// -h is taken by the delay flag, so help is --help only.
void param_flags(CLI::App* a, Flags& f) {
    a->set_help_flag("--help", "print this help and exit");
    a->add_option("--r", f.cfg.r, "kinetic parameter r > 0");
    a->add_option("--b", f.cfg.b, "kinetic parameter b > 0");
    a->add_option("--h", f.cfg.h, "delay h >= 0 (default 0)");
    a->add_option("--config", f.config_path, "JSON config; flags override it");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Wavefronts of the delayed Belousov-Zhabotinsky system", "bzwave"};
    app.set_help_flag("--help", "print this help and exit");
    app.require_subcommand(1);
    Flags fb, ff, fs, ft, fv;

    auto* bounds = app.add_subcommand("bounds", "analytic speed bounds");
    param_flags(bounds, fb);
    bounds->add_option("--sweep", fb.cfg.sweep, "key=lo:hi:n with key in r, b, h");
    bounds->add_option("--format", fb.cfg.format, "csv (default) or json");
    bounds->add_option("--out", fb.cfg.out, "output file (default stdout)");

    auto* front = app.add_subcommand("front", "solve for a front profile by monotone iteration");
    param_flags(front, ff);
    front->add_option("--c", ff.cfg.c, "wave speed");
    front->add_option("--super", ff.cfg.super_kind, "auto (default), exp or tangent");
    front->add_option("--grid-min", ff.cfg.grid_min);
    front->add_option("--grid-max", ff.cfg.grid_max);
    front->add_option("--grid-points", ff.cfg.grid_points);
    front->add_option("--tol", ff.cfg.tol);
    front->add_option("--max-iter", ff.cfg.max_iter);
    front->add_option("--B", ff.cfg.B, "kernel shift, <= -(1 + r + b)");
    front->add_option("--out", ff.cfg.out, "CSV path; a JSON sidecar goes to <out>.json");

    auto* sim = app.add_subcommand("simulate", "direct simulation with front tracking");
    param_flags(sim, fs);
    sim->add_option("--ic", fs.cfg.ic, "step (default) or bump");
    sim->add_option("--dx", fs.cfg.dx);
    sim->add_option("--dt", fs.cfg.dt);
    sim->add_option("--t-end", fs.cfg.t_end);
    sim->add_option("--length", fs.cfg.length);
    sim->add_option("--track-level", fs.cfg.track_level);
    sim->add_option("--transient-cut", fs.cfg.transient_cut);
    sim->add_option("--out", fs.cfg.out, "tracking CSV (default stdout)");

    auto* table = app.add_subcommand("table1", "recompute the analytic cells of the reference table");
    table->add_option("--out", ft.cfg.out, "output file (default stdout)");

    auto* validate = app.add_subcommand("validate", "re-run the profile checks on a front CSV");
    param_flags(validate, fv);
    validate->add_option("--front-file", fv.cfg.front_file);
    validate->add_option("--c", fv.cfg.c, "wave speed of the stored front");

    std::vector<std::string> argv_store{"bzwave"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_store) argv.push_back(s.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? Exit::ok : Exit::usage;
    }

    auto resolve = [](Flags& f) {
        return f.config_path ? merge(f.cfg, load_config(*f.config_path)) : f.cfg;
    };
    try {
        if (bounds->parsed()) return cmd_bounds(resolve(fb), out);
        if (front->parsed()) return cmd_front(resolve(ff), out, err);
        if (sim->parsed()) return cmd_simulate(resolve(fs), out, err);
        if (table->parsed()) return cmd_table1(ft.cfg, out, err);
        if (validate->parsed()) return cmd_validate(resolve(fv), out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return Exit::usage;
    } catch (const Failure& f) {
        err << "error: " << f.message << '\n';
        return f.code;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return Exit::computation;
    }
    return Exit::usage;
}

}  // namespace bzwave::cli
