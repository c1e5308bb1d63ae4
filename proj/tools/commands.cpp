#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <limits>

#include "keps/constants.hpp"
#include "keps/monitor.hpp"
#include "keps/norms.hpp"
#include "keps/picard.hpp"
#include "keps/snapshot.hpp"
#include "keps/validation.hpp"
#include "mms.hpp"
#include "presets.hpp"

namespace keps::cli {

namespace {

namespace fs = std::filesystem;

void ensure_outdir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create output directory " + dir);
}

State load_initial(const RunConfig& cfg, const GridSpec& g) {
    if (!cfg.preset.empty()) return build_preset_state(cfg.preset, g);
    State s(g);
    s.rho = read_scalar_snapshot(cfg.files[0], g, &s.t);
    s.u = read_vector_snapshot(cfg.files[1], g);
    s.h = read_scalar_snapshot(cfg.files[2], g);
    s.k = read_scalar_snapshot(cfg.files[3], g);
    s.eps = read_scalar_snapshot(cfg.files[4], g);
    return s;
}

void print_validation(const ValidationReport& rep, std::ostream& out) {
    for (const auto& c : rep.clauses) {
        out << (c.pass ? "pass" : "FAIL") << "  " << c.clause << "  measured="
            << format_full(c.measured) << " bound=" << format_full(c.bound);
        if (!c.detail.empty()) out << "  (" << c.detail << ")";
        out << "\n";
    }
    if (rep.c0_valid) out << "c0 = " << format_full(rep.c0) << "\n";
    out << "validation " << (rep.pass ? "passed" : "failed") << "\n";
}

void write_state_snapshots(const std::string& dir, const std::string& tag, const State& s) {
    write_snapshot(dir + "/state_" + tag + "_rho.txt", s.rho, s.t, "rho");
    write_snapshot(dir + "/state_" + tag + "_u.txt", s.u, s.t, "u");
    write_snapshot(dir + "/state_" + tag + "_h.txt", s.h, s.t, "h");
    write_snapshot(dir + "/state_" + tag + "_k.txt", s.k, s.t, "k");
    write_snapshot(dir + "/state_" + tag + "_eps.txt", s.eps, s.t, "eps");
}

std::string picard_csv(const PicardReport& rep) {
    std::string s = "iter,sup_phi,int_h1,ratio\n";
    for (const auto& row : rep.iters) {
        s += std::to_string(row.iter) + "," + format_full(row.sup_phi) + "," +
             format_full(row.int_h1) + ",";
        s += std::isnan(row.ratio) ? "n/a" : format_full(row.ratio);
        s += "\n";
    }
    return s;
}

std::string norms_csv(const NormReport& rep, int every) {
    std::string s =
        "t,rho_h3,rhot_h1,u_h1,u_h2,u_h3,k_h1,k_h2,eps_h1,eps_h2,h_h1,h_h2,"
        "sr_ut,sr_ht,sr_kt,sr_et,int_u_h4,int_k_h3\n";
    const int stride = every < 1 ? 1 : every;
    for (std::size_t j = 0; j < rep.rows.size(); ++j) {
        if (j % static_cast<std::size_t>(stride) != 0 && j + 1 != rep.rows.size()) continue;
        const NormRow& r = rep.rows[j];
        auto td = [&](double v) { return r.has_time_derivs ? format_full(v) : std::string("n/a"); };
        s += format_full(r.t) + "," + format_full(r.rho_h3) + "," + td(r.rhot_h1) + "," +
             format_full(r.u_h1) + "," + format_full(r.u_h2) + "," + format_full(r.u_h3) + "," +
             format_full(r.k_h1) + "," + format_full(r.k_h2) + "," + format_full(r.eps_h1) + "," +
             format_full(r.eps_h2) + "," + format_full(r.h_h1) + "," + format_full(r.h_h2) + "," +
             td(r.sr_ut) + "," + td(r.sr_ht) + "," + td(r.sr_kt) + "," + td(r.sr_et) + "," +
             format_full(r.int_u_h4) + "," + format_full(r.int_k_h3) + "\n";
    }
    return s;
}

std::string manifest_line(const StepRecord& rec) {
    return "step=" + std::to_string(rec.step) + " t=" + format_full(rec.t) +
           " lin_iters=" + std::to_string(rec.lin_iters) + " min_rho=" + format_full(rec.min_rho) +
           " min_k=" + format_full(rec.min_k) + " mass_drift=" + format_full(rec.mass_drift) +
           "\n";
}

std::string summary_json(const PicardReport& rep, double max_mass_drift) {
    std::string ratio = "null";
    if (rep.iterations >= 2) ratio = format_full(contraction_ratio(rep));
    return std::string("{\"converged\": ") + (rep.converged ? "true" : "false") +
           ", \"iterations\": " + std::to_string(rep.iterations) + ", \"final_ratio\": " + ratio +
           ", \"horizon\": " + format_full(rep.horizon) + ", \"dt\": " + format_full(rep.dt) +
           ", \"max_mass_drift\": " + format_full(max_mass_drift) +
           ", \"threshold\": " + format_full(rep.threshold) + "}";
}

PicardConfig picard_config(const RunConfig& cfg, double horizon) {
    PicardConfig pc;
    pc.horizon = horizon;
    pc.dt = cfg.dt;
    pc.max_outer = cfg.max_outer;
    pc.tol_phi = cfg.picard_tol;
    pc.ratio_window = cfg.ratio_window;
    pc.auto_shrink = cfg.auto_shrink;
    pc.step.dt = cfg.dt;
    pc.step.lin_tol = cfg.lin_tol;
    pc.step.lin_maxit = cfg.lin_maxit;
    pc.step.k_floor = cfg.params.m / 10.0;
    return pc;
}

/// Mantissa x 10^exponent rendering of a base-10 log, for values far below
/// double range.
std::string log10_to_string(double lg) {
    const double e = std::floor(lg);
    const double mant = std::pow(10.0, lg - e);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6fe%+d", mant, static_cast<int>(e));
    return buf;
}

} // namespace

int cmd_validate(const RunConfig& cfg, std::ostream& out) {
    const GridSpec grid = cfg.make_grid();
    cfg.params.validate();
    const State init = load_initial(cfg, grid);
    const ValidationReport rep = validate_initial(init, cfg.params);
    print_validation(rep, out);
    return rep.pass ? 0 : 2;
}

int cmd_run(const RunConfig& cfg, std::ostream& out) {
    const GridSpec grid = cfg.make_grid();
    cfg.params.validate();
    ensure_outdir(cfg.out_dir);
    const State init = load_initial(cfg, grid);

    const ValidationReport vrep = validate_initial(init, cfg.params);
    if (!vrep.pass) {
        print_validation(vrep, out);
        return 2;
    }

    std::string log = "# effective configuration\n" + echo_config(cfg) + "# end configuration\n";
    double max_mass_drift = 0.0;
    int pass_count = 0;
    auto on_step = [&](const StepRecord& rec) {
        if (rec.step == 1) log += "# pass " + std::to_string(++pass_count) + "\n";
        log += manifest_line(rec);
        max_mass_drift = std::max(max_mass_drift, rec.mass_drift);
    };

    const PicardConfig pc = picard_config(cfg, cfg.t_end);
    int code = 0;
    try {
        auto [traj, report] = picard_solve(init, cfg.params, pc, on_step);

        atomic_write_text(cfg.out_dir + "/picard_report.csv", picard_csv(report));
        const NormReport norms = monitor_apriori(traj);
        atomic_write_text(cfg.out_dir + "/norms.csv", norms_csv(norms, cfg.norms_every));
        write_state_snapshots(cfg.out_dir, "initial", traj.states.front());
        write_state_snapshots(cfg.out_dir, "final", traj.states.back());
        if (cfg.dump_every > 0)
            for (int j = cfg.dump_every; j + 1 < traj.levels(); j += cfg.dump_every)
                write_state_snapshots(cfg.out_dir, std::to_string(j), traj.states[j]);

        log += summary_json(report, max_mass_drift) + "\n";
        out << summary_json(report, max_mass_drift) << "\n";
        if (!report.converged) {
            out << "run failed: picard stopped at max_outer without meeting tol\n";
            code = 3;
        }
    } catch (const Error& e) {
        log += "# run failed: " + e.full_message() + "\n";
        out << "run failed: " << e.full_message() << "\n";
        code = 3;
    }
    atomic_write_text(cfg.out_dir + "/effective.cfg", echo_config(cfg));
    atomic_write_text(cfg.out_dir + "/run.log", log);
    return code;
}

int cmd_decay(const RunConfig& cfg, std::ostream& out) {
    const GridSpec grid = cfg.make_grid();
    cfg.params.validate();
    ensure_outdir(cfg.out_dir);
    const State init = load_initial(cfg, grid);

    // the closed-form comparison needs spatially uniform data
    auto spread = [](const ScalarField& f) { return f.max() - f.min(); };
    if (spread(init.rho) > 1e-13 || spread(init.k) > 1e-13 || spread(init.eps) > 1e-13 ||
        init.u.max_abs() > 1e-13 || init.h.max_abs() > 1e-13) {
        out << "decay needs a spatially uniform initial state\n";
        return 2;
    }
    const ValidationReport vrep = validate_initial(init, cfg.params);
    if (!vrep.pass) {
        print_validation(vrep, out);
        return 2;
    }

    const double k0 = init.k[0], eps0 = init.eps[0];
    const double window = cfg.window > 0.0 ? cfg.window : cfg.t_end;
    const int windows = static_cast<int>(std::llround(cfg.t_end / window));
    if (windows < 1 || std::abs(windows * window - cfg.t_end) > 1e-9 * cfg.t_end) {
        out << "time.window must divide time.t_end\n";
        return 2;
    }

    std::string log = "# effective configuration\n" + echo_config(cfg) + "# end configuration\n";
    double max_mass_drift = 0.0;
    int pass_count = 0;
    auto on_step = [&](const StepRecord& rec) {
        if (rec.step == 1) log += "# pass " + std::to_string(++pass_count) + "\n";
        log += manifest_line(rec);
        max_mass_drift = std::max(max_mass_drift, rec.mass_drift);
    };

    // closed-form power law; eps0 = 0 degenerates to constant k
    const double n_exp = 1.0 / (cfg.params.c2 - 1.0);
    const double t0 = eps0 > 0.0 ? n_exp * k0 / eps0 : 0.0;
    auto k_exact = [&](double t) { return eps0 > 0.0 ? k0 * std::pow(1.0 + t / t0, -n_exp) : k0; };
    auto eps_exact = [&](double t) {
        return eps0 > 0.0 ? eps0 * std::pow(1.0 + t / t0, -n_exp - 1.0) : 0.0;
    };

    int code = 0;
    std::string csv = "t,max_rel_err_k,max_rel_err_eps\n";
    double worst_k = 0.0, worst_eps = 0.0;
    try {
        State current = init;
        for (int w = 0; w < windows; ++w) {
            log += "# window " + std::to_string(w + 1) + "\n";
            PicardConfig pc = picard_config(cfg, window);
            auto [traj, report] = picard_solve(current, cfg.params, pc, on_step);
            if (!report.converged)
                throw PicardDiverged("window " + std::to_string(w + 1) +
                                     " stopped at max_outer without meeting tol");
            for (int j = (w == 0 ? 0 : 1); j < traj.levels(); ++j) {
                const State& s = traj.states[j];
                const double ke = k_exact(s.t), ee = eps_exact(s.t);
                double ek = 0.0, eeps = 0.0;
                for (std::size_t i = 0; i < s.k.size(); ++i) {
                    ek = std::max(ek, std::abs(s.k[i] - ke) / std::abs(ke));
                    if (eps0 > 0.0)
                        eeps = std::max(eeps, std::abs(s.eps[i] - ee) / std::abs(ee));
                    else
                        eeps = std::max(eeps, std::abs(s.eps[i]));
                }
                worst_k = std::max(worst_k, ek);
                worst_eps = std::max(worst_eps, eeps);
                csv += format_full(s.t) + "," + format_full(ek) + "," + format_full(eeps) + "\n";
            }
            current = traj.states.back();
        }

        const double tol = 5.0 * cfg.dt;
        out << "max_rel_err_k = " << format_full(worst_k) << "\n";
        out << "max_rel_err_eps = " << format_full(worst_eps) << "\n";
        out << "tolerance = " << format_full(tol) << "\n";
        out << "max_mass_drift = " << format_full(max_mass_drift) << "\n";
        log += "max_rel_err_k = " + format_full(worst_k) + "\n";
        log += "max_mass_drift = " + format_full(max_mass_drift) + "\n";
        if (worst_k > tol) {
            out << "decay failed: k error above tolerance\n";
            code = 3;
        }
    } catch (const Error& e) {
        log += "# decay failed: " + e.full_message() + "\n";
        out << "decay failed: " << e.full_message() << "\n";
        code = 3;
    }
    atomic_write_text(cfg.out_dir + "/effective.cfg", echo_config(cfg));
    atomic_write_text(cfg.out_dir + "/decay.csv", csv);
    atomic_write_text(cfg.out_dir + "/run.log", log);
    return code;
}

int cmd_mms(const RunConfig& cfg, std::ostream& out) {
    cfg.params.validate();
    ensure_outdir(cfg.out_dir);
    const std::string which = cfg.preset.empty() ? "mms1" : cfg.preset;

    if (which == "mms3") {
        // steady manufactured state with zero forcing: the solver must hold
        // it to roundoff
        const GridSpec grid = cfg.make_grid();
        const State init = build_preset_state("mms3", grid);
        PicardConfig pc = picard_config(cfg, cfg.t_end);
        auto [traj, report] = picard_solve(init, cfg.params, pc);
        double dev = 0.0;
        const State& last = traj.states.back();
        for (std::size_t i = 0; i < last.rho.size(); ++i)
            dev = std::max(dev, std::abs(last.rho[i] - init.rho[i]));
        for (std::size_t i = 0; i < last.k.size(); ++i)
            dev = std::max(dev, std::abs(last.k[i] - init.k[i]));
        dev = std::max(dev, last.u.max_abs());
        dev = std::max(dev, last.h.max_abs());
        out << "steady-state deviation = " << format_full(dev) << "\n";
        const bool ok = report.converged && dev <= 1e-9;
        out << (ok ? "mms passed\n" : "mms failed: steady state not preserved\n");
        return ok ? 0 : 3;
    }

    const int dim = which == "mms2" ? 2 : 1;
    std::string log;
    MmsResult res = run_mms_verification(dim, cfg.params, cfg.t_end, cfg.picard_tol, &log);
    out << log;
    out << "temporal_order = " << format_full(res.temporal.order) << "\n";
    out << "spatial_order = " << format_full(res.spatial.order) << "\n";
    atomic_write_text(cfg.out_dir + "/mms.log", log);
    if (!res.pass) {
        out << "mms failed: order below threshold (temporal >= 0.9, spatial >= 1.9)\n";
        return 3;
    }
    out << "mms passed\n";
    return 0;
}

int cmd_estimate(const RunConfig& cfg, std::ostream& out) {
    const GridSpec grid = cfg.make_grid();
    cfg.params.validate();
    const State init = load_initial(cfg, grid);
    const ValidationReport vrep = validate_initial(init, cfg.params);
    if (!vrep.pass) {
        print_validation(vrep, out);
        return 2;
    }

    const EstimateConstants k =
        estimate_constants(vrep.c0, cfg.params.gamma, cfg.params.c_generic);
    out << "c0 = " << format_full(k.c0) << "\n";
    for (int i = 1; i <= 6; ++i)
        out << "c" << i << " = " << format_full(k.c[i])
            << "  (log10 = " << format_full(k.log10_c[i]) << ")\n";

    const double t_lin = existence_time(k, cfg.estimate_t1, cfg.estimate_t2);
    const double t_log = existence_time_log10(k, cfg.estimate_t1, cfg.estimate_t2);
    if (t_lin > 0.0)
        out << "T = " << format_full(t_lin) << "  (log10 = " << format_full(t_log) << ")\n";
    else
        out << "T = " << log10_to_string(t_log) << "  (log10 = " << format_full(t_log) << ")\n";
    return 0;
}

} // namespace keps::cli
