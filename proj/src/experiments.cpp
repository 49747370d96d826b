#include "geoquad/experiments.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <thread>

namespace geoquad {

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

std::vector<std::string> parallel_run(std::size_t n, int threads,
                                      const std::function<void(std::size_t)>& body) {
    std::vector<std::string> errors(n);
    const int workers = std::min<int>(resolve_threads(threads), static_cast<int>(std::max<std::size_t>(n, 1)));
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                body(i);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            } catch (...) {
                errors[i] = "unknown error";
            }
        }
    };
    if (workers <= 1) {
        worker();
        return errors;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return errors;
}

double angular_factor_from_config(const Config& cfg) {
    const std::string raw = cfg.get_string("experiment", "angular_factor", "1");
    if (raw == "1") return 1.0;
    if (raw == "2pi") return 2.0 * M_PI;
    throw ConfigError("config: angular_factor must be 1 or 2pi, got " + raw);
}

DQDParams dqd_params_from_config(const Config& cfg, const DQDParams& defaults) {
    DQDParams p = defaults;
    p.u_tilde = cfg.get_double("model", "u_tilde", defaults.u_tilde);
    p.omega = cfg.get_double("model", "omega", defaults.omega);
    p.e_z = cfg.get_double("model", "e_z", defaults.e_z);
    p.de_z = cfg.get_double("model", "de_z", defaults.de_z);
    p.de_x = cfg.get_double("model", "de_x", defaults.de_x);
    p.angular_factor = angular_factor_from_config(cfg);
    return p;
}

std::vector<Protocol> protocols_from_config(const Config& cfg,
                                            const std::vector<Protocol>& fallback) {
    if (!cfg.has("protocols", "list")) return fallback;
    std::vector<Protocol> out;
    for (const std::string& name : cfg.get_string_list("protocols", "list")) {
        if (name == "linear")
            out.push_back(Protocol::Linear);
        else if (name == "geometric")
            out.push_back(Protocol::Geometric);
        else if (name == "sw")
            out.push_back(Protocol::SwClosedForm);
        else if (name == "analytic")
            out.push_back(Protocol::AnalyticTwoLevel);
        else
            throw ConfigError("config: unknown protocol " + name);
    }
    if (out.empty()) throw ConfigError("config: empty protocol list");
    return out;
}

Axis axis_from_config(const Config& cfg, const std::string& name, double lo, double hi,
                      int count, bool log_spacing) {
    const double a = cfg.get_double("grid", name + "_min", lo);
    const double b = cfg.get_double("grid", name + "_max", hi);
    const int n = cfg.get_int("grid", name + "_count", count);
    if (n < 1) throw ConfigError("config: " + name + "_count must be >= 1");
    const std::string spacing =
        cfg.get_string("grid", name + "_spacing", log_spacing ? "log" : "linear");
    if (spacing == "log") return {name, logspace(a, b, n)};
    if (spacing == "linear") return {name, linspace(a, b, n)};
    throw ConfigError("config: " + name + "_spacing must be linear or log");
}

namespace {

struct SolverSettings {
    int steps;
    int samples;
    int threads;
};

SolverSettings solver_settings(const Config& cfg, int default_steps = 20000) {
    SolverSettings s;
    s.steps = cfg.get_int("solver", "steps", default_steps);
    s.samples = cfg.get_int("solver", "samples", 20001);
    s.threads = cfg.get_int("experiment", "threads", 0);
    if (s.steps < 2 || s.samples < 2) throw ConfigError("config: steps/samples must be >= 2");
    return s;
}

void stamp_metadata(ExperimentReport& report, const Config& cfg) {
    report.metadata["generator"] = "geoquad 0.1.0";
    report.metadata["config"] = cfg.dump();
}

void record_failures(ExperimentReport& report, const std::vector<std::string>& errors,
                     std::vector<double>& failed) {
    for (std::size_t i = 0; i < errors.size(); ++i) {
        if (errors[i].empty()) continue;
        failed[i] = 1.0;
        for (auto& [name, values] : report.columns) {
            if (name == "failed") continue;
            values[i] = std::numeric_limits<double>::quiet_NaN();
        }
        report.metadata["failure_" + std::to_string(i)] = errors[i];
    }
}

std::string short_number(double v) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%g", v);
    return buffer;
}

}  // namespace

ExperimentReport run_fig2(const Config& cfg) {
    const SolverSettings s = solver_settings(cfg);
    const double af = angular_factor_from_config(cfg);
    const double z = cfg.get_double("model", "z", 0.1);
    const double phi = cfg.get_double("model", "phi", 0.0);
    const double eps0 = cfg.get_double("model", "epsilon0", -10.0);
    const double eps_f = cfg.get_double("model", "epsilon_f", 10.0);
    if (!(z > 0.0)) throw ConfigError("config: fig2 requires z > 0");
    const ParametricHamiltonian model = pauli_model(PauliMode::RhoOnly, {{"phi", phi}, {"z", z}}, af);

    ExperimentReport report;
    report.kind = "fig2_two_level";
    report.axes.push_back(axis_from_config(cfg, "t_f", 1.0, 50.0, 50, false));
    const std::vector<double>& tfs = report.axes[0].values;
    auto& err_lin = report.add_column("error_linear");
    auto& err_geo = report.add_column("error_geometric");
    auto& err_ana = report.add_column("error_analytic");
    auto& failed = report.add_column("failed");

    const auto errors = parallel_run(tfs.size(), s.threads, [&](std::size_t i) {
        const double t_f = tfs[i];
        err_lin[i] = 1.0 - transfer_probability(model, linear_pulse(eps0, eps_f, t_f, s.samples),
                                                0, s.steps);
        FastQuadOptions opts;
        opts.samples = s.samples;
        err_geo[i] =
            1.0 - transfer_probability(model, solve_fast_quad(model, eps0, eps_f, t_f, opts), 0,
                                       s.steps);
        err_ana[i] = 1.0 - transfer_probability(
                               model, tangent_geodesic_pulse(z, eps0, eps_f, t_f, s.samples), 0,
                               s.steps);
    });
    record_failures(report, errors, failed);
    stamp_metadata(report, cfg);
    return report;
}

ExperimentReport run_fig3(const Config& cfg) {
    const SolverSettings s = solver_settings(cfg);
    DQDParams defaults;
    defaults.u_tilde = 100.0;
    defaults.omega = 10.0;
    defaults.e_z = 10.0;
    defaults.de_z = 1.0;
    defaults.de_x = 0.1;
    const DQDParams params = dqd_params_from_config(cfg, defaults);
    const double eps0 = cfg.get_double("model", "epsilon0", 1.5 * params.u_tilde);
    const double eps_f = cfg.get_double("model", "epsilon_f", 10.0);

    const ParametricHamiltonian full = dqd6_model(params);
    const ParametricHamiltonian reduced = truncate_two_level(full, scalar_point(eps0));

    ExperimentReport report;
    report.kind = "fig3_6x6";
    report.axes.push_back(axis_from_config(cfg, "t_f", 10.0, 150.0, 15, false));
    const std::vector<double>& tfs = report.axes[0].values;
    auto& err_lin = report.add_column("error_linear");
    auto& err_geo = report.add_column("error_geometric");
    auto& failed = report.add_column("failed");

    const auto errors = parallel_run(tfs.size(), s.threads, [&](std::size_t i) {
        const double t_f = tfs[i];
        err_lin[i] = 1.0 - transfer_probability(full, linear_pulse(eps0, eps_f, t_f, s.samples),
                                                0, s.steps);
        FastQuadOptions opts;
        opts.samples = s.samples;
        const PulseSchedule geo = solve_fast_quad(reduced, eps0, eps_f, t_f, opts);
        err_geo[i] = 1.0 - transfer_probability(full, geo, 0, s.steps);
    });
    record_failures(report, errors, failed);
    stamp_metadata(report, cfg);
    return report;
}

ExperimentReport run_transfer_grid(const Config& cfg) {
    const SolverSettings s = solver_settings(cfg);
    const DQDParams base = dqd_params_from_config(cfg, DQDParams{});
    const double eps0 = cfg.get_double("model", "epsilon0", 200.0);
    const double eps_f = cfg.get_double("model", "epsilon_f", 0.0);
    const double t_f_fixed = cfg.get_double("solver", "t_f", 20.0);
    const std::vector<Protocol> protocols =
        protocols_from_config(cfg, {Protocol::Linear, Protocol::Geometric});

    const std::vector<std::string> axis_names =
        cfg.get_string_list("grid", "axes", {"de_z", "omega"});
    if (axis_names.size() != 2) throw ConfigError("config: transfer grid needs two axes");

    ExperimentReport report;
    report.kind = cfg.get_string("experiment", "kind", "fig5_grids");
    for (const std::string& name : axis_names) {
        if (name == "omega" || name == "de_z")
            report.axes.push_back(axis_from_config(cfg, name, 0.5, 5.0, 8, true));
        else if (name == "t_f")
            report.axes.push_back(axis_from_config(cfg, name, 1.0, 100.0, 25, true));
        else
            throw ConfigError("config: unsupported grid axis " + name);
    }

    std::vector<std::vector<double>*> cols;
    for (Protocol p : protocols) cols.push_back(&report.add_column("error_" + protocol_name(p)));
    auto& failed = report.add_column("failed");

    const std::size_t n0 = report.axes[0].values.size();
    const std::size_t n1 = report.axes[1].values.size();
    const auto errors = parallel_run(n0 * n1, s.threads, [&](std::size_t cell) {
        const double v0 = report.axes[0].values[cell / n1];
        const double v1 = report.axes[1].values[cell % n1];
        DQDParams params = base;
        double t_f = t_f_fixed;
        const double axis_values[2] = {v0, v1};
        for (int a = 0; a < 2; ++a) {
            if (axis_names[a] == "omega")
                params.omega = axis_values[a];
            else if (axis_names[a] == "de_z")
                params.de_z = axis_values[a];
            else
                t_f = axis_values[a];
        }
        const ParametricHamiltonian model = dqd3_model(params);
        for (std::size_t ip = 0; ip < protocols.size(); ++ip) {
            PulseSchedule pulse;
            if (protocols[ip] == Protocol::Linear) {
                pulse = linear_pulse(eps0, eps_f, t_f, s.samples);
            } else if (protocols[ip] == Protocol::Geometric) {
                FastQuadOptions opts;
                opts.samples = s.samples;
                pulse = solve_fast_quad(model, eps0, eps_f, t_f, opts);
            } else {
                pulse = sw_closed_form_pulse(params.omega, params.de_z, eps0, eps_f, t_f,
                                             s.samples);
            }
            (*cols[ip])[cell] = 1.0 - transfer_probability(model, pulse, 0, s.steps);
        }
    });
    record_failures(report, errors, failed);
    stamp_metadata(report, cfg);
    return report;
}

ExperimentReport run_quasistatic(const Config& cfg) {
    const SolverSettings s = solver_settings(cfg);
    DQDParams defaults;
    defaults.omega = 3.0;
    defaults.de_z = 0.5;
    const DQDParams params = dqd_params_from_config(cfg, defaults);
    const double eps0 = cfg.get_double("model", "epsilon0", 200.0);
    const double eps_f = cfg.get_double("model", "epsilon_f", 0.0);
    const double t_f = cfg.get_double("solver", "t_f", 20.0);
    const ParametricHamiltonian model = dqd3_model(params);
    const std::vector<Protocol> protocols = protocols_from_config(cfg, {Protocol::Geometric});

    QuasistaticSpec spec;
    spec.seed = cfg.get_u64("experiment", "seed", 0);
    if (cfg.get_string("noise", "mode", "grid") == "gaussian") {
        spec.sigma = cfg.get_double("noise", "sigma", 1.0);
        spec.n_samples = cfg.get_int("noise", "n_samples", 100);
    } else {
        spec.fixed_offsets = cfg.get_double_list("noise", "offsets");
        if (spec.fixed_offsets.empty()) {
            const double lo = cfg.get_double("noise", "delta_min", -5.0);
            const double hi = cfg.get_double("noise", "delta_max", 5.0);
            spec.fixed_offsets = linspace(lo, hi, cfg.get_int("noise", "count", 21));
        }
    }
    const bool additive = cfg.get_bool("noise", "additive", false);

    ExperimentReport report;
    report.kind = "fig6_quasistatic";
    std::vector<QuasistaticResult> results(protocols.size());
    const auto errors = parallel_run(protocols.size(), s.threads, [&](std::size_t ip) {
        results[ip] = quasistatic_run(model, protocols[ip], eps0, eps_f, t_f, spec, 0, s.steps,
                                      s.samples, additive);
    });
    for (const auto& e : errors)
        if (!e.empty()) throw std::runtime_error("quasistatic: " + e);

    report.axes.push_back({"delta_eps", results[0].offsets});
    for (std::size_t ip = 0; ip < protocols.size(); ++ip) {
        const std::string tag = protocol_name(protocols[ip]);
        report.columns.emplace_back("fidelity_" + tag, results[ip].fidelities);
        report.columns.emplace_back("delta_f_" + tag, results[ip].deviations);
        report.metadata["noiseless_fidelity_" + tag] =
            format_double(results[ip].noiseless_fidelity);
    }
    stamp_metadata(report, cfg);
    report.validate();
    return report;
}

ExperimentReport run_miscal(const Config& cfg) {
    const SolverSettings s = solver_settings(cfg);
    DQDParams defaults;
    defaults.omega = 3.0;
    defaults.de_z = 0.5;
    const DQDParams base = dqd_params_from_config(cfg, defaults);
    const double eps0 = cfg.get_double("model", "epsilon0", 200.0);
    const double eps_f = cfg.get_double("model", "epsilon_f", 0.0);

    MiscalibrationSpec spec;
    spec.omega_system = base.omega;
    spec.delta_omega_list =
        cfg.get_double_list("noise", "delta_omega_list", {-1.0, -0.5, -0.25, 0.25, 0.5, 1.0});
    const std::vector<double> t_f_list =
        cfg.get_double_list("noise", "t_f_list", {10.0, 20.0, 40.0});

    const MiscalResult result =
        miscalibration_run(base, spec, t_f_list, eps0, eps_f, 0, s.steps, s.samples);

    ExperimentReport report;
    report.kind = "fig8_miscal";
    report.axes.push_back({"t_f", result.t_f_list});
    report.axes.push_back({"delta_omega", result.delta_omega});
    report.columns.emplace_back("fidelity", result.fidelity);
    report.columns.emplace_back("deviation", result.deviation);
    auto& calibrated = report.add_column("calibrated_fidelity");
    const std::size_t nd = result.delta_omega.size();
    for (std::size_t i = 0; i < calibrated.size(); ++i)
        calibrated[i] = result.calibrated_fidelity[i / nd];
    stamp_metadata(report, cfg);
    report.validate();
    return report;
}

ExperimentReport run_optimal_time(const Config& cfg) {
    const SolverSettings s = solver_settings(cfg, 10000);
    DQDParams defaults;
    defaults.omega = 1.0;
    defaults.de_z = 1.0;
    const DQDParams params = dqd_params_from_config(cfg, defaults);
    const double eps0 = cfg.get_double("model", "epsilon0", 200.0);
    const double eps_f = cfg.get_double("model", "epsilon_f", 0.0);
    const ParametricHamiltonian model = dqd3_model(params);
    const std::vector<Protocol> protocols =
        protocols_from_config(cfg, {Protocol::Linear, Protocol::Geometric});

    ExperimentReport report;
    report.kind = "fig7_optimal_time";
    report.axes.push_back(axis_from_config(cfg, "t2", 1.0, 1000.0, 7, true));
    report.axes.push_back(axis_from_config(cfg, "t_f", 2.0, 50.0, 25, false));
    const std::vector<double>& t2s = report.axes[0].values;
    const std::vector<double>& tfs = report.axes[1].values;

    std::vector<std::vector<double>*> cols;
    for (Protocol p : protocols)
        cols.push_back(&report.add_column("fidelity_" + protocol_name(p)));
    auto& failed = report.add_column("failed");

    // Pulses depend on (protocol, t_f) only; synthesize once, share across T2.
    std::vector<std::vector<PulseSchedule>> pulses(protocols.size(),
                                                   std::vector<PulseSchedule>(tfs.size()));
    const auto synth_errors =
        parallel_run(protocols.size() * tfs.size(), s.threads, [&](std::size_t i) {
            const std::size_t ip = i / tfs.size(), it = i % tfs.size();
            if (protocols[ip] == Protocol::Linear) {
                pulses[ip][it] = linear_pulse(eps0, eps_f, tfs[it], s.samples);
            } else {
                FastQuadOptions opts;
                opts.samples = s.samples;
                pulses[ip][it] = solve_fast_quad(model, eps0, eps_f, tfs[it], opts);
            }
        });
    for (const auto& e : synth_errors)
        if (!e.empty()) throw std::runtime_error("optimal_time synthesis: " + e);

    const ComplexVector target = instantaneous_eigvec(model, eps_f, 0);
    const std::size_t cells = t2s.size() * tfs.size();
    const auto run_errors =
        parallel_run(cells * protocols.size(), s.threads, [&](std::size_t i) {
            const std::size_t ip = i / cells;
            const std::size_t cell = i % cells;
            const std::size_t i2 = cell / tfs.size(), it = cell % tfs.size();
            const PulseSchedule& pulse = pulses[ip][it];
            const ComplexVector psi0 = instantaneous_eigvec(model, pulse.eval(0.0), 0);
            const ComplexMatrix rho0 = psi0 * psi0.adjoint();
            const auto result = propagate_lindblad(model, pulse, {dephasing_jump_block(t2s[i2])},
                                                   rho0, s.steps);
            (*cols[ip])[cell] = uhlmann_fidelity(result.final_rho, target);
        });
    // Fold per-protocol failures into the shared cell flag.
    std::vector<std::string> cell_errors(cells);
    for (std::size_t i = 0; i < run_errors.size(); ++i)
        if (!run_errors[i].empty()) cell_errors[i % cells] = run_errors[i];
    record_failures(report, cell_errors, failed);
    stamp_metadata(report, cfg);
    return report;
}

ExperimentReport optimal_time_summary(const ExperimentReport& grid) {
    if (grid.axes.size() != 2) throw ShapeMismatch("optimal_time_summary: expected (T2, t_f)");
    const std::vector<double>& t2s = grid.axes[0].values;
    const std::vector<double>& tfs = grid.axes[1].values;

    ExperimentReport summary;
    summary.kind = grid.kind + "_summary";
    summary.axes.push_back(grid.axes[0]);
    for (const auto& [name, values] : grid.columns) {
        const std::string prefix = "fidelity_";
        if (name.rfind(prefix, 0) != 0) continue;
        const std::string tag = name.substr(prefix.size());
        auto& tf_star = summary.add_column("t_f_star_" + tag);
        auto& f_star = summary.add_column("f_star_" + tag);
        for (std::size_t i2 = 0; i2 < t2s.size(); ++i2) {
            double best = -1.0;
            double best_tf = std::numeric_limits<double>::quiet_NaN();
            for (std::size_t it = 0; it < tfs.size(); ++it) {
                const double f = values[i2 * tfs.size() + it];
                if (std::isfinite(f) && f > best) {
                    best = f;
                    best_tf = tfs[it];
                }
            }
            tf_star[i2] = best_tf;
            f_star[i2] = best < 0.0 ? std::numeric_limits<double>::quiet_NaN() : best;
        }
    }
    summary.metadata = grid.metadata;
    return summary;
}

ExperimentReport run_population_trace(const Config& cfg) {
    const SolverSettings s = solver_settings(cfg);
    DQDParams defaults;
    defaults.omega = 1.0;
    defaults.de_z = 1.0;
    const DQDParams params = dqd_params_from_config(cfg, defaults);
    const double eps0 = cfg.get_double("model", "epsilon0", 200.0);
    const double eps_f = cfg.get_double("model", "epsilon_f", 0.0);
    const double t_f = cfg.get_double("solver", "t_f", 10.0);
    const ParametricHamiltonian model = dqd3_model(params);
    const std::vector<Protocol> protocols =
        protocols_from_config(cfg, {Protocol::Linear, Protocol::Geometric});
    const std::vector<double> t2_list = cfg.get_double_list("noise", "t2_list", {10.0, 100.0});
    const int stride = std::max(1, s.steps / cfg.get_int("solver", "trace_points", 500));

    ExperimentReport report;
    report.kind = "pop_trace";

    struct Series {
        std::string name;
        std::vector<double> times;
        std::vector<std::vector<double>> pops;  // dim rows
        std::vector<double> fidelity;
    };
    std::vector<Series> series;

    for (Protocol protocol : protocols) {
        const std::string ptag = protocol_name(protocol);
        PulseSchedule pulse;
        if (protocol == Protocol::Linear) {
            pulse = linear_pulse(eps0, eps_f, t_f, s.samples);
        } else {
            FastQuadOptions opts;
            opts.samples = s.samples;
            pulse = solve_fast_quad(model, eps0, eps_f, t_f, opts);
        }
        const ComplexVector psi0 = instantaneous_eigvec(model, pulse.eval(0.0), 0);

        Series noiseless;
        noiseless.name = ptag + "_noiseless";
        const auto unitary = propagate_schrodinger(model, pulse, psi0, s.steps, stride);
        noiseless.times = unitary.times;
        noiseless.pops.assign(model.dim, std::vector<double>(unitary.states.size()));
        for (std::size_t k = 0; k < unitary.states.size(); ++k) {
            const ComplexVector ground =
                instantaneous_eigvec(model, pulse.eval(unitary.times[k]), 0);
            for (int d = 0; d < model.dim; ++d)
                noiseless.pops[d][k] = std::norm(unitary.states[k][d]);
            noiseless.fidelity.push_back(std::norm(ground.dot(unitary.states[k])));
        }
        series.push_back(std::move(noiseless));

        for (double t2 : t2_list) {
            Series noisy;
            noisy.name = ptag + "_t2_" + short_number(t2);
            const ComplexMatrix rho0 = psi0 * psi0.adjoint();
            const auto open =
                propagate_lindblad(model, pulse, {dephasing_jump_block(t2)}, rho0, s.steps, stride);
            noisy.times = open.times;
            noisy.pops.assign(model.dim, std::vector<double>(open.rhos.size()));
            for (std::size_t k = 0; k < open.rhos.size(); ++k) {
                const ComplexVector ground =
                    instantaneous_eigvec(model, pulse.eval(open.times[k]), 0);
                for (int d = 0; d < model.dim; ++d)
                    noisy.pops[d][k] = open.rhos[k](d, d).real();
                noisy.fidelity.push_back(uhlmann_fidelity(open.rhos[k], ground));
            }
            series.push_back(std::move(noisy));
        }
    }

    report.axes.push_back({"t", series.front().times});
    for (const Series& sr : series) {
        for (int d = 0; d < model.dim; ++d)
            report.columns.emplace_back(sr.name + "_pop" + std::to_string(d), sr.pops[d]);
        report.columns.emplace_back(sr.name + "_fidelity", sr.fidelity);
    }
    stamp_metadata(report, cfg);
    report.validate();
    return report;
}

ExperimentReport run_experiment(const Config& cfg) {
    const std::string kind = cfg.get_string("experiment", "kind");
    if (kind == "fig2_two_level") return run_fig2(cfg);
    if (kind == "fig3_6x6") return run_fig3(cfg);
    if (kind == "fig5_grids" || kind == "custom") return run_transfer_grid(cfg);
    if (kind == "fig6_quasistatic") return run_quasistatic(cfg);
    if (kind == "fig7_optimal_time") return run_optimal_time(cfg);
    if (kind == "fig8_miscal") return run_miscal(cfg);
    if (kind == "pop_trace") return run_population_trace(cfg);
    throw ConfigError("config: unknown experiment kind " + kind);
}

std::vector<std::string> run_and_emit(const Config& cfg, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    const ExperimentReport report = run_experiment(cfg);
    std::vector<std::string> written;

    auto emit_all = [&](const ExperimentReport& r) {
        const std::string base = out_dir + "/" + r.kind;
        emit_csv(r, base + ".csv");
        written.push_back(base + ".csv");
        emit_json(r, base + ".json");
        written.push_back(base + ".json");
        if (r.axes.size() == 1 && r.axes[0].values.size() >= 2) {
            bool positive = true;
            double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
            for (const auto& [name, values] : r.columns) {
                if (name == "failed") continue;
                for (double v : values) {
                    if (!std::isfinite(v)) continue;
                    if (v <= 0.0) positive = false;
                    lo = std::min(lo, std::abs(v));
                    hi = std::max(hi, std::abs(v));
                }
            }
            emit_svg_line(r, base + ".svg", positive && hi > 100.0 * lo && lo > 0.0);
            written.push_back(base + ".svg");
        } else if (r.axes.size() == 2) {
            for (const auto& [name, values] : r.columns) {
                if (name == "failed") continue;
                const std::string path = base + "_" + name + ".svg";
                emit_svg_heatmap(r, name, path);
                written.push_back(path);
            }
        }
    };

    emit_all(report);
    if (report.kind == "fig7_optimal_time") emit_all(optimal_time_summary(report));
    return written;
}

}  // namespace geoquad
