#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "geoquad/experiments.hpp"

namespace {

using namespace geoquad;

struct ModelOptions {
    std::string name = "dqd3";
    double u_tilde = 100.0;
    double omega = 1.0;
    double e_z = 10.0;
    double de_z = 1.0;
    double de_x = 0.1;
    double z = 0.1;
    double phi = 0.0;
    std::string angular = "1";

    double angular_factor() const {
        if (angular == "1") return 1.0;
        if (angular == "2pi") return 2.0 * M_PI;
        throw ConfigError("--angular-factor must be 1 or 2pi");
    }

    ParametricHamiltonian build() const {
        const double af = angular_factor();
        DQDParams p;
        p.u_tilde = u_tilde;
        p.omega = omega;
        p.e_z = e_z;
        p.de_z = de_z;
        p.de_x = de_x;
        p.angular_factor = af;
        if (name == "pauli") return pauli_model(PauliMode::RhoOnly, {{"phi", phi}, {"z", z}}, af);
        if (name == "dqd3") return dqd3_model(p);
        if (name == "dqd6") return dqd6_model(p);
        if (name == "sw2") return sw2_model(omega, de_z, af);
        throw ConfigError("unknown model: " + name);
    }

    void attach(CLI::App* cmd) {
        cmd->add_option("--model", name, "pauli|dqd3|dqd6|sw2");
        cmd->add_option("--u-tilde", u_tilde, "intra-dot Coulomb energy (GHz)");
        cmd->add_option("--omega", omega, "tunnel coupling (GHz)");
        cmd->add_option("--e-z", e_z, "total Zeeman energy (GHz)");
        cmd->add_option("--de-z", de_z, "Zeeman splitting difference (GHz)");
        cmd->add_option("--de-x", de_x, "transverse Zeeman difference (GHz)");
        cmd->add_option("--z", z, "pauli model gap parameter");
        cmd->add_option("--phi", phi, "pauli model phase");
        cmd->add_option("--angular-factor", angular, "1 or 2pi");
    }
};

std::vector<double> parse_grid(const std::string& spec) {
    double lo = 0.0, hi = 0.0;
    int count = 0;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%d", &lo, &hi, &count) != 3 || count < 1)
        throw ConfigError("--grid expects min:max:count, got " + spec);
    return linspace(lo, hi, count);
}

PulseSchedule read_pulse_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open pulse file: " + path);
    PulseSchedule pulse;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string a, b;
        if (!std::getline(row, a, ',') || !std::getline(row, b, ',')) continue;
        char* end = nullptr;
        const double t = std::strtod(a.c_str(), &end);
        if (end == a.c_str()) continue;  // header
        pulse.times.push_back(t);
        pulse.values.push_back(std::strtod(b.c_str(), nullptr));
    }
    if (pulse.times.size() < 2) throw IoError("pulse file has fewer than 2 samples: " + path);
    pulse.t_f = pulse.times.back();
    pulse.eps0 = pulse.values.front();
    pulse.eps_f = pulse.values.back();
    pulse.finalize();
    return pulse;
}

int run_metric(const ModelOptions& model_opts, const std::string& grid_spec, int level,
               const std::string& out_path) {
    const ParametricHamiltonian model = model_opts.build();
    if (model.n_params() != 1) throw ConfigError("metric subcommand expects a 1-parameter model");
    std::ostringstream out;
    out << model.param_names[0] << ",g_00,berry_00,det_g\r\n";
    for (double x : parse_grid(grid_spec)) {
        const GeoTensor gt = qgt_spectral(model, scalar_point(x), level);
        out << format_double(x) << ',' << format_double(gt.g(0, 0)) << ','
            << format_double(gt.berry(0, 0)) << ',' << format_double(gt.g.determinant())
            << "\r\n";
    }
    if (out_path.empty())
        std::cout << out.str();
    else
        write_text_file(out_path, out.str());
    return 0;
}

int run_pulse(const ModelOptions& model_opts, const std::string& protocol, double eps0,
              double eps_f, double t_f, int samples, int level, const std::string& out_path) {
    const ParametricHamiltonian model = model_opts.build();
    PulseSchedule pulse;
    if (protocol == "linear") {
        pulse = linear_pulse(eps0, eps_f, t_f, samples);
    } else if (protocol == "geometric") {
        FastQuadOptions opts;
        opts.samples = samples;
        opts.level = level;
        pulse = solve_fast_quad(model, eps0, eps_f, t_f, opts);
    } else if (protocol == "sw") {
        pulse = sw_closed_form_pulse(model_opts.omega, model_opts.de_z, eps0, eps_f, t_f, samples);
    } else {
        throw ConfigError("--protocol must be linear, geometric, or sw");
    }

    std::ostringstream out;
    out << "t,epsilon\r\n";
    for (std::size_t i = 0; i < pulse.times.size(); ++i)
        out << format_double(pulse.times[i]) << ',' << format_double(pulse.values[i]) << "\r\n";
    write_text_file(out_path, out.str());

    nlohmann::json meta;
    meta["schema_version"] = 1;
    meta["protocol"] = protocol;
    meta["model"] = model_opts.name;
    meta["delta"] = std::isfinite(pulse.delta) ? nlohmann::json(pulse.delta) : nlohmann::json();
    meta["t_f"] = t_f;
    meta["eps0"] = eps0;
    meta["eps_f"] = eps_f;
    meta["samples"] = samples;
    meta["level"] = level;
    meta["note"] = pulse.note;
    write_text_file(out_path + ".json", meta.dump(2) + "\n");
    return 0;
}

int run_evolve(const ModelOptions& model_opts, const std::string& pulse_path, double t2,
               int steps, int level, const std::string& out_path) {
    const ParametricHamiltonian model = model_opts.build();
    const PulseSchedule pulse = read_pulse_csv(pulse_path);
    const int stride = std::max(1, steps / 500);

    std::ostringstream out;
    out << "t";
    for (int d = 0; d < model.dim; ++d) out << ",pop" << d;
    out << ",fidelity\r\n";

    auto ground_at = [&](double t) {
        return instantaneous_eigvec(model, pulse.eval(t), level);
    };

    if (t2 > 0.0) {
        if (model.dim != 3)
            throw ConfigError("--t2 dephasing is defined for the three-level model only");
        const ComplexVector psi0 = ground_at(0.0);
        const ComplexMatrix rho0 = psi0 * psi0.adjoint();
        const auto result =
            propagate_lindblad(model, pulse, {dephasing_jump_block(t2)}, rho0, steps, stride);
        for (std::size_t k = 0; k < result.rhos.size(); ++k) {
            out << format_double(result.times[k]);
            for (int d = 0; d < model.dim; ++d)
                out << ',' << format_double(result.rhos[k](d, d).real());
            out << ',' << format_double(uhlmann_fidelity(result.rhos[k], ground_at(result.times[k])))
                << "\r\n";
        }
    } else {
        const ComplexVector psi0 = ground_at(0.0);
        const auto result = propagate_schrodinger(model, pulse, psi0, steps, stride);
        for (std::size_t k = 0; k < result.states.size(); ++k) {
            out << format_double(result.times[k]);
            for (int d = 0; d < model.dim; ++d)
                out << ',' << format_double(std::norm(result.states[k][d]));
            out << ','
                << format_double(std::norm(ground_at(result.times[k]).dot(result.states[k])))
                << "\r\n";
        }
    }
    write_text_file(out_path, out.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"geoquad: geometric fast-QUAD pulse synthesis and validation"};
    app.require_subcommand(1);

    // metric
    auto* metric_cmd = app.add_subcommand("metric", "quantum metric along a parameter grid");
    ModelOptions metric_model;
    metric_model.attach(metric_cmd);
    std::string metric_grid = "0:200:201";
    int metric_level = 0;
    std::string metric_out;
    metric_cmd->add_option("--grid", metric_grid, "min:max:count");
    metric_cmd->add_option("--level", metric_level, "eigenstate index");
    metric_cmd->add_option("--out", metric_out, "output CSV (stdout if omitted)");

    // pulse
    auto* pulse_cmd = app.add_subcommand("pulse", "synthesize a control pulse");
    ModelOptions pulse_model;
    pulse_model.attach(pulse_cmd);
    std::string pulse_protocol = "geometric";
    double pulse_eps0 = 200.0, pulse_eps_f = 0.0, pulse_t_f = 20.0;
    int pulse_samples = 20001, pulse_level = 0;
    std::string pulse_out = "pulse.csv";
    pulse_cmd->add_option("--protocol", pulse_protocol, "linear|geometric|sw");
    pulse_cmd->add_option("--eps0", pulse_eps0, "initial detuning (GHz)");
    pulse_cmd->add_option("--eps-f", pulse_eps_f, "final detuning (GHz)");
    pulse_cmd->add_option("--t-f", pulse_t_f, "pulse time (ns)");
    pulse_cmd->add_option("--samples", pulse_samples, "schedule samples");
    pulse_cmd->add_option("--level", pulse_level, "eigenstate index");
    pulse_cmd->add_option("--out", pulse_out, "output CSV (JSON sidecar alongside)");

    // evolve
    auto* evolve_cmd = app.add_subcommand("evolve", "propagate a state under a pulse");
    ModelOptions evolve_model;
    evolve_model.attach(evolve_cmd);
    std::string evolve_pulse, evolve_out = "traj.csv";
    double evolve_t2 = 0.0;
    int evolve_steps = 20000, evolve_level = 0;
    evolve_cmd->add_option("--pulse", evolve_pulse, "pulse CSV (t,epsilon)")->required();
    evolve_cmd->add_option("--t2", evolve_t2, "dephasing time (ns); 0 = unitary");
    evolve_cmd->add_option("--steps", evolve_steps, "time steps");
    evolve_cmd->add_option("--level", evolve_level, "followed eigenstate");
    evolve_cmd->add_option("--out", evolve_out, "trajectory CSV");

    // noise
    auto* noise_cmd = app.add_subcommand("noise", "noise robustness studies");
    noise_cmd->require_subcommand(1);
    auto* quasi_cmd = noise_cmd->add_subcommand("quasistatic", "boundary-offset ensemble");
    auto* miscal_cmd = noise_cmd->add_subcommand("miscal", "pulse miscalibration sweep");
    std::string noise_config, noise_out = "report.csv";
    for (auto* cmd : {quasi_cmd, miscal_cmd}) {
        cmd->add_option("--config", noise_config, "config file")->required();
        cmd->add_option("--out", noise_out, "output CSV");
    }

    // experiment
    auto* exp_cmd = app.add_subcommand("experiment", "run a configured experiment");
    std::string exp_config, exp_out_dir = ".";
    std::string exp_seed, exp_threads, exp_angular;
    exp_cmd->add_option("--config", exp_config, "config file")->required();
    exp_cmd->add_option("--out-dir", exp_out_dir, "output directory");
    exp_cmd->add_option("--seed", exp_seed, "override [experiment] seed");
    exp_cmd->add_option("--threads", exp_threads, "override [experiment] threads");
    exp_cmd->add_option("--angular-factor", exp_angular, "override angular factor (1|2pi)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand(metric_cmd))
            return run_metric(metric_model, metric_grid, metric_level, metric_out);
        if (app.got_subcommand(pulse_cmd))
            return run_pulse(pulse_model, pulse_protocol, pulse_eps0, pulse_eps_f, pulse_t_f,
                             pulse_samples, pulse_level, pulse_out);
        if (app.got_subcommand(evolve_cmd))
            return run_evolve(evolve_model, evolve_pulse, evolve_t2, evolve_steps, evolve_level,
                              evolve_out);
        if (app.got_subcommand(noise_cmd)) {
            const Config cfg = Config::parse_file(noise_config);
            const ExperimentReport report = noise_cmd->got_subcommand(quasi_cmd)
                                                ? run_quasistatic(cfg)
                                                : run_miscal(cfg);
            emit_csv(report, noise_out);
            return 0;
        }
        if (app.got_subcommand(exp_cmd)) {
            Config cfg = Config::parse_file(exp_config);
            if (!exp_seed.empty()) cfg.set("experiment", "seed", exp_seed);
            if (!exp_threads.empty()) cfg.set("experiment", "threads", exp_threads);
            if (!exp_angular.empty()) cfg.set("experiment", "angular_factor", exp_angular);
            for (const std::string& path : run_and_emit(cfg, exp_out_dir))
                std::cout << path << "\n";
            return 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
