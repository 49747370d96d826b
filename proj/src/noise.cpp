#include "geoquad/noise.hpp"

#include "geoquad/rng.hpp"

namespace geoquad {

namespace {

PulseSchedule synthesize(const ParametricHamiltonian& model, Protocol protocol, double eps0,
                         double eps_f, double t_f, int level, int samples) {
    switch (protocol) {
        case Protocol::Linear:
            return linear_pulse(eps0, eps_f, t_f, samples);
        case Protocol::Geometric: {
            FastQuadOptions opts;
            opts.samples = samples;
            opts.level = level;
            return solve_fast_quad(model, eps0, eps_f, t_f, opts);
        }
        default:
            throw std::invalid_argument("quasistatic_run: unsupported protocol");
    }
}

}  // namespace

QuasistaticResult quasistatic_run(const ParametricHamiltonian& model, Protocol protocol,
                                  double eps0, double eps_f, double t_f,
                                  const QuasistaticSpec& spec, int level, int steps,
                                  int pulse_samples, bool additive_mode) {
    if (spec.sigma < 0.0 || spec.n_samples < 1)
        throw std::invalid_argument("quasistatic_run: invalid spec");

    std::vector<double> offsets = spec.fixed_offsets;
    if (offsets.empty()) {
        for (int i = 0; i < spec.n_samples; ++i) {
            auto rng = Xoshiro256::substream(spec.seed, static_cast<uint64_t>(i));
            offsets.push_back(spec.sigma * rng.gaussian());
        }
    }

    QuasistaticResult result;
    result.offsets = offsets;
    result.noiseless_fidelity = transfer_probability(
        model, synthesize(model, protocol, eps0, eps_f, t_f, level, pulse_samples), level, steps,
        eps_f);

    for (double offset : offsets) {
        PulseSchedule pulse;
        if (additive_mode) {
            // A constant detuning perturbation is the pulse itself running
            // offset from its nominal values.
            pulse = synthesize(model, protocol, eps0, eps_f, t_f, level, pulse_samples);
            for (auto& v : pulse.values) v += offset;
            pulse.eps0 += offset;
            pulse.eps_f += offset;
            pulse.finalize();
        } else {
            pulse = synthesize(model, protocol, eps0 + offset, eps_f + offset, t_f, level,
                               pulse_samples);
        }
        const double fidelity = transfer_probability(model, pulse, level, steps, eps_f);
        result.fidelities.push_back(fidelity);
        result.deviations.push_back(fidelity - result.noiseless_fidelity);
    }
    return result;
}

MiscalResult miscalibration_run(const DQDParams& base, const MiscalibrationSpec& spec,
                                const std::vector<double>& t_f_list, double eps0, double eps_f,
                                int level, int steps, int pulse_samples) {
    for (double d : spec.delta_omega_list)
        if (!(spec.omega_system + d > 0.0))
            throw std::invalid_argument("miscalibration_run: omega_system + dOmega must be > 0");

    DQDParams system_params = base;
    system_params.omega = spec.omega_system;
    const ParametricHamiltonian system = dqd3_model(system_params);

    MiscalResult result;
    result.t_f_list = t_f_list;
    result.delta_omega = spec.delta_omega_list;
    FastQuadOptions opts;
    opts.samples = pulse_samples;
    opts.level = level;

    for (double t_f : t_f_list) {
        const PulseSchedule calibrated = solve_fast_quad(system, eps0, eps_f, t_f, opts);
        const double f_cal = transfer_probability(system, calibrated, level, steps);
        result.calibrated_fidelity.push_back(f_cal);
        for (double d_omega : spec.delta_omega_list) {
            DQDParams pulse_params = system_params;
            pulse_params.omega = spec.omega_system + d_omega;
            const ParametricHamiltonian assumed = dqd3_model(pulse_params);
            const PulseSchedule pulse = solve_fast_quad(assumed, eps0, eps_f, t_f, opts);
            const double fidelity = transfer_probability(system, pulse, level, steps);
            result.fidelity.push_back(fidelity);
            result.deviation.push_back(fidelity - f_cal);
        }
    }
    return result;
}

}  // namespace geoquad
