#include "geoquad/pulse.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace geoquad {

std::string protocol_name(Protocol p) {
    switch (p) {
        case Protocol::Linear: return "linear";
        case Protocol::Geometric: return "geometric";
        case Protocol::SwClosedForm: return "sw_closed_form";
        case Protocol::AnalyticTwoLevel: return "analytic_two_level";
    }
    return "unknown";
}

void PulseSchedule::finalize() {
    if (times.size() != values.size() || times.size() < 2)
        throw ShapeMismatch("PulseSchedule: need matching (t, eps) samples, at least 2");
    for (size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw std::invalid_argument("PulseSchedule: times must be strictly increasing");
    const double dir = eps_f - eps0;
    if (dir != 0.0) {
        for (size_t i = 1; i < values.size(); ++i) {
            if ((values[i] - values[i - 1]) * dir < 0.0)
                throw std::invalid_argument("PulseSchedule: samples not monotone");
        }
    }

    // Fritsch-Carlson monotone cubic slopes.
    const size_t n = times.size();
    slopes_.assign(n, 0.0);
    std::vector<double> h(n - 1), d(n - 1);
    for (size_t i = 0; i + 1 < n; ++i) {
        h[i] = times[i + 1] - times[i];
        d[i] = (values[i + 1] - values[i]) / h[i];
    }
    slopes_[0] = d[0];
    slopes_[n - 1] = d[n - 2];
    for (size_t i = 1; i + 1 < n; ++i) {
        if (d[i - 1] == 0.0 || d[i] == 0.0 || (d[i - 1] > 0.0) != (d[i] > 0.0)) {
            slopes_[i] = 0.0;
        } else {
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            slopes_[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
        }
    }
}

double PulseSchedule::eval(double t) const {
    if (slopes_.empty()) throw std::logic_error("PulseSchedule: finalize() not called");
    if (t <= times.front()) return values.front();
    if (t >= times.back()) return values.back();
    const auto it = std::upper_bound(times.begin(), times.end(), t);
    const size_t i = static_cast<size_t>(it - times.begin()) - 1;
    const double h = times[i + 1] - times[i];
    const double s = (t - times[i]) / h;
    const double s2 = s * s, s3 = s2 * s;
    const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
    const double h10 = s3 - 2.0 * s2 + s;
    const double h01 = -2.0 * s3 + 3.0 * s2;
    const double h11 = s3 - s2;
    return h00 * values[i] + h10 * h * slopes_[i] + h01 * values[i + 1] + h11 * h * slopes_[i + 1];
}

double path_length(const ParametricHamiltonian& model, double eps0, double eps_f, int level) {
    if (eps0 == eps_f) return 0.0;
    const double a = std::min(eps0, eps_f);
    const double b = std::max(eps0, eps_f);
    auto integrand = [&](double eps) {
        return std::sqrt(std::max(metric_scalar(model, eps, level), 0.0));
    };
    double error = 0.0;
    const double length = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        integrand, a, b, 15, 1e-8, &error);
    if (!(std::isfinite(length)) || error > 1e-6 * std::max(std::abs(length), 1e-300))
        throw QuadratureFailure("path_length: quadrature did not reach tolerance");
    return length;
}

double adiabaticity(const ParametricHamiltonian& model, double eps0, double eps_f, double t_f,
                    int level) {
    if (!(t_f > 0.0)) throw std::invalid_argument("adiabaticity: t_f must be > 0");
    return path_length(model, eps0, eps_f, level) / t_f;
}

namespace {

PulseSchedule make_schedule(Protocol protocol, double eps0, double eps_f, double t_f,
                            std::vector<double> times, std::vector<double> values, double delta) {
    PulseSchedule s;
    s.protocol = protocol;
    s.eps0 = eps0;
    s.eps_f = eps_f;
    s.t_f = t_f;
    s.delta = delta;
    s.times = std::move(times);
    s.values = std::move(values);
    s.finalize();
    return s;
}

std::vector<double> uniform_times(double t_f, int samples) {
    std::vector<double> t(samples);
    for (int i = 0; i < samples; ++i) t[i] = t_f * static_cast<double>(i) / (samples - 1);
    t.back() = t_f;
    return t;
}

// One RK4 sweep of d eps/dt = rhs(eps); returns the sampled path.
std::vector<double> rk4_sweep(const std::function<double(double)>& rhs, double eps0, double t_f,
                              int samples) {
    std::vector<double> values(samples);
    values[0] = eps0;
    const double dt = t_f / (samples - 1);
    double eps = eps0;
    for (int i = 1; i < samples; ++i) {
        const double k1 = rhs(eps);
        const double k2 = rhs(eps + 0.5 * dt * k1);
        const double k3 = rhs(eps + 0.5 * dt * k2);
        const double k4 = rhs(eps + dt * k3);
        eps += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        values[i] = eps;
    }
    return values;
}

}  // namespace

PulseSchedule solve_fast_quad(const ParametricHamiltonian& model, double eps0, double eps_f,
                              double t_f, const FastQuadOptions& opts) {
    if (!(t_f > 0.0)) throw std::invalid_argument("solve_fast_quad: t_f must be > 0");
    if (eps0 == eps_f) {
        auto t = uniform_times(t_f, opts.samples);
        return make_schedule(Protocol::Geometric, eps0, eps_f, t_f, t,
                             std::vector<double>(opts.samples, eps0), 0.0);
    }

    const double delta = adiabaticity(model, eps0, eps_f, t_f, opts.level);
    const double sign = eps_f > eps0 ? 1.0 : -1.0;
    const double lo = std::min(eps0, eps_f);
    const double hi = std::max(eps0, eps_f);
    auto rhs = [&](double eps) {
        const double clamped = std::clamp(eps, lo, hi);
        const double g = metric_scalar(model, clamped, opts.level);
        if (!(g > 0.0))
            throw DegenerateSpectrum("solve_fast_quad: g_eps_eps vanished on the path");
        return sign * delta / std::sqrt(g);
    };

    const double span = std::abs(eps_f - eps0);
    int samples = opts.samples;
    std::vector<double> values = rk4_sweep(rhs, eps0, t_f, samples);
    double miss = values.back() - eps_f;
    std::string note;
    if (std::abs(miss) > opts.endpoint_tol * span) {
        samples = 2 * (samples - 1) + 1;  // refinement pass
        values = rk4_sweep(rhs, eps0, t_f, samples);
        miss = values.back() - eps_f;
        note += "refined:steps_doubled;";
        if (std::abs(miss) > opts.endpoint_tol * span) {
            std::ostringstream os;
            os << "solve_fast_quad: endpoint miss " << miss << " exceeds tolerance "
               << opts.endpoint_tol * span << " after refinement";
            throw EndpointMiss(os.str());
        }
    }

    // Absorb the residual endpoint error over the last 0.1% of the schedule.
    if (miss != 0.0) {
        const double t_clamp = 0.999 * t_f;
        const auto times = uniform_times(t_f, samples);
        for (int i = 0; i < samples; ++i) {
            if (times[i] > t_clamp)
                values[i] -= miss * (times[i] - t_clamp) / (t_f - t_clamp);
        }
        values.back() = eps_f;
        std::ostringstream os;
        os << "endpoint_clamp:miss=" << miss << ";";
        note += os.str();
    }

    // The clamp can leave sub-roundoff wiggles at the very end; flatten them.
    for (int i = samples - 2; i > 0; --i) {
        if ((values[i] - values[i + 1]) * sign > 0.0) values[i] = values[i + 1];
    }

    auto sched = make_schedule(Protocol::Geometric, eps0, eps_f, t_f, uniform_times(t_f, samples),
                               std::move(values), delta);
    sched.note = note;
    return sched;
}

PulseSchedule linear_pulse(double eps0, double eps_f, double t_f, int samples) {
    if (!(t_f > 0.0)) throw std::invalid_argument("linear_pulse: t_f must be > 0");
    auto times = uniform_times(t_f, samples);
    std::vector<double> values(samples);
    for (int i = 0; i < samples; ++i)
        values[i] = eps0 + (eps_f - eps0) * times[i] / t_f;
    return make_schedule(Protocol::Linear, eps0, eps_f, t_f, std::move(times), std::move(values),
                         std::numeric_limits<double>::quiet_NaN());
}

PulseSchedule analytic_two_level(double theta0, double theta_f, double t_f, int samples) {
    if (!(t_f > 0.0)) throw std::invalid_argument("analytic_two_level: t_f must be > 0");
    auto times = uniform_times(t_f, samples);
    std::vector<double> values(samples);
    for (int i = 0; i < samples; ++i)
        values[i] = theta0 + (theta_f - theta0) * times[i] / t_f;
    return make_schedule(Protocol::AnalyticTwoLevel, theta0, theta_f, t_f, std::move(times),
                         std::move(values), std::abs(theta_f - theta0) / (2.0 * t_f));
}

PulseSchedule tangent_geodesic_pulse(double z, double eps0, double eps_f, double t_f,
                                     int samples) {
    if (!(t_f > 0.0)) throw std::invalid_argument("tangent_geodesic_pulse: t_f must be > 0");
    const double theta0 = std::atan2(eps0, z);
    const double theta_f = std::atan2(eps_f, z);
    auto times = uniform_times(t_f, samples);
    std::vector<double> values(samples);
    for (int i = 0; i < samples; ++i) {
        const double theta = theta0 + (theta_f - theta0) * times[i] / t_f;
        values[i] = z * std::tan(theta);
    }
    values.front() = eps0;
    values.back() = eps_f;
    return make_schedule(Protocol::AnalyticTwoLevel, eps0, eps_f, t_f, std::move(times),
                         std::move(values), std::abs(theta_f - theta0) / (2.0 * t_f));
}

PulseSchedule sw_closed_form_pulse(double omega, double de_z, double eps0, double eps_f,
                                   double t_f, int samples) {
    if (!(t_f > 0.0)) throw std::invalid_argument("sw_closed_form_pulse: t_f must be > 0");
    const double j = std::abs(de_z / omega);
    if (j > 0.5)
        throw ExpansionInvalid("sw_closed_form_pulse: J = |dE_Z/Omega| > 0.5");
    const double j2 = j * j;
    // Effective anti-crossing width of the SW model: the J-dependence of the
    // geodesic folds entirely into this rescaled gap parameter.
    const double w_eff = 2.0 * omega * (1.0 - j2 / 2.0) / (1.0 - j2);
    PulseSchedule sched = tangent_geodesic_pulse(w_eff, eps0, eps_f, t_f, samples);
    sched.protocol = Protocol::SwClosedForm;
    if (j > 0.2) sched.note += "warning:J_above_0.2;";
    return sched;
}

double beltrami_max_deviation(const ParametricHamiltonian& model, const PulseSchedule& schedule,
                              int level) {
    const size_t n = schedule.times.size();
    if (n < 5 || !(schedule.delta > 0.0)) return 0.0;
    const double dt = schedule.times[1] - schedule.times[0];
    const double delta2 = schedule.delta * schedule.delta;
    double worst = 0.0;
    for (size_t i = 2; i + 2 < n; ++i) {
        const double v = (-schedule.values[i + 2] + 8.0 * schedule.values[i + 1] -
                          8.0 * schedule.values[i - 1] + schedule.values[i - 2]) /
                         (12.0 * dt);
        const double g = metric_scalar(model, schedule.values[i], level);
        worst = std::max(worst, std::abs(g * v * v - delta2) / delta2);
    }
    return worst;
}

}  // namespace geoquad
