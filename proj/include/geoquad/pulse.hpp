#pragma once

#include <string>
#include <vector>

#include "geoquad/metric.hpp"

namespace geoquad {

enum class Protocol { Linear, Geometric, SwClosedForm, AnalyticTwoLevel };

std::string protocol_name(Protocol p);

/// A sampled control path eps(t) on [0, t_f] with monotone-cubic
/// (Fritsch-Carlson) interpolation between samples.
struct PulseSchedule {
    double t_f = 0.0;
    double eps0 = 0.0;
    double eps_f = 0.0;
    double delta = std::numeric_limits<double>::quiet_NaN();  // adiabaticity
    Protocol protocol = Protocol::Linear;
    std::vector<double> times;   // strictly increasing, times.front()=0, back()=t_f
    std::vector<double> values;  // eps at each sample
    std::string note;            // solver annotations (endpoint clamp etc.)

    double eval(double t) const;

    /// Validates sizes/monotonicity and builds the interpolant slopes.
    void finalize();

  private:
    std::vector<double> slopes_;
};

/// Path length integral of sqrt(g_eps_eps) between the boundary detunings,
/// by adaptive Gauss-Kronrod quadrature (relative tolerance 1e-8).
double path_length(const ParametricHamiltonian& model, double eps0, double eps_f, int level);

/// delta = path_length / t_f.
double adiabaticity(const ParametricHamiltonian& model, double eps0, double eps_f, double t_f,
                    int level);

struct FastQuadOptions {
    int samples = 20001;          // schedule sample count (RK4 steps = samples-1)
    int level = 0;                // followed eigenstate
    double endpoint_tol = 1e-4;   // relative to |eps_f - eps0|
};

/// Geometric fast-QUAD synthesis: integrates
/// d eps/dt = sign(eps_f - eps0) * delta / sqrt(g_eps_eps(eps))
/// with delta fixed from the boundary conditions, using fixed-step RK4.
/// A single refinement pass (doubled steps) runs if the endpoint misses;
/// any residual miss within tolerance is absorbed by an affine clamp of the
/// last 0.1% of the schedule (logged in the note).
PulseSchedule solve_fast_quad(const ParametricHamiltonian& model, double eps0, double eps_f,
                              double t_f, const FastQuadOptions& opts = {});

PulseSchedule linear_pulse(double eps0, double eps_f, double t_f, int samples = 20001);

/// Analytic two-level geodesic in the theta coordinate: theta linear in t,
/// delta = |theta_f - theta_0| / (2 t_f).
PulseSchedule analytic_two_level(double theta0, double theta_f, double t_f, int samples = 20001);

/// The same geodesic mapped to the detuning coordinate of a two-level
/// anti-crossing with gap parameter z at eps = 0: eps(t) = z tan(theta(t))
/// with theta = arctan2(eps, z) linear in t.
PulseSchedule tangent_geodesic_pulse(double z, double eps0, double eps_f, double t_f,
                                     int samples = 20001);

/// Closed-form fast-QUAD for the Schrieffer-Wolff two-level model: the
/// geodesic of sw2_model integrates to eps(t) = W tan(phi(t)) with
/// W = 2 Omega (1 - J^2/2) / (1 - J^2) and phi linear in t.
/// Enforces J <= 0.5 (warning recorded in the note above 0.2).
PulseSchedule sw_closed_form_pulse(double omega, double de_z, double eps0, double eps_f,
                                   double t_f, int samples = 20001);

/// Max relative deviation of g_eps_eps * (d eps/dt)^2 from delta^2 over the
/// interior samples (5-point stencil time derivative). The conserved-speed
/// check for geometric schedules.
double beltrami_max_deviation(const ParametricHamiltonian& model, const PulseSchedule& schedule,
                              int level);

}  // namespace geoquad
