#pragma once

#include <span>
#include <vector>

#include "sglab/crank_nicolson.hpp"
#include "sglab/spectrum.hpp"
#include "sglab/verdict.hpp"

namespace sglab {

// Coefficient vector against a spectral model, with the smoothness weights
// ||(-A)^alpha x||^2 = sum |lambda_k|^{2 alpha} |x_k|^2 available on demand.
struct ModeVector {
    std::vector<Complex> coeffs;

    static ModeVector constant(std::size_t modes, Complex value = 1.0);
    static ModeVector inverse_square(std::size_t modes); // x_k = 1/k^2
    static ModeVector from(std::vector<Complex> coeffs);

    double norm() const;
    double weighted_norm(const SpectrumSpec& spec, double alpha) const;
};

// xi_r = (1 - r^2) / (2 (r^2 + 1)), strictly decreasing from 1/2 to 0 on (0,1).
double xi_of_r(double r);

// <x, P(xi) x> = sum |x_k|^2 / (2 (xi - Re lambda_k)): closed form of
// int_0^inf e^{-2 xi t} ||e^{At} x||^2 dt per mode. xi = 0 is allowed only on
// exponentially stable spectra; PolyComb needs tail control there.
double p_form(const SpectrumSpec& spec, double xi, const ModeVector& x);

// <x, Q(xi) x> = sum |x_k|^2 / (2 (xi + |Re lambda_k| / |lambda_k|^2))
// (the inverse-generator analogue, via Re(1/lambda) = Re lambda / |lambda|^2).
double q_form(const SpectrumSpec& spec, double xi, const ModeVector& x);

// R(r) = (2/tau_min) P(xi_r / tau_max) + 2 tau_max Q(tau_min xi_r).
double r_form(const SpectrumSpec& spec, double tau_min, double tau_max, double r,
              const ModeVector& x);

// Measured constant of |(n+1) r^n <y, x_n>| <= M ||y|| / sqrt(1-r) sqrt(<x0, R(r) x0>)
// over r in r_grid and n <= n_steps, with r^n handled in the log domain.
InequalityVerdict pz_inequality_probe(const SpectrumSpec& spec, const StepsizeSchedule& sched,
                                      const ModeVector& x0, const ModeVector& y,
                                      std::span<const double> r_grid, std::size_t n_steps);

enum class QBoundVariant { Exponential, Polynomial };

// Exponential variant: xi^{1-alpha} <x,Q x> / ||(-A)^alpha x||^2 for alpha < 1,
// or <x,Q x> / (log(1/xi) ||A x||^2) for alpha = 1 (grid below 1/2).
// Polynomial variant (parameter beta): exponent 1 - 2 alpha/(2+beta), log form
// at alpha = 1 + beta/2.
InequalityVerdict q_bound_check(const SpectrumSpec& spec, const ModeVector& x, double alpha,
                                std::span<const double> xi_grid,
                                QBoundVariant variant = QBoundVariant::Exponential,
                                double beta = 0.0);

// Closed-form check of int_0^inf ||e^{(gamma A - xi)^{-1} t} (gamma A - xi)^{-1} x||^2 dt
// <= K^2 ||x||^2 / (2 xi): the measured constant is sup of LHS * 2 xi / ||x||^2.
InequalityVerdict shifted_inverse_integral_check(const SpectrumSpec& spec, double gamma,
                                                 std::span<const double> xi_grid,
                                                 const ModeVector& x);

// Step-1 inequality xi |log xi|^{2 beta} <x, P(xi) x> <= K1 ||Ax||^2 on a grid
// of xi below 1/2.
InequalityVerdict step1_xi_log_check(const SpectrumSpec& spec, double beta,
                                     std::span<const double> xi_grid, const ModeVector& x);

} // namespace sglab
