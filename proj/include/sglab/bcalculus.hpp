#pragma once

#include <complex>
#include <optional>
#include <string>

namespace sglab {

enum class FunctionFamilyKind { Hshift, Rpow, Fta };

// Holomorphic functions on the right half-plane used by the calculus:
//   Hshift(t)   z -> exp(-t/(z+1))
//   Rpow(a)     z -> (z+1)^{-a}
//   Fta(t,a)    z -> exp(-t/(z+1)) (z+1)^{-a}
// All are bounded on Re z > 0. Internally every family is the pair (t, alpha)
// with Hshift = (t, 0) and Rpow = (0, alpha).
struct FunctionFamily {
    FunctionFamilyKind kind = FunctionFamilyKind::Fta;
    double t = 0.0;
    double alpha = 0.0;

    static FunctionFamily hshift(double t);
    static FunctionFamily rpow(double alpha);
    static FunctionFamily fta(double t, double alpha);

    std::complex<double> value(std::complex<double> z) const;
    // f'(z) = e^{-t/(z+1)} (z+1)^{-(alpha+2)} (t - alpha (z+1))
    std::complex<double> derivative(std::complex<double> z) const;
    double abs_derivative(double xi, double eta) const;
    std::complex<double> at_infinity() const;
    std::string describe() const;
};

// sup over r >= 0 of g_{t,s,alpha}(r) = e^{-t s/(s^2+r)} (s^2+r)^{-alpha/2}:
//   e^{-t/s} / s^alpha                      for t <= alpha s / 2,
//   (alpha/(2e))^{alpha/2} / (t s)^{alpha/2} otherwise.
// Requires t > 0, s > 1, alpha > 1.
double sup_g(double t, double s, double alpha);

// F_alpha(t) = integral over s in (1, inf) of sup_g(t, s, alpha), by
// quadrature split at the branch point s = 2t/alpha. Relative target 1e-8.
double F_alpha(double t, double alpha);

// Piecewise-analytic evaluation of the same integral (independent oracle:
// closed-form middle branch plus a substituted incomplete-gamma tail).
double F_alpha_analytic(double t, double alpha);

struct BNormResult {
    double b0 = 0.0;       // integral over xi of sup_eta |f'(xi + i eta)|
    double sup_norm = 0.0; // sup over the closed right half-plane of |f|
    std::complex<double> at_infinity;
    std::optional<double> envelope; // t F_{alpha+2}(t) + alpha F_{alpha+1}(t)
    double error_estimate = 0.0;
};

// B0 seminorm by outer adaptive quadrature of the certified inner sup over
// eta. Inner-maximization failures raise InnerMaxError; outer quadrature
// failures raise QuadratureError.
BNormResult b0_norm(const FunctionFamily& f);

} // namespace sglab
