#include "sglab/bcalculus.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "sglab/errors.hpp"
#include "sglab/quadrature.hpp"

namespace sglab {

namespace {

using Complex = std::complex<double>;

constexpr double kE = 2.718281828459045;

std::string fmt(const char* name, double t, double alpha) {
    std::ostringstream os;
    os << name << "(t=" << t << ",alpha=" << alpha << ")";
    return os.str();
}

} // namespace

FunctionFamily FunctionFamily::hshift(double t) {
    if (!(t >= 0.0)) throw ValidationError("hshift: t must be >= 0");
    return {FunctionFamilyKind::Hshift, t, 0.0};
}

FunctionFamily FunctionFamily::rpow(double alpha) {
    if (!(alpha > 0.0)) throw ValidationError("rpow: alpha must be > 0");
    return {FunctionFamilyKind::Rpow, 0.0, alpha};
}

FunctionFamily FunctionFamily::fta(double t, double alpha) {
    if (!(t >= 0.0)) throw ValidationError("fta: t must be >= 0");
    if (!(alpha > 0.0)) throw ValidationError("fta: alpha must be > 0");
    return {FunctionFamilyKind::Fta, t, alpha};
}

Complex FunctionFamily::value(Complex z) const {
    const Complex w = z + 1.0;
    return std::exp(-t / w) * std::pow(w, -alpha);
}

Complex FunctionFamily::derivative(Complex z) const {
    const Complex w = z + 1.0;
    return std::exp(-t / w) * std::pow(w, -(alpha + 2.0)) * (t - alpha * w);
}

double FunctionFamily::abs_derivative(double xi, double eta) const {
    const double s = xi + 1.0;
    const double m = s * s + eta * eta;
    const double amp = std::hypot(t - alpha * s, alpha * eta);
    return std::exp(-t * s / m) * amp * std::pow(m, -0.5 * (alpha + 2.0));
}

Complex FunctionFamily::at_infinity() const { return alpha > 0.0 ? Complex(0.0) : Complex(1.0); }

std::string FunctionFamily::describe() const {
    switch (kind) {
    case FunctionFamilyKind::Hshift: {
        std::ostringstream os;
        os << "hshift(t=" << t << ")";
        return os.str();
    }
    case FunctionFamilyKind::Rpow: {
        std::ostringstream os;
        os << "rpow(alpha=" << alpha << ")";
        return os.str();
    }
    case FunctionFamilyKind::Fta:
        return fmt("fta", t, alpha);
    }
    return "?";
}

double sup_g(double t, double s, double alpha) {
    if (!(t > 0.0)) throw ValidationError("sup_g: t must be > 0");
    if (!(s > 1.0)) throw ValidationError("sup_g: s must be > 1");
    if (!(alpha > 1.0)) throw ValidationError("sup_g: alpha must be > 1");
    if (t <= 0.5 * alpha * s) return std::exp(-t / s) / std::pow(s, alpha);
    const double c = std::pow(alpha / (2.0 * kE), 0.5 * alpha);
    return c / std::pow(t * s, 0.5 * alpha);
}

namespace {

// integral over u in (0, U] of u^{alpha-2} e^{-u}, alpha > 1. The endpoint
// singularity for alpha < 2 is removed by u = v^{1/(alpha-1)}.
double incomplete_tail_integral(double alpha, double U, double& err) {
    if (U <= 0.0) return 0.0;
    QuadOptions opts;
    opts.rel_tol = 1e-10;
    opts.abs_floor = 0.0; // F values span many orders; only relative control
    QuadResult r;
    double scale = 1.0;
    if (alpha >= 2.0) {
        r = integrate_adaptive(
            [alpha](double u) { return std::pow(u, alpha - 2.0) * std::exp(-u); }, 0.0, U, opts);
    } else {
        const double p = 1.0 / (alpha - 1.0);
        scale = p;
        r = integrate_adaptive(
            [p](double v) { return std::exp(-std::pow(v, p)); }, 0.0, std::pow(U, alpha - 1.0),
            opts);
    }
    if (!r.converged) throw QuadratureError("F_alpha: tail quadrature did not converge");
    err += scale * r.error;
    return scale * r.value;
}

} // namespace

double F_alpha(double t, double alpha) {
    if (!(t > 0.0)) throw ValidationError("F_alpha: t must be > 0");
    if (!(alpha > 1.0)) throw ValidationError("F_alpha: alpha must be > 1");
    const double split = 2.0 * t / alpha;
    double err = 0.0;
    double total = 0.0;
    if (split > 1.0) {
        QuadOptions opts;
        opts.rel_tol = 1e-10;
        opts.abs_floor = 0.0;
        const double c = std::pow(alpha / (2.0 * kE), 0.5 * alpha);
        QuadResult mid = integrate_adaptive(
            [t, alpha, c](double s) { return c / std::pow(t * s, 0.5 * alpha); }, 1.0, split,
            opts);
        if (!mid.converged) throw QuadratureError("F_alpha: branch quadrature did not converge");
        total += mid.value;
        err += mid.error;
    }
    // pure first-branch tail: s in [max(1, split), inf), u = t/s
    const double u_hi = t / std::max(1.0, split);
    double tail_err = 0.0;
    total += std::pow(t, 1.0 - alpha) * incomplete_tail_integral(alpha, u_hi, tail_err);
    err += std::pow(t, 1.0 - alpha) * tail_err;
    if (err > 1e-7 * std::max(total, 1e-300))
        throw QuadratureError("F_alpha: error estimate exceeds the relative target");
    return total;
}

double F_alpha_analytic(double t, double alpha) {
    if (!(t > 0.0)) throw ValidationError("F_alpha_analytic: t must be > 0");
    if (!(alpha > 1.0)) throw ValidationError("F_alpha_analytic: alpha must be > 1");
    const double split = 2.0 * t / alpha;
    double err = 0.0;
    double total = 0.0;
    if (split > 1.0) {
        const double c = std::pow(alpha / (2.0 * kE), 0.5 * alpha);
        if (alpha == 2.0) {
            total += c / t * std::log(split);
        } else {
            const double p = 1.0 - 0.5 * alpha;
            total += c / std::pow(t, 0.5 * alpha) * (std::pow(split, p) - 1.0) / p;
        }
    }
    const double u_hi = t / std::max(1.0, split);
    double tail_err = 0.0;
    total += std::pow(t, 1.0 - alpha) * incomplete_tail_integral(alpha, u_hi, tail_err);
    err += tail_err;
    return total;
}

namespace {

// Certified supremum of |f'(xi + i eta)| over eta >= 0: a quadratically
// clustered pre-scan guards against multimodality, golden-section refines the
// bracket, and the decay bound (t + alpha sqrt(m)) m^{-(alpha+2)/2} certifies
// that nothing beyond the scanned range can exceed the result.
double inner_sup(const FunctionFamily& f, double xi) {
    const double s = xi + 1.0;
    if (f.t == 0.0 && f.alpha == 0.0) return 0.0; // constant function
    auto value = [&f, xi](double eta) { return f.abs_derivative(xi, eta); };
    auto tail_bound = [&f](double m) {
        return (f.t + f.alpha * std::sqrt(m)) * std::pow(m, -0.5 * (f.alpha + 2.0));
    };

    double eta_hi = std::max(4.0 * s, 2.0 * std::sqrt(2.0 * std::max(f.t, 1.0) * s));
    constexpr int kScan = 96;
    double best = -1.0;
    int best_idx = 0;
    std::vector<double> etas;
    for (int round = 0; round < 60; ++round) {
        etas.resize(kScan + 1);
        for (int j = 0; j <= kScan; ++j) {
            const double frac = static_cast<double>(j) / kScan;
            etas[j] = eta_hi * frac * frac;
        }
        best = -1.0;
        for (int j = 0; j <= kScan; ++j) {
            const double v = value(etas[j]);
            if (v > best) {
                best = v;
                best_idx = j;
            }
        }
        if (tail_bound(s * s + eta_hi * eta_hi) <= best || best == 0.0) break;
        eta_hi *= 4.0;
        if (round == 59)
            throw InnerMaxError("b0_norm: inner sup not bracketed within the scan budget");
    }
    if (best == 0.0) return 0.0;
    if (best_idx == kScan)
        throw InnerMaxError("b0_norm: inner maximum sits on the scan boundary");

    const double lo = best_idx > 0 ? etas[best_idx - 1] : 0.0;
    const double hi = etas[best_idx + 1];
    const GoldenMax g = golden_section_max(value, lo, hi, 1e-13 * (1.0 + hi));
    return std::max(best, g.fx);
}

} // namespace

BNormResult b0_norm(const FunctionFamily& f) {
    BNormResult out;
    out.at_infinity = f.at_infinity();

    // sup over the closed right half-plane: boundary values |f(i eta)| have the
    // paper's g-form at s = 1, whose sup is available in closed form.
    if (f.t == 0.0) {
        out.sup_norm = 1.0; // |f(i eta)| = (1+eta^2)^{-alpha/2} peaks at eta = 0
    } else if (f.alpha == 0.0) {
        out.sup_norm = 1.0; // e^{-t/(1+r)} increases to f(infinity) = 1
    } else if (f.t <= 0.5 * f.alpha) {
        out.sup_norm = std::exp(-f.t);
    } else {
        out.sup_norm =
            std::pow(f.alpha / (2.0 * kE), 0.5 * f.alpha) / std::pow(f.t, 0.5 * f.alpha);
    }

    if (f.t == 0.0 && f.alpha == 0.0) {
        out.b0 = 0.0;
        return out;
    }

    // Outer knots: unit scale plus the images of the branch points of the two
    // envelope terms (s = 2t/alpha, s = 2t/(alpha+2)) where the inner sup can
    // switch between eta = 0 and an interior maximizer.
    std::vector<double> knots{1.0};
    if (f.alpha > 0.0 && f.t > 0.0) knots.push_back(2.0 * f.t / f.alpha - 1.0);
    if (f.t > 0.0) knots.push_back(2.0 * f.t / (f.alpha + 2.0) - 1.0);
    if (f.alpha == 0.0 && f.t > 0.0) knots.push_back(f.t - 1.0);
    std::vector<double> cuts{0.0};
    for (double k : knots)
        if (k > 0.0) cuts.push_back(k);
    std::sort(cuts.begin(), cuts.end());
    const double S = std::max({cuts.back() * 2.0, 16.0, 2.0 * f.t});
    cuts.push_back(S);

    auto integrand = [&f](double xi) { return inner_sup(f, xi); };
    QuadOptions opts;
    opts.rel_tol = 1e-9;
    double total = 0.0, err = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (!(cuts[i + 1] > cuts[i])) continue;
        QuadResult r = integrate_adaptive(integrand, cuts[i], cuts[i + 1], opts);
        if (!r.converged)
            throw QuadratureError("b0_norm: outer panel did not converge on [" +
                                  std::to_string(cuts[i]) + ", " + std::to_string(cuts[i + 1]) +
                                  "]");
        total += r.value;
        err += r.error;
    }
    // tail via xi = 1/v - 1 on (0, 1/(S+1)]
    QuadResult tail = integrate_adaptive(
        [&integrand](double v) { return integrand(1.0 / v - 1.0) / (v * v); }, 0.0,
        1.0 / (S + 1.0), opts);
    if (!tail.converged) throw QuadratureError("b0_norm: tail quadrature did not converge");
    total += tail.value;
    err += tail.error;

    out.b0 = total;
    out.error_estimate = err;
    if (f.t > 0.0) out.envelope = f.t * F_alpha(f.t, f.alpha + 2.0) +
                                  (f.alpha > 0.0 ? f.alpha * F_alpha(f.t, f.alpha + 1.0) : 0.0);
    return out;
}

} // namespace sglab
