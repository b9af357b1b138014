#include "sglab/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sglab/errors.hpp"

namespace sglab {

ModeVector ModeVector::constant(std::size_t modes, Complex value) {
    if (modes == 0) throw ValidationError("mode vector: needs at least one mode");
    ModeVector x;
    x.coeffs.assign(modes, value);
    return x;
}

ModeVector ModeVector::inverse_square(std::size_t modes) {
    if (modes == 0) throw ValidationError("mode vector: needs at least one mode");
    ModeVector x;
    x.coeffs.resize(modes);
    for (std::size_t k = 1; k <= modes; ++k)
        x.coeffs[k - 1] = 1.0 / (static_cast<double>(k) * static_cast<double>(k));
    return x;
}

ModeVector ModeVector::from(std::vector<Complex> coeffs) {
    if (coeffs.empty()) throw ValidationError("mode vector: needs at least one mode");
    ModeVector x;
    x.coeffs = std::move(coeffs);
    return x;
}

double ModeVector::norm() const {
    double s = 0.0;
    for (auto c : coeffs) s += std::norm(c);
    return std::sqrt(s);
}

double ModeVector::weighted_norm(const SpectrumSpec& spec, double alpha) const {
    if (coeffs.size() != spec.modes())
        throw ValidationError("mode vector: length disagrees with the spectrum");
    const auto& ev = spec.eigenvalues();
    double s = 0.0;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        s += std::pow(std::norm(ev[i]), alpha) * std::norm(coeffs[i]);
    return std::sqrt(s);
}

double xi_of_r(double r) {
    if (!(r > 0.0) || !(r < 1.0)) throw ValidationError("xi_of_r: r must lie in (0,1)");
    return (1.0 - r * r) / (2.0 * (r * r + 1.0));
}

namespace {

void check_vector(const SpectrumSpec& spec, const ModeVector& x) {
    if (x.coeffs.size() != spec.modes())
        throw ValidationError("lyapunov: mode vector length disagrees with the spectrum");
}

// dyadic-window trend: sup per octave of the window key, ratio of the last two
struct TrendTracker {
    std::vector<int> keys;
    std::vector<double> sups;

    void add(int key, double v) {
        for (std::size_t i = 0; i < keys.size(); ++i) {
            if (keys[i] == key) {
                sups[i] = std::max(sups[i], v);
                return;
            }
        }
        keys.push_back(key);
        sups.push_back(v);
    }

    double trend() const {
        if (sups.size() < 2) return 1.0;
        return sups.back() / sups[sups.size() - 2];
    }
};

} // namespace

double p_form(const SpectrumSpec& spec, double xi, const ModeVector& x) {
    check_vector(spec, x);
    if (!(xi >= 0.0)) throw ValidationError("p_form: xi must be >= 0");
    if (xi == 0.0 && spec.family() == SpectrumFamily::PolyComb)
        throw ValidationError(
            "p_form: xi = 0 rejected on poly_comb (Re lambda_k -> 0; the form may converge but "
            "needs tail control beyond the truncation)");
    const auto& ev = spec.eigenvalues();
    double s = 0.0;
    for (std::size_t i = 0; i < ev.size(); ++i)
        s += std::norm(x.coeffs[i]) / (2.0 * (xi - ev[i].real()));
    return s;
}

double q_form(const SpectrumSpec& spec, double xi, const ModeVector& x) {
    check_vector(spec, x);
    if (!(xi > 0.0)) throw ValidationError("q_form: xi must be > 0");
    const auto& ev = spec.eigenvalues();
    double s = 0.0;
    for (std::size_t i = 0; i < ev.size(); ++i)
        s += std::norm(x.coeffs[i]) / (2.0 * (xi - ev[i].real() / std::norm(ev[i])));
    return s;
}

double r_form(const SpectrumSpec& spec, double tau_min, double tau_max, double r,
              const ModeVector& x) {
    if (!(tau_min > 0.0) || !(tau_max >= tau_min))
        throw ValidationError("r_form: need 0 < tau_min <= tau_max");
    const double xr = xi_of_r(r);
    return (2.0 / tau_min) * p_form(spec, xr / tau_max, x) +
           2.0 * tau_max * q_form(spec, tau_min * xr, x);
}

InequalityVerdict pz_inequality_probe(const SpectrumSpec& spec, const StepsizeSchedule& sched,
                                      const ModeVector& x0, const ModeVector& y,
                                      std::span<const double> r_grid, std::size_t n_steps) {
    check_vector(spec, x0);
    check_vector(spec, y);
    if (r_grid.empty()) throw ValidationError("pz probe: empty r grid");
    for (double r : r_grid)
        if (!(r > 0.0) || !(r < 1.0)) throw ValidationError("pz probe: r must lie in (0,1)");

    const auto& ev = spec.eigenvalues();
    const std::size_t modes = ev.size();

    // one trajectory pass: |<y, x_n>| for every n (r-independent)
    std::vector<double> pairing(n_steps + 1);
    std::vector<Complex> coeff(x0.coeffs);
    for (std::size_t n = 0; n <= n_steps; ++n) {
        Complex inner = 0.0;
        for (std::size_t i = 0; i < modes; ++i) inner += std::conj(y.coeffs[i]) * coeff[i];
        pairing[n] = std::abs(inner);
        if (n == n_steps) break;
        const double tau = sched.tau(n);
        for (std::size_t i = 0; i < modes; ++i) coeff[i] *= cayley_scalar(tau, ev[i]);
    }

    const double y_norm = y.norm();
    InequalityVerdict v;
    v.probe = "pz_inequality";
    {
        std::ostringstream os;
        os << r_grid.size() << " r values, n <= " << n_steps << ", " << sched.describe();
        v.grid = os.str();
    }
    v.finite = true;
    TrendTracker tracker;
    for (double r : r_grid) {
        const double rf = r_form(spec, sched.tau_min(), sched.tau_max(), r, x0);
        const double log_scale =
            0.5 * std::log1p(-r) - std::log(y_norm) - 0.5 * std::log(rf);
        double best = 0.0;
        for (std::size_t n = 0; n <= n_steps; ++n) {
            if (pairing[n] == 0.0) continue;
            const double log_term = std::log1p(static_cast<double>(n)) +
                                    static_cast<double>(n) * std::log(r) +
                                    std::log(pairing[n]) + log_scale;
            best = std::max(best, std::exp(log_term));
        }
        v.finite = v.finite && is_normal_or_zero(best);
        v.constant = std::max(v.constant, best);
        tracker.add(static_cast<int>(std::floor(std::log2(1.0 / (1.0 - r)))), best);
    }
    v.trend = tracker.trend();
    return v;
}

InequalityVerdict q_bound_check(const SpectrumSpec& spec, const ModeVector& x, double alpha,
                                std::span<const double> xi_grid, QBoundVariant variant,
                                double beta) {
    check_vector(spec, x);
    if (xi_grid.empty()) throw ValidationError("q_bound_check: empty xi grid");
    if (variant == QBoundVariant::Polynomial && !(beta > 0.0))
        throw ValidationError("q_bound_check: polynomial variant needs beta > 0");

    const double alpha_top = variant == QBoundVariant::Exponential ? 1.0 : 1.0 + 0.5 * beta;
    if (!(alpha > 0.0) || !(alpha <= alpha_top))
        throw ValidationError("q_bound_check: alpha outside (0, alpha_top]");
    const bool log_variant = alpha == alpha_top;
    const double exponent = variant == QBoundVariant::Exponential
                                ? 1.0 - alpha
                                : 1.0 - 2.0 * alpha / (2.0 + beta);
    for (double xi : xi_grid) {
        if (!(xi > 0.0) || !(xi < 1.0))
            throw ValidationError("q_bound_check: xi grid must lie in (0,1)");
        if (log_variant && !(xi < 0.5))
            throw ValidationError("q_bound_check: log variant needs xi < 1/2");
    }

    const double denom = std::pow(x.weighted_norm(spec, alpha), 2);
    InequalityVerdict v;
    v.probe = log_variant ? "q_bound_log" : "q_bound_power";
    {
        std::ostringstream os;
        os << xi_grid.size() << " xi values in [" << xi_grid.front() << ", " << xi_grid.back()
           << "], alpha=" << alpha;
        v.grid = os.str();
    }
    v.finite = true;
    TrendTracker tracker;
    for (double xi : xi_grid) {
        const double q = q_form(spec, xi, x);
        const double ratio = log_variant ? q / (std::log(1.0 / xi) * denom)
                                         : std::pow(xi, exponent) * q / denom;
        v.finite = v.finite && is_normal_or_zero(ratio);
        v.constant = std::max(v.constant, ratio);
        tracker.add(static_cast<int>(std::floor(std::log2(xi))), ratio);
    }
    v.trend = tracker.trend();
    return v;
}

InequalityVerdict shifted_inverse_integral_check(const SpectrumSpec& spec, double gamma,
                                                 std::span<const double> xi_grid,
                                                 const ModeVector& x) {
    check_vector(spec, x);
    if (!(gamma > 0.0)) throw ValidationError("shifted_inverse: gamma must be > 0");
    if (xi_grid.empty()) throw ValidationError("shifted_inverse: empty xi grid");
    const auto& ev = spec.eigenvalues();
    const double denom = std::pow(x.norm(), 2);

    InequalityVerdict v;
    v.probe = "shifted_inverse_integral";
    {
        std::ostringstream os;
        os << xi_grid.size() << " xi values in [" << xi_grid.front() << ", " << xi_grid.back()
           << "], gamma=" << gamma;
        v.grid = os.str();
    }
    v.finite = true;
    TrendTracker tracker;
    for (double xi : xi_grid) {
        if (!(xi > 0.0)) throw ValidationError("shifted_inverse: xi must be > 0");
        double lhs = 0.0;
        for (std::size_t i = 0; i < ev.size(); ++i)
            lhs += std::norm(x.coeffs[i]) / (2.0 * (xi - gamma * ev[i].real()));
        const double ratio = lhs * 2.0 * xi / denom;
        v.finite = v.finite && is_normal_or_zero(ratio);
        v.constant = std::max(v.constant, ratio);
        tracker.add(static_cast<int>(std::floor(std::log2(xi))), ratio);
    }
    v.trend = tracker.trend();
    return v;
}

InequalityVerdict step1_xi_log_check(const SpectrumSpec& spec, double beta,
                                     std::span<const double> xi_grid, const ModeVector& x) {
    check_vector(spec, x);
    if (!(beta > 0.0)) throw ValidationError("step1 check: beta must be > 0");
    if (xi_grid.empty()) throw ValidationError("step1 check: empty xi grid");
    const double denom = std::pow(x.weighted_norm(spec, 1.0), 2);

    InequalityVerdict v;
    v.probe = "step1_xi_log";
    {
        std::ostringstream os;
        os << xi_grid.size() << " xi values in [" << xi_grid.front() << ", " << xi_grid.back()
           << "], beta=" << beta;
        v.grid = os.str();
    }
    v.finite = true;
    TrendTracker tracker;
    for (double xi : xi_grid) {
        if (!(xi > 0.0) || !(xi < 0.5))
            throw ValidationError("step1 check: xi grid must lie in (0, 1/2)");
        const double ratio =
            xi * std::pow(std::fabs(std::log(xi)), 2.0 * beta) * p_form(spec, xi, x) / denom;
        v.finite = v.finite && is_normal_or_zero(ratio);
        v.constant = std::max(v.constant, ratio);
        tracker.add(static_cast<int>(std::floor(std::log2(xi))), ratio);
    }
    v.trend = tracker.trend();
    return v;
}

} // namespace sglab
