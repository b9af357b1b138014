#include "sglab/spectral_calculus.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "sglab/errors.hpp"
#include "sglab/parallel.hpp"

namespace sglab {

KernelKind KernelKind::inv_semigroup_frac(double alpha) {
    if (!(alpha >= 0.0)) throw ValidationError("kernel: alpha must be >= 0");
    return {Kernel::InvSemigroupFrac, alpha};
}

KernelKind KernelKind::semigroup_frac(double alpha) {
    if (!(alpha >= 0.0)) throw ValidationError("kernel: alpha must be >= 0");
    return {Kernel::SemigroupFrac, alpha};
}

double KernelKind::log_value(Complex lambda, double t) const {
    const double re = lambda.real();
    const double abs2 = std::norm(lambda);
    switch (tag) {
    case Kernel::Semigroup:
        return t * re;
    case Kernel::InvSemigroup:
        return t * re / abs2;
    case Kernel::InvSemigroupFrac:
        return t * re / abs2 - 0.5 * alpha * std::log(abs2);
    case Kernel::SemigroupFrac:
        return t * re - 0.5 * alpha * std::log(abs2);
    case Kernel::SemigroupResolventShift:
        return t * re - 0.5 * std::log(std::norm(Complex(1.0, 0.0) - lambda));
    }
    return 0.0;
}

std::string KernelKind::describe() const {
    std::ostringstream os;
    switch (tag) {
    case Kernel::Semigroup:
        return "semigroup";
    case Kernel::InvSemigroup:
        return "inv_semigroup";
    case Kernel::InvSemigroupFrac:
        os << "inv_frac:" << alpha;
        return os.str();
    case Kernel::SemigroupFrac:
        os << "semigroup_frac:" << alpha;
        return os.str();
    case Kernel::SemigroupResolventShift:
        return "resolvent_shift";
    }
    return "?";
}

KernelKind KernelKind::parse(const std::string& text) {
    auto alpha_of = [&text](std::size_t colon) {
        try {
            return std::stod(text.substr(colon + 1));
        } catch (...) {
            throw ValidationError("kernel: cannot parse alpha in \"" + text + "\"");
        }
    };
    if (text == "semigroup") return semigroup();
    if (text == "inv_semigroup") return inv_semigroup();
    if (text == "resolvent_shift") return semigroup_resolvent_shift();
    if (text.rfind("inv_frac:", 0) == 0) return inv_semigroup_frac(alpha_of(8));
    if (text.rfind("semigroup_frac:", 0) == 0) return semigroup_frac(alpha_of(14));
    throw ValidationError("kernel: unknown kind \"" + text + "\"");
}

namespace {

// Per-mode affine decomposition log v = t * rate + offset.
struct ModeTables {
    std::vector<double> rate;
    std::vector<double> offset;
};

ModeTables build_tables(const SpectrumSpec& spec, const KernelKind& kind) {
    const auto& ev = spec.eigenvalues();
    ModeTables tb;
    tb.rate.resize(ev.size());
    tb.offset.resize(ev.size());
    for (std::size_t i = 0; i < ev.size(); ++i) {
        const Complex lambda = ev[i];
        const double re = lambda.real();
        const double abs2 = std::norm(lambda);
        switch (kind.tag) {
        case Kernel::Semigroup:
            tb.rate[i] = re;
            tb.offset[i] = 0.0;
            break;
        case Kernel::InvSemigroup:
            tb.rate[i] = re / abs2;
            tb.offset[i] = 0.0;
            break;
        case Kernel::InvSemigroupFrac:
            tb.rate[i] = re / abs2;
            tb.offset[i] = -0.5 * kind.alpha * std::log(abs2);
            break;
        case Kernel::SemigroupFrac:
            tb.rate[i] = re;
            tb.offset[i] = -0.5 * kind.alpha * std::log(abs2);
            break;
        case Kernel::SemigroupResolventShift:
            tb.rate[i] = re;
            tb.offset[i] = -0.5 * std::log(std::norm(Complex(1.0, 0.0) - lambda));
            break;
        }
    }
    return tb;
}

KernelNormResult max_over_modes(const ModeTables& tb, double t) {
    double best = -std::numeric_limits<double>::infinity();
    std::size_t best_k = 1;
    const std::size_t n = tb.rate.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double v = t * tb.rate[i] + tb.offset[i];
        if (v > best) {
            best = v;
            best_k = i + 1;
        }
    }
    KernelNormResult out;
    out.value = std::exp(best);
    out.argmax_k = best_k;
    out.tail_safe = best_k <= n / 2 || n == 1;
    return out;
}

} // namespace

KernelNormResult kernel_norm(const SpectrumSpec& spec, const KernelKind& kind, double t) {
    if (!(t >= 0.0)) throw ValidationError("kernel_norm: t must be >= 0");
    const auto& ev = spec.eigenvalues();
    double best = -std::numeric_limits<double>::infinity();
    std::size_t best_k = 1;
    for (std::size_t i = 0; i < ev.size(); ++i) {
        const double v = kind.log_value(ev[i], t);
        if (v > best) {
            best = v;
            best_k = i + 1;
        }
    }
    KernelNormResult out;
    out.value = std::exp(best);
    out.argmax_k = best_k;
    out.tail_safe = best_k <= ev.size() / 2 || ev.size() == 1;
    return out;
}

double continuous_envelope(double gamma, double alpha, double t) {
    if (!(gamma > 0.0)) throw ValidationError("continuous_envelope: gamma must be > 0");
    if (!(alpha > 0.0)) throw ValidationError("continuous_envelope: alpha must be > 0");
    const double threshold = alpha * (gamma * gamma + 1.0) / (2.0 * gamma);
    if (!(t >= threshold))
        throw ValidationError("continuous_envelope: t below validity threshold alpha(gamma^2+1)/(2 gamma)");
    return std::exp(0.5 * alpha * std::log(alpha / (2.0 * std::exp(1.0) * gamma * t)));
}

Witness optimality_witness(const SpectrumSpec& spec, double alpha, std::size_t k) {
    if (!(alpha > 0.0)) throw ValidationError("optimality_witness: alpha must be > 0");
    if (k < 1 || k > spec.modes())
        throw ValidationError("optimality_witness: mode index out of range");
    const double kd = static_cast<double>(k);
    Witness w;
    switch (spec.family()) {
    case SpectrumFamily::ExpComb: {
        const double gamma = spec.gamma();
        w.t = alpha * (gamma * gamma + kd * kd) / (2.0 * gamma);
        w.lower_bound = continuous_envelope(gamma, alpha, w.t);
        return w;
    }
    case SpectrumFamily::PolyComb: {
        if (spec.beta() != 1.0)
            throw ValidationError("optimality_witness: poly_comb only supported for beta = 1");
        w.t = alpha * kd * kd * kd / 3.0;
        w.lower_bound = std::exp(-0.5 * alpha * std::log(2.0) +
                                 (alpha / 3.0) * std::log(alpha / (3.0 * std::exp(1.0) * w.t)));
        return w;
    }
    case SpectrumFamily::Custom:
        throw ValidationError("optimality_witness: no witness for custom spectra");
    }
    throw ValidationError("optimality_witness: unreachable family");
}

NormCurve norm_curve(const SpectrumSpec& spec, const KernelKind& kind,
                     std::span<const double> grid) {
    if (grid.empty()) throw ValidationError("norm_curve: empty grid");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] >= 0.0)) throw ValidationError("norm_curve: abscissas must be >= 0");
        if (i > 0 && !(grid[i] > grid[i - 1]))
            throw ValidationError("norm_curve: grid must be strictly increasing");
    }
    const ModeTables tb = build_tables(spec, kind);

    NormCurve curve;
    curve.abscissa.assign(grid.begin(), grid.end());
    curve.value.resize(grid.size());
    curve.argmax.resize(grid.size());
    curve.spec_hash = spec.hash();
    curve.kernel = kind.describe();
    curve.modes = spec.modes();
    curve.alpha = kind.alpha;

    parallel_chunks(grid.size(), [&](std::size_t, std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const KernelNormResult r = max_over_modes(tb, grid[i]);
            curve.value[i] = r.value;
            curve.argmax[i] = r.argmax_k;
        }
    });

    curve.tail_safe = true;
    for (std::size_t i = 0; i < grid.size(); ++i)
        curve.tail_safe = curve.tail_safe && (curve.argmax[i] <= curve.modes / 2 || curve.modes == 1);
    return curve;
}

std::vector<double> dyadic_grid(double lo, double hi) {
    if (!(lo > 0.0) || !(hi > lo)) throw ValidationError("dyadic_grid: need 0 < lo < hi");
    std::vector<double> grid;
    double v = lo;
    while (true) {
        grid.push_back(v);
        if (v >= hi) break;
        v *= 2.0;
    }
    return grid;
}

} // namespace sglab
