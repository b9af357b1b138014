#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sglab/spectrum.hpp"

namespace sglab {

enum class Kernel {
    Semigroup,             // |e^{t lambda}|
    InvSemigroup,          // |e^{t / lambda}| = e^{t Re(lambda)/|lambda|^2}
    InvSemigroupFrac,      // e^{t Re(lambda)/|lambda|^2} |lambda|^{-alpha}
    SemigroupFrac,         // e^{t Re(lambda)} |lambda|^{-alpha}
    SemigroupResolventShift // e^{t Re(lambda)} / |1 - lambda|
};

// Scalar kernel evaluated per eigenvalue; the sup over the spectrum is the
// exact operator norm of the corresponding function of a normal generator.
struct KernelKind {
    Kernel tag = Kernel::Semigroup;
    double alpha = 0.0;

    static KernelKind semigroup() { return {Kernel::Semigroup, 0.0}; }
    static KernelKind inv_semigroup() { return {Kernel::InvSemigroup, 0.0}; }
    static KernelKind inv_semigroup_frac(double alpha);
    static KernelKind semigroup_frac(double alpha);
    static KernelKind semigroup_resolvent_shift() { return {Kernel::SemigroupResolventShift, 0.0}; }

    // log of the scalar kernel at eigenvalue lambda and time t
    double log_value(Complex lambda, double t) const;

    std::string describe() const; // e.g. "inv_frac:1"
    static KernelKind parse(const std::string& text);
};

struct KernelNormResult {
    double value = 0.0;
    std::size_t argmax_k = 0; // 1-based mode index
    bool tail_safe = false;   // argmax_k <= K/2
};

// max over the truncated spectrum of the scalar kernel, computed in the log
// domain. The tail_safe flag reports argmax_k <= K/2; a false flag signals
// that the finite truncation contaminates the sup.
KernelNormResult kernel_norm(const SpectrumSpec& spec, const KernelKind& kind, double t);

// Continuous relaxation (alpha/(2 e gamma t))^{alpha/2} of the spectral sup
// for the inverse-semigroup fractional kernel on ExpComb(gamma).
// Valid for t >= alpha (gamma^2 + 1) / (2 gamma).
double continuous_envelope(double gamma, double alpha, double t);

struct Witness {
    double t = 0.0;
    double lower_bound = 0.0;
};

// Time at which mode k attains the continuous envelope. ExpComb: the norm
// equals (alpha/(2 e gamma t))^{alpha/2} exactly. PolyComb (beta = 1 only):
// t = alpha k^3 / 3 with lower bound 2^{-alpha/2} (alpha/(3 e t))^{alpha/3}.
Witness optimality_witness(const SpectrumSpec& spec, double alpha, std::size_t k);

// Sampled norm curve with provenance metadata.
struct NormCurve {
    bool discrete = false; // abscissa is an iteration count, not a time
    std::vector<double> abscissa;
    std::vector<double> value;
    std::vector<std::size_t> argmax;

    std::uint64_t spec_hash = 0;
    std::string kernel;
    std::size_t modes = 0;
    bool tail_safe = false;
    std::string schedule; // only for Crank-Nicolson curves
    double alpha = 0.0;
};

NormCurve norm_curve(const SpectrumSpec& spec, const KernelKind& kind,
                     std::span<const double> grid);

// lo, 2 lo, 4 lo, ... including the first point >= hi.
std::vector<double> dyadic_grid(double lo, double hi);

} // namespace sglab
