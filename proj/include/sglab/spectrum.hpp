#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace sglab {

using Complex = std::complex<double>;

enum class SpectrumFamily { ExpComb, PolyComb, Custom };

// Eigenvalue family of a normal generator on l2, truncated to K modes.
// ExpComb(gamma):  lambda_k = -gamma + ik          (exponentially stable comb)
// PolyComb(beta):  lambda_k = -k^{-beta} + ik      (polynomially stable comb)
// Custom:          explicit eigenvalue list.
// All eigenvalues must lie in the open left half-plane and be nonzero;
// they are stored eagerly since curve evaluators sweep all modes repeatedly.
class SpectrumSpec {
public:
    static SpectrumSpec exp_comb(double gamma, std::size_t modes);
    static SpectrumSpec poly_comb(double beta, std::size_t modes);
    static SpectrumSpec custom(std::vector<Complex> eigenvalues);

    SpectrumFamily family() const { return family_; }
    double gamma() const;
    double beta() const;
    std::size_t modes() const { return eigenvalues_.size(); }
    const std::vector<Complex>& eigenvalues() const { return eigenvalues_; }

    std::string to_json() const;
    static SpectrumSpec from_json(const std::string& text);
    static SpectrumSpec load(const std::string& path);

    // FNV-1a hash of the canonical JSON form; identifies the spec in curve
    // metadata.
    std::uint64_t hash() const;
    std::string describe() const;

private:
    SpectrumSpec(SpectrumFamily family, double param, std::vector<Complex> eigenvalues);

    SpectrumFamily family_;
    double param_ = 0.0; // gamma or beta
    std::vector<Complex> eigenvalues_;
};

// List of eigenvalues in declared order (k = 1..K for the comb families).
const std::vector<Complex>& eigenvalues(const SpectrumSpec& spec);

// Verdict of the polynomial-stability spectral margin test: an eigenvalue
// fails when Re(lambda) >= -delta and |Im(lambda)| < C / |Re(lambda)|^(1/beta).
struct SpectralMarginCheck {
    double C = 0.0;
    double delta = 0.0;
    std::vector<std::pair<std::size_t, Complex>> failures; // (k, lambda_k), 1-based
    bool pass = false;
};

SpectralMarginCheck check_poly_condition(const SpectrumSpec& spec, double beta, double C,
                                         double delta);

} // namespace sglab
