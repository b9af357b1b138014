#include "sglab/spectrum.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sglab/errors.hpp"

namespace sglab {

namespace {

constexpr std::size_t kModeBudget = 10'000'000;

void validate_eigenvalue(std::size_t k, Complex lambda) {
    if (!(lambda.real() < 0.0))
        throw ValidationError("spectrum: eigenvalue " + std::to_string(k) +
                              " has Re(lambda) >= 0");
    if (lambda == Complex(0.0, 0.0))
        throw ValidationError("spectrum: eigenvalue " + std::to_string(k) + " is zero");
    if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag()))
        throw ValidationError("spectrum: eigenvalue " + std::to_string(k) + " is not finite");
}

} // namespace

SpectrumSpec::SpectrumSpec(SpectrumFamily family, double param, std::vector<Complex> eigenvalues)
    : family_(family), param_(param), eigenvalues_(std::move(eigenvalues)) {
    if (eigenvalues_.empty()) throw ValidationError("spectrum: needs at least one mode");
    if (eigenvalues_.size() > kModeBudget)
        throw ValidationError("spectrum: mode count exceeds the 1e7 budget");
    for (std::size_t i = 0; i < eigenvalues_.size(); ++i)
        validate_eigenvalue(i + 1, eigenvalues_[i]);
    if (family_ == SpectrumFamily::Custom) {
        std::set<std::pair<double, double>> seen;
        for (auto lambda : eigenvalues_) {
            if (!seen.insert({lambda.real(), lambda.imag()}).second)
                throw ValidationError("spectrum: custom list contains duplicates");
        }
    }
}

SpectrumSpec SpectrumSpec::exp_comb(double gamma, std::size_t modes) {
    if (!(gamma > 0.0)) throw ValidationError("spectrum: exp_comb needs gamma > 0");
    std::vector<Complex> ev;
    ev.reserve(modes);
    for (std::size_t k = 1; k <= modes; ++k)
        ev.emplace_back(-gamma, static_cast<double>(k));
    return SpectrumSpec(SpectrumFamily::ExpComb, gamma, std::move(ev));
}

SpectrumSpec SpectrumSpec::poly_comb(double beta, std::size_t modes) {
    if (!(beta > 0.0)) throw ValidationError("spectrum: poly_comb needs beta > 0");
    std::vector<Complex> ev;
    ev.reserve(modes);
    for (std::size_t k = 1; k <= modes; ++k)
        ev.emplace_back(-std::pow(static_cast<double>(k), -beta), static_cast<double>(k));
    return SpectrumSpec(SpectrumFamily::PolyComb, beta, std::move(ev));
}

SpectrumSpec SpectrumSpec::custom(std::vector<Complex> eigenvalues) {
    return SpectrumSpec(SpectrumFamily::Custom, 0.0, std::move(eigenvalues));
}

double SpectrumSpec::gamma() const {
    if (family_ != SpectrumFamily::ExpComb)
        throw ValidationError("spectrum: gamma only defined for exp_comb");
    return param_;
}

double SpectrumSpec::beta() const {
    if (family_ != SpectrumFamily::PolyComb)
        throw ValidationError("spectrum: beta only defined for poly_comb");
    return param_;
}

std::string SpectrumSpec::to_json() const {
    nlohmann::json j;
    switch (family_) {
    case SpectrumFamily::ExpComb:
        j["family"] = "exp_comb";
        j["gamma"] = param_;
        break;
    case SpectrumFamily::PolyComb:
        j["family"] = "poly_comb";
        j["beta"] = param_;
        break;
    case SpectrumFamily::Custom: {
        j["family"] = "custom";
        auto& list = j["eigenvalues"] = nlohmann::json::array();
        for (auto lambda : eigenvalues_) list.push_back({lambda.real(), lambda.imag()});
        break;
    }
    }
    j["modes"] = eigenvalues_.size();
    return j.dump();
}

SpectrumSpec SpectrumSpec::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("spectrum: invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("family") || !j["family"].is_string())
        throw ValidationError("spectrum: JSON needs a string \"family\" field");
    const std::string family = j["family"].get<std::string>();
    auto modes_of = [&j]() -> std::size_t {
        if (!j.contains("modes") || !j["modes"].is_number_unsigned())
            throw ValidationError("spectrum: JSON needs a positive integer \"modes\" field");
        return j["modes"].get<std::size_t>();
    };
    if (family == "exp_comb") {
        if (!j.contains("gamma") || !j["gamma"].is_number())
            throw ValidationError("spectrum: exp_comb needs a numeric \"gamma\" field");
        return exp_comb(j["gamma"].get<double>(), modes_of());
    }
    if (family == "poly_comb") {
        if (!j.contains("beta") || !j["beta"].is_number())
            throw ValidationError("spectrum: poly_comb needs a numeric \"beta\" field");
        return poly_comb(j["beta"].get<double>(), modes_of());
    }
    if (family == "custom") {
        if (!j.contains("eigenvalues") || !j["eigenvalues"].is_array())
            throw ValidationError("spectrum: custom needs an \"eigenvalues\" array");
        std::vector<Complex> ev;
        for (const auto& entry : j["eigenvalues"]) {
            if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
                !entry[1].is_number())
                throw ValidationError("spectrum: eigenvalues entries must be [re, im] pairs");
            ev.emplace_back(entry[0].get<double>(), entry[1].get<double>());
        }
        if (j.contains("modes") && j["modes"].get<std::size_t>() != ev.size())
            throw ValidationError("spectrum: \"modes\" disagrees with the eigenvalue count");
        return custom(std::move(ev));
    }
    throw ValidationError("spectrum: unknown family \"" + family + "\"");
}

SpectrumSpec SpectrumSpec::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("spectrum: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json(buf.str());
}

std::uint64_t SpectrumSpec::hash() const {
    const std::string canonical = to_json();
    std::uint64_t h = 0xcbf29ce484222325ULL; // FNV-1a 64
    for (unsigned char c : canonical) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string SpectrumSpec::describe() const {
    std::ostringstream os;
    switch (family_) {
    case SpectrumFamily::ExpComb:
        os << "exp_comb(gamma=" << param_ << ",K=" << modes() << ")";
        break;
    case SpectrumFamily::PolyComb:
        os << "poly_comb(beta=" << param_ << ",K=" << modes() << ")";
        break;
    case SpectrumFamily::Custom:
        os << "custom(K=" << modes() << ")";
        break;
    }
    return os.str();
}

const std::vector<Complex>& eigenvalues(const SpectrumSpec& spec) { return spec.eigenvalues(); }

SpectralMarginCheck check_poly_condition(const SpectrumSpec& spec, double beta, double C,
                                         double delta) {
    if (!(beta > 0.0)) throw ValidationError("check_poly_condition: beta must be > 0");
    if (!(C > 0.0)) throw ValidationError("check_poly_condition: C must be > 0");
    if (!(delta > 0.0)) throw ValidationError("check_poly_condition: delta must be > 0");
    SpectralMarginCheck out;
    out.C = C;
    out.delta = delta;
    const auto& ev = spec.eigenvalues();
    for (std::size_t i = 0; i < ev.size(); ++i) {
        const Complex lambda = ev[i];
        if (lambda.real() < -delta) continue;
        const double margin = C / std::pow(std::fabs(lambda.real()), 1.0 / beta);
        // 1e-12 relative guard: equality cases must not fail through rounding
        if (std::fabs(lambda.imag()) < margin * (1.0 - 1e-12))
            out.failures.emplace_back(i + 1, lambda);
    }
    out.pass = out.failures.empty();
    return out;
}

} // namespace sglab
