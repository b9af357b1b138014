#include "sglab/curve_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sglab/errors.hpp"

namespace sglab {

void write_curve_csv(const std::string& path, const NormCurve& curve) {
    std::ofstream out(path);
    if (!out) throw ValidationError("curve: cannot write " + path);
    out << (curve.discrete ? "n" : "abscissa") << ",value,argmax_k\n";
    out << std::setprecision(17);
    for (std::size_t i = 0; i < curve.abscissa.size(); ++i) {
        out << curve.abscissa[i] << ',' << curve.value[i] << ',';
        out << (i < curve.argmax.size() ? curve.argmax[i] : 0) << '\n';
    }
}

std::string curve_meta_json(const NormCurve& curve) {
    nlohmann::json j;
    j["spec_hash"] = curve.spec_hash;
    j["kernel"] = curve.kernel;
    j["modes"] = curve.modes;
    j["tail_safe"] = curve.tail_safe;
    j["samples"] = curve.abscissa.size();
    j["abscissa"] = curve.discrete ? "discrete" : "continuous";
    if (!curve.schedule.empty()) j["schedule"] = curve.schedule;
    if (curve.alpha != 0.0) j["alpha"] = curve.alpha;
    return j.dump(2);
}

void write_curve_meta(const std::string& path, const NormCurve& curve) {
    write_text_file(path, curve_meta_json(curve) + "\n");
}

NormCurve read_curve_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("curve: cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("curve: empty file " + path);
    NormCurve curve;
    curve.discrete = line.rfind("n,", 0) == 0;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        std::istringstream is(line);
        std::string cell;
        double t = 0.0, v = 0.0;
        std::size_t k = 0;
        try {
            if (!std::getline(is, cell, ',')) throw std::invalid_argument("missing abscissa");
            t = std::stod(cell);
            if (!std::getline(is, cell, ',')) throw std::invalid_argument("missing value");
            v = std::stod(cell);
            if (std::getline(is, cell, ',') && !cell.empty()) k = std::stoull(cell);
        } catch (const std::exception& e) {
            throw ValidationError("curve: bad row " + std::to_string(row) + " in " + path + ": " +
                                  e.what());
        }
        curve.abscissa.push_back(t);
        curve.value.push_back(v);
        curve.argmax.push_back(k);
    }
    if (curve.abscissa.empty()) throw ValidationError("curve: no samples in " + path);
    return curve;
}

std::string verdict_json(const InequalityVerdict& v) {
    nlohmann::json j;
    j["probe"] = v.probe;
    j["grid"] = v.grid;
    j["constant"] = v.constant;
    j["finite"] = v.finite;
    j["trend"] = v.trend;
    return j.dump(2);
}

std::string fit_json(const DecayFit& fit) {
    nlohmann::json j;
    j["exponent"] = fit.exponent;
    j["intercept"] = fit.intercept;
    j["r2"] = fit.r2;
    j["residual_max"] = fit.residual_max;
    j["window"] = {fit.window_lo, fit.window_hi};
    j["samples"] = fit.sample_count;
    return j.dump(2);
}

std::string liminf_json(const LiminfCheck& check) {
    nlohmann::json j;
    j["weight_q"] = check.weight_q;
    j["floor"] = check.floor_c;
    j["min_weighted"] = check.min_weighted;
    j["pass"] = check.pass;
    return j.dump(2);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write " + path);
    out << content;
}

} // namespace sglab
