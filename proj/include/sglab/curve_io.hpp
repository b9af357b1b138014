#pragma once

#include <string>

#include "sglab/decay.hpp"
#include "sglab/spectral_calculus.hpp"
#include "sglab/verdict.hpp"

namespace sglab {

// CSV with header "abscissa,value,argmax_k" ("n,value,argmax_k" for discrete
// curves); metadata goes into a JSON sidecar next to the CSV.
void write_curve_csv(const std::string& path, const NormCurve& curve);
void write_curve_meta(const std::string& path, const NormCurve& curve);
std::string curve_meta_json(const NormCurve& curve);

// Reads a curve CSV produced by this tool (argmax column optional).
NormCurve read_curve_csv(const std::string& path);

std::string verdict_json(const InequalityVerdict& v);
std::string fit_json(const DecayFit& fit);
std::string liminf_json(const LiminfCheck& check);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

} // namespace sglab
