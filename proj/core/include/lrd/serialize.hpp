#ifndef LRD_SERIALIZE_HPP
#define LRD_SERIALIZE_HPP

#include <iosfwd>

#include <nlohmann/json.hpp>

#include "lrd/generators.hpp"
#include "lrd/mfdfa.hpp"
#include "lrd/seasonal.hpp"
#include "lrd/spectral.hpp"
#include "lrd/stats.hpp"

namespace lrd {

using json = nlohmann::ordered_json;

json to_json(const DescriptiveStats& s);
json to_json(const TestReport& r);
json to_json(const MfdfaConfig& c);
json to_json(const ScalingFit& f);
json to_json(const CrossoverAnalysis& c);
json to_json(const FluctuationCurve& c);
json to_json(const AcfResult& a);
json to_json(const SpectrumResult& s);
json to_json(const SeasonalProfile& p);
json to_json(const GeneratorSpec& g);

/// Pretty-prints `j` with floating-point numbers at 17 significant digits
/// and non-finite numbers as null. Output ends with a newline.
void write_json(std::ostream& out, const json& j, int indent = 2);

/// Inverse of to_json(MfdfaConfig); missing keys keep their defaults.
MfdfaConfig mfdfa_config_from_json(const json& j, MfdfaConfig base = {});

// Plot-ready CSV emitters. Numbers carry 17 significant digits.

/// `s,q,F`
void write_curve_csv(std::ostream& out, const FluctuationCurve& curve);
/// `log2_s,log2_F` at order q.
void write_scaling_csv(std::ostream& out, const FluctuationCurve& curve, double q = 2.0);
/// `lag,rho`
void write_acf_csv(std::ostream& out, const AcfResult& acf);
/// `lambda,f`
void write_spectrum_csv(std::ostream& out, const SpectrumResult& spectrum);
/// `bin,mean,sd,count`; undefined moments are left empty.
void write_seasonal_csv(std::ostream& out, const SeasonalProfile& profile);

}  // namespace lrd

#endif  // LRD_SERIALIZE_HPP
