#include "lrd/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "format.hpp"

namespace lrd {

namespace {

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json optional_number(const std::optional<double>& v) { return v ? number(*v) : json(nullptr); }

std::string level_key(double level) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%g", level);
  return buf;
}

void dump(std::ostream& out, const json& j, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(indent * depth), ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out << ",\n";
        first = false;
        out << pad << json(key).dump() << ": ";
        dump(out, value, indent, depth + 1);
      }
      out << '\n' << close << '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out << "[]";
        return;
      }
      out << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out << ",\n";
        out << pad;
        dump(out, j[i], indent, depth + 1);
      }
      out << '\n' << close << ']';
      return;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      out << (std::isfinite(v) ? detail::fmt17(v) : std::string("null"));
      return;
    }
    default: out << j.dump();
  }
}

}  // namespace

void write_json(std::ostream& out, const json& j, int indent) {
  dump(out, j, indent, 0);
  out << '\n';
}

json to_json(const DescriptiveStats& s) {
  return json{{"n", s.n},
              {"mean", number(s.mean)},
              {"sd", number(s.sd)},
              {"skewness", optional_number(s.skewness)},
              {"excess_kurtosis", optional_number(s.excess_kurtosis)},
              {"min", number(s.min)},
              {"max", number(s.max)},
              {"degenerate", s.degenerate()}};
}

json to_json(const TestReport& r) {
  json j{{"test", r.test}, {"statistic", number(r.statistic)}, {"lags", r.lags_or_bandwidth}};
  if (r.p_value) j["p_value"] = number(*r.p_value);
  j["p_bracket"] = r.p_bracket;
  json cv = json::object();
  for (const auto& [level, v] : r.critical_values) cv[level_key(level)] = number(v);
  json rej = json::object();
  for (const auto& [level, v] : r.reject_at) rej[level_key(level)] = v;
  j["critical_values"] = cv;
  j["reject"] = rej;
  return j;
}

json to_json(const MfdfaConfig& c) {
  return json{{"s_min", c.s_min},
              {"s_max", c.s_max},
              {"scale_count", c.scale_count},
              {"detrend_order", c.detrend_order},
              {"q_list", c.q_list}};
}

MfdfaConfig mfdfa_config_from_json(const json& j, MfdfaConfig base) {
  if (j.contains("s_min")) base.s_min = j.at("s_min").get<std::size_t>();
  if (j.contains("s_max")) base.s_max = j.at("s_max").get<std::size_t>();
  if (j.contains("scale_count")) base.scale_count = j.at("scale_count").get<std::size_t>();
  if (j.contains("detrend_order")) base.detrend_order = j.at("detrend_order").get<int>();
  if (j.contains("q_list")) base.q_list = j.at("q_list").get<std::vector<double>>();
  return base;
}

json to_json(const ScalingFit& f) {
  return json{{"q", f.q},
              {"h", number(f.h)},
              {"raw_slope", number(f.raw_slope)},
              {"intercept", number(f.intercept)},
              {"stderr", number(f.std_error)},
              {"r_squared", number(f.r_squared)},
              {"scale_range", {f.s_lo, f.s_hi}},
              {"points", f.points},
              {"integrated_adjustment", f.integrated_adjustment}};
}

json to_json(const CrossoverAnalysis& c) {
  return json{{"crossover_scale", c.crossover_scale},
              {"fit_below", to_json(c.fit_below)},
              {"fit_above", to_json(c.fit_above)},
              {"sse_total", number(c.sse_total)},
              {"sse_single", number(c.sse_single)},
              {"improvement", number(c.improvement)},
              {"material", c.material},
              {"candidates", c.candidates}};
}

json to_json(const FluctuationCurve& c) {
  json rows = json::array();
  for (std::size_t i = 0; i < c.scales.size(); ++i) {
    json f = json::array();
    for (std::size_t j = 0; j < c.orders.size(); ++j) f.push_back(number(c.value(i, j)));
    rows.push_back(json{{"s", c.scales[i]}, {"F", f}, {"zero_windows", c.zero_windows[i]}});
  }
  return json{{"length", c.length}, {"config", to_json(c.config)}, {"orders", c.orders}, {"scales", rows}};
}

json to_json(const AcfResult& a) {
  json rho = json::array();
  for (double v : a.rho) rho.push_back(number(v));
  return json{{"n", a.n}, {"max_lag", a.max_lag()}, {"rho", rho}};
}

json to_json(const SpectrumResult& s) {
  json f = json::array();
  for (double v : s.density) f.push_back(number(v));
  return json{{"kernel", s.kernel}, {"bandwidth", s.bandwidth}, {"points", s.frequencies.size()}, {"density", f}};
}

json to_json(const SeasonalProfile& p) {
  json bins = json::array();
  for (const auto& b : p.bins)
    bins.push_back(json{{"bin", b.key}, {"mean", optional_number(b.mean)}, {"sd", optional_number(b.sd)},
                        {"count", b.count}});
  return json{{"kind", to_string(p.kind)}, {"bins", bins}};
}

json to_json(const GeneratorSpec& g) {
  json j{{"kind", to_string(g.kind)}, {"n", g.n}, {"seed", g.seed}};
  switch (g.kind) {
    case GeneratorKind::fgn:
    case GeneratorKind::fbm: j["h"] = g.hurst; break;
    case GeneratorKind::sinusoid_plus_fgn:
      j["h"] = g.hurst;
      j["period"] = g.period;
      j["amplitude"] = g.amplitude;
      break;
    case GeneratorKind::ar1: j["phi"] = g.phi; break;
    case GeneratorKind::cascade: j["p"] = g.cascade_p; break;
  }
  return j;
}

void write_curve_csv(std::ostream& out, const FluctuationCurve& curve) {
  using detail::fmt17;
  out << "s,q,F\n";
  for (std::size_t i = 0; i < curve.scales.size(); ++i)
    for (std::size_t j = 0; j < curve.orders.size(); ++j)
      out << curve.scales[i] << ',' << fmt17(curve.orders[j]) << ',' << fmt17(curve.value(i, j)) << '\n';
}

void write_scaling_csv(std::ostream& out, const FluctuationCurve& curve, double q) {
  using detail::fmt17;
  const auto f = curve.at_order(q);
  out << "log2_s,log2_F\n";
  for (std::size_t i = 0; i < curve.scales.size(); ++i)
    out << fmt17(std::log2(static_cast<double>(curve.scales[i]))) << ',' << fmt17(std::log2(f[i])) << '\n';
}

void write_acf_csv(std::ostream& out, const AcfResult& acf) {
  out << "lag,rho\n";
  for (std::size_t k = 0; k < acf.rho.size(); ++k) out << k << ',' << detail::fmt17(acf.rho[k]) << '\n';
}

void write_spectrum_csv(std::ostream& out, const SpectrumResult& spectrum) {
  using detail::fmt17;
  out << "lambda,f\n";
  for (std::size_t j = 0; j < spectrum.frequencies.size(); ++j)
    out << fmt17(spectrum.frequencies[j]) << ',' << fmt17(spectrum.density[j]) << '\n';
}

void write_seasonal_csv(std::ostream& out, const SeasonalProfile& profile) {
  using detail::fmt17;
  out << "bin,mean,sd,count\n";
  for (const auto& b : profile.bins) {
    out << b.key << ',';
    if (b.mean) out << fmt17(*b.mean);
    out << ',';
    if (b.sd) out << fmt17(*b.sd);
    out << ',' << b.count << '\n';
  }
}

}  // namespace lrd
