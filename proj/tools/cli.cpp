#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "lrd/lrd.hpp"

namespace lrd::cli {

namespace {

namespace fs = std::filesystem;

struct InputOptions {
  std::string path;
  std::string timestamp_column = "0";
  std::string value_column = "1";
  std::string delimiter = ",";
  std::string gaps = "drop-and-flag";
};

struct TestOptions {
  int adf_lags = 50;
  int kpss_bandwidth = 50;
};

struct DfaOptions {
  MfdfaConfig mfdfa = [] {
    MfdfaConfig c;
    c.s_min = 6;
    return c;
  }();
  bool crossover = true;
  double threshold = kMaterialCrossover;
  std::vector<double> splits{36.0, 72.0};
  bool per_year = false;
};

struct SpectralOptions {
  std::size_t max_lag = 1000;
  std::size_t bandwidth = 0;  // 0: round(0.1 T)
};

struct SeasonalOptions {
  std::vector<std::string> kinds{"hour-of-day", "day-of-week", "week-of-year", "month-of-year"};
};

// Failure inside a named pipeline stage.
struct StageError : Error {
  StageError(std::string stage_name, const Error& e) : Error(e.kind(), e.what()), stage(std::move(stage_name)) {}
  std::string stage;
};

template <class F>
auto stage(const std::string& name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError(name, e);
  }
}

ColumnRef column_ref(const std::string& text) {
  if (!text.empty() && std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isdigit(c); }))
    return static_cast<std::size_t>(std::stoull(text));
  return text;
}

json column_json(const std::string& text) {
  const auto ref = column_ref(text);
  if (const auto* i = std::get_if<std::size_t>(&ref)) return *i;
  return text;
}

IngestConfig ingest_config(const InputOptions& in) {
  if (in.delimiter.size() != 1) throw Error(ErrorKind::invalid_config, "delimiter must be a single character");
  IngestConfig cfg;
  cfg.timestamp_column = column_ref(in.timestamp_column);
  cfg.value_column = column_ref(in.value_column);
  cfg.delimiter = in.delimiter[0];
  cfg.gaps = parse_gap_policy(in.gaps);
  return cfg;
}

TimeSeries load_input(const InputOptions& in) {
  const auto cfg = ingest_config(in);
  if (in.path == "-") return load_csv(std::cin, cfg);
  return load_csv_file(in.path, cfg);
}

json input_digest(const InputOptions& in, const TimeSeries& s) {
  return json{{"path", in.path},
              {"length", s.size()},
              {"start", format_iso8601(s.timestamps().front())},
              {"end", format_iso8601(s.timestamps().back())},
              {"spacing_seconds", s.spacing()},
              {"gap_count", s.gaps().size()},
              {"gaps_filled", s.gaps_filled()}};
}

json error_json(const Error& e) { return json{{"kind", to_string(e.kind())}, {"message", e.what()}}; }

// A test that is undefined for this input is reported, not fatal.
json guarded_test(const std::string& name, const std::function<TestReport()>& f) {
  try {
    return to_json(f());
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::degenerate && e.kind() != ErrorKind::undefined &&
        e.kind() != ErrorKind::insufficient_data)
      throw;
    return json{{"test", name}, {"error", error_json(e)}};
  }
}

json battery(std::span<const double> x, const TestOptions& t) {
  return json{{"stats", to_json(describe(x))},
              {"tests",
               json::array({guarded_test("jarque-bera", [&] { return jarque_bera(x); }),
                            guarded_test("adf", [&] { return adf_test(x, t.adf_lags); }),
                            guarded_test("kpss", [&] { return kpss_test(x, t.kpss_bandwidth); })})}};
}

json describe_json(const TimeSeries& s, const TestOptions& t, bool diff) {
  json j{{"levels", battery(s.values(), t)}};
  if (diff) j["differences"] = battery(first_difference(s).values(), t);
  return j;
}

json dfa_config_json(const DfaOptions& d) {
  return json{{"mfdfa", to_json(d.mfdfa)},
              {"crossover", d.crossover},
              {"material_threshold", d.threshold},
              {"splits", d.splits},
              {"per_year", d.per_year}};
}

// Crossover, forced splits and the Hurst estimate for one series.
json regime_json(std::span<const double> x, const FluctuationCurve& curve, const DfaOptions& d) {
  json j;
  j["full_range"] = to_json(fit_scaling(curve, 2.0));
  if (d.crossover) {
    j["crossover"] = to_json(detect_crossover(curve, 2.0, d.threshold));
    json forced = json::array();
    for (double at : d.splits) {
      try {
        forced.push_back(to_json(split_at(curve, 2.0, at, d.threshold)));
      } catch (const Error& e) {
        forced.push_back(json{{"scale", at}, {"error", error_json(e)}});
      }
    }
    j["forced_splits"] = forced;
  }
  j["hurst"] = to_json(hurst(x, d.mfdfa, d.crossover));
  return j;
}

struct DfaResult {
  json summary;
  FluctuationCurve curve;
};

DfaResult dfa_json(const TimeSeries& s, const DfaOptions& d) {
  auto curve = fluctuation_function(s, d.mfdfa);
  json j = regime_json(s.values(), curve, d);
  json table = json::array();
  for (const auto& [q, fit] : generalized_hurst(curve, curve.scales.front(), curve.scales.back()))
    table.push_back(to_json(fit));
  j["generalized_hurst"] = table;
  j["curve"] = to_json(curve);
  if (d.per_year) {
    json years = json::array();
    for (int year : calendar_years(s)) {
      const auto part = slice_calendar(s, year);
      json entry{{"year", year}, {"length", part.size()}};
      try {
        const auto c = fluctuation_function(part, d.mfdfa);
        entry.update(regime_json(part.values(), c, d));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::invalid_config && e.kind() != ErrorKind::insufficient_data &&
            e.kind() != ErrorKind::degenerate)
          throw;
        entry["skipped"] = error_json(e);
      }
      years.push_back(entry);
    }
    j["per_year"] = years;
  }
  return {j, std::move(curve)};
}

json spectral_json(const TimeSeries& s, const SpectralOptions& o, AcfResult* acf_out, SpectrumResult* spec_out) {
  const std::size_t n = s.size();
  const auto a = acf(s, std::min(o.max_lag, n - 1));
  const auto sp = smoothed_periodogram(s, o.bandwidth ? o.bandwidth : default_bandwidth(n));
  json j{{"acf", to_json(a)}, {"spectrum", to_json(sp)}};
  const double lo = sp.frequencies.front();
  try {
    const double slope = log_log_slope(sp, lo, 10.0 * lo);
    j["low_frequency"] = json{{"band", {lo, 10.0 * lo}}, {"slope", slope}, {"implied_h", (1.0 - slope) / 2.0}};
  } catch (const Error& e) {
    j["low_frequency"] = json{{"error", error_json(e)}};
  }
  if (acf_out) *acf_out = a;
  if (spec_out) *spec_out = sp;
  return j;
}

std::vector<SeasonalProfile> seasonal_profiles(const TimeSeries& s, const SeasonalOptions& o) {
  std::vector<SeasonalProfile> out;
  for (const auto& k : o.kinds) out.push_back(seasonal_profile(s, parse_period_kind(k)));
  return out;
}

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::io, "cannot write '" + path.string() + "'");
  body(f);
  if (!f) throw Error(ErrorKind::io, "write failed for '" + path.string() + "'");
}

fs::path prepare_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::io, "cannot create '" + dir + "': " + ec.message());
  return dir;
}

void add_input_options(CLI::App* cmd, InputOptions& in) {
  cmd->add_option("input", in.path, "CSV file with a header row, or - for stdin")->required();
  cmd->add_option("--time-col", in.timestamp_column, "Timestamp column (index or header name)");
  cmd->add_option("--value-col", in.value_column, "Value column (index or header name)");
  cmd->add_option("--delimiter", in.delimiter, "Field delimiter");
  cmd->add_option("--gaps", in.gaps, "Gap policy: reject, drop-and-flag, linear-interpolate");
}

void add_test_options(CLI::App* cmd, TestOptions& t) {
  cmd->add_option("--adf-lags", t.adf_lags, "Lagged differences in the ADF regression");
  cmd->add_option("--kpss-bandwidth", t.kpss_bandwidth, "Bartlett bandwidth of the KPSS long-run variance");
}

void add_dfa_options(CLI::App* cmd, DfaOptions& d) {
  cmd->add_option("--s-min", d.mfdfa.s_min, "Smallest scale");
  cmd->add_option("--s-max", d.mfdfa.s_max, "Largest scale (0: T/4)");
  cmd->add_option("--scales", d.mfdfa.scale_count, "Target number of log-spaced scales");
  cmd->add_option("--q", d.mfdfa.q_list, "Moment orders, comma separated")->delimiter(',');
  cmd->add_option("--order", d.mfdfa.detrend_order, "Detrending polynomial degree");
  cmd->add_option("--threads", d.mfdfa.threads, "Worker threads (0: all cores)");
  cmd->add_flag("--crossover,!--no-crossover", d.crossover, "Detect a two-regime crossover");
  cmd->add_option("--threshold", d.threshold, "Relative SSE improvement for a material crossover");
  cmd->add_option("--split", d.splits, "Forced crossover scales, comma separated")->delimiter(',');
}

void add_spectral_options(CLI::App* cmd, SpectralOptions& o) {
  cmd->add_option("--max-lag", o.max_lag, "Largest ACF lag (capped at T-1)");
  cmd->add_option("--bandwidth", o.bandwidth, "Bartlett lag window (0: round(0.1 T))");
}

// Report configuration: everything that shapes the output.
struct ReportOptions {
  InputOptions input;
  TestOptions tests;
  DfaOptions dfa;
  SpectralOptions spectral;
  SeasonalOptions seasonal;
};

json config_json(const ReportOptions& r) {
  return json{{"ingest",
               {{"timestamp_column", column_json(r.input.timestamp_column)},
                {"value_column", column_json(r.input.value_column)},
                {"delimiter", r.input.delimiter},
                {"gaps", to_string(parse_gap_policy(r.input.gaps))}}},
              {"tests", {{"adf_lags", r.tests.adf_lags}, {"kpss_bandwidth", r.tests.kpss_bandwidth}}},
              {"dfa", dfa_config_json(r.dfa)},
              {"spectral", {{"max_lag", r.spectral.max_lag}, {"bandwidth", r.spectral.bandwidth}}},
              {"seasonal", {{"kinds", r.seasonal.kinds}}}};
}

std::string column_text(const json& j) { return j.is_string() ? j.get<std::string>() : std::to_string(j.get<std::size_t>()); }

// Reads a config object, or the "config" member of a full report.
void apply_config(const json& root, ReportOptions& r) {
  const json& c = root.contains("config") ? root.at("config") : root;
  if (c.contains("ingest")) {
    const auto& i = c.at("ingest");
    if (i.contains("timestamp_column")) r.input.timestamp_column = column_text(i.at("timestamp_column"));
    if (i.contains("value_column")) r.input.value_column = column_text(i.at("value_column"));
    if (i.contains("delimiter")) r.input.delimiter = i.at("delimiter").get<std::string>();
    if (i.contains("gaps")) r.input.gaps = i.at("gaps").get<std::string>();
  }
  if (c.contains("tests")) {
    const auto& t = c.at("tests");
    if (t.contains("adf_lags")) r.tests.adf_lags = t.at("adf_lags").get<int>();
    if (t.contains("kpss_bandwidth")) r.tests.kpss_bandwidth = t.at("kpss_bandwidth").get<int>();
  }
  if (c.contains("dfa")) {
    const auto& d = c.at("dfa");
    if (d.contains("mfdfa")) r.dfa.mfdfa = mfdfa_config_from_json(d.at("mfdfa"), r.dfa.mfdfa);
    if (d.contains("crossover")) r.dfa.crossover = d.at("crossover").get<bool>();
    if (d.contains("material_threshold")) r.dfa.threshold = d.at("material_threshold").get<double>();
    if (d.contains("splits")) r.dfa.splits = d.at("splits").get<std::vector<double>>();
    if (d.contains("per_year")) r.dfa.per_year = d.at("per_year").get<bool>();
  }
  if (c.contains("spectral")) {
    const auto& s = c.at("spectral");
    if (s.contains("max_lag")) r.spectral.max_lag = s.at("max_lag").get<std::size_t>();
    if (s.contains("bandwidth")) r.spectral.bandwidth = s.at("bandwidth").get<std::size_t>();
  }
  if (c.contains("seasonal") && c.at("seasonal").contains("kinds"))
    r.seasonal.kinds = c.at("seasonal").at("kinds").get<std::vector<std::string>>();
}

json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::io, "cannot open config '" + path + "'");
  try {
    return json::parse(f);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::parse, "config '" + path + "': " + e.what());
  }
}

// Options given on the command line win over the config file.
void overlay_flags(const CLI::App& cmd, const ReportOptions& flags, ReportOptions& r) {
  auto set = [&](const char* name) { return cmd.count(name) > 0; };
  if (set("--time-col")) r.input.timestamp_column = flags.input.timestamp_column;
  if (set("--value-col")) r.input.value_column = flags.input.value_column;
  if (set("--delimiter")) r.input.delimiter = flags.input.delimiter;
  if (set("--gaps")) r.input.gaps = flags.input.gaps;
  if (set("--adf-lags")) r.tests.adf_lags = flags.tests.adf_lags;
  if (set("--kpss-bandwidth")) r.tests.kpss_bandwidth = flags.tests.kpss_bandwidth;
  if (set("--s-min")) r.dfa.mfdfa.s_min = flags.dfa.mfdfa.s_min;
  if (set("--s-max")) r.dfa.mfdfa.s_max = flags.dfa.mfdfa.s_max;
  if (set("--scales")) r.dfa.mfdfa.scale_count = flags.dfa.mfdfa.scale_count;
  if (set("--q")) r.dfa.mfdfa.q_list = flags.dfa.mfdfa.q_list;
  if (set("--order")) r.dfa.mfdfa.detrend_order = flags.dfa.mfdfa.detrend_order;
  if (set("--crossover")) r.dfa.crossover = flags.dfa.crossover;
  if (set("--threshold")) r.dfa.threshold = flags.dfa.threshold;
  if (set("--split")) r.dfa.splits = flags.dfa.splits;
  if (set("--per-year")) r.dfa.per_year = flags.dfa.per_year;
  if (set("--max-lag")) r.spectral.max_lag = flags.spectral.max_lag;
  if (set("--bandwidth")) r.spectral.bandwidth = flags.spectral.bandwidth;
  if (set("--period")) r.seasonal.kinds = flags.seasonal.kinds;
  r.input.path = flags.input.path;
  r.dfa.mfdfa.threads = flags.dfa.mfdfa.threads;
}

int run_report(const CLI::App& cmd, const ReportOptions& flags, const std::string& config_path,
               const std::string& out_dir, std::ostream& out) {
  ReportOptions r;
  r.dfa.per_year = true;
  if (!config_path.empty()) apply_config(stage("config", [&] { return read_json_file(config_path); }), r);
  overlay_flags(cmd, flags, r);

  const auto dir = stage("output", [&] { return prepare_dir(out_dir); });
  const auto series = stage("ingest", [&] { return load_input(r.input); });

  json report;
  report["tool"] = json{{"name", "lrd"}, {"version", LRD_VERSION}};
  report["config"] = config_json(r);
  report["input"] = input_digest(r.input, series);
  stage("tests", [&] {
    const json d = describe_json(series, r.tests, true);
    report["levels"] = d.at("levels");
    report["differences"] = d.at("differences");
    return 0;
  });
  auto dfa = stage("dfa", [&] { return dfa_json(series, r.dfa); });
  dfa.summary.erase("curve");
  report["dfa"] = dfa.summary;

  AcfResult a;
  SpectrumResult sp;
  const json spectral = stage("spectral", [&] { return spectral_json(series, r.spectral, &a, &sp); });
  report["spectral"] = json{{"acf_max_lag", a.max_lag()},
                            {"bandwidth", sp.bandwidth},
                            {"kernel", sp.kernel},
                            {"low_frequency", spectral.at("low_frequency")}};
  const auto profiles = stage("seasonal", [&] { return seasonal_profiles(series, r.seasonal); });

  json files = json::array();
  stage("output", [&] {
    auto emit = [&](const std::string& name, const std::function<void(std::ostream&)>& body) {
      write_file(dir / name, body);
      files.push_back(name);
    };
    emit("acf.csv", [&](std::ostream& o) { write_acf_csv(o, a); });
    emit("spectrum.csv", [&](std::ostream& o) { write_spectrum_csv(o, sp); });
    for (const auto& p : profiles)
      emit("seasonal_" + to_string(p.kind) + ".csv", [&](std::ostream& o) { write_seasonal_csv(o, p); });
    emit("curve.csv", [&](std::ostream& o) { write_curve_csv(o, dfa.curve); });
    emit("scaling.csv", [&](std::ostream& o) { write_scaling_csv(o, dfa.curve); });
    report["files"] = files;
    write_file(dir / "report.json", [&](std::ostream& o) { write_json(o, report); });
    return 0;
  });
  write_json(out, report);
  return kOk;
}

void report_error(std::ostream& err, const Error& e, const std::string& stage_name) {
  json j{{"kind", to_string(e.kind())}, {"message", e.what()}};
  if (!stage_name.empty()) j["stage"] = stage_name;
  err << json{{"error", j}}.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Long-range dependence diagnostics for regularly sampled time series", "lrd"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.set_version_flag("--version", LRD_VERSION);

  // describe
  InputOptions d_in;
  TestOptions d_tests;
  bool d_diff = false;
  auto* describe_cmd = app.add_subcommand("describe", "Moments and the JB / ADF / KPSS battery");
  add_input_options(describe_cmd, d_in);
  add_test_options(describe_cmd, d_tests);
  describe_cmd->add_flag("--diff", d_diff, "Also analyse first differences");

  // dfa
  InputOptions f_in;
  DfaOptions f_opts;
  std::string f_out;
  auto* dfa_cmd = app.add_subcommand("dfa", "MF-DFA fluctuation function, scaling fits and crossover");
  add_input_options(dfa_cmd, f_in);
  add_dfa_options(dfa_cmd, f_opts);
  dfa_cmd->add_flag("--per-year", f_opts.per_year, "Repeat the analysis per calendar year");
  dfa_cmd->add_option("--out-dir", f_out, "Write curve.csv and scaling.csv here");

  // spectral
  InputOptions s_in;
  SpectralOptions s_opts;
  std::string s_out;
  auto* spectral_cmd = app.add_subcommand("spectral", "Autocorrelation and Bartlett lag-window spectrum");
  add_input_options(spectral_cmd, s_in);
  add_spectral_options(spectral_cmd, s_opts);
  spectral_cmd->add_option("--out-dir", s_out, "Write acf.csv and spectrum.csv here");

  // seasonal
  InputOptions z_in;
  SeasonalOptions z_opts;
  std::string z_out;
  auto* seasonal_cmd = app.add_subcommand("seasonal", "Calendar profiles (UTC)");
  add_input_options(seasonal_cmd, z_in);
  seasonal_cmd->add_option("--period", z_opts.kinds, "hour-of-day, day-of-week, week-of-year, month-of-year")
      ->delimiter(',');
  seasonal_cmd->add_option("--out-dir", z_out, "Write seasonal_<period>.csv here");

  // generate
  GeneratorSpec g;
  std::string g_kind = "fgn";
  std::string g_start = "0";
  auto* generate_cmd = app.add_subcommand("generate", "Synthetic series as CSV on stdout");
  generate_cmd->add_option("--kind", g_kind, "fgn, fbm, ar1, sinusoid-plus-fgn, cascade");
  generate_cmd->add_option("--n", g.n, "Length");
  generate_cmd->add_option("--h", g.hurst, "Hurst exponent");
  generate_cmd->add_option("--phi", g.phi, "AR(1) coefficient");
  generate_cmd->add_option("--period", g.period, "Sinusoid period in samples");
  generate_cmd->add_option("--amplitude", g.amplitude, "Sinusoid amplitude");
  generate_cmd->add_option("--p", g.cascade_p, "Cascade weight");
  generate_cmd->add_option("--seed", g.seed, "Random seed");
  generate_cmd->add_option("--start", g_start, "First timestamp");
  generate_cmd->add_option("--spacing", g.spacing, "Sampling interval in seconds");

  // report
  ReportOptions r_flags;
  std::string r_config;
  std::string r_out;
  auto* report_cmd = app.add_subcommand("report", "Full pipeline: report.json plus plot CSVs");
  add_input_options(report_cmd, r_flags.input);
  add_test_options(report_cmd, r_flags.tests);
  add_dfa_options(report_cmd, r_flags.dfa);
  report_cmd->add_flag("--per-year,!--no-per-year", r_flags.dfa.per_year, "Per-year crossover analysis (default on)");
  add_spectral_options(report_cmd, r_flags.spectral);
  report_cmd->add_option("--period", r_flags.seasonal.kinds, "Seasonal profiles to emit")->delimiter(',');
  report_cmd->add_option("--config", r_config, "Config JSON, or a previous report.json");
  report_cmd->add_option("--out-dir", r_out, "Output directory")->required();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (describe_cmd->parsed()) {
      const auto s = stage("ingest", [&] { return load_input(d_in); });
      json j{{"input", input_digest(d_in, s)}};
      j.update(stage("tests", [&] { return describe_json(s, d_tests, d_diff); }));
      write_json(out, j);
    } else if (dfa_cmd->parsed()) {
      const auto s = stage("ingest", [&] { return load_input(f_in); });
      auto res = stage("dfa", [&] { return dfa_json(s, f_opts); });
      json j{{"input", input_digest(f_in, s)}, {"config", dfa_config_json(f_opts)}};
      j.update(res.summary);
      if (!f_out.empty()) {
        stage("output", [&] {
          const auto dir = prepare_dir(f_out);
          write_file(dir / "curve.csv", [&](std::ostream& o) { write_curve_csv(o, res.curve); });
          write_file(dir / "scaling.csv", [&](std::ostream& o) { write_scaling_csv(o, res.curve); });
          return 0;
        });
      }
      write_json(out, j);
    } else if (spectral_cmd->parsed()) {
      const auto s = stage("ingest", [&] { return load_input(s_in); });
      AcfResult a;
      SpectrumResult sp;
      json j{{"input", input_digest(s_in, s)}};
      j.update(stage("spectral", [&] { return spectral_json(s, s_opts, &a, &sp); }));
      if (!s_out.empty()) {
        stage("output", [&] {
          const auto dir = prepare_dir(s_out);
          write_file(dir / "acf.csv", [&](std::ostream& o) { write_acf_csv(o, a); });
          write_file(dir / "spectrum.csv", [&](std::ostream& o) { write_spectrum_csv(o, sp); });
          return 0;
        });
      }
      write_json(out, j);
    } else if (seasonal_cmd->parsed()) {
      const auto s = stage("ingest", [&] { return load_input(z_in); });
      const auto profiles = stage("seasonal", [&] { return seasonal_profiles(s, z_opts); });
      json list = json::array();
      for (const auto& p : profiles) list.push_back(to_json(p));
      if (!z_out.empty()) {
        stage("output", [&] {
          const auto dir = prepare_dir(z_out);
          for (const auto& p : profiles)
            write_file(dir / ("seasonal_" + to_string(p.kind) + ".csv"),
                       [&](std::ostream& o) { write_seasonal_csv(o, p); });
          return 0;
        });
      }
      write_json(out, json{{"input", input_digest(z_in, s)}, {"profiles", list}});
    } else if (generate_cmd->parsed()) {
      g.kind = parse_generator_kind(g_kind);
      const auto start = parse_timestamp(g_start);
      if (!start) throw Error(ErrorKind::invalid_config, "cannot parse --start '" + g_start + "'");
      g.start = *start;
      write_csv(out, generate(g));
    } else if (report_cmd->parsed()) {
      return run_report(*report_cmd, r_flags, r_config, r_out, out);
    }
  } catch (const StageError& e) {
    report_error(err, e, e.stage);
    return e.kind() == ErrorKind::invalid_config ? kUsage : kFailed;
  } catch (const Error& e) {
    report_error(err, e, "");
    return e.kind() == ErrorKind::invalid_config ? kUsage : kFailed;
  }
  return kOk;
}

}  // namespace lrd::cli
