#include "sdof/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "sdof/io.hpp"

namespace sdof::cli {

namespace {

constexpr std::pair<std::string_view, Subcommand> kCommands[] = {
    {"gsvd", Subcommand::gsvd},   {"region", Subcommand::region},   {"scheme", Subcommand::scheme},
    {"sweep", Subcommand::sweep}, {"certify", Subcommand::certify}, {"converse", Subcommand::converse}};

double parse_number(std::string_view text) {
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || text.empty()) {
    throw Error(ErrorKind::input, "not a number: '" + std::string(text) + "'");
  }
  return value;
}

std::string fmt(double x) {
  std::ostringstream out;
  out << std::setprecision(6) << x;
  return out.str();
}

std::string fmt_point(const Point& p) { return "(" + fmt(p[0]) + ", " + fmt(p[1]) + ", " + fmt(p[2]) + ")"; }

AnalysisOptions analysis_options(const RunConfig& c) {
  AnalysisOptions o;
  o.grid = c.grid;
  if (c.tol_prelog) o.tol.prelog = *c.tol_prelog;
  o.trials = c.trials;
  o.seed = c.seed;
  o.execution = c.serial ? Execution::serial : Execution::parallel;
  o.gsvd.rank_tol = c.tol_rank;
  return o;
}

void check_config(const RunConfig& c) {
  if (c.input_path.empty() == !c.random.has_value()) {
    throw Error(ErrorKind::input, "exactly one of --input and --random is required");
  }
  if (c.tol_rank && !(*c.tol_rank >= 0.0)) throw Error(ErrorKind::input, "--tol-rank must be nonnegative");
  if (c.tol_prelog && !(*c.tol_prelog > 0.0)) throw Error(ErrorKind::input, "--tol-prelog must be positive");
  if (c.trials < 1) throw Error(ErrorKind::input, "--trials must be at least 1");
  if (c.n_e && *c.n_e < 0) throw Error(ErrorKind::input, "--ne must be nonnegative");
  c.grid.values();
  const bool needs_target =
      c.subcommand == Subcommand::scheme || c.subcommand == Subcommand::sweep || c.subcommand == Subcommand::certify;
  if (needs_target && !c.target) throw Error(ErrorKind::input, std::string(to_string(c.subcommand)) + " needs --target");
  const bool has_csv =
      c.subcommand == Subcommand::sweep || c.subcommand == Subcommand::region || c.subcommand == Subcommand::converse;
  if (c.format == Format::csv && !has_csv) {
    throw Error(ErrorKind::input, "csv output is available for sweep, region and converse only");
  }
}

Json meta_json(const RunConfig& c, const ChannelSpec& spec, const AnalysisOptions& o,
               const std::vector<std::string>& warnings) {
  Json input = c.random ? Json{{"source", "random"}, {"n_t", c.random->n_t}, {"n_r1", c.random->n_r1},
                               {"n_r2", c.random->n_r2}}
                        : Json{{"source", "file"}, {"path", c.input_path}};
  return Json{{"command", to_string(c.subcommand)},
              {"input", input},
              {"input_hash", input_hash(spec)},
              {"seed", c.seed},
              {"privacy", c.privacy},
              {"n_e", spec.n_e},
              {"p_bar", spec.p_bar},
              {"target", c.target ? Json::array({(*c.target)[0], (*c.target)[1], (*c.target)[2]}) : Json(nullptr)},
              {"tolerances",
               {{"rank", c.tol_rank ? Json(*c.tol_rank) : Json(nullptr)},
                {"prelog", o.tol.prelog},
                {"fictitious", o.tol.fictitious},
                {"leakage", o.tol.leakage},
                {"invariance", o.tol.invariance},
                {"delta", o.scheme.delta}}},
              {"grid", {{"min", o.grid.min}, {"max", o.grid.max}, {"points", o.grid.points}}},
              {"trials", o.trials},
              {"warnings", warnings}};
}

std::string csv_meta(const Json& meta) {
  std::ostringstream out;
  out << "# command=" << meta["command"].get<std::string>() << '\n'
      << "# input_hash=" << meta["input_hash"].get<std::string>() << '\n'
      << "# seed=" << meta["seed"].get<std::uint64_t>() << '\n'
      << "# n_e=" << meta["n_e"].get<int>() << '\n'
      << "# tolerances=" << meta["tolerances"].dump() << '\n'
      << "# grid=" << meta["grid"].dump() << '\n';
  return out.str();
}

std::string region_table(const SdofRegion& region, const RegionVertexSet& vs) {
  std::ostringstream out;
  out << "region " << to_string(region.mode) << "  " << to_string(region.profile) << "  n_e=" << region.n_e << '\n';
  out << "facets\n";
  for (const auto& c : region.constraints) {
    out << "  " << c.label;
    if (c.clamped()) out << "   [clamped from " << c.raw_bound << "]";
    out << '\n';
  }
  out << "vertices\n";
  for (const auto& v : vs.vertices) out << "  (" << v[0] << ", " << v[1] << ", " << v[2] << ")\n";
  out << "slices\n";
  for (const auto& [d0, poly] : vs.fixed_d0_polygons) {
    out << "  d0=" << d0 << ' '
        << to_string(d0 + region.n_e >= region.profile.s ? SliceShape::rectangle : SliceShape::pentagon) << ':';
    for (const auto& p : poly) out << " (" << p[0] << ", " << p[1] << ')';
    out << '\n';
  }
  return out.str();
}

std::string region_csv(const RegionVertexSet& vs) {
  std::ostringstream out;
  out << "set,index,d0,d1,d2\n";
  for (std::size_t i = 0; i < vs.vertices.size(); ++i) {
    const auto& v = vs.vertices[i];
    out << "vertex," << i << ',' << v[0] << ',' << v[1] << ',' << v[2] << '\n';
  }
  for (const auto& [d0, poly] : vs.fixed_d0_polygons)
    for (std::size_t i = 0; i < poly.size(); ++i)
      out << "slice," << i << ',' << d0 << ',' << poly[i][0] << ',' << poly[i][1] << '\n';
  return out.str();
}

std::string gsvd_table(const ParallelChannel& pc) {
  const auto& f = pc.factors;
  std::ostringstream out;
  out << "profile " << to_string(pc.profile) << '\n'
      << "s_min " << fmt(pc.s_min) << "  s_p " << fmt(pc.s_p) << "  effective_power " << fmt(pc.effective_power)
      << '\n';
  out << "cosines";
  for (Eigen::Index i = 0; i < f.cosines.size(); ++i) out << ' ' << fmt(f.cosines(i));
  out << "\nsines  ";
  for (Eigen::Index i = 0; i < f.sines.size(); ++i) out << ' ' << fmt(f.sines(i));
  out << "\nresidual h1 " << fmt(f.residual1) << "  h2 " << fmt(f.residual2) << '\n'
      << "rank ambiguous " << (f.rank_ambiguous ? "yes" : "no") << '\n';
  return out.str();
}

std::string scheme_table(const Scheme& scheme) {
  std::ostringstream out;
  const auto r = scheme.rates();
  out << "target " << fmt_point(scheme.target) << "  mode " << to_string(scheme.mode) << '\n'
      << "rates R0 " << fmt(r[0]) << "  R1 " << fmt(r[1]) << "  R2 " << fmt(r[2]) << "  RE " << fmt(r[3]) << '\n';
  for (std::size_t k = 0; k < scheme.parts.size(); ++k) {
    const auto& part = scheme.parts[k];
    const auto& a = part.allocation;
    out << "part " << k + 1 << "  weight " << fmt(part.weight) << "  " << to_string(a.plan.case_id)
        << "  surplus " << to_string(a.plan.surplus) << "  N_E' " << a.plan.n_e_prime << "  d "
        << fmt_point(a.d_target) << '\n';
    out << "  blocks";
    for (const auto& b : a.plan.blocks) out << ' ' << b.name << '[' << b.range.begin << ',' << b.range.end << ')';
    out << "\n  dims a=" << a.plan.dims_a() << " b=" << a.plan.dims_b() << " c=" << a.plan.dims_c() << "  b_split";
    for (int x : a.plan.b_split) out << ' ' << x;
    out << "\n  signal " << fmt(a.signal_power) << "  noise " << fmt(a.noise_power_total) << "  R "
        << fmt(a.rate_per_channel) << "  coding " << fmt(a.coding_rate) << '\n';
    for (const auto& m : check_decodability(a).margins) {
      out << "  " << m.message << " at receiver " << m.receiver << ": " << m.dimensions << " dims, margin "
          << fmt(m.margin) << (m.required ? "" : " (unused)") << '\n';
    }
    if (a.mode == PrivacyMode::mutual_privacy) {
      out << "  private coordinates disjoint " << (privacy_overlap(a).disjoint() ? "yes" : "no") << '\n';
    }
  }
  return out.str();
}

std::string sweep_table(const SweepReport& s) {
  std::ostringstream out;
  const auto grid = s.options.grid.values();
  out << "p_bar        R0          R1          R2          RE          leakage\n";
  for (std::size_t i = 0; i < s.curves.p_bar.size(); ++i) {
    double leak = std::nan("");
    for (std::size_t g = 0; g < grid.size(); ++g)
      if (grid[g] == s.curves.p_bar[i]) leak = s.adversary.worst_curve[g];
    out << std::left << std::setw(13) << fmt(s.curves.p_bar[i]) << std::setw(12) << fmt(s.curves.r0[i])
        << std::setw(12) << fmt(s.curves.r1[i]) << std::setw(12) << fmt(s.curves.r2[i]) << std::setw(12)
        << fmt(s.curves.re[i]) << fmt(leak) << '\n';
  }
  out << "pre-logs d0 " << fmt(s.fitted[0]) << "  d1 " << fmt(s.fitted[1]) << "  d2 " << fmt(s.fitted[2])
      << "  RE " << fmt(s.fitted[3]) << "  leakage " << fmt(s.leakage_prelog) << '\n'
      << "worst eavesdropper trial " << s.adversary.worst_trial << " of " << s.adversary.trials.size()
      << " (seed " << s.adversary.seed << "), invariance spread " << fmt(s.adversary.invariance_spread) << '\n';
  for (const auto& w : s.warnings) out << "warning: " << w << '\n';
  return out.str();
}

std::string converse_table(const ConverseReport& c) {
  std::ostringstream out;
  out << "cut     bound  slope     eve rows\n";
  for (const auto& cut : c.cuts) {
    out << std::left << std::setw(8) << to_string(cut.construction.cut) << std::setw(7) << cut.bound << std::setw(10)
        << fmt(cut.slope) << cut.construction.eve_rows.size() << (cut.construction.rotated ? " rotated" : "") << '\n';
  }
  return out.str();
}

std::string converse_csv(const ConverseReport& c) {
  std::ostringstream out;
  out << "p_bar,user1,user2,sum\n";
  for (std::size_t i = 0; i < c.p_bar.size(); ++i) {
    Json row = Json::array({c.p_bar[i], c.cuts[0].bits[i], c.cuts[1].bits[i], c.cuts[2].bits[i]});
    out << row[0].dump() << ',' << row[1].dump() << ',' << row[2].dump() << ',' << row[3].dump() << '\n';
  }
  return out.str();
}

std::string certificate_table(const Certificate& cert) {
  std::ostringstream out;
  for (const auto& c : cert.checks) out << (c.passed ? "PASS " : "FAIL ") << c.name << "  " << c.detail << '\n';
  out << "secrecy accounting: entropy " << fmt(cert.total_entropy_slope) << " - leakage " << fmt(cert.leakage_slope)
      << " - side info " << fmt(cert.side_info_residual) << " = " << fmt(cert.secrecy_slope) << '\n'
      << (cert.passed ? "certificate PASSED" : "certificate FAILED") << '\n';
  return out.str();
}

void emit_error(std::ostream& err, ErrorKind kind, const std::string& message) {
  const Json j{{"error", {{"kind", to_string(kind)}, {"message", message}, {"exit_code", exit_code(kind)}}}};
  err << j.dump() << '\n';
}

}  // namespace

std::string_view to_string(Subcommand cmd) {
  for (const auto& [name, value] : kCommands)
    if (value == cmd) return name;
  return "unknown";
}

std::string_view to_string(Format format) {
  switch (format) {
    case Format::table: return "table";
    case Format::json: return "json";
    case Format::csv: return "csv";
  }
  return "unknown";
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::input:
    case ErrorKind::degenerate:
    case ErrorKind::precondition: return 2;
    case ErrorKind::infeasible_target: return 3;
    case ErrorKind::numerical: return 4;
    case ErrorKind::not_found: return 5;
    case ErrorKind::dimension_mismatch: return 6;
  }
  return 2;
}

Point parse_target(std::string_view text) {
  Point p{};
  std::size_t start = 0;
  for (int i = 0; i < 3; ++i) {
    const std::size_t comma = text.find(',', start);
    if ((i < 2) == (comma == std::string_view::npos)) {
      throw Error(ErrorKind::input, "target must be d0,d1,d2: '" + std::string(text) + "'");
    }
    const std::string_view part = text.substr(start, i < 2 ? comma - start : std::string_view::npos);
    const std::size_t slash = part.find('/');
    if (slash == std::string_view::npos) {
      p[i] = parse_number(part);
    } else {
      const double den = parse_number(part.substr(slash + 1));
      if (den == 0.0) throw Error(ErrorKind::input, "zero denominator in target");
      p[i] = parse_number(part.substr(0, slash)) / den;
    }
    if (!std::isfinite(p[i])) throw Error(ErrorKind::input, "target entries must be finite");
    start = comma + 1;
  }
  return p;
}

RandomDims parse_dims(std::string_view text) {
  int v[3] = {0, 0, 0};
  std::size_t start = 0;
  for (int i = 0; i < 3; ++i) {
    const std::size_t x = text.find('x', start);
    if ((i < 2) == (x == std::string_view::npos)) {
      throw Error(ErrorKind::input, "--random expects NTxNR1xNR2: '" + std::string(text) + "'");
    }
    const std::string_view part = text.substr(start, i < 2 ? x - start : std::string_view::npos);
    const auto res = std::from_chars(part.data(), part.data() + part.size(), v[i]);
    if (res.ec != std::errc() || res.ptr != part.data() + part.size() || v[i] < 1 || v[i] > 64) {
      throw Error(ErrorKind::input, "--random dimensions must be integers in [1, 64]");
    }
    start = x + 1;
  }
  return {v[0], v[1], v[2]};
}

ChannelSpec generate_random_channel(int n_t, int n_r1, int n_r2, std::uint64_t seed, int n_e, double p_bar) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  const auto draw = [&](int rows) {
    ComplexMatrix m(rows, n_t);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < n_t; ++j) {
        const double re = normal(rng);
        const double im = normal(rng);
        m(i, j) = Complex(re, im);
      }
    return m;
  };
  ChannelSpec spec;
  spec.n_t = n_t;
  spec.n_r1 = n_r1;
  spec.n_r2 = n_r2;
  spec.n_e = n_e;
  spec.p_bar = p_bar;
  spec.h1 = draw(n_r1);
  spec.h2 = draw(n_r2);
  return spec;
}

std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out) {
  RunConfig c;
  CLI::App app{"Secrecy degrees of freedom of the two-user MIMO broadcast wiretap channel", "sdof"};
  std::string command, random, target, format = "table";
  app.add_option("command", command, "gsvd | region | scheme | sweep | certify | converse")->required();
  app.add_option("--input", c.input_path, "Channel JSON file");
  app.add_option("--random", random, "Generate a Gaussian channel NTxNR1xNR2 from --seed");
  app.add_option("--ne", c.n_e, "Eavesdropper antennas (overrides the channel file)");
  app.add_option("--pbar", c.p_bar, "Power budget (overrides the channel file)");
  app.add_flag("--privacy", c.privacy, "Impose mutual privacy between the receivers");
  app.add_option("--target", target, "Target d0,d1,d2; components may be fractions a/b");
  app.add_option("--snr-min", c.grid.min, "Smallest p_bar of the sweep grid");
  app.add_option("--snr-max", c.grid.max, "Largest p_bar of the sweep grid");
  app.add_option("--snr-points", c.grid.points, "Log-spaced grid points");
  app.add_option("--format", format, "table | json | csv");
  app.add_option("--out", c.out_path, "Write output here instead of stdout");
  app.add_option("--seed", c.seed, "Seed for random channels and eavesdropper sampling");
  app.add_option("--tol-rank", c.tol_rank, "Absolute singular-value rank threshold");
  app.add_option("--tol-prelog", c.tol_prelog, "Pre-log slope tolerance");
  app.add_option("--trials", c.trials, "Sampled eavesdroppers in the adversarial search");
  app.add_flag("--serial", c.serial, "Use the serial reference kernels");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw Error(ErrorKind::input, e.what());
  }
  bool found = false;
  for (const auto& [name, value] : kCommands) {
    if (name == command) {
      c.subcommand = value;
      found = true;
    }
  }
  if (!found) throw Error(ErrorKind::input, "unknown command '" + command + "'");
  if (format == "table") c.format = Format::table;
  else if (format == "json") c.format = Format::json;
  else if (format == "csv") c.format = Format::csv;
  else throw Error(ErrorKind::input, "unknown format '" + format + "'");
  if (!random.empty()) c.random = parse_dims(random);
  if (!target.empty()) c.target = parse_target(target);
  return c;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    check_config(config);
    const AnalysisOptions opts = analysis_options(config);
    std::vector<std::string> warnings;
    ChannelSpec spec;
    if (config.random) {
      spec = generate_random_channel(config.random->n_t, config.random->n_r1, config.random->n_r2, config.seed);
    } else {
      spec = load_channel(config.input_path, &warnings);
    }
    if (config.n_e) spec.n_e = *config.n_e;
    if (config.p_bar) spec.p_bar = *config.p_bar;
    const auto regime = validate(spec, opts.gsvd);
    warnings.insert(warnings.end(), regime.begin(), regime.end());
    const PrivacyMode mode = config.privacy ? PrivacyMode::mutual_privacy : PrivacyMode::no_privacy;

    Json meta = meta_json(config, spec, opts, warnings);
    Json result;
    std::string table, csv;
    int status = kExitOk;
    switch (config.subcommand) {
      case Subcommand::gsvd: {
        const ParallelChannel pc = reduce_to_parallel(spec, opts.gsvd);
        result = to_json(pc, true);
        table = gsvd_table(pc);
        break;
      }
      case Subcommand::region: {
        const SdofRegion region = make_region(rank_profile(spec, opts.gsvd), spec.n_e, mode);
        const RegionVertexSet vs = enumerate_vertices(region);
        result = to_json(region, vs);
        table = region_table(region, vs);
        csv = region_csv(vs);
        break;
      }
      case Subcommand::scheme: {
        const ParallelChannel pc = reduce_to_parallel(spec, opts.gsvd);
        const Scheme scheme = synthesize(pc, spec.p_bar, spec.n_e, *config.target, mode, opts.scheme);
        result = to_json(scheme);
        table = scheme_table(scheme);
        break;
      }
      case Subcommand::sweep: {
        const SweepReport report = sweep(spec, *config.target, mode, opts);
        result = to_json(report);
        table = sweep_table(report);
        csv = sweep_csv(report);
        break;
      }
      case Subcommand::certify: {
        const Certificate cert = certify(spec, *config.target, mode, opts);
        result = to_json(cert);
        table = certificate_table(cert);
        if (!cert.passed) status = exit_code(ErrorKind::numerical);
        break;
      }
      case Subcommand::converse: {
        const ConverseReport report = converse_prelog(spec, opts);
        result = to_json(report);
        table = converse_table(report);
        csv = converse_csv(report);
        break;
      }
    }

    std::string text;
    if (config.format == Format::json) {
      text = Json{{"meta", meta}, {"result", result}}.dump(2) + "\n";
    } else if (config.format == Format::csv) {
      text = csv_meta(meta) + csv;
    } else {
      std::ostringstream head;
      head << "# " << to_string(config.subcommand) << "  input " << meta["input_hash"].get<std::string>()
           << "  seed " << config.seed << "  n_e " << spec.n_e << "  p_bar " << fmt(spec.p_bar) << '\n';
      for (const auto& w : warnings) head << "# warning: " << w << '\n';
      text = head.str() + table;
    }
    if (config.out_path.empty()) {
      out << text;
    } else {
      std::ofstream file(config.out_path, std::ios::binary);
      if (!(file << text)) throw Error(ErrorKind::input, "cannot write " + config.out_path);
    }
    return status;
  } catch (const Error& e) {
    emit_error(err, e.kind(), e.what());
    return exit_code(e.kind());
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::optional<RunConfig> config;
  try {
    config = parse_args(argc, argv, out);
  } catch (const Error& e) {
    emit_error(err, e.kind(), e.what());
    return exit_code(e.kind());
  }
  if (!config) return kExitOk;
  return run(*config, out, err);
}

}  // namespace sdof::cli
