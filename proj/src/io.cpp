#include "sdof/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "sdof/error.hpp"

namespace sdof {

namespace {

const char* const kChannelFields[] = {"n_t", "n_r1", "n_r2", "n_e", "p_bar", "h1", "h2"};

int require_int(const Json& j, const char* name) {
  if (!j.contains(name)) throw Error(ErrorKind::input, std::string("channel schema: missing field '") + name + "'");
  const Json& v = j.at(name);
  if (!v.is_number_integer()) {
    throw Error(ErrorKind::input, std::string("channel schema: '") + name + "' must be an integer");
  }
  const auto value = v.get<long long>();
  if (value < 0 || value > 4096) {
    throw Error(ErrorKind::input, std::string("channel schema: '") + name + "' is out of range");
  }
  return static_cast<int>(value);
}

std::string number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

Json point_json(const Point& p) { return Json::array({p[0], p[1], p[2]}); }

Json range_json(const Range& r) { return Json{{"begin", r.begin}, {"end", r.end}, {"size", r.size()}}; }

Json doubles(const std::vector<double>& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(std::isfinite(x) ? Json(x) : Json(nullptr));
  return out;
}

Json allocation_json(const SchemeAllocation& a) {
  Json blocks = Json::array();
  for (const auto& b : a.plan.blocks) {
    Json entry = range_json(b.range);
    entry["name"] = b.name;
    blocks.push_back(entry);
  }
  Json margins = Json::array();
  const DecodabilityReport report = check_decodability(a);
  for (const auto& m : report.margins) {
    margins.push_back({{"message", m.message},
                       {"receiver", m.receiver},
                       {"dimensions", m.dimensions},
                       {"capacity", m.capacity},
                       {"rate", m.rate},
                       {"margin", m.margin},
                       {"required", m.required}});
  }
  const PrivacyLeak leak = privacy_overlap(a);
  return Json{{"case", to_string(a.plan.case_id)},
              {"surplus", to_string(a.plan.surplus)},
              {"d_target", point_json(a.d_target)},
              {"n_e", a.plan.n_e},
              {"n_e_prime", a.plan.n_e_prime},
              {"dims", {{"a", a.plan.dims_a()}, {"b", a.plan.dims_b()}, {"c", a.plan.dims_c()}}},
              {"b_split", a.plan.b_split},
              {"blocks", blocks},
              {"power", {{"p_bar", a.p_bar},
                         {"s_p", a.s_p},
                         {"effective_power", a.p_bar / (a.s_p * a.s_p)},
                         {"signal_power", a.signal_power},
                         {"noise_power_total", a.noise_power_total}}},
              {"rate_per_channel", a.rate_per_channel},
              {"delta", a.delta},
              {"coding_rate", a.coding_rate},
              {"rates", {{"R0", a.rates[0]}, {"R1", a.rates[1]}, {"R2", a.rates[2]}, {"RE", a.rates[3]}}},
              {"decodability", {{"ok", report.ok}, {"margins", margins}}},
              {"privacy_overlap", {{"a_seen_by_receiver2", leak.a_seen_by_2},
                                   {"c_seen_by_receiver1", leak.c_seen_by_1},
                                   {"disjoint", leak.disjoint()}}}};
}

}  // namespace

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(row);
  }
  return rows;
}

ComplexMatrix matrix_from_json(const Json& j, const char* name) {
  const std::string field(name);
  if (!j.is_array()) throw Error(ErrorKind::input, "channel schema: '" + field + "' must be an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  Eigen::Index cols = -1;
  ComplexMatrix m;
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array()) throw Error(ErrorKind::input, "channel schema: rows of '" + field + "' must be arrays");
    if (cols < 0) {
      cols = static_cast<Eigen::Index>(row.size());
      m.resize(rows, cols);
    } else if (static_cast<Eigen::Index>(row.size()) != cols) {
      throw Error(ErrorKind::dimension_mismatch, "channel schema: ragged rows in '" + field + "'");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const Json& e = row[static_cast<std::size_t>(c)];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        throw Error(ErrorKind::input, "channel schema: entries of '" + field + "' must be [re, im] pairs");
      }
      m(i, c) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  if (rows == 0) m.resize(0, 0);
  return m;
}

ChannelSpec channel_from_json(const Json& j, std::vector<std::string>* warnings) {
  if (!j.is_object()) throw Error(ErrorKind::input, "channel schema: top level must be an object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* f : kChannelFields) known = known || key == f;
    if (!known && warnings) warnings->push_back("unknown field '" + key + "' ignored");
  }
  ChannelSpec spec;
  spec.n_t = require_int(j, "n_t");
  spec.n_r1 = require_int(j, "n_r1");
  spec.n_r2 = require_int(j, "n_r2");
  spec.n_e = require_int(j, "n_e");
  if (!j.contains("p_bar") || !j.at("p_bar").is_number()) {
    throw Error(ErrorKind::input, "channel schema: 'p_bar' must be a number");
  }
  spec.p_bar = j.at("p_bar").get<double>();
  for (const char* name : {"h1", "h2"}) {
    if (!j.contains(name)) throw Error(ErrorKind::input, std::string("channel schema: missing field '") + name + "'");
  }
  spec.h1 = matrix_from_json(j.at("h1"), "h1");
  spec.h2 = matrix_from_json(j.at("h2"), "h2");
  validate(spec);
  return spec;
}

Json channel_to_json(const ChannelSpec& spec) {
  return Json{{"n_t", spec.n_t},     {"n_r1", spec.n_r1},  {"n_r2", spec.n_r2},
              {"n_e", spec.n_e},     {"p_bar", spec.p_bar}, {"h1", matrix_to_json(spec.h1)},
              {"h2", matrix_to_json(spec.h2)}};
}

ChannelSpec load_channel(const std::string& path, std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::not_found, "file not found: " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::input, "invalid JSON in " + path + ": " + e.what());
  }
  return channel_from_json(j, warnings);
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string input_hash(const ChannelSpec& spec) {
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << fnv1a64(channel_to_json(spec).dump());
  return out.str();
}

Json to_json(const RankProfile& p) {
  return Json{{"r1", p.r1}, {"r2", p.r2}, {"r0", p.r0}, {"s", p.s}, {"rt1", p.rt1}, {"rt2", p.rt2}};
}

Json to_json(const ParallelChannel& pc, bool include_matrices) {
  const auto& f = pc.factors;
  std::vector<double> cos(f.cosines.data(), f.cosines.data() + f.cosines.size());
  std::vector<double> sin(f.sines.data(), f.sines.data() + f.sines.size());
  Json out{{"profile", to_json(pc.profile)},
           {"s_min", pc.s_min},
           {"s_p", pc.s_p},
           {"effective_power", pc.effective_power},
           {"cosines", cos},
           {"sines", sin},
           {"rank_ambiguous", f.rank_ambiguous},
           {"rank_tol", {{"h1", f.rank_tol_h1}, {"h2", f.rank_tol_h2}, {"stack", f.rank_tol_stack}}},
           {"residual", {{"h1", f.residual1}, {"h2", f.residual2}}},
           {"unitarity_defect",
            {{"u", unitarity_defect(f.u)}, {"v", unitarity_defect(f.v)}, {"w", unitarity_defect(f.w)},
             {"q", unitarity_defect(f.q)}}}};
  if (include_matrices) {
    out["matrices"] = {{"u", matrix_to_json(f.u)},           {"v", matrix_to_json(f.v)},
                       {"w", matrix_to_json(f.w)},           {"q", matrix_to_json(f.q)},
                       {"r_tri", matrix_to_json(f.r_tri)},   {"sigma1", matrix_to_json(f.sigma1)},
                       {"sigma2", matrix_to_json(f.sigma2)}};
  }
  return out;
}

Json to_json(const SdofRegion& region, const RegionVertexSet& vertices) {
  Json constraints = Json::array();
  for (const auto& c : region.constraints) {
    constraints.push_back({{"coeffs", c.coeffs},
                           {"bound", c.bound},
                           {"raw_bound", c.raw_bound},
                           {"clamped", c.clamped()},
                           {"label", c.label}});
  }
  Json polygons = Json::object();
  for (const auto& [d0, poly] : vertices.fixed_d0_polygons) {
    Json pts = Json::array();
    for (const auto& v : poly) pts.push_back(Json::array({v[0], v[1]}));
    polygons[std::to_string(d0)] = {
        {"shape", to_string(d0 + region.n_e >= region.profile.s ? SliceShape::rectangle : SliceShape::pentagon)},
        {"vertices", pts}};
  }
  return Json{{"mode", to_string(region.mode)},
              {"profile", to_json(region.profile)},
              {"n_e", region.n_e},
              {"constraints", constraints},
              {"vertices", vertices.vertices},
              {"fixed_d0_polygons", polygons}};
}

Json to_json(const Scheme& scheme) {
  Json parts = Json::array();
  for (const auto& part : scheme.parts) {
    parts.push_back({{"weight", part.weight}, {"allocation", allocation_json(part.allocation)}});
  }
  const auto r = scheme.rates();
  return Json{{"target", point_json(scheme.target)},
              {"mode", to_string(scheme.mode)},
              {"time_shared", scheme.time_shared()},
              {"rates", {{"R0", r[0]}, {"R1", r[1]}, {"R2", r[2]}, {"RE", r[3]}}},
              {"parts", parts}};
}

Json to_json(const ConverseReport& report) {
  Json cuts = Json::array();
  for (const auto& cut : report.cuts) {
    const auto& c = cut.construction;
    cuts.push_back({{"cut", to_string(c.cut)},
                    {"cut_rank", c.cut_rank},
                    {"eve_rows", c.eve_rows},
                    {"rotated", c.rotated},
                    {"residual_rows", c.residual.rows()},
                    {"bound", cut.bound},
                    {"slope", cut.slope},
                    {"bits", doubles(cut.bits)}});
  }
  return Json{{"p_bar", doubles(report.p_bar)}, {"cuts", cuts}};
}

Json to_json(const SweepReport& report) {
  const auto& c = report.curves;
  const auto& adv = report.adversary;
  Json trials = Json::array();
  for (const auto& t : adv.trials) {
    trials.push_back({{"trial", t.trial}, {"prelog", t.prelog}, {"reference_bits", t.reference_bits}});
  }
  const auto& tol = report.options.tol;
  return Json{
      {"target", point_json(report.target)},
      {"mode", to_string(report.mode)},
      {"channel", to_json(report.channel, false)},
      {"scheme", to_json(report.scheme)},
      {"curves",
       {{"p_bar", doubles(c.p_bar)},
        {"R", doubles(c.per_channel)},
        {"R0", doubles(c.r0)},
        {"R1", doubles(c.r1)},
        {"R2", doubles(c.r2)},
        {"RE", doubles(c.re)}}},
      {"leakage",
       {{"p_bar", doubles(report.options.grid.values())},
        {"worst_bits", doubles(adv.worst_curve)},
        {"prelog", report.leakage_prelog},
        {"worst_trial", adv.worst_trial},
        {"seed", adv.seed},
        {"reference_p_bar", adv.reference_p_bar},
        {"invariance_spread", adv.invariance_spread},
        {"trials", trials}}},
      {"fitted_prelogs",
       {{"d0", report.fitted[0]}, {"d1", report.fitted[1]}, {"d2", report.fitted[2]}, {"RE", report.fitted[3]},
        {"leakage", report.leakage_prelog}}},
      {"tolerances",
       {{"prelog", tol.prelog}, {"fictitious", tol.fictitious}, {"leakage", tol.leakage},
        {"invariance", tol.invariance}}},
      {"warnings", report.warnings}};
}

Json to_json(const Certificate& cert) {
  Json checks = Json::array();
  for (const auto& c : cert.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  const Check* failed = cert.failed_check();
  return Json{{"passed", cert.passed},
              {"failed_check", failed ? Json(failed->name) : Json(nullptr)},
              {"checks", checks},
              {"secrecy_accounting",
               {{"total_entropy_slope", cert.total_entropy_slope},
                {"leakage_slope", cert.leakage_slope},
                {"side_info_residual", cert.side_info_residual},
                {"secrecy_slope", cert.secrecy_slope}}},
              {"sweep", to_json(cert.sweep)},
              {"converse", to_json(cert.converse)}};
}

std::string sweep_csv(const SweepReport& report) {
  const std::vector<double> grid = report.options.grid.values();
  std::ostringstream out;
  out << "p_bar,R0,R1,R2,RE,leakage\n";
  const auto& c = report.curves;
  for (std::size_t i = 0; i < c.p_bar.size(); ++i) {
    double leak = std::nan("");
    for (std::size_t g = 0; g < grid.size(); ++g)
      if (grid[g] == c.p_bar[i]) leak = report.adversary.worst_curve[g];
    out << number(c.p_bar[i]) << ',' << number(c.r0[i]) << ',' << number(c.r1[i]) << ',' << number(c.r2[i])
        << ',' << number(c.re[i]) << ',' << number(leak) << '\n';
  }
  return out.str();
}

}  // namespace sdof
