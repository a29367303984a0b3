#include "kleingate/cli/app.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kleingate/cascade.hpp"
#include "kleingate/cli/figures.hpp"
#include "kleingate/cli/format.hpp"
#include "kleingate/cli/manifest.hpp"
#include "kleingate/cli/svg.hpp"
#include "kleingate/cli/sweep.hpp"
#include "kleingate/coupling.hpp"
#include "kleingate/error.hpp"
#include "kleingate/gates.hpp"

namespace kleingate::cli {
namespace {

using ojson = nlohmann::ordered_json;
namespace fs = std::filesystem;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Config files: JSON when the content starts with '{', TOML otherwise.

class JsonOrTomlConfig : public CLI::ConfigTOML {
 public:
  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    std::string text((std::istreambuf_iterator<char>(input)), std::istreambuf_iterator<char>());
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos || text[first] != '{') {
      std::istringstream is(text);
      auto items = CLI::ConfigTOML::from_config(is);
      for (auto& item : items) item.name = dashed(item.name);
      return items;
    }
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw CLI::ConversionError("config", std::string("invalid JSON: ") + e.what());
    }
    std::vector<CLI::ConfigItem> items;
    collect(j, {}, items);
    return items;
  }

 private:
  // Config keys may spell flags with underscores (schema_version, j_eva).
  static std::string dashed(std::string name) {
    std::replace(name.begin(), name.end(), '_', '-');
    return name;
  }

  static std::string scalar(const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_float()) return format_double(v.get<double>());
    return v.dump();
  }

  static void collect(const nlohmann::json& j, const std::vector<std::string>& parents,
                      std::vector<CLI::ConfigItem>& items) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_object()) {
        auto p = parents;
        p.push_back(key);
        collect(value, p, items);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = dashed(key);
      if (value.is_array()) {
        for (const auto& v : value) item.inputs.push_back(scalar(v));
      } else {
        item.inputs.push_back(scalar(value));
      }
      items.push_back(std::move(item));
    }
  }
};

// ---------------------------------------------------------------------------
// Output helpers.

enum class Format { Text, Json, Csv };

const std::map<std::string, Format> kFormats{
    {"text", Format::Text}, {"json", Format::Json}, {"csv", Format::Csv}};

std::string render_scalar(const ojson& v) {
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  return v.dump();
}

void flatten(const ojson& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), out);
  } else {
    out.emplace_back(prefix, render_scalar(j));
  }
}

std::string render_record(const ojson& record, const RunManifest& manifest, Format format) {
  std::ostringstream os;
  switch (format) {
    case Format::Json: {
      ojson doc = record;
      doc["manifest"] = manifest.to_json();
      os << doc.dump(2) << '\n';
      break;
    }
    case Format::Csv: {
      std::vector<std::pair<std::string, std::string>> kv;
      flatten(record, "", kv);
      for (std::size_t i = 0; i < kv.size(); ++i) os << (i ? "," : "") << kv[i].first;
      os << '\n';
      for (std::size_t i = 0; i < kv.size(); ++i) os << (i ? "," : "") << kv[i].second;
      os << '\n';
      break;
    }
    case Format::Text: {
      std::vector<std::pair<std::string, std::string>> kv;
      flatten(record, "", kv);
      for (const auto& [k, v] : kv) os << k << ": " << v << '\n';
      break;
    }
  }
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  const fs::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(p.parent_path(), ec);
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + path + " for writing");
  f << content;
  f.close();
  if (!f) throw IoError("failed writing " + path);
}

void write_manifest(const std::string& output_path, const RunManifest& manifest) {
  write_file(manifest_path(output_path), manifest.to_json().dump(2) + "\n");
}

// Emits a single record to stdout, or to --out plus its manifest sidecar.
void emit_record(const ojson& record, RunManifest manifest, Format format,
                 const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << render_record(record, manifest, format);
    return;
  }
  manifest.outputs.push_back(out_path);
  write_file(out_path, render_record(record, manifest, format));
  write_manifest(out_path, manifest);
  out << "wrote " << out_path << '\n';
}

ojson complex_fields(const char* name, cplx v) {
  return {{std::string(name) + "_re", v.real()}, {std::string(name) + "_im", v.imag()}};
}

void merge(ojson& into, const ojson& from) {
  for (const auto& [k, v] : from.items()) into[k] = v;
}

std::string stem_of(const std::string& path) {
  const fs::path p(path);
  return (p.parent_path() / p.stem()).string();
}

// ---------------------------------------------------------------------------
// Shared option groups.

struct ThetaOptions {
  double rad = 0.0;
  double deg = 0.0;
  CLI::Option* rad_opt = nullptr;
  CLI::Option* deg_opt = nullptr;

  void add(CLI::App* cmd, const std::string& prefix = "theta") {
    rad_opt = cmd->add_option("--" + prefix + "-rad", rad, "Incidence angle in radians");
    deg_opt = cmd->add_option("--" + prefix + "-deg", deg, "Incidence angle in degrees");
    rad_opt->excludes(deg_opt);
    deg_opt->excludes(rad_opt);
  }

  double value() const {
    if (deg_opt && deg_opt->count() > 0) return deg * std::numbers::pi / 180.0;
    return rad;
  }
};

struct CommonOptions {
  double hbar_vf = PhysicalConstants{}.hbar_vf;
  std::string format = "text";
  std::string out;

  void add(CLI::App* cmd, bool with_out = true) {
    cmd->add_option("--hbar-vf", hbar_vf, "hbar * v_F in eV*A")->capture_default_str();
    cmd->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    if (with_out) cmd->add_option("--out", out, "Write the record to a file (plus manifest)");
  }

  PhysicalConstants consts() const { return {hbar_vf}; }
  Format fmt() const { return kFormats.at(format); }
};

// ---------------------------------------------------------------------------
// Subcommands.

struct AmplitudesCmd {
  CommonOptions common;
  double j = 0.0;
  ThetaOptions theta;
  int s = 1;
  double tol_unitary = kDefaultUnitaryTolerance;
  double tol_class = kDefaultClassTolerance;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("amplitudes", "Spin-resolved scattering amplitudes for one (J, theta)");
    cmd->add_option("--j-eva", j, "Heisenberg coupling J in eV*A")->required();
    theta.add(cmd);
    cmd->add_option("--s", s, "Energy sign: 1 electron, -1 hole")->check(CLI::IsMember({1, -1}));
    cmd->add_option("--tol-unitary", tol_unitary)->capture_default_str();
    cmd->add_option("--tol-class", tol_class)->capture_default_str();
    common.add(cmd);
    cmd->callback([this] { run_flag = true; });
  }

  bool run_flag = false;

  void run(std::ostream& out) const {
    const ScatteringProblem problem{j, theta.value(), s, common.consts()};
    const GateReport rep = classify_gate(problem, tol_unitary, tol_class);
    const auto& a = rep.amplitudes;
    const auto sol = direct_solve(problem, {SpinState::spin_up(), SpinState::spin_down()});
    const double direct_dev = std::max({std::abs(sol.transmitted[1] - a.t_n),
                                        std::abs(sol.transmitted[2] - a.t_s),
                                        std::abs(sol.reflected[1] - a.r_n),
                                        std::abs(sol.reflected[2] - a.r_s)});

    ojson rec;
    rec["J_eVA"] = j;
    rec["theta_rad"] = problem.theta;
    rec["s"] = s;
    merge(rec, complex_fields("tn", a.t_n));
    merge(rec, complex_fields("ts", a.t_s));
    merge(rec, complex_fields("rn", a.r_n));
    merge(rec, complex_fields("rs", a.r_s));
    rec["tn_sq"] = std::norm(a.t_n);
    rec["ts_sq"] = std::norm(a.t_s);
    rec["p_success"] = rep.success_probability;
    rec["gate_condition"] = rep.gate_condition;
    rec["classification"] = std::string(to_string(rep.classification));
    rec["concurrence_of_output"] = rep.concurrence_of_output;
    rec["direct_solve_max_deviation"] = direct_dev;
    if (problem.theta == 0.0 && s == 1) {
      const auto cf = closed_form_theta0(j, problem.consts);
      rec["closed_form_tn_deviation"] = std::abs(cf.t_n - a.t_n);
      rec["closed_form_abs_ts_deviation"] = std::abs(std::abs(cf.t_s) - std::abs(a.t_s));
    }

    RunManifest m = RunManifest::start("amplitudes");
    m.consts = problem.consts;
    m.config = {{"j_eva", j}, {"theta_rad", problem.theta}, {"s", s},
                {"tol_unitary", tol_unitary}, {"tol_class", tol_class}};
    emit_record(rec, m, common.fmt(), common.out, out);
  }
};

struct Sweep2dCmd {
  CommonOptions common;
  SweepSpec spec;
  std::vector<std::string> quantities;
  unsigned threads = 0;
  bool svg = false;
  std::string out = "sweep2d.csv";
  bool run_flag = false;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("sweep2d", "Gate condition and success probability over theta x J");
    cmd->add_option("--theta-min", spec.theta.min)->capture_default_str();
    cmd->add_option("--theta-max", spec.theta.max)->capture_default_str();
    cmd->add_option("--theta-count", spec.theta.count)->capture_default_str();
    cmd->add_option("--j-min", spec.coupling.min)->capture_default_str();
    cmd->add_option("--j-max", spec.coupling.max)->capture_default_str();
    cmd->add_option("--j-count", spec.coupling.count)->capture_default_str();
    cmd->add_option("--s", spec.s)->check(CLI::IsMember({1, -1}));
    cmd->add_option("--quantities", quantities,
                    "Subset of t_n,t_s,r_n,r_s,success_probability,gate_condition,classification")
        ->delimiter(',');
    cmd->add_option("--tol-unitary", spec.tol_unitary)->capture_default_str();
    cmd->add_option("--tol-class", spec.tol_class)->capture_default_str();
    cmd->add_option("--threads", threads, "Worker threads (0 = all cores)");
    cmd->add_flag("--svg", svg, "Also write p_success and gate_condition heatmaps");
    cmd->add_option("--hbar-vf", common.hbar_vf)->capture_default_str();
    cmd->add_option("--format", common.format)->check(CLI::IsMember({"csv", "json"}));
    common.format = "csv";
    cmd->add_option("--out", out, "Output path")->capture_default_str();
    cmd->callback([this] { run_flag = true; });
  }

  SweepSpec resolved() const {
    SweepSpec s = spec;
    s.consts = common.consts();
    if (!quantities.empty()) {
      s.quantities.clear();
      for (const auto& q : quantities) s.quantities.push_back(parse_quantity(q));
    }
    return s;
  }

  void run(std::ostream& os) const { run_grid_command(resolved(), threads, out, svg, common.fmt(), os); }

  static ojson spec_json(const SweepSpec& s) {
    return {{"theta_min", s.theta.min}, {"theta_max", s.theta.max}, {"theta_count", s.theta.count},
            {"j_min", s.coupling.min},   {"j_max", s.coupling.max},   {"j_count", s.coupling.count},
            {"s", s.s},                  {"tol_unitary", s.tol_unitary}, {"tol_class", s.tol_class},
            {"columns", grid_csv_header(s.quantities)}};
  }

  static std::vector<std::string> run_grid_command(const SweepSpec& s, unsigned threads,
                                                   const std::string& out_path, bool svg,
                                                   Format fmt, std::ostream& os,
                                                   const std::string& svg_stem = {}) {
    const auto cells = run_grid(s, threads);
    std::string body;
    if (fmt == Format::Json) {
      ojson arr = ojson::array();
      const auto header = grid_csv_header(s.quantities);
      std::vector<std::string> names;
      {
        std::istringstream is(header);
        std::string n;
        while (std::getline(is, n, ',')) names.push_back(n);
      }
      for (const auto& c : cells) {
        std::istringstream is(grid_csv_row(c, s.quantities));
        std::string v;
        ojson row;
        for (const auto& n : names) {
          std::getline(is, v, ',');
          if (n == "classification") row[n] = v;
          else row[n] = std::stod(v);
        }
        arr.push_back(row);
      }
      body = arr.dump(1) + "\n";
    } else {
      body = grid_csv_header(s.quantities) + "\n";
      for (const auto& c : cells) body += grid_csv_row(c, s.quantities) + "\n";
    }

    RunManifest m = RunManifest::start("sweep2d");
    m.consts = s.consts;
    m.config = spec_json(s);
    m.config["threads"] = threads;
    m.outputs.push_back(out_path);
    write_file(out_path, body);

    std::vector<std::string> written{out_path};
    if (svg) {
      const std::string stem = svg_stem.empty() ? stem_of(out_path) : svg_stem;
      HeatmapSpec h;
      h.xs = s.coupling.values();
      h.ys = s.theta.values();
      h.x_label = "J (eV A)";
      h.y_label = "theta (rad)";
      h.values.reserve(cells.size());
      for (const auto& c : cells) h.values.push_back(c.report.success_probability);
      h.title = "Gate success probability |t_n|^2 + |t_s|^2";
      const std::string p_path = stem + "_p_success.svg";
      write_file(p_path, render_heatmap(h));
      for (std::size_t i = 0; i < cells.size(); ++i) h.values[i] = cells[i].report.gate_condition;
      h.title = "Gate condition |t_n + t_s| - |t_n - t_s|";
      const std::string g_path = stem + "_gate_condition.svg";
      write_file(g_path, render_heatmap(h));
      for (const auto& p : {p_path, g_path}) {
        m.outputs.push_back(p);
        write_manifest(p, m);
        written.push_back(p);
      }
    }
    write_manifest(out_path, m);
    for (const auto& w : written) os << "wrote " << w << '\n';
    return written;
  }
};

struct Sweep1dCmd {
  CommonOptions common;
  SweepAxis axis{"J_eVA", 0.0, 100.0, 1001};
  unsigned threads = 0;
  bool svg = false;
  std::string out = "sweep1d.csv";
  bool run_flag = false;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("sweep1d", "Frontal |t_n|^2 and |t_s|^2 against J");
    cmd->add_option("--j-min", axis.min)->capture_default_str();
    cmd->add_option("--j-max", axis.max)->capture_default_str();
    cmd->add_option("--j-count", axis.count)->capture_default_str();
    cmd->add_option("--threads", threads);
    cmd->add_flag("--svg", svg, "Also write the line plot");
    cmd->add_option("--hbar-vf", common.hbar_vf)->capture_default_str();
    cmd->add_option("--format", common.format)->check(CLI::IsMember({"csv", "json"}));
    common.format = "csv";
    cmd->add_option("--out", out)->capture_default_str();
    cmd->callback([this] { run_flag = true; });
  }

  void run(std::ostream& os) const {
    run_line_command(axis, common.consts(), threads, out, svg, common.fmt(), os);
  }

  static std::vector<std::string> run_line_command(const SweepAxis& axis, const PhysicalConstants& consts,
                                                   unsigned threads, const std::string& out_path,
                                                   bool svg, Format fmt, std::ostream& os,
                                                   const std::string& svg_path = {}) {
    const auto samples = run_line(axis, consts, threads);
    std::string body;
    if (fmt == Format::Json) {
      ojson arr = ojson::array();
      for (const auto& p : samples) arr.push_back({{"J_eVA", p.coupling}, {"tn_sq", p.tn_sq}, {"ts_sq", p.ts_sq}});
      body = arr.dump(1) + "\n";
    } else {
      body = "J_eVA,tn_sq,ts_sq\n";
      for (const auto& p : samples) {
        body += format_double(p.coupling) + "," + format_double(p.tn_sq) + "," + format_double(p.ts_sq) + "\n";
      }
    }
    RunManifest m = RunManifest::start("sweep1d");
    m.consts = consts;
    m.config = {{"j_min", axis.min}, {"j_max", axis.max}, {"j_count", axis.count}, {"theta_rad", 0.0},
                {"threads", threads}};
    m.outputs.push_back(out_path);
    write_file(out_path, body);
    std::vector<std::string> written{out_path};
    if (svg) {
      LinePlotSpec plot;
      plot.title = "Frontal transmittivity without and with spin flip";
      plot.x_label = "J (eV A)";
      plot.y_label = "probability";
      LineSeries n{"|t_n|^2", "#1f4fd1", {}}, f{"|t_s|^2", "#d11f1f", {}};
      for (const auto& p : samples) {
        plot.xs.push_back(p.coupling);
        n.ys.push_back(p.tn_sq);
        f.ys.push_back(p.ts_sq);
      }
      plot.series = {n, f};
      const std::string path = svg_path.empty() ? stem_of(out_path) + ".svg" : svg_path;
      write_file(path, render_line_plot(plot));
      m.outputs.push_back(path);
      write_manifest(path, m);
      written.push_back(path);
    }
    write_manifest(out_path, m);
    for (const auto& w : written) os << "wrote " << w << '\n';
    return written;
  }
};

struct SpecialJCmd {
  CommonOptions common;
  bool run_flag = false;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("special-j", "SWAP and sqrt(SWAP) couplings: closed form vs root finder");
    common.add(cmd);
    cmd->callback([this] { run_flag = true; });
  }

  void run(std::ostream& out) const {
    const auto c = common.consts();
    const double swap_cf = swap_coupling_closed_form(c);
    const double swap_root = find_swap_coupling(c);
    const auto [lo_cf, hi_cf] = sqrt_swap_couplings_closed_form(c);
    const auto [lo_root, hi_root] = find_sqrt_swap_couplings(c);
    auto entry = [](double cf, double root) {
      return ojson{{"closed_form_eVA", cf}, {"root_finder_eVA", root},
                   {"relative_gap", std::abs(root - cf) / cf}};
    };
    ojson rec;
    rec["hbar_vF_eVA"] = c.hbar_vf;
    rec["swap"] = entry(swap_cf, swap_root);
    rec["sqrt_swap_low"] = entry(lo_cf, lo_root);
    rec["sqrt_swap_high"] = entry(hi_cf, hi_root);
    RunManifest m = RunManifest::start("special-j");
    m.consts = c;
    emit_record(rec, m, common.fmt(), common.out, out);
  }
};

struct CouplingCmd {
  CommonOptions common;
  double dx_nm = 21.0;
  double width_nm = 30.0;
  double energy_mev = 60.0;
  std::optional<double> t_ev;
  std::optional<double> u_ev;
  double delta_nm = units::kPiOrbitalExtent / units::kAngstromPerNm;
  double ballistic_length_nm = 0.0;
  int mode = 1;
  CoulombOptions qmc;
  bool run_flag = false;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("coupling", "Heisenberg coupling J = 4 dx t^2 / U from dot geometry");
    cmd->add_option("--dx-nm", dx_nm, "Dot length")->capture_default_str();
    cmd->add_option("--width-nm", width_nm, "Ribbon width")->capture_default_str();
    cmd->add_option("--energy-mev", energy_mev, "Ballistic electron energy")->capture_default_str();
    cmd->add_option("--t-ev", t_ev, "Use this overlap t instead of integrating");
    cmd->add_option("--u-ev", u_ev, "Use this Coulomb U instead of integrating");
    cmd->add_option("--delta-nm", delta_nm, "Coulomb regularization length")->capture_default_str();
    cmd->add_option("--ballistic-length-nm", ballistic_length_nm,
                    "Ballistic normalization length (0 = one de Broglie wavelength)");
    cmd->add_option("--mode", mode, "Transverse box mode of both wavefunctions")->capture_default_str();
    cmd->add_option("--samples", qmc.samples, "QMC sample count")->capture_default_str();
    cmd->add_option("--seed", qmc.seed, "QMC seed")->capture_default_str();
    cmd->add_option("--replicas", qmc.replicas, "Independently shifted QMC replicas")->capture_default_str();
    cmd->add_option("--threads", qmc.threads);
    common.add(cmd);
    cmd->callback([this] { run_flag = true; });
  }

  void run(std::ostream& out) const {
    const auto c = common.consts();
    DotGeometry geom;
    geom.dot_length = units::nm(dx_nm);
    geom.width = units::nm(width_nm);
    geom.coulomb_delta = units::nm(delta_nm);
    geom.ballistic_length = units::nm(ballistic_length_nm);
    geom.transverse_mode = mode;
    geom.validate();
    const double energy = units::mev(energy_mev);

    ojson rec;
    rec["dx_nm"] = dx_nm;
    RunManifest m = RunManifest::start("coupling");
    m.consts = c;
    m.config = {{"dx_nm", dx_nm}, {"width_nm", width_nm}, {"energy_mev", energy_mev},
                {"delta_nm", delta_nm}, {"ballistic_length_nm", ballistic_length_nm},
                {"mode", mode}, {"samples", qmc.samples}, {"replicas", qmc.replicas}};

    double t = 0.0, u = 0.0, t_err = 0.0, u_err = 0.0;
    if (t_ev && u_ev) {
      t = *t_ev;
      u = *u_ev;
      rec["method"] = "given";
    } else {
      const CouplingEstimate est = estimate_coupling(geom, energy, qmc, c);
      t = t_ev ? *t_ev : est.t_overlap;
      u = u_ev ? *u_ev : est.U_coulomb;
      t_err = t_ev ? 0.0 : est.t_error;
      u_err = u_ev ? 0.0 : est.U_error;
      rec["method"] = (t_ev || u_ev) ? "mixed" : "integral";
      rec["energy_meV"] = energy_mev;
      rec["width_nm"] = width_nm;
      rec["ballistic_length_nm"] = units::to_nm(est.ballistic_length);
      rec["k_x_per_nm"] = est.k_x * units::kAngstromPerNm;
      if (!u_ev) {
        rec["qmc_samples"] = est.samples;
        m.seed = est.seed;
      }
    }
    rec["t_eV"] = t;
    rec["t_error_eV"] = t_err;
    rec["U_eV"] = u;
    rec["U_error_eV"] = u_err;
    rec["J_eVA"] = coupling_J(geom.dot_length, t, u);
    rec["seed"] = m.seed ? ojson(*m.seed) : ojson(nullptr);
    emit_record(rec, m, common.fmt(), common.out, out);
  }
};

Spin parse_spin(const std::string& s) { return s == "up" ? Spin::Up : Spin::Down; }
SpinState spin_state(const std::string& s) {
  return s == "up" ? SpinState::spin_up() : SpinState::spin_down();
}

struct CascadeCmd {
  CommonOptions common;
  std::string preset = "none";
  double j1 = 0.0, j2 = 0.0;
  CLI::Option* j1_opt = nullptr;
  CLI::Option* j2_opt = nullptr;
  ThetaOptions theta1, theta2;
  std::string electron = "up", dot1 = "down", dot2 = "down";
  std::string postselect = "none";
  double separation_nm = 100.0;
  bool run_flag = false;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("cascade", "Electron scattering off two dots in series");
    cmd->add_option("--preset", preset, "sqrt-swap-swap, twin-entangling, identity or none")
        ->check(CLI::IsMember({"none", "sqrt-swap-swap", "twin-entangling", "identity"}))
        ->capture_default_str();
    j1_opt = cmd->add_option("--j1-eva", j1, "Coupling at the first dot");
    j2_opt = cmd->add_option("--j2-eva", j2, "Coupling at the second dot");
    theta1.add(cmd, "theta1");
    theta2.add(cmd, "theta2");
    const auto spins = CLI::IsMember({"up", "down"});
    cmd->add_option("--electron", electron)->check(spins)->capture_default_str();
    cmd->add_option("--dot1", dot1)->check(spins)->capture_default_str();
    cmd->add_option("--dot2", dot2)->check(spins)->capture_default_str();
    cmd->add_option("--postselect", postselect)
        ->check(CLI::IsMember({"none", "up", "down"}))
        ->capture_default_str();
    cmd->add_option("--separation-nm", separation_nm, "Dot separation (validity metadata)")
        ->capture_default_str();
    common.add(cmd);
    cmd->callback([this] { run_flag = true; });
  }

  void run(std::ostream& out) const {
    const auto c = common.consts();
    double g1 = 0.0, g2 = 0.0;
    if (preset == "sqrt-swap-swap") {
      g1 = find_sqrt_swap_couplings(c).first;
      g2 = find_swap_coupling(c);
    } else if (preset == "twin-entangling") {
      g1 = g2 = 4.1 * c.hbar_vf / PhysicalConstants{}.hbar_vf;
    }
    if (j1_opt->count() > 0) g1 = j1;
    if (j2_opt->count() > 0) g2 = j2;

    CascadeConfig cfg;
    cfg.gate1 = spin_resolved_amplitudes({g1, theta1.value(), +1, c});
    cfg.gate2 = spin_resolved_amplitudes({g2, theta2.value(), +1, c});
    cfg.electron = spin_state(electron);
    cfg.dot1 = spin_state(dot1);
    cfg.dot2 = spin_state(dot2);
    if (postselect != "none") cfg.postselect = parse_spin(postselect);
    cfg.separation = units::nm(separation_nm);
    const CascadeResult r = run_cascade(cfg);

    static const char* kLabels[] = {"uuu", "uud", "udu", "udd", "duu", "dud", "ddu", "ddd"};
    static const char* kDotLabels[] = {"uu", "ud", "du", "dd"};
    ojson rec;
    rec["J1_eVA"] = g1;
    rec["J2_eVA"] = g2;
    rec["theta1_rad"] = theta1.value();
    rec["theta2_rad"] = theta2.value();
    rec["p_transmit_both"] = r.p_transmit_both;
    for (int i = 0; i < 8; ++i) merge(rec, complex_fields((std::string("psi_") + kLabels[i]).c_str(), r.joint_state(i)));
    for (const auto& o : r.outcomes) {
      const std::string p = o.electron == Spin::Up ? "post_up_" : "post_down_";
      rec[p + "probability"] = o.probability;
      rec[p + "empty"] = o.empty;
      rec[p + "concurrence"] = o.concurrence;
      for (int i = 0; i < 4; ++i) rec[p + "abs_" + kDotLabels[i]] = std::abs(o.dots(i));
    }
    rec["postselect"] = postselect;
    if (const auto* sel = r.selected()) {
      rec["selected_probability"] = sel->probability;
      rec["selected_concurrence"] = sel->concurrence;
      rec["selected_empty"] = sel->empty;
    }
    rec["separation_within_inelastic_length"] = cfg.separation <= units::kInelasticLength;

    RunManifest m = RunManifest::start("cascade");
    m.consts = c;
    m.config = {{"preset", preset}, {"j1_eva", g1}, {"j2_eva", g2},
                {"theta1_rad", theta1.value()}, {"theta2_rad", theta2.value()},
                {"electron", electron}, {"dot1", dot1}, {"dot2", dot2},
                {"postselect", postselect}, {"separation_nm", separation_nm}};
    emit_record(rec, m, common.fmt(), common.out, out);
  }
};

struct ValidateCmd {
  CommonOptions common;
  double dx_nm = 21.0;
  double energy_mev = 60.0;
  double separation_nm = 100.0;
  std::optional<double> width_nm;
  int mode = 0;
  int branch = 1;
  bool run_flag = false;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("validate", "Point-interaction and inelastic-length validity report");
    cmd->add_option("--dx-nm", dx_nm)->capture_default_str();
    cmd->add_option("--energy-mev", energy_mev)->capture_default_str();
    cmd->add_option("--separation-nm", separation_nm)->capture_default_str();
    cmd->add_option("--width-nm", width_nm, "Ribbon width; adds incidence angle and band gap");
    cmd->add_option("--mode", mode)->capture_default_str();
    cmd->add_option("--branch", branch)->check(CLI::IsMember({1, -1}))->capture_default_str();
    common.add(cmd);
    cmd->callback([this] { run_flag = true; });
  }

  void run(std::ostream& out) const {
    const auto c = common.consts();
    const auto rep = validate_delta_regime(units::nm(dx_nm), units::mev(energy_mev),
                                           units::nm(separation_nm), c);
    ojson rec;
    rec["dx_nm"] = dx_nm;
    rec["energy_meV"] = energy_mev;
    rec["lambda_nm"] = units::to_nm(rep.wavelength);
    rec["ratio_5dx_over_lambda"] = rep.ratio_5dx_over_lambda;
    rec["delta_regime_ok"] = rep.delta_regime_ok;
    rec["separation_nm"] = separation_nm;
    rec["within_inelastic_length"] = rep.within_inelastic_length;
    if (width_nm) {
      const RibbonConfig ribbon{units::nm(*width_nm), mode, branch};
      rec["band_gap_meV"] = units::to_mev(band_gap(ribbon, c));
      const auto kin = electron_kinematics(units::mev(energy_mev), ribbon, c);
      rec["k_y_per_nm"] = kin.k_y * units::kAngstromPerNm;
      rec["theta_rad"] = kin.theta;
      rec["theta_deg"] = kin.theta * 180.0 / std::numbers::pi;
    }
    RunManifest m = RunManifest::start("validate");
    m.consts = c;
    emit_record(rec, m, common.fmt(), common.out, out);
  }
};

struct FiguresCmd {
  std::string out_dir = "figures";
  unsigned threads = 0;
  double hbar_vf = PhysicalConstants{}.hbar_vf;
  bool run_flag = false;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("figures", "Regenerate the success/gate-condition maps and transmittivity curves");
    cmd->add_option("--out-dir", out_dir)->capture_default_str();
    cmd->add_option("--threads", threads);
    cmd->add_option("--hbar-vf", hbar_vf)->capture_default_str();
    cmd->callback([this] { run_flag = true; });
  }

  void run(std::ostream& os) const {
    const fs::path dir(out_dir);
    SweepSpec grid;
    grid.consts = {hbar_vf};
    const std::string grid_csv = (dir / "gate_map.csv").string();
    Sweep2dCmd::run_grid_command(grid, threads, grid_csv, true, Format::Csv, os,
                                 (dir / "gate_map").string());
    const std::string line_csv = (dir / "transmittivity.csv").string();
    Sweep1dCmd::run_line_command({"J_eVA", 0.0, 100.0, 1001}, grid.consts, threads, line_csv, true,
                                 Format::Csv, os, (dir / "transmittivity.svg").string());

    const FigureFeatures f = extract_features(grid_csv, line_csv);
    RunManifest m = RunManifest::start("figures");
    m.consts = grid.consts;
    m.config = {{"out_dir", out_dir}, {"threads", threads}};
    const std::string features = (dir / "features.json").string();
    m.outputs.push_back(features);
    write_file(features, f.to_json().dump(2) + "\n");
    write_manifest(features, m);
    os << "wrote " << features << '\n';
  }
};

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Numeric:
    case ErrorKind::Search:
      return kExitNumericError;
    default:
      return kExitInputError;
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"kleingate: spin scattering gates between ballistic graphene electrons and quantum dots"};
  app.set_version_flag("--version", kToolVersion);
  app.config_formatter(std::make_shared<JsonOrTomlConfig>());
  app.set_config("--config", "", "JSON or TOML configuration file; flags override file values");
  int schema_version = kConfigSchemaVersion;
  app.add_option("--schema-version", schema_version, "Configuration schema version")->group("");
  app.require_subcommand(1);

  AmplitudesCmd amplitudes;
  Sweep2dCmd sweep2d;
  Sweep1dCmd sweep1d;
  SpecialJCmd special;
  CouplingCmd coupling;
  CascadeCmd cascade;
  ValidateCmd validate;
  FiguresCmd figures;
  amplitudes.add(app);
  sweep2d.add(app);
  sweep1d.add(app);
  special.add(app);
  coupling.add(app);
  cascade.add(app);
  validate.add(app);
  figures.add(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInputError;
  }

  if (schema_version != kConfigSchemaVersion) {
    err << "error: unsupported configuration schema_version " << schema_version << " (expected "
        << kConfigSchemaVersion << ")\n";
    return kExitInputError;
  }

  try {
    if (amplitudes.run_flag) amplitudes.run(out);
    else if (sweep2d.run_flag) sweep2d.run(out);
    else if (sweep1d.run_flag) sweep1d.run(out);
    else if (special.run_flag) special.run(out);
    else if (coupling.run_flag) coupling.run(out);
    else if (cascade.run_flag) cascade.run(out);
    else if (validate.run_flag) validate.run(out);
    else if (figures.run_flag) figures.run(out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIoError;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumericError;
  }
  return kExitOk;
}

}  // namespace kleingate::cli
