#include "focklab/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "focklab/capacity.hpp"
#include "focklab/entropy.hpp"
#include "focklab/io.hpp"

namespace focklab::cli {
namespace {

using nlohmann::json;

constexpr double kLn2 = 0.693147180559945309417232121458;

// --channel/--noise/--state accept inline JSON or a path to a file with it.
std::string load_text(const std::string& arg) {
  if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) return arg;
  std::ifstream in(arg);
  if (!in) throw DomainError("cannot open file: " + arg);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string::npos) return parts;
    start = pos + 1;
  }
}

double to_double(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw DomainError(std::string("bad number in ") + what + ": '" + s + "'");
  }
}

int to_int(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw DomainError(std::string("bad integer in ") + what + ": '" + s +
                      "'");
  }
}

// "a:b:count" (inclusive linspace) or "v1,v2,..." (explicit values).
RVec parse_grid(const std::string& text, const char* what) {
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3)
      throw DomainError(std::string(what) + ": expected start:stop:count");
    const double a = to_double(parts[0], what);
    const double b = to_double(parts[1], what);
    const int count = to_int(parts[2], what);
    if (count < 1) throw DomainError(std::string(what) + ": count < 1");
    if (count == 1) {
      RVec v(1);
      v(0) = a;
      return v;
    }
    return RVec::LinSpaced(count, a, b);
  }
  const auto parts = split(text, ',');
  RVec v(static_cast<int>(parts.size()));
  for (int i = 0; i < v.size(); ++i)
    v(i) = to_double(parts[static_cast<std::size_t>(i)], what);
  return v;
}

void write_payload(const std::string& out_path, std::ostream& fallback,
                   const std::string& payload) {
  if (out_path.empty()) {
    fallback << payload;
    return;
  }
  std::ofstream file(out_path);
  if (!file) throw DomainError("cannot open output file: " + out_path);
  file << payload;
}

void csv_provenance(CsvWriter& w, const std::string& command,
                    const json& config, std::uint64_t seed) {
  w.comment(std::string("focklab ") + kVersion);
  w.comment("command: " + command);
  w.comment("config: " + config.dump());
  w.comment("seed: " + std::to_string(seed));
}

json json_provenance(const std::string& command, const json& config,
                     std::uint64_t seed) {
  return json{{"tool", "focklab"},
              {"version", kVersion},
              {"command", command},
              {"config", config},
              {"seed", seed}};
}

struct UnitScale {
  std::string name = "nats";
  double factor() const { return name == "bits" ? 1.0 / kLn2 : 1.0; }
};

void add_common(CLI::App* sub, std::string& out_path, UnitScale& unit,
                std::string& format, const std::string& default_format) {
  sub->add_option("--out", out_path, "Write output to this file");
  sub->add_option("--unit", unit.name, "Entropy unit for all outputs")
      ->check(CLI::IsMember({"nats", "bits"}))
      ->capture_default_str();
  format = default_format;
  sub->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

void add_moe_options(CLI::App* sub, MoeParams& params, int& restarts) {
  sub->add_option("--moe-n-fock", params.n_fock, "Search-state cutoff")
      ->capture_default_str();
  sub->add_option("--moe-n-init", params.n_init, "Random initial states")
      ->capture_default_str();
  sub->add_option("--moe-n-loop", params.n_loop, "Perturbation sweeps")
      ->capture_default_str();
  sub->add_option("--moe-n-it", params.n_it, "Trials per sweep")
      ->capture_default_str();
  sub->add_option("--moe-delta0", params.delta0, "Initial deviation")
      ->capture_default_str();
  sub->add_option("--seed", params.seed, "RNG seed")->capture_default_str();
  sub->add_option("--restarts", restarts, "Independent restarts")
      ->capture_default_str();
}

// Tabular payload shared by the sweep commands: CSV with a provenance header
// or the same table as JSON.
std::string render_table(const std::string& format, const std::string& command,
                         const json& config, std::uint64_t seed,
                         const std::vector<std::string>& columns,
                         const std::vector<std::vector<double>>& rows,
                         const std::vector<std::string>& trailing_comments =
                             {}) {
  if (format == "json") {
    json j;
    j["provenance"] = json_provenance(command, config, seed);
    j["columns"] = columns;
    json r = json::array();
    for (const auto& row : rows) r.push_back(row);
    j["rows"] = r;
    if (!trailing_comments.empty()) j["notes"] = trailing_comments;
    return j.dump(2) + "\n";
  }
  std::ostringstream ss;
  CsvWriter w(ss);
  csv_provenance(w, command, config, seed);
  w.header(columns);
  for (const auto& row : rows) w.row(row);
  for (const auto& note : trailing_comments) w.comment(note);
  return ss.str();
}

struct DeltaSweepOpts {
  std::vector<int> fock_ns{1};
  std::string env_text;
  std::string eta_grid = "0.05:0.95:19";
  bool use_moe = false;
  MoeParams moe;
  int restarts = 1;
  UnitScale unit;
  std::string format;
  std::string out_path;
};

void run_delta_sweep(const DeltaSweepOpts& opt, std::ostream& out) {
  const RVec etas = parse_grid(opt.eta_grid, "--eta-grid");
  struct Member {
    Environment env;
    double param;
  };
  std::vector<Member> family;
  if (!opt.env_text.empty()) {
    Environment env = environment_from_json(load_text(opt.env_text));
    const double nbar =
        mean_photon(env.realize(env.default_cutoff()));
    family.push_back({std::move(env), nbar});
  } else {
    for (int n : opt.fock_ns) family.push_back({Environment::fock(n), double(n)});
  }

  const double scale = opt.unit.factor();
  std::vector<std::vector<double>> rows;
  for (const Member& m : family) {
    for (int i = 0; i < etas.size(); ++i) {
      const ChannelSpec spec = ChannelSpec::attenuator(etas(i), m.env);
      std::optional<double> s_search;
      if (opt.use_moe) {
        const MoeReport rep =
            minimize_with_restarts(spec, opt.moe, opt.restarts);
        s_search = rep.best_entropy;
      }
      const DeltaMaxResult dm = delta_max(spec, s_search);
      rows.push_back({etas(i), m.param, dm.value * scale});
    }
  }

  json cfg{{"eta_grid", opt.eta_grid},
           {"mode", opt.use_moe ? "moe-search" : "vacuum"},
           {"unit", opt.unit.name}};
  if (!opt.env_text.empty())
    cfg["environment"] = json::parse(to_json(family[0].env));
  else
    cfg["fock_n"] = opt.fock_ns;
  if (opt.use_moe) {
    cfg["moe"] = {{"n_fock", opt.moe.n_fock}, {"n_init", opt.moe.n_init},
                  {"n_loop", opt.moe.n_loop}, {"n_it", opt.moe.n_it},
                  {"delta0", opt.moe.delta0}, {"restarts", opt.restarts}};
  }
  write_payload(opt.out_path, out,
                render_table(opt.format, "delta-sweep", cfg, opt.moe.seed,
                             {"eta", "n", "delta"}, rows));
}

struct CapacityIntervalOpts {
  std::string channel_text;
  std::string nu_grid = "0:10:41";
  bool with_chi = false;
  int quad_order = 12;
  UnitScale unit;
  std::string format;
  std::string out_path;
};

void run_capacity_interval(const CapacityIntervalOpts& opt, std::ostream& out) {
  const ChannelSpec spec = channel_from_json(load_text(opt.channel_text));
  const RVec nus = parse_grid(opt.nu_grid, "--nu-grid");
  const double scale = opt.unit.factor();

  std::vector<std::string> columns{"nu", "lower", "upper"};
  if (opt.with_chi) columns.push_back("chi");
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < nus.size(); ++i) {
    const CapacityInterval ci = capacity_interval(spec, nus(i));
    std::vector<double> row{ci.nu, ci.c_gaussian * scale, ci.upper * scale};
    if (opt.with_chi) {
      const HolevoEstimate chi =
          holevo_coherent_ensemble(spec, nus(i), opt.quad_order);
      row.push_back(chi.value * scale);
    }
    rows.push_back(std::move(row));
  }

  json cfg{{"channel", json::parse(to_json(spec))},
           {"nu_grid", opt.nu_grid},
           {"chi", opt.with_chi},
           {"quad_order", opt.quad_order},
           {"unit", opt.unit.name}};
  write_payload(opt.out_path, out,
                render_table(opt.format, "capacity-interval", cfg, 0, columns,
                             rows));
}

struct MoeOpts {
  std::string channel_text;
  MoeParams params;
  int restarts = 1;
  std::vector<int> symmetric;  // m, p
  std::string wigner_out;
  double extent = 0.0;
  int resolution = 101;
  UnitScale unit;
  std::string format;
  std::string out_path;
};

void run_moe(const MoeOpts& opt, std::ostream& out) {
  const ChannelSpec spec = channel_from_json(load_text(opt.channel_text));
  MoeReport report;
  if (!opt.symmetric.empty()) {
    report = minimize_symmetric(spec, opt.symmetric[0], opt.symmetric[1],
                                opt.params);
  } else if (opt.restarts > 1) {
    report = minimize_with_restarts(spec, opt.params, opt.restarts);
  } else {
    report = minimize_output_entropy(spec, opt.params);
  }

  const double scale = opt.unit.factor();
  if (scale != 1.0) {
    report.best_entropy *= scale;
    for (TracePoint& t : report.trace) t.entropy *= scale;
  }

  json cfg{{"channel", json::parse(to_json(spec))},
           {"restarts", opt.restarts},
           {"unit", opt.unit.name}};
  if (!opt.symmetric.empty()) cfg["symmetric"] = opt.symmetric;

  json j;
  j["provenance"] = json_provenance("moe", cfg, opt.params.seed);
  j["report"] = json::parse(to_json(report));
  write_payload(opt.out_path, out, j.dump(2) + "\n");

  if (!opt.wigner_out.empty()) {
    const DensityOperator rho = to_density(report.best_state);
    const double extent =
        opt.extent > 0.0 ? opt.extent : suggested_extent(rho);
    const WignerGrid grid = wigner(rho, extent, opt.resolution);
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < grid.x_axis.size(); ++i)
      for (int k = 0; k < grid.p_axis.size(); ++k)
        rows.push_back({grid.x_axis(i), grid.p_axis(k), grid.values(i, k)});
    json wcfg{{"extent", extent}, {"resolution", opt.resolution}};
    std::ofstream file(opt.wigner_out);
    if (!file) throw DomainError("cannot open output file: " + opt.wigner_out);
    file << render_table("csv", "moe/wigner", wcfg, opt.params.seed,
                         {"x", "p", "w"}, rows);
  }
}

struct SqueezedScanOpts {
  std::string channel_text;
  std::string theta_grid = "0:1.0471975511965976:25";
  std::string r_grid = "0:1:50";
  int cutoff = 50;
  bool no_refine = false;
  UnitScale unit;
  std::string format;
  std::string out_path;
};

void run_squeezed_scan(const SqueezedScanOpts& opt, std::ostream& out) {
  const ChannelSpec spec = channel_from_json(load_text(opt.channel_text));
  const RVec thetas = parse_grid(opt.theta_grid, "--theta-grid");
  const RVec rs = parse_grid(opt.r_grid, "--r-grid");
  const SqueezedScanResult res =
      squeezed_state_scan(spec, thetas, rs, opt.cutoff, !opt.no_refine);

  const double scale = opt.unit.factor();
  std::vector<std::vector<double>> rows;
  for (const SqueezedScanPoint& p : res.table)
    rows.push_back({p.theta, p.r, p.s_out * scale});

  std::vector<std::string> notes{
      "argmin: theta=" + format_number(res.theta_min) +
          " r=" + format_number(res.r_min) +
          " s_out=" + format_number(res.s_min * scale),
      "grid argmin s_out=" + format_number(res.s_min_grid * scale) +
          (res.refined ? " (refined in r)" : " (no refinement)")};

  json cfg{{"channel", json::parse(to_json(spec))},
           {"theta_grid", opt.theta_grid},
           {"r_grid", opt.r_grid},
           {"cutoff", opt.cutoff},
           {"refine", !opt.no_refine},
           {"unit", opt.unit.name}};
  write_payload(opt.out_path, out,
                render_table(opt.format, "squeezed-scan", cfg, 0,
                             {"theta", "r", "s_out"}, rows, notes));
}

struct ClassicalOpts {
  std::string noise_text;
  double power = 1.0;
  UnitScale unit;
  std::string format;
  std::string out_path;
};

void run_classical(const ClassicalOpts& opt, std::ostream& out) {
  const NoiseDensity noise = noise_from_json(load_text(opt.noise_text));
  const double scale = opt.unit.factor();

  const Quad h_n = differential_entropy(noise);
  const double h_ng =
      0.5 * std::log(2.0 * M_PI * M_E * noise.variance);
  const Quad d_cl = delta_classical(noise);
  const double c_g = classical_capacity_gaussian(opt.power / noise.variance);
  const Quad i_lower = mutual_information_gaussian_input(noise, opt.power);

  json cfg{{"noise", noise.name},
           {"variance", noise.variance},
           {"power", opt.power},
           {"unit", opt.unit.name}};
  json j;
  j["provenance"] = json_provenance("classical", cfg, 0);
  j["h_N"] = h_n.value * scale;
  j["h_NG"] = h_ng * scale;
  j["delta_cl"] = d_cl.value * scale;
  j["C_G"] = c_g * scale;
  j["I_lower"] = i_lower.value * scale;
  j["quadrature_errors"] = {{"h_N", h_n.error * scale},
                            {"delta_cl", d_cl.error * scale},
                            {"I_lower", i_lower.error * scale}};
  write_payload(opt.out_path, out, j.dump(2) + "\n");
}

struct WignerOpts {
  std::string state_text;
  std::string channel_text;
  double extent = 0.0;
  int resolution = 101;
  std::string format;
  std::string out_path;
  UnitScale unit;  // accepted for uniformity; Wigner values are unitless
};

void run_wigner(const WignerOpts& opt, std::ostream& out) {
  const Vec raw = [&] {
    const json j = json::parse(load_text(opt.state_text));
    if (!j.is_array() || j.empty())
      throw DomainError("--state: expected a JSON array of [re, im] pairs");
    Vec v(static_cast<int>(j.size()));
    for (int i = 0; i < v.size(); ++i) {
      const json& c = j[static_cast<std::size_t>(i)];
      if (!c.is_array() || c.size() != 2)
        throw DomainError("--state: amplitudes must be [re, im] pairs");
      v(i) = Complex(c[0].get<double>(), c[1].get<double>());
    }
    return v;
  }();
  const double norm = raw.norm();
  if (norm <= 0.0) throw DomainError("--state: zero vector");
  const FockState psi = state_from_amplitudes(raw / norm);

  DensityOperator rho = to_density(psi);
  std::optional<ChannelSpec> spec;
  if (!opt.channel_text.empty()) {
    spec = channel_from_json(load_text(opt.channel_text));
    rho = apply_channel(*spec, rho);
  }

  const double extent = opt.extent > 0.0 ? opt.extent : suggested_extent(rho);
  const WignerGrid grid = wigner(rho, extent, opt.resolution);

  json cfg{{"extent", extent}, {"resolution", opt.resolution}};
  if (spec) cfg["channel"] = json::parse(to_json(*spec));
  cfg["state_dim"] = raw.size();

  if (opt.format == "json") {
    json j = json::parse(to_json(grid));
    j["provenance"] = json_provenance("wigner", cfg, 0);
    write_payload(opt.out_path, out, j.dump() + "\n");
    return;
  }
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < grid.x_axis.size(); ++i)
    for (int k = 0; k < grid.p_axis.size(); ++k)
      rows.push_back({grid.x_axis(i), grid.p_axis(k), grid.values(i, k)});
  std::vector<std::string> notes;
  if (grid.extent_warning)
    notes.push_back("warning: extent below the suggested radius " +
                    format_number(suggested_extent(rho)));
  write_payload(opt.out_path, out,
                render_table("csv", "wigner", cfg, 0, {"x", "p", "w"}, rows,
                             notes));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{
      "focklab: bosonic attenuator/amplifier channels in a truncated Fock "
      "basis"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  DeltaSweepOpts ds;
  auto* sub_ds = app.add_subcommand(
      "delta-sweep", "Capacity-interval width over a transmittance grid");
  sub_ds->add_option("--fock-n", ds.fock_ns,
                     "Fock environment family (list of n)")
      ->capture_default_str();
  sub_ds->add_option("--env", ds.env_text,
                     "Environment JSON (inline or file) instead of --fock-n; "
                     "the n column then reports the mean photon number");
  sub_ds->add_option("--eta-grid", ds.eta_grid, "start:stop:count or v1,v2,..")
      ->capture_default_str();
  sub_ds->add_flag("--moe", ds.use_moe,
                   "Search for the minimum output entropy instead of the "
                   "vacuum-minimizer mode");
  add_moe_options(sub_ds, ds.moe, ds.restarts);
  add_common(sub_ds, ds.out_path, ds.unit, ds.format, "csv");
  sub_ds->callback([&] { run_delta_sweep(ds, out); });

  CapacityIntervalOpts ci;
  auto* sub_ci = app.add_subcommand(
      "capacity-interval", "Lower/upper capacity bounds over an input budget "
      "grid");
  sub_ci->add_option("--channel", ci.channel_text,
                     "Channel JSON (inline or file)")
      ->required();
  sub_ci->add_option("--nu-grid", ci.nu_grid, "start:stop:count or v1,v2,..")
      ->capture_default_str();
  sub_ci->add_flag("--chi", ci.with_chi,
                   "Add a coherent-ensemble Holevo estimate column");
  sub_ci->add_option("--quad-order", ci.quad_order,
                     "Initial radial quadrature order for --chi")
      ->capture_default_str();
  add_common(sub_ci, ci.out_path, ci.unit, ci.format, "csv");
  sub_ci->callback([&] { run_capacity_interval(ci, out); });

  MoeOpts mo;
  auto* sub_mo = app.add_subcommand(
      "moe", "Stochastic minimum-output-entropy search (JSON report)");
  sub_mo->add_option("--channel", mo.channel_text,
                     "Channel JSON (inline or file)")
      ->required();
  add_moe_options(sub_mo, mo.params, mo.restarts);
  sub_mo->add_option("--symmetric", mo.symmetric,
                     "Restrict to the ray m*k+p (two ints: m p)")
      ->expected(2);
  sub_mo->add_option("--wigner-out", mo.wigner_out,
                     "Also write a Wigner CSV of the best state here");
  sub_mo->add_option("--extent", mo.extent,
                     "Wigner half-width (0: suggested)")
      ->capture_default_str();
  sub_mo->add_option("--resolution", mo.resolution, "Wigner points per axis")
      ->capture_default_str();
  add_common(sub_mo, mo.out_path, mo.unit, mo.format, "json");
  sub_mo->callback([&] { run_moe(mo, out); });

  SqueezedScanOpts sq;
  auto* sub_sq = app.add_subcommand(
      "squeezed-scan", "Output entropy of rotated squeezed vacua over a "
      "(theta, r) grid");
  sub_sq->add_option("--channel", sq.channel_text,
                     "Channel JSON (inline or file)")
      ->required();
  sub_sq->add_option("--theta-grid", sq.theta_grid,
                     "start:stop:count or v1,v2,..")
      ->capture_default_str();
  sub_sq->add_option("--r-grid", sq.r_grid, "start:stop:count or v1,v2,..")
      ->capture_default_str();
  sub_sq->add_option("--cutoff", sq.cutoff, "Input-state cutoff")
      ->capture_default_str();
  sub_sq->add_flag("--no-refine", sq.no_refine,
                   "Skip the 1-D refinement in r at the winning theta");
  add_common(sub_sq, sq.out_path, sq.unit, sq.format, "csv");
  sub_sq->callback([&] { run_squeezed_scan(sq, out); });

  ClassicalOpts cl;
  auto* sub_cl = app.add_subcommand(
      "classical", "Additive-noise baseline: entropies, capacity bounds");
  sub_cl->add_option("--noise", cl.noise_text, "Noise JSON (inline or file)")
      ->required();
  sub_cl->add_option("--power", cl.power, "Input power constraint E")
      ->capture_default_str();
  add_common(sub_cl, cl.out_path, cl.unit, cl.format, "json");
  sub_cl->callback([&] { run_classical(cl, out); });

  WignerOpts wg;
  auto* sub_wg = app.add_subcommand(
      "wigner", "Wigner function of a pure state (optionally pushed through "
      "a channel)");
  sub_wg->add_option("--state", wg.state_text,
                     "Amplitudes as a JSON array of [re, im] pairs (inline "
                     "or file); normalized internally")
      ->required();
  sub_wg->add_option("--channel", wg.channel_text,
                     "Optional channel JSON applied to the state first");
  sub_wg->add_option("--extent", wg.extent, "Half-width (0: suggested)")
      ->capture_default_str();
  sub_wg->add_option("--resolution", wg.resolution, "Points per axis")
      ->capture_default_str();
  add_common(sub_wg, wg.out_path, wg.unit, wg.format, "csv");
  sub_wg->callback([&] { run_wigner(wg, out); });

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("focklab");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidStateError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const TruncationError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const NonConvergenceError& e) {
    err << "error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  args.reserve(static_cast<std::size_t>(argc > 0 ? argc - 1 : 0));
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace focklab::cli
