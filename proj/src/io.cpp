#include "focklab/io.hpp"

#include <cstdio>

#include <json.hpp>

namespace focklab {
namespace {

using nlohmann::json;

json complex_json(Complex c) { return json::array({c.real(), c.imag()}); }

Complex complex_from(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw DomainError("json: complex values must be [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

json vec_json(const Vec& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(complex_json(v(i)));
  return a;
}

Vec vec_from(const json& j) {
  if (!j.is_array() || j.empty())
    throw DomainError("json: expected a nonempty array of [re, im] pairs");
  Vec v(static_cast<int>(j.size()));
  for (int i = 0; i < v.size(); ++i)
    v(i) = complex_from(j[static_cast<std::size_t>(i)]);
  return v;
}

json env_json(const Environment& env) {
  json j;
  switch (env.kind) {
    case Environment::Kind::Fock:
      j["kind"] = "fock";
      j["n"] = env.fock_n;
      break;
    case Environment::Kind::Thermal:
      j["kind"] = "thermal";
      j["nbar"] = env.thermal_nbar;
      break;
    case Environment::Kind::Diagonal: {
      j["kind"] = "diagonal";
      json p = json::array();
      for (int i = 0; i < env.diag_p.size(); ++i) p.push_back(env.diag_p(i));
      j["populations"] = p;
      break;
    }
    case Environment::Kind::Pure:
      j["kind"] = "pure";
      j["amplitudes"] = vec_json(env.pure_amps);
      break;
    case Environment::Kind::Mixed: {
      j["kind"] = "mixed";
      json m = json::array();
      for (int r = 0; r < env.mixed_rho.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < env.mixed_rho.cols(); ++c)
          row.push_back(complex_json(env.mixed_rho(r, c)));
        m.push_back(row);
      }
      j["matrix"] = m;
      break;
    }
  }
  return j;
}

Environment env_from(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "fock") return Environment::fock(j.at("n").get<int>());
  if (kind == "thermal")
    return Environment::thermal(j.at("nbar").get<double>());
  if (kind == "diagonal") {
    const json& p = j.at("populations");
    RVec v(static_cast<int>(p.size()));
    for (int i = 0; i < v.size(); ++i)
      v(i) = p[static_cast<std::size_t>(i)].get<double>();
    return Environment::diagonal(std::move(v));
  }
  if (kind == "pure") return Environment::pure(vec_from(j.at("amplitudes")));
  if (kind == "mixed") {
    const json& m = j.at("matrix");
    const int n = static_cast<int>(m.size());
    if (n == 0) throw DomainError("json: empty environment matrix");
    Mat rho(n, n);
    for (int r = 0; r < n; ++r) {
      const json& row = m[static_cast<std::size_t>(r)];
      if (static_cast<int>(row.size()) != n)
        throw DomainError("json: environment matrix must be square");
      for (int c = 0; c < n; ++c)
        rho(r, c) = complex_from(row[static_cast<std::size_t>(c)]);
    }
    return Environment::mixed(std::move(rho));
  }
  throw DomainError("json: unknown environment kind '" + kind + "'");
}

json config_json(const ChannelConfig& cfg) {
  return json{{"env_cutoff", cfg.env_cutoff},
              {"output_cap", cfg.output_cap},
              {"output_tail_tol", cfg.output_tail_tol},
              {"max_input_deficit", cfg.max_input_deficit},
              {"allow_deficit", cfg.allow_deficit}};
}

ChannelConfig config_from(const json& j) {
  ChannelConfig cfg;
  cfg.env_cutoff = j.value("env_cutoff", cfg.env_cutoff);
  cfg.output_cap = j.value("output_cap", cfg.output_cap);
  cfg.output_tail_tol = j.value("output_tail_tol", cfg.output_tail_tol);
  cfg.max_input_deficit = j.value("max_input_deficit", cfg.max_input_deficit);
  cfg.allow_deficit = j.value("allow_deficit", cfg.allow_deficit);
  return cfg;
}

json spec_json(const ChannelSpec& spec) {
  json j;
  if (spec.kind == ChannelSpec::Kind::Attenuator) {
    j["kind"] = "attenuator";
    j["eta"] = spec.eta;
  } else {
    j["kind"] = "amplifier";
    j["gain"] = spec.gain;
  }
  j["environment"] = env_json(spec.environment);
  j["config"] = config_json(spec.config);
  return j;
}

ChannelSpec spec_from(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const Environment env = env_from(j.at("environment"));
  const ChannelConfig cfg =
      j.contains("config") ? config_from(j.at("config")) : ChannelConfig{};
  if (kind == "attenuator")
    return ChannelSpec::attenuator(j.at("eta").get<double>(), env, cfg);
  if (kind == "amplifier")
    return ChannelSpec::amplifier(j.at("gain").get<double>(), env, cfg);
  throw DomainError("json: unknown channel kind '" + kind + "'");
}

RVec rvec_from(const json& j, const char* what) {
  if (!j.is_array() || j.empty())
    throw DomainError(std::string("json: ") + what +
                      " must be a nonempty array");
  RVec v(static_cast<int>(j.size()));
  for (int i = 0; i < v.size(); ++i)
    v(i) = j[static_cast<std::size_t>(i)].get<double>();
  return v;
}

template <typename F>
auto wrap_json_errors(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw DomainError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

Environment environment_from_json(const std::string& text) {
  return wrap_json_errors("environment json",
                          [&] { return env_from(json::parse(text)); });
}

std::string to_json(const Environment& env) { return env_json(env).dump(); }

ChannelSpec channel_from_json(const std::string& text) {
  return wrap_json_errors("channel json",
                          [&] { return spec_from(json::parse(text)); });
}

std::string to_json(const ChannelSpec& spec) { return spec_json(spec).dump(); }

NoiseDensity noise_from_json(const std::string& text) {
  return wrap_json_errors("noise json", [&]() -> NoiseDensity {
    const json j = json::parse(text);
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "gaussian")
      return gaussian_noise(j.at("variance").get<double>());
    if (kind == "uniform") return uniform_noise(j.at("variance").get<double>());
    if (kind == "laplace") return laplace_noise(j.at("variance").get<double>());
    if (kind == "gaussian-mixture")
      return gaussian_mixture_noise(rvec_from(j.at("weights"), "weights"),
                                    rvec_from(j.at("means"), "means"),
                                    rvec_from(j.at("variances"), "variances"));
    throw DomainError("json: unknown noise kind '" + kind + "'");
  });
}

std::string to_json(const MoeReport& report) {
  json j;
  j["best_entropy"] = report.best_entropy;
  j["best_state"] = {{"amplitudes", vec_json(report.best_state.amps)},
                     {"norm_deficit", report.best_state.norm_deficit}};
  j["params"] = {{"n_fock", report.params.n_fock},
                 {"n_init", report.params.n_init},
                 {"n_loop", report.params.n_loop},
                 {"n_it", report.params.n_it},
                 {"delta0", report.params.delta0},
                 {"seed", report.params.seed}};
  j["channel"] = spec_json(report.channel);
  json trace = json::array();
  for (const TracePoint& t : report.trace)
    trace.push_back(json::array({t.iteration, t.entropy}));
  j["trace"] = trace;
  json sym = json::array();
  for (const auto& [g, r] : report.symmetry_residuals)
    sym.push_back({{"kind", g.kind == Symmetry::Kind::Rotation ? "rotation"
                                                               : "reflection"},
                   {"theta", g.theta},
                   {"label", g.label()},
                   {"residual", r}});
  j["symmetry_residuals"] = sym;
  j["coherent_fidelity"] = report.coherent_fidelity;
  j["coherent_alpha"] = complex_json(report.coherent_alpha);
  j["restart_index"] = report.restart_index;
  return j.dump(2);
}

std::string to_json(const WignerGrid& grid) {
  json j;
  json x = json::array(), p = json::array(), w = json::array();
  for (int i = 0; i < grid.x_axis.size(); ++i) x.push_back(grid.x_axis(i));
  for (int i = 0; i < grid.p_axis.size(); ++i) p.push_back(grid.p_axis(i));
  for (int i = 0; i < grid.values.rows(); ++i) {
    json row = json::array();
    for (int k = 0; k < grid.values.cols(); ++k)
      row.push_back(grid.values(i, k));
    w.push_back(row);
  }
  j["x_axis"] = x;
  j["p_axis"] = p;
  j["values"] = w;
  j["extent_warning"] = grid.extent_warning;
  return j.dump();
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void CsvWriter::comment(const std::string& line) {
  out_ << "# " << line << "\n";
}

void CsvWriter::header(const std::vector<std::string>& columns) {
  for (std::size_t i = 0; i < columns.size(); ++i)
    out_ << (i ? "," : "") << columns[i];
  out_ << "\n";
}

void CsvWriter::row(const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i)
    out_ << (i ? "," : "") << format_number(values[i]);
  out_ << "\n";
}

}  // namespace focklab
