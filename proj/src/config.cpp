#include "qland/config.hpp"

#include <fstream>
#include <sstream>

namespace qland {

namespace {

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\r");
  auto b = s.find_last_not_of(" \t\r");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

std::vector<double> parse_list(const std::string& v, const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (...) {
      throw config_error("config: bad number '" + item + "' for " + key);
    }
  }
  if (out.empty()) throw config_error("config: empty list for " + key);
  return out;
}

double parse_double(const std::string& v, const std::string& key) {
  return parse_list(v, key).at(0);
}

// "k:re:im; k:re:im; ..." modes of a 1-torus profile
TrigPoly parse_coeff_list(const std::string& v) {
  TrigPoly p(1, 1.0);
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ';')) {
    item = trim(item);
    if (item.empty()) continue;
    std::stringstream ts(item);
    std::string ks, res, ims;
    if (!std::getline(ts, ks, ':') || !std::getline(ts, res, ':') ||
        !std::getline(ts, ims, ':'))
      throw config_error("config: f coefficient entries need k:re:im");
    p.add_coeff({std::stoi(trim(ks))}, cplx(std::stod(trim(res)), std::stod(trim(ims))));
  }
  return p;
}

}  // namespace

ConfigMap parse_config_text(const std::string& text) {
  ConfigMap out;
  std::string section = "experiment";
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw config_error("config: malformed section header at line " +
                           std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error("config: expected key = value at line " + std::to_string(lineno));
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty()) throw config_error("config: empty key at line " + std::to_string(lineno));
    out[section][key] = val;
  }
  return out;
}

ConfigMap parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

ExperimentConfig experiment_config(const ConfigMap& raw) {
  ExperimentConfig cfg;
  cfg.f = TrigPoly::sin1();
  auto get = [&](const std::string& sec, const std::string& key) -> const std::string* {
    auto s = raw.find(sec);
    if (s == raw.end()) return nullptr;
    auto k = s->second.find(key);
    return k == s->second.end() ? nullptr : &k->second;
  };

  if (auto* v = get("experiment", "gauge")) {
    if (*v == "landau")
      cfg.gauge = Gauge::landau;
    else if (*v == "symmetric")
      cfg.gauge = Gauge::symmetric;
    else if (*v == "symmetric_scalar")
      cfg.gauge = Gauge::symmetric_scalar;
    else
      throw config_error("config: unknown gauge '" + *v + "'");
  }
  if (auto* v = get("experiment", "B0")) cfg.B0 = parse_double(*v, "B0");
  if (cfg.B0 <= 0.0) throw config_error("config: B0 must be positive");
  if (auto* v = get("experiment", "f")) {
    cfg.f_name = *v;
    if (*v == "sin")
      cfg.f = TrigPoly::sin1();
    else if (*v == "cos")
      cfg.f = TrigPoly::cos1();
    else
      cfg.f = parse_coeff_list(*v);
  }
  {
    MultiIndex zero(cfg.f.dim(), 0);
    if (std::abs(cfg.f.coeff(zero)) > 1e-13)
      throw config_error("config: f must have zero mean");
  }
  if (auto* v = get("experiment", "eps")) cfg.eps_list = parse_list(*v, "eps");
  for (double e : cfg.eps_list)
    if (!(e >= 0.0 && e < 1.0)) throw config_error("config: eps must lie in [0, 1)");
  if (auto* v = get("experiment", "omega")) cfg.omega_list = parse_list(*v, "omega");
  if (auto* v = get("experiment", "seed"))
    cfg.seed = static_cast<std::uint64_t>(parse_double(*v, "seed"));
  if (auto* v = get("experiment", "T")) cfg.T = parse_double(*v, "T");
  if (cfg.T <= 0.0) throw config_error("config: T must be positive");
  if (auto* v = get("experiment", "dt")) cfg.dt = parse_double(*v, "dt");
  if (auto* v = get("experiment", "x0")) {
    auto xs = parse_list(*v, "x0");
    if (xs.size() != 4) throw config_error("config: x0 needs 4 components");
    cfg.x0 = Vec4(xs[0], xs[1], xs[2], xs[3]);
  }
  if (auto* v = get("experiment", "n_samples"))
    cfg.n_samples = static_cast<int>(parse_double(*v, "n_samples"));
  if (auto* v = get("experiment", "emit_generator"))
    cfg.emit_generator = (*v == "true" || *v == "1");
  if (auto* v = get("schedule", "sigma0")) cfg.sigma0 = parse_double(*v, "sigma0");
  if (cfg.sigma0 <= 0.0) throw config_error("config: sigma0 must be positive");
  if (auto* v = get("schedule", "M_max"))
    cfg.M_max = static_cast<int>(parse_double(*v, "M_max"));
  if (cfg.M_max < 1) throw config_error("config: M_max must be >= 1");
  if (auto* v = get("output", "out_dir")) cfg.out_dir = *v;
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  return experiment_config(parse_config_file(path));
}

}  // namespace qland
