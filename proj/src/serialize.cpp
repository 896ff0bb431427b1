#include "qland/serialize.hpp"

#include <cstdio>

namespace qland {

json to_json(const TrigPoly& p) {
  json j;
  j["dim"] = p.dim();
  j["cutoff"] = p.cutoff();
  j["strip_width"] = p.strip_width();
  json coeffs = json::array();
  for (const auto& [k, v] : p.coeffs()) {
    json entry = json::array();
    entry.push_back(json(k));
    entry.push_back(v.real());
    entry.push_back(v.imag());
    coeffs.push_back(entry);
  }
  j["coeffs"] = coeffs;
  return j;
}

TrigPoly trigpoly_from_json(const json& j) {
  TrigPoly p(j.at("dim").get<int>(), j.at("strip_width").get<double>());
  for (const auto& entry : j.at("coeffs")) {
    MultiIndex k = entry.at(0).get<MultiIndex>();
    p.set_coeff(k, cplx(entry.at(1).get<double>(), entry.at(2).get<double>()));
  }
  return p;
}

json to_json(const QuadHamiltonian& q) {
  json j;
  j["class_tag"] = q.class_tag() == HamClass::landau ? "landau" : "full";
  j["dim"] = q.dim();
  j["strip_width"] = q.strip_width();
  json terms = json::array();
  for (const auto& [m, p] : q.terms()) {
    json t;
    t["alpha"] = {m.alpha[0], m.alpha[1]};
    t["beta"] = {m.beta[0], m.beta[1]};
    t["poly"] = to_json(p);
    terms.push_back(t);
  }
  j["terms"] = terms;
  return j;
}

QuadHamiltonian quadham_from_json(const json& j) {
  HamClass tag = j.at("class_tag").get<std::string>() == "landau" ? HamClass::landau
                                                                  : HamClass::full;
  QuadHamiltonian q(tag, j.at("dim").get<int>(), j.at("strip_width").get<double>());
  for (const auto& t : j.at("terms")) {
    Monomial m;
    m.alpha = {t.at("alpha").at(0).get<int>(), t.at("alpha").at(1).get<int>()};
    m.beta = {t.at("beta").at(0).get<int>(), t.at("beta").at(1).get<int>()};
    q.set_term(m, trigpoly_from_json(t.at("poly")));
  }
  return q;
}

json to_json(const NormalForm& n) {
  json j;
  j["kind"] = n.kind == NormalForm::Kind::landau ? "landau" : "symmetric";
  j["a"] = n.a;
  j["c"] = n.c;
  return j;
}

NormalForm normalform_from_json(const json& j) {
  NormalForm n;
  n.kind = j.at("kind").get<std::string>() == "landau" ? NormalForm::Kind::landau
                                                       : NormalForm::Kind::symmetric;
  n.a = j.at("a").get<double>();
  n.c = j.at("c").get<double>();
  return n;
}

json to_json(const DivisorReport& rep) {
  json j;
  j["min_modulus"] = rep.min_modulus;
  json worst;
  worst["monomial"] = rep.worst.mon.str();
  worst["k"] = json(rep.worst.k);
  worst["modulus"] = rep.worst.modulus;
  j["worst"] = worst;
  json entries = json::array();
  for (const auto& e : rep.entries) {
    json je;
    je["monomial"] = e.mon.str();
    je["alpha"] = {e.mon.alpha[0], e.mon.alpha[1]};
    je["beta"] = {e.mon.beta[0], e.mon.beta[1]};
    je["k"] = json(e.k);
    je["divisor"] = e.divisor;
    je["modulus"] = e.modulus;
    entries.push_back(je);
  }
  j["entries"] = entries;
  return j;
}

json to_json(const KamResult& res, bool with_generators) {
  json j;
  switch (res.status) {
    case KamResult::Status::converged: j["status"] = "converged"; break;
    case KamResult::Status::resonant: j["status"] = "resonant"; break;
    case KamResult::Status::diverged: j["status"] = "diverged"; break;
    case KamResult::Status::degenerate: j["status"] = "degenerate"; break;
  }
  j["normal_form"] = to_json(res.normal_form);
  j["q_final_norm"] = res.q_final_norm;
  if (!res.message.empty()) j["message"] = res.message;
  if (res.status == KamResult::Status::resonant) {
    j["resonant_step"] = res.resonant_step;
    j["resonant_k"] = json(res.resonant_k);
    j["resonant_monomial"] = res.resonant_mon.str();
  }
  json steps = json::array();
  for (const auto& d : res.steps) {
    json s;
    s["m"] = d.m;
    s["q_norm_before"] = d.q_norm_before;
    s["q_norm_after"] = d.q_norm_after;
    s["chi_norm"] = d.chi_norm;
    s["r_norm"] = d.r_norm;
    s["min_divisor"] = d.min_divisor;
    s["ntilde_a"] = d.ntilde_a;
    s["ntilde_c"] = d.ntilde_c;
    s["dropped_tail"] = d.dropped_tail;
    s["lie_terms"] = d.lie_terms;
    steps.push_back(s);
  }
  j["steps"] = steps;
  if (with_generators) {
    json gens = json::array();
    for (const auto& g : res.generators) gens.push_back(to_json(g));
    j["generators"] = gens;
  }
  return j;
}

std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

const char* kConstantsCsvHeader = "omega,B0,c_omega,d_omega,a_omega,status";

std::string constants_csv_row(const StepConstants& c) {
  std::string row = fmt_g(c.omega_scalar) + "," + fmt_g(c.B0) + ",";
  if (c.resonant) {
    row += ",,,resonant";
  } else {
    row += fmt_g(c.c) + "," + fmt_g(c.d) + "," + fmt_g(c.a) + ",ok";
  }
  return row;
}

const char* kTrajectoryCsvHeader = "t,x1,x2,p1,p2,abs_z1,abs_z2";

std::string trajectory_csv(const Trajectory& traj, const GaugeSpec& spec) {
  Mat4c T = chart_matrix(spec.gauge, spec.B0);
  std::string out = std::string(kTrajectoryCsvHeader) + "\n";
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const Vec4& u = traj.states[i];
    Vec4c z = T * u.cast<cplx>();
    out += fmt_g(traj.times[i]);
    for (int c = 0; c < 4; ++c) out += "," + fmt_g(u(c));
    out += "," + fmt_g(std::abs(z(0))) + "," + fmt_g(std::abs(z(1))) + "\n";
  }
  return out;
}

}  // namespace qland
