#include "littlewood/json_io.hpp"

namespace lw {

using nlohmann::json;

json to_json(const BigInt& v) { return v.get_str(10); }

json to_json(const BigRat& v) {
  BigRat c = v;
  c.canonicalize();
  return c.get_num().get_str(10) + "/" + c.get_den().get_str(10);
}

json to_json(const Enclosure& e) {
  return json{{"lo", to_json(e.lo)}, {"hi", to_json(e.hi)}};
}

json to_json(const ConvergentTable& t) {
  json quotients = json::array(), convergents = json::array();
  for (const auto& a : t.quotients) quotients.push_back(to_json(a));
  for (const auto& [p, q] : t.convergents)
    convergents.push_back(json{{"p", to_json(p)}, {"q", to_json(q)}});
  json out{{"quotients", quotients},
           {"convergents", convergents},
           {"complete", t.complete}};
  if (t.period)
    out["period"] = json{{"preperiod", t.period->first}, {"length", t.period->second}};
  return out;
}

json to_json(const ErrorRecord& r) {
  return json{{"n", r.n},
              {"e", to_json(r.e)},
              {"lower", to_json(r.lower)},
              {"upper", to_json(r.upper)},
              {"verified", r.verified}};
}

json to_json(const DirichletPoint& p) {
  return json{{"N", to_json(p.N)},
              {"x", to_json(p.x)},
              {"y", to_json(p.y)},
              {"z", to_json(p.z)},
              {"res_alpha", to_json(p.res_alpha)},
              {"res_beta", to_json(p.res_beta)}};
}

json to_json(const HypothesisReport& r) {
  return json{{"n", r.n},
              {"q_a", to_json(r.q_a)},
              {"q_b", to_json(r.q_b)},
              {"gamma", to_json(r.gamma)},
              {"l", to_json(r.l)},
              {"eta_min", to_json(r.eta_min)},
              {"cond1", r.cond1},
              {"cond2", r.cond2},
              {"eta", to_json(r.eta)}};
}

json to_json(const WitnessCertificate& c) {
  return json{{"x", to_json(c.x)},     {"y", to_json(c.y)},
              {"z", to_json(c.z)},     {"f_value", to_json(c.f_value)},
              {"epsilon", to_json(c.epsilon)}, {"t", to_json(c.t)},
              {"n", c.n},              {"l", to_json(c.l)},
              {"k", to_json(c.k)}};
}

json to_json(const SigmaDiagnostics& d) {
  return json{{"sigma1_ratio", to_json(d.sigma1_ratio)},
              {"sigma2_ratio", to_json(d.sigma2_ratio)},
              {"sigma3_ratio", to_json(d.sigma3_ratio)},
              {"negP_ratio", to_json(d.negP_ratio)},
              {"length_ratio", to_json(d.length_ratio)},
              {"cos_branch", d.cos_branch},
              {"c_identity_ok", d.c_identity_ok},
              {"length_bound_ok", d.length_bound_ok}};
}

json to_json(const SublevelSet& s) {
  json intervals = json::array();
  for (const auto& iv : s.intervals)
    intervals.push_back(json{{"lo", to_json(iv.lo)}, {"hi", to_json(iv.hi)}});
  return json{{"intervals", intervals},
              {"epsilon", to_json(s.epsilon)},
              {"total_length", to_json(s.total_length)},
              {"scenario", s.scenario}};
}

json to_json(const StageReport& r) {
  json out{{"n", r.n},
           {"delta", to_json(r.delta)},
           {"N", to_json(r.N)},
           {"point", to_json(r.point)},
           {"hypotheses", to_json(r.hypotheses)},
           {"selected_interval", r.selected_interval},
           {"immediate", r.immediate}};
  json mult = json::array();
  for (const auto& t : r.multiples_found) mult.push_back(to_json(t));
  out["multiples_found"] = mult;
  if (r.levelset) out["levelset"] = to_json(*r.levelset);
  if (r.witness) out["witness"] = to_json(*r.witness);
  if (r.diagnostics) out["diagnostics"] = to_json(*r.diagnostics);
  return out;
}

json to_json(const LittlewoodTerm& t) {
  return json{{"n", t.n},
              {"value", to_json(t.value)},
              {"prefix_min", to_json(t.prefix_min)}};
}

json to_json(const RatioVerdict& v) {
  return json{{"n", v.n},
              {"q_a", to_json(v.q_a)},
              {"q_b", to_json(v.q_b)},
              {"lower_ok", v.lower_ok},
              {"upper_ok", v.upper_ok}};
}

json to_json(const FactorizationReport& r) {
  auto factors = [](const std::vector<PrimePower>& fs) {
    json out = json::array();
    for (const auto& f : fs)
      out.push_back(json{{"p", to_json(f.p)}, {"e", f.e}});
    return out;
  };
  json out{{"n", r.n},
           {"q_a", to_json(r.q_a)},
           {"q_b", to_json(r.q_b)},
           {"l", to_json(r.l)},
           {"factors_a", factors(r.factors_a)},
           {"factors_b", factors(r.factors_b)},
           {"complete_a", r.complete_a},
           {"complete_b", r.complete_b},
           {"I_n", r.I_n},
           {"r_n", r.r_n},
           {"eta_min", to_json(r.eta_min)}};
  json primes = json::array();
  for (const auto& p : r.primes) primes.push_back(to_json(p));
  out["primes"] = primes;
  out["gpf_a"] = r.gpf_a > 0 ? to_json(r.gpf_a) : json(nullptr);
  out["gpf_b"] = r.gpf_b > 0 ? to_json(r.gpf_b) : json(nullptr);
  out["lcm_ok"] = r.lcm_ok ? json(*r.lcm_ok) : json(nullptr);
  out["sufficient_ok"] = r.sufficient_ok ? json(*r.sufficient_ok) : json(nullptr);
  return out;
}

BigInt bigint_from_json(const json& j) {
  BigInt v;
  if (mpz_set_str(v.get_mpz_t(), j.get<std::string>().c_str(), 10) != 0)
    throw std::invalid_argument("malformed integer string");
  return v;
}

BigRat bigrat_from_json(const json& j) { return parse_rational(j.get<std::string>()); }

Enclosure enclosure_from_json(const json& j) {
  return Enclosure(bigrat_from_json(j.at("lo")), bigrat_from_json(j.at("hi")));
}

DirichletPoint dirichlet_point_from_json(const json& j) {
  DirichletPoint p;
  p.N = bigint_from_json(j.at("N"));
  p.x = bigint_from_json(j.at("x"));
  p.y = bigint_from_json(j.at("y"));
  p.z = bigint_from_json(j.at("z"));
  p.res_alpha = enclosure_from_json(j.at("res_alpha"));
  p.res_beta = enclosure_from_json(j.at("res_beta"));
  return p;
}

WitnessCertificate certificate_from_json(const json& j) {
  WitnessCertificate c;
  c.x = bigint_from_json(j.at("x"));
  c.y = bigint_from_json(j.at("y"));
  c.z = bigint_from_json(j.at("z"));
  c.f_value = enclosure_from_json(j.at("f_value"));
  c.epsilon = bigrat_from_json(j.at("epsilon"));
  c.t = bigint_from_json(j.at("t"));
  c.n = j.at("n").get<int>();
  c.l = bigint_from_json(j.at("l"));
  c.k = bigint_from_json(j.at("k"));
  return c;
}

}  // namespace lw
