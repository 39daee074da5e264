#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include "CLI11.hpp"

#include "littlewood/json_io.hpp"

using namespace lw;
using nlohmann::json;

namespace {

// Real-number specs on the command line: "sqrt<D>", "metallic<B>", "p/q",
// or a decimal literal.
RealSpec parse_real_arg(const std::string& s) {
  if (s.rfind("sqrt", 0) == 0)
    return RealSpec::surd(QuadraticSurd::sqrt_of(BigInt(s.substr(4))));
  if (s.rfind("metallic", 0) == 0)
    return RealSpec::surd(QuadraticSurd::metallic(BigInt(s.substr(8))));
  if (s.rfind("literal", 0) == 0) return RealSpec::literal(s.substr(7));
  // decimals and p/q are exact rational inputs
  return RealSpec::rational(parse_rational(s));
}

struct NRange {
  int lo = 1, hi = 1;
};

NRange parse_n_range(const std::string& s) {
  NRange r;
  auto pos = s.find("..");
  if (pos == std::string::npos) {
    r.lo = r.hi = std::stoi(s);
  } else {
    r.lo = std::stoi(s.substr(0, pos));
    r.hi = std::stoi(s.substr(pos + 2));
  }
  if (r.lo < 1 || r.hi < r.lo) throw CLI::ValidationError("n range must satisfy 1 <= lo <= hi");
  return r;
}

std::ostream& open_or_stdout(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw CLI::ValidationError("cannot open output file: " + path);
  return file;
}

int cmd_cf(const std::string& target, int count, const std::string& out_path,
           bool as_table, bool with_errors) {
  RealSpec spec = parse_real_arg(target);
  ConvergentTable tbl = cf_expand(spec, count);
  std::ofstream file;
  std::ostream& os = open_or_stdout(file, out_path);
  if (as_table) {
    os << "k\ta_k\tp_k\tq_k\n";
    for (size_t k = 0; k < tbl.size(); ++k)
      os << k << '\t' << tbl.quotients[k].get_str(10) << '\t'
         << tbl.p(k).get_str(10) << '\t' << tbl.q(k).get_str(10) << '\n';
  } else {
    json j = to_json(tbl);
    if (with_errors) {
      json errs = json::array();
      for (size_t k = 0; k + 1 < tbl.size(); k += 2)
        errs.push_back(to_json(error_record(spec, tbl, static_cast<int>(k))));
      j["error_records"] = errs;
    }
    os << j.dump() << '\n';
  }
  return 0;
}

int cmd_witness(const std::string& alpha_s, const std::string& beta_s,
                const std::string& eps_s, const std::string& eta_s,
                const NRange& range, const std::string& out_path) {
  RealSpec alpha = parse_real_arg(alpha_s);
  RealSpec beta = parse_real_arg(beta_s);
  BigRat eps = parse_rational(eps_s);
  BigRat eta = parse_rational(eta_s);
  int terms = 2 * range.hi + 2;
  ConvergentTable ta = cf_expand(alpha, terms);
  ConvergentTable tb = cf_expand(beta, terms);
  std::ofstream file;
  std::ostream& os = open_or_stdout(file, out_path);
  int witnesses = 0;
  for (int n = range.lo; n <= range.hi; ++n) {
    json line;
    line["n"] = n;
    try {
      StageReport rep = run_stage(alpha, beta, ta, tb, n, eta, eps);
      line["stage"] = to_json(rep);
      if (rep.witness) ++witnesses;
    } catch (const EmptyWindow& e) {
      line["error"] = std::string("empty-window: ") + e.what();
    } catch (const NoMultipleInInterval& e) {
      line["error"] = std::string("no-multiple: ") + e.what();
    } catch (const Undecidable& e) {
      line["error"] = std::string("undecidable: ") + e.what();
    } catch (const BranchUndecidable& e) {
      line["error"] = std::string("branch-undecidable: ") + e.what();
    }
    os << line.dump() << '\n';
  }
  return witnesses > 0 ? 0 : 2;
}

int cmd_bc_table(const std::vector<std::string>& etas, const std::string& tol_s,
                 const std::string& out_path) {
  BigRat tol = parse_rational(tol_s);
  std::ofstream file;
  std::ostream& os = open_or_stdout(file, out_path);
  os << "eta,b_c_lo,b_c_hi\n";
  for (const auto& es : etas) {
    BigRat eta = parse_rational(es);
    Enclosure b = critical_b(eta, tol);
    os << es << ',' << b.lo.get_d() << ',' << b.hi.get_d() << '\n';
  }
  return 0;
}

int cmd_pair_scan(const std::string& eta_s, const std::string& bmax_s,
                  const NRange& range, const std::string& out_path,
                  const std::string& csv_path) {
  BigRat eta = parse_rational(eta_s);
  BigInt bmax(bmax_s);
  std::ofstream file;
  std::ostream& os = open_or_stdout(file, out_path);
  std::ofstream csv;
  if (!csv_path.empty()) {
    csv.open(csv_path);
    if (!csv) throw CLI::ValidationError("cannot open csv file: " + csv_path);
    csv << "a,b,n,cond1,cond2,eta_min,gpf_a,gpf_b\n";
  }
  for (const auto& pair : enumerate_pairs(eta, bmax)) {
    auto ratios = ratio_check(pair, eta, range.lo, range.hi);
    for (int n = range.lo; n <= range.hi; ++n) {
      FactorizationReport rep = lcm_condition(pair, n, eta);
      json line = to_json(rep);
      line["a"] = to_json(pair.a);
      line["b"] = to_json(pair.b);
      const RatioVerdict& rv = ratios[static_cast<size_t>(n - range.lo)];
      bool cond1 = rv.lower_ok && rv.upper_ok;
      line["cond1"] = cond1;
      os << line.dump() << '\n';
      if (csv.is_open()) {
        csv << pair.a.get_str(10) << ',' << pair.b.get_str(10) << ',' << n << ','
            << (cond1 ? "true" : "false") << ','
            << (rep.lcm_ok ? (*rep.lcm_ok ? "true" : "false") : "unknown") << ','
            << rep.eta_min.mid().get_d() << ','
            << (rep.gpf_a > 0 ? rep.gpf_a.get_str(10) : "unknown") << ','
            << (rep.gpf_b > 0 ? rep.gpf_b.get_str(10) : "unknown") << '\n';
      }
    }
  }
  return 0;
}

int cmd_liminf(const std::string& alpha_s, const std::string& beta_s, long Q,
               const std::string& out_path, const std::string& plot_path) {
  RealSpec alpha = parse_real_arg(alpha_s);
  RealSpec beta = parse_real_arg(beta_s);
  auto terms = littlewood_min(alpha, beta, Q);
  std::ofstream file;
  std::ostream& os = open_or_stdout(file, out_path);
  os << "n,term_lo,term_hi,prefix_min\n";
  std::ofstream plot;
  if (!plot_path.empty()) {
    plot.open(plot_path);
    if (!plot) throw CLI::ValidationError("cannot open plot file: " + plot_path);
  }
  for (const auto& t : terms) {
    os << t.n << ',' << t.value.lo.get_d() << ',' << t.value.hi.get_d() << ','
       << t.prefix_min.get_d() << '\n';
    if (plot.is_open()) plot << t.n << ' ' << t.prefix_min.get_d() << '\n';
  }
  return 0;
}

int cmd_cartan_check(int count, unsigned seed, const std::string& eps_s,
                     const std::string& out_path) {
  BigRat eps = parse_rational(eps_s);
  std::mt19937 rng(seed);
  std::uniform_int_distribution<long> root_dist(-1000, 1000);
  std::ofstream file;
  std::ostream& os = open_or_stdout(file, out_path);
  int checked = 0, violations = 0, skipped = 0;
  while (checked < count) {
    long r1 = root_dist(rng), r2 = root_dist(rng), r3 = root_dist(rng);
    if (r1 == r2 || r2 == r3 || r1 == r3) continue;
    CubicModel m = CubicModel::from_roots(BigRat(1), BigInt(r1), BigRat(r2), BigRat(r3));
    try {
      CartanCheck c = cartan_bound(m, eps);
      ++checked;
      if (!c.ok) ++violations;
    } catch (const BranchUndecidable&) {
      ++skipped;
      continue;
    }
  }
  os << json{{"checked", checked}, {"violations", violations}, {"skipped", skipped}}
            .dump()
     << '\n';
  return violations == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact-arithmetic toolkit for small values of x(ax-y)(bx-z)"};
  app.require_subcommand(1);

  // cf
  auto* cf = app.add_subcommand("cf", "Continued-fraction expansion");
  std::string cf_sqrt, cf_metallic, cf_literal, cf_out;
  int cf_count = 10;
  bool cf_table = false, cf_errors = false;
  cf->add_option("--sqrt", cf_sqrt, "expand sqrt(D)");
  cf->add_option("--metallic", cf_metallic, "expand (b+sqrt(b^2+4))/2");
  cf->add_option("--literal", cf_literal, "expand a decimal literal or p/q");
  cf->add_option("--count", cf_count, "number of quotients");
  cf->add_option("--out", cf_out, "output path (default stdout)");
  cf->add_flag("--table", cf_table, "tab-separated table instead of JSON");
  cf->add_flag("--errors", cf_errors, "include even-index error records");

  // witness
  auto* wit = app.add_subcommand("witness", "Run witness stages over an n range");
  std::string w_alpha, w_beta, w_eps = "1/10", w_eta = "0", w_n = "1..1", w_out;
  std::vector<std::string> w_pair;
  wit->add_option("--alpha", w_alpha, "first target (sqrtD, metallicB, p/q, decimal)");
  wit->add_option("--beta", w_beta, "second target");
  wit->add_option("--metallic-pair", w_pair, "shorthand: a b")->expected(2);
  wit->add_option("--eps", w_eps, "epsilon (rational)");
  wit->add_option("--eta", w_eta, "eta in [0, 1/3)");
  wit->add_option("--n", w_n, "stage range lo..hi");
  wit->add_option("--out", w_out, "output path (default stdout)");

  // bc-table
  auto* bc = app.add_subcommand("bc-table", "Critical threshold table");
  std::vector<std::string> bc_etas{"0", "0.01", "0.1", "0.25"};
  std::string bc_tol = "0.00001", bc_out;
  bc->add_option("--etas", bc_etas, "eta values");
  bc->add_option("--tol", bc_tol, "bisection tolerance");
  bc->add_option("--out", bc_out, "output path (default stdout)");

  // pair-scan
  auto* ps = app.add_subcommand("pair-scan", "Enumerate and screen metallic pairs");
  std::string ps_eta = "0", ps_bmax = "20", ps_n = "1..5", ps_out, ps_csv;
  ps->add_option("--eta", ps_eta, "eta in [0, 1/3)");
  ps->add_option("--bmax", ps_bmax, "largest b");
  ps->add_option("--n", ps_n, "index range lo..hi");
  ps->add_option("--out", ps_out, "JSON-lines output path (default stdout)");
  ps->add_option("--csv", ps_csv, "CSV summary path");

  // liminf
  auto* li = app.add_subcommand("liminf", "Prefix minima of n||na||||nb||");
  std::string li_alpha, li_beta, li_out, li_plot;
  long li_q = 100;
  li->add_option("--alpha", li_alpha, "first target")->required();
  li->add_option("--beta", li_beta, "second target")->required();
  li->add_option("--Q", li_q, "range bound");
  li->add_option("--out", li_out, "CSV output path (default stdout)");
  li->add_option("--plot", li_plot, "two-column plot data path");

  // cartan-check
  auto* ca = app.add_subcommand("cartan-check", "Random-cubic sublevel property run");
  int ca_count = 100;
  unsigned ca_seed = 1;
  std::string ca_eps = "0.1", ca_out;
  ca->add_option("--count", ca_count, "number of cubics");
  ca->add_option("--seed", ca_seed, "random seed");
  ca->add_option("--eps", ca_eps, "epsilon (rational)");
  ca->add_option("--out", ca_out, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cf->parsed()) {
      std::string target;
      if (!cf_sqrt.empty()) target = "sqrt" + cf_sqrt;
      else if (!cf_metallic.empty()) target = "metallic" + cf_metallic;
      else if (!cf_literal.empty()) target = cf_literal;
      else {
        std::cerr << "cf: one of --sqrt/--metallic/--literal is required\n";
        return 1;
      }
      return cmd_cf(target, cf_count, cf_out, cf_table, cf_errors);
    }
    if (wit->parsed()) {
      if (!w_pair.empty()) {
        w_alpha = "metallic" + w_pair[0];
        w_beta = "metallic" + w_pair[1];
      }
      if (w_alpha.empty() || w_beta.empty()) {
        std::cerr << "witness: provide --alpha/--beta or --metallic-pair\n";
        return 1;
      }
      return cmd_witness(w_alpha, w_beta, w_eps, w_eta, parse_n_range(w_n), w_out);
    }
    if (bc->parsed()) return cmd_bc_table(bc_etas, bc_tol, bc_out);
    if (ps->parsed())
      return cmd_pair_scan(ps_eta, ps_bmax, parse_n_range(ps_n), ps_out, ps_csv);
    if (li->parsed()) {
      if (li_q < 1) {
        std::cerr << "liminf: Q must be >= 1\n";
        return 1;
      }
      return cmd_liminf(li_alpha, li_beta, li_q, li_out, li_plot);
    }
    if (ca->parsed()) return cmd_cartan_check(ca_count, ca_seed, ca_eps, ca_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
