// Command-line front end: subcommands coeff, saddle, airy, compare, table, norms, annular, duality.
// Exit codes: 0 success, 2 usage, 3 numerical refusal, 4 budget exceeded.

#pragma once

#include "airy.hpp"
#include "annular.hpp"
#include "asym.hpp"
#include "core.hpp"
#include "exact.hpp"
#include "norms.hpp"
#include "saddle.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace blaschke::cli {

enum ExitCode { ok = 0, usage = 2, refusal = 3, budget = 4 };

namespace detail {

inline std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string g6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

/// "a:b" inclusive.
inline std::pair<std::int64_t, std::int64_t> parse_range(const std::string& s) {
  const auto c = s.find(':');
  if (c == std::string::npos) throw config_error("range must be 'a:b', got '" + s + "'");
  try {
    std::size_t u1 = 0, u2 = 0;
    const std::int64_t a = std::stoll(s.substr(0, c), &u1), b = std::stoll(s.substr(c + 1), &u2);
    if (u1 != c || u2 != s.size() - c - 1 || a < 0 || b < a) throw config_error("");
    return {a, b};
  } catch (const std::exception&) {
    throw config_error("range must be 'a:b' with 0 <= a <= b, got '" + s + "'");
  }
}

inline std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "inf") {
      out.push_back(infinity_p);
      continue;
    }
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw config_error("");
    } catch (const std::exception&) {
      throw config_error("cannot parse list item '" + item + "'");
    }
  }
  if (out.empty()) throw config_error("empty list");
  return out;
}

inline std::string p_text(double p) { return std::isinf(p) ? "inf" : g17(p); }

/// Single coefficient as sign and log magnitude: rational when affordable, else a saddle-circle Cauchy sum.
inline std::pair<SignedLog, std::string> exact_single(const BlaschkeParam& param, std::int64_t n, std::int64_t k) {
  if (param.is_exact() && rational_affordable(n, k)) {
    const BigRational v = coeff_rational(*param.exact(), n, k);
    if (v == 0) return {SignedLog{}, "RationalConvolution"};
    const BigFloat mag = BigFloat(boost::multiprecision::abs(v));
    return {{v < 0 ? -1 : 1, static_cast<double>(boost::multiprecision::log(mag))}, "RationalConvolution"};
  }
  return {coeff_saddle_circle(param.lambda(), n, k, 1e-12).value, "CauchySaddleCircle"};
}

}  // namespace detail

struct Options {
  std::string lambda;
  std::int64_t n = 0;
  std::optional<std::int64_t> k;
  std::string k_range;
  std::string out = "csv";
  std::string output;
  std::optional<double> alpha, beta, omega;
  // coeff
  std::string method = "auto";
  std::int64_t dft_size = 0;
  // saddle
  std::optional<double> a;
  std::string side = "auto";
  // airy
  std::optional<double> x;
  std::string x_range;
  // compare
  std::string summary;
  std::string ladder;
  bool leading_airy = false;
  // norms
  std::string p_list = "1,2,3,4,inf";
  std::string n_values = "256,512,1024,2048,4096,8192";
  // annular
  std::string mode = "lp";
  double p = 2, q = 3, r = 2.5;
  std::int64_t A = 16;
  int levels = 4;
  int levels_checked = -1;
  std::int64_t N = 512;
};

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(int argc, const char* const* argv) {
    CLI::App app{"Fourier coefficients of powers of a Blaschke factor"};
    app.require_subcommand(1);
    Options o;
    auto common = [&](CLI::App* s, bool need_lambda) {
      auto* l = s->add_option("--lambda", o.lambda, "lambda in (0,1), as p/q (exact) or decimal");
      if (need_lambda) l->required();
      s->add_option("--out", o.out, "csv or json")->check(CLI::IsMember({"csv", "json"}));
      s->add_option("-o,--output", o.output, "output file (default stdout)");
    };
    auto thresholds = [&](CLI::App* s) {
      s->add_option("--alpha", o.alpha, "Region II/III threshold alpha");
      s->add_option("--beta", o.beta, "Airy-band threshold beta");
      s->add_option("--omega", o.omega, "Airy half-width in k");
    };
    auto* coeff = app.add_subcommand("coeff", "exact coefficients");
    common(coeff, true);
    coeff->add_option("--n", o.n)->required();
    coeff->add_option("--k", o.k);
    coeff->add_option("--k-range", o.k_range, "a:b inclusive");
    coeff->add_option("--method", o.method)->check(CLI::IsMember({"auto", "rational", "dft", "quadrature", "cauchy"}));
    coeff->add_option("--dft-size", o.dft_size, "DFT length M (power of two)");

    auto* saddle = app.add_subcommand("saddle", "saddle points and Airy variables at a = k/n");
    common(saddle, true);
    saddle->add_option("--a", o.a);
    saddle->add_option("--n", o.n);
    saddle->add_option("--k", o.k);
    saddle->add_option("--side", o.side)->check(CLI::IsMember({"auto", "left", "right"}));

    auto* airy = app.add_subcommand("airy", "Airy function values");
    common(airy, false);
    airy->add_option("--x", o.x);
    airy->add_option("--x-range", o.x_range, "lo:hi:count");

    auto* compare = app.add_subcommand("compare", "asymptotic formulas against exact coefficients");
    common(compare, true);
    thresholds(compare);
    compare->add_option("--n", o.n)->required();
    compare->add_option("--k-range", o.k_range)->required();
    compare->add_option("--summary", o.summary, "write the JSON summary to this file");
    compare->add_option("--ladder", o.ladder, "extra n values for per-region error exponents, comma separated");
    compare->add_flag("--leading-airy", o.leading_airy, "use leading-order gamma in Regions IV/VI");

    auto* table = app.add_subcommand("table", "region map with sample values");
    common(table, true);
    thresholds(table);
    table->add_option("--n", o.n)->required();

    auto* norms = app.add_subcommand("norms", "l^p norms and scaling exponents");
    common(norms, true);
    norms->add_option("--p", o.p_list, "comma separated, 'inf' allowed");
    norms->add_option("--n-values", o.n_values, "comma separated");

    auto* annular = app.add_subcommand("annular", "strongly annular construction or block lemma");
    common(annular, false);
    annular->add_option("--mode", o.mode)->check(CLI::IsMember({"lp", "lemma"}));
    annular->add_option("--p", o.p);
    annular->add_option("--q", o.q);
    annular->add_option("--r", o.r);
    annular->add_option("--A", o.A);
    annular->add_option("--levels", o.levels);
    annular->add_option("--levels-checked", o.levels_checked);
    annular->add_option("--N", o.N, "block order for --mode lemma");

    auto* duality = app.add_subcommand("duality", "residual of the dual integral representation");
    common(duality, true);
    duality->add_option("--n", o.n)->required();
    duality->add_option("--k", o.k);
    duality->add_option("--k-range", o.k_range);

    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
      out_ << app.help();
      return ok;
    } catch (const CLI::ParseError& e) {
      err_ << "usage error: " << e.what() << "\n";
      return usage;
    }
    try {
      std::ostringstream buf;
      if (coeff->parsed()) run_coeff(o, buf);
      else if (saddle->parsed()) run_saddle(o, buf);
      else if (airy->parsed()) run_airy(o, buf);
      else if (compare->parsed()) run_compare(o, buf);
      else if (table->parsed()) run_table(o, buf);
      else if (norms->parsed()) run_norms(o, buf);
      else if (annular->parsed()) run_annular(o, buf);
      else if (duality->parsed()) run_duality(o, buf);
      if (o.output.empty()) {
        out_ << buf.str();
      } else {
        std::ofstream f(o.output, std::ios::binary);
        if (!f) throw config_error("cannot open output file '" + o.output + "'");
        f << buf.str();
      }
      return ok;
    } catch (const config_error& e) {
      err_ << "usage error: " << e.what() << "\n";
      return usage;
    } catch (const domain_error& e) {
      err_ << "usage error: " << e.what() << "\n";
      return usage;
    } catch (const numerical_refusal& e) {
      err_ << "numerical refusal: " << e.what() << "\n";
      return refusal;
    } catch (const budget_exceeded& e) {
      err_ << "budget exceeded: " << e.what() << "\n";
      return budget;
    }
  }

 private:
  std::ostream& out_;
  std::ostream& err_;

  static std::vector<std::int64_t> ks_of(const Options& o) {
    if (o.k && !o.k_range.empty()) throw config_error("give --k or --k-range, not both");
    if (o.k) {
      if (*o.k < 0) throw domain_error("k must be >= 0");
      return {*o.k};
    }
    if (o.k_range.empty()) throw config_error("--k or --k-range is required");
    const auto [a, b] = detail::parse_range(o.k_range);
    if (b - a > 50000000) throw budget_exceeded("k range too long");
    std::vector<std::int64_t> ks;
    for (std::int64_t k = a; k <= b; ++k) ks.push_back(k);
    return ks;
  }

  static Thresholds thresholds_of(const Options& o, const BlaschkeParam& param) {
    Thresholds t = Thresholds::defaults(param, o.n);
    if (o.alpha) t.alpha = *o.alpha;
    if (o.beta) t.beta = *o.beta;
    if (o.omega) t.omega = *o.omega;
    t.validate(param, o.n);
    return t;
  }

  static void check_n(const Options& o) {
    if (o.n < 1) throw domain_error("n must be >= 1");
  }

  void run_coeff(const Options& o, std::ostream& os) {
    const BlaschkeParam param = BlaschkeParam::parse(o.lambda);
    check_n(o);
    const auto ks = ks_of(o);
    const std::int64_t kmax = ks.back();
    CoeffSequence seq;
    std::string method = o.method;
    if (method == "auto") method = (param.is_exact() && rational_affordable(o.n, kmax)) ? "rational" : "dft";
    if (method == "rational") {
      if (!param.is_exact()) throw config_error("--method rational needs lambda as p/q");
      const RationalCoeffs rc = coeff_rational_sequence(*param.exact(), o.n, kmax);
      seq.n = o.n;
      seq.lambda = param.lambda();
      seq.lambda_text = param.to_string();
      seq.provenance = Provenance::RationalConvolution;
      seq.precision = "exact";
      for (std::int64_t k = 0; k <= kmax; ++k) seq.values.push_back(rc.to_double(k));
    } else if (method == "dft") {
      std::int64_t m = o.dft_size ? o.dft_size : default_dft_size(param.lambda(), o.n);
      if (!o.dft_size)
        while (m < 2 * (kmax + 1)) m <<= 1;
      if (m <= kmax) throw config_error("--dft-size must exceed the largest k");
      seq = coeff_dft_auto(param.lambda(), o.n, m);
      seq.lambda_text = param.to_string();
    } else {
      // pointwise methods
      seq.n = o.n;
      seq.lambda = param.lambda();
      seq.lambda_text = param.to_string();
      seq.provenance = Provenance::Quadrature;
      seq.precision = "binary64";
      seq.values.assign(static_cast<std::size_t>(kmax) + 1, 0.0);
      for (std::int64_t k : ks) {
        if (method == "quadrature") {
          const QuadResult q = coeff_quadrature(param.lambda(), o.n, k);
          seq.values[k] = q.value;
          seq.error_bound = std::max(seq.error_bound, q.error_estimate);
        } else {
          seq.values[k] = coeff_saddle_circle(param.lambda(), o.n, k).value.value();
        }
      }
      if (method == "cauchy") seq.precision = "binary80";
    }
    if (o.out == "json") {
      nlohmann::json j = to_json(seq, 0);
      j["k"] = ks;
      j["values"] = nlohmann::json::array();
      for (std::int64_t k : ks) j["values"].push_back(seq[k]);
      if (method == "cauchy") j["provenance"] = "CauchySaddleCircle";
      os << j.dump(2) << "\n";
      return;
    }
    os << "# lambda=" << seq.lambda_text << " n=" << o.n << " provenance="
       << (method == "cauchy" ? "CauchySaddleCircle" : to_string(seq.provenance)) << " precision=" << seq.precision
       << "\n";
    os << "k,value,abs_error_bound\n";
    for (std::int64_t k : ks) os << k << "," << detail::g17(seq[k]) << "," << detail::g6(seq.error_bound) << "\n";
  }

  void run_saddle(const Options& o, std::ostream& os) {
    const BlaschkeParam param = BlaschkeParam::parse(o.lambda);
    double a = 0;
    if (o.a) {
      if (o.k || o.n) throw config_error("give --a or --n/--k, not both");
      a = *o.a;
    } else {
      if (!o.k || o.n < 1) throw config_error("saddle needs --a or both --n and --k");
      a = static_cast<double>(*o.k) / static_cast<double>(o.n);
    }
    if (!(a > 0)) throw domain_error("a must be > 0");
    const Side side = o.side == "left" ? Side::LeftEdge : o.side == "right" ? Side::RightEdge : Side::Auto;
    const SaddleData d = saddle_data(param.lambda(), a, side);
    nlohmann::json j = to_json(d);
    j["lambda_text"] = param.to_string();
    if (o.out == "json") {
      os << j.dump(2) << "\n";
      return;
    }
    os << "# saddle data lambda=" << param.to_string() << " a=" << detail::g17(a) << "\n";
    os << "key,value\n";
    for (const auto& [key, v] : j.items()) os << key << "," << v.dump() << "\n";
  }

  void run_airy(const Options& o, std::ostream& os) {
    std::vector<double> xs;
    if (o.x && !o.x_range.empty()) throw config_error("give --x or --x-range, not both");
    if (o.x) {
      xs.push_back(*o.x);
    } else if (!o.x_range.empty()) {
      std::stringstream ss(o.x_range);
      std::string a, b, c;
      if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, c))
        throw config_error("--x-range must be lo:hi:count");
      double lo = 0, hi = 0;
      long count = 0;
      try {
        lo = std::stod(a);
        hi = std::stod(b);
        count = std::stol(c);
      } catch (const std::exception&) {
        throw config_error("--x-range must be lo:hi:count");
      }
      if (count < 1 || count > 10000000 || hi < lo) throw config_error("--x-range needs lo <= hi and count >= 1");
      for (long i = 0; i < count; ++i) xs.push_back(count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (count - 1));
    } else {
      throw config_error("airy needs --x or --x-range");
    }
    if (o.out == "json") {
      nlohmann::json j = nlohmann::json::array();
      for (double x : xs) {
        const AiryValue v = ai(x);
        j.push_back({{"x", x}, {"ai", v.ai}, {"method", to_string(v.method)}, {"est_error", v.est_error}});
      }
      os << j.dump(2) << "\n";
      return;
    }
    os << "# Airy Ai on the real line, absolute error estimates\n";
    os << "x,ai,method,est_error\n";
    for (double x : xs) {
      const AiryValue v = ai(x);
      os << detail::g17(x) << "," << detail::g17(v.ai) << "," << to_string(v.method) << "," << detail::g6(v.est_error)
         << "\n";
    }
  }

  void run_compare(const Options& o, std::ostream& os) {
    const BlaschkeParam param = BlaschkeParam::parse(o.lambda);
    check_n(o);
    const Thresholds t = thresholds_of(o, param);
    const auto ks = ks_of(o);
    const AsymOptions opt{!o.leading_airy};
    const SweepReport rep = error_sweep(param, o.n, ks, t, opt);
    nlohmann::json summary = summary_json(rep);
    for (auto& [name, s] : summary.items()) s["fitted_exponent"] = nullptr;
    if (!o.ladder.empty()) add_exponents(o, param, opt, rep, summary);
    if (!o.summary.empty()) {
      std::ofstream f(o.summary, std::ios::binary);
      if (!f) throw config_error("cannot open summary file '" + o.summary + "'");
      f << summary.dump(2) << "\n";
    }
    if (o.out == "json") {
      nlohmann::json j;
      j["lambda"] = rep.lambda_text;
      j["n"] = rep.n;
      j["exact_provenance"] = rep.exact_provenance;
      j["summary"] = summary;
      for (const auto& r : rep.rows)
        j["rows"].push_back({{"k", r.k}, {"region", to_string(r.region)}, {"formula", to_string(r.formula)},
                             {"exact", r.exact}, {"asym", r.asym}, {"abs_err", r.abs_err}, {"rel_err", r.rel_err},
                             {"env_err", r.env_err}, {"log_err", r.log_err}});
      os << j.dump(2) << "\n";
      return;
    }
    os << "# lambda=" << rep.lambda_text << " n=" << rep.n << " exact=" << rep.exact_provenance
       << " asym=" << (o.leading_airy ? "leading" : "uniform") << "_airy alpha=" << detail::g17(t.alpha)
       << " beta=" << detail::g17(t.beta) << " omega=" << detail::g17(t.omega)
       << "; rel_err from log magnitudes, env_err = abs_err / amplitude\n";
    os << "k,region,exact,asym,abs_err,rel_err,env_err,formula,log_err\n";
    for (const auto& r : rep.rows)
      os << r.k << "," << to_string(r.region) << "," << detail::g17(r.exact) << "," << detail::g17(r.asym) << ","
         << detail::g6(r.abs_err) << "," << detail::g6(r.rel_err) << "," << detail::g6(r.env_err) << ","
         << to_string(r.formula) << "," << detail::g6(r.log_err) << "\n";
  }

  /// Reruns the sweep at each ladder n over the same k/n window and fits the envelope-normalized error against n per region.
  static void add_exponents(const Options& o, const BlaschkeParam& param, const AsymOptions& opt, const SweepReport& base,
                            nlohmann::json& summary) {
    std::vector<double> ns = detail::parse_list(o.ladder);
    std::map<Region, std::pair<std::vector<double>, std::vector<double>>> pts;
    for (const auto& [r, s] : base.summary) {
      if (s.max_env > 0) {
        pts[r].first.push_back(static_cast<double>(base.n));
        pts[r].second.push_back(s.max_env);
      }
    }
    const double a_lo = static_cast<double>(base.rows.front().k) / static_cast<double>(base.n);
    const double a_hi = static_cast<double>(base.rows.back().k) / static_cast<double>(base.n);
    for (double nd : ns) {
      const auto n = static_cast<std::int64_t>(nd);
      if (n < 1) throw domain_error("ladder n must be >= 1");
      std::vector<std::int64_t> ks;
      for (auto k = static_cast<std::int64_t>(std::ceil(a_lo * n)); k <= static_cast<std::int64_t>(std::floor(a_hi * n)); ++k)
        ks.push_back(k);
      const SweepReport rep = error_sweep(param, n, ks, Thresholds::defaults(param, n), opt);
      for (const auto& [r, s] : rep.summary) {
        if (s.max_env > 0) {
          pts[r].first.push_back(nd);
          pts[r].second.push_back(s.max_env);
        }
      }
    }
    for (const auto& [r, xy] : pts) {
      if (xy.first.size() >= 2 && summary.contains(to_string(r)))
        summary[to_string(r)]["fitted_exponent"] = fit_loglog(xy.first, xy.second).slope;
    }
  }

  void run_table(const Options& o, std::ostream& os) {
    const BlaschkeParam param = BlaschkeParam::parse(o.lambda);
    check_n(o);
    const Thresholds t = thresholds_of(o, param);
    const double nn = static_cast<double>(o.n), a0 = param.alpha0(), a0i = param.alpha0_inv();
    // inclusive integer bands, boundaries to the lower-indexed region
    const double edges[] = {Thresholds::region_one_limit(o.n), t.alpha * nn, a0 * nn - t.omega, a0 * nn + t.omega,
                            a0i * nn - t.omega, a0i * nn + t.omega, nn / t.alpha};
    static const char* behavior[] = {"(-lambda)^(n-k) (n(1-lambda^2))^k / k!",
                                     "exponentially small, saddle on the negative axis",
                                     "exp(-(2/3) n |gamma|^3) / sqrt(n)",
                                     "Ai(n^(2/3) gamma^2) / n^(1/3), left transition",
                                     "n^(-1/2) cos(n h(phi+) - pi/4)",
                                     "Ai(n^(2/3) gamma^2) / n^(1/3), right transition",
                                     "exp(-(2/3) n |gamma|^3) / sqrt(n)",
                                     "exponentially small, saddle beyond 1"};
    nlohmann::json rows = nlohmann::json::array();
    std::int64_t lo = 0;
    for (int i = 0; i < 8; ++i) {
      std::int64_t hi = i < 7 ? static_cast<std::int64_t>(std::floor(edges[i])) : -1;
      if (i < 7 && hi < lo - 1) hi = lo - 1;
      nlohmann::json row;
      row["region"] = to_string(static_cast<Region>(i + 1));
      row["k_lo"] = lo;
      row["k_hi"] = i < 7 ? nlohmann::json(hi) : nlohmann::json("inf");
      row["behavior"] = behavior[i];
      const bool empty = i < 7 && hi < lo;
      row["count"] = empty ? nlohmann::json(0) : (i < 7 ? nlohmann::json(hi - lo + 1) : nlohmann::json("inf"));
      if (!empty) {
        const std::int64_t k = i < 7 ? lo + (hi - lo) / 2 : static_cast<std::int64_t>(std::ceil(1.25 * nn / t.alpha));
        const AsymResult a = asym_auto(param, o.n, k, t);
        const auto [ex, prov] = detail::exact_single(param, o.n, k);
        row["sample_k"] = k;
        row["formula"] = to_string(a.formula);
        row["exact"] = ex.value();
        row["exact_log_abs"] = ex.log_abs;
        row["asym"] = a.value;
        row["asym_log_abs"] = a.log_value.log_abs;
        row["exact_provenance"] = prov;
        row["rel_err"] = ex.sign == a.log_value.sign ? std::fabs(std::expm1(a.log_value.log_abs - ex.log_abs))
                                                     : 1 + std::exp(a.log_value.log_abs - ex.log_abs);
      }
      rows.push_back(row);
      lo = hi + 1;
    }
    if (o.out == "json") {
      nlohmann::json j;
      j["lambda"] = param.to_string();
      j["n"] = o.n;
      j["thresholds"] = {{"alpha", t.alpha}, {"beta", t.beta}, {"omega", t.omega}};
      j["regions"] = rows;
      os << j.dump(2) << "\n";
      return;
    }
    os << "# region map lambda=" << param.to_string() << " n=" << o.n << " alpha=" << detail::g17(t.alpha)
       << " beta=" << detail::g17(t.beta) << " omega=" << detail::g17(t.omega) << "; exact by rational or Cauchy sum\n";
    os << "region,k_lo,k_hi,count,sample_k,exact,asym,rel_err,exact_log_abs,asym_log_abs,formula,behavior\n";
    for (const auto& r : rows) {
      auto num = [&](const char* key) { return r.contains(key) ? detail::g17(r[key].get<double>()) : std::string(); };
      auto txt = [&](const nlohmann::json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
      os << r["region"].get<std::string>() << "," << txt(r["k_lo"]) << "," << txt(r["k_hi"]) << "," << txt(r["count"])
         << "," << (r.contains("sample_k") ? txt(r["sample_k"]) : "") << "," << num("exact") << "," << num("asym") << ","
         << (r.contains("rel_err") ? detail::g6(r["rel_err"].get<double>()) : "") << "," << num("exact_log_abs") << ","
         << num("asym_log_abs") << "," << (r.contains("formula") ? r["formula"].get<std::string>() : "") << ",\""
         << r["behavior"].get<std::string>() << "\"\n";
    }
  }

  void run_norms(const Options& o, std::ostream& os) {
    const BlaschkeParam param = BlaschkeParam::parse(o.lambda);
    const auto ps = detail::parse_list(o.p_list);
    std::vector<std::int64_t> ns;
    for (double v : detail::parse_list(o.n_values)) {
      if (!(v >= 1) || v != std::floor(v)) throw config_error("n values must be positive integers");
      ns.push_back(static_cast<std::int64_t>(v));
    }
    std::vector<NormReport> reps;
    for (double p : ps) reps.push_back(exponent_fit(param.lambda(), p, ns));
    if (o.out == "json") {
      nlohmann::json j = nlohmann::json::array();
      for (const auto& r : reps) j.push_back(to_json(r));
      os << j.dump(2) << "\n";
      return;
    }
    os << "# l^p norms of coefficients by DFT, lambda=" << param.to_string() << "; p=4 fitted against n/log n\n";
    os << "p,n,norm,error_estimate,normalized,fitted_exponent,predicted_exponent\n";
    for (const auto& r : reps)
      for (std::size_t i = 0; i < r.n_values.size(); ++i)
        os << detail::p_text(r.p) << "," << r.n_values[i] << "," << detail::g17(r.norms[i]) << ","
           << detail::g6(r.errors[i]) << "," << detail::g17(r.normalized[i]) << "," << detail::g6(r.fitted_exponent)
           << "," << detail::g6(r.predicted_exponent) << "\n";
  }

  void run_annular(const Options& o, std::ostream& os) {
    if (!o.lambda.empty() && BlaschkeParam::parse(o.lambda).lambda() != 0.5)
      throw config_error("annular blocks are powers of b_{1/2}; --lambda must be 1/2 if given");
    if (o.mode == "lemma") {
      const Lemma1Report r = lemma1_verify(o.N);
      if (o.out == "json") {
        os << to_json(r).dump(2) << "\n";
        return;
      }
      os << "# block lemma for g_N = b_{1/2}^N, N=" << o.N << "\n";
      os << "p,lp,paired_min,u_p,lp_ratio,paired_ratio\n";
      for (const auto& q : r.ratios)
        os << detail::g17(q.p) << "," << detail::g17(q.lp) << "," << detail::g17(q.paired) << "," << detail::g17(q.u)
           << "," << detail::g17(q.lp_ratio()) << "," << detail::g17(q.paired_ratio()) << "\n";
      return;
    }
    const AnnularSpec spec{LpGap{o.p, o.q, o.r, o.A, o.levels}};
    const int checked = o.levels_checked < 0 ? o.levels : o.levels_checked;
    const AnnularReport r = annular_verify(spec, checked);
    if (o.out == "json") {
      os << to_json(r).dump(2) << "\n";
      return;
    }
    write_csv(os, r);
  }

  void run_duality(const Options& o, std::ostream& os) {
    const BlaschkeParam param = BlaschkeParam::parse(o.lambda);
    check_n(o);
    const auto ks = ks_of(o);
    if (o.out == "json") {
      nlohmann::json j = nlohmann::json::array();
      for (std::int64_t k : ks) j.push_back({{"k", k}, {"residual", duality_check(param, o.n, k)}});
      os << j.dump(2) << "\n";
      return;
    }
    os << "# dual integral residual lambda=" << param.to_string() << " n=" << o.n << "\n";
    os << "k,residual\n";
    for (std::int64_t k : ks) os << k << "," << detail::g6(duality_check(param, o.n, k)) << "\n";
  }
};

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return Runner(out, err).run(argc, argv);
}

}  // namespace blaschke::cli
