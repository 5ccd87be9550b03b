// Strongly annular functions assembled from shifted powers g_N = b_{1/2}^N:
// verification of the block lemma, construction, and circle-minimum checks.

#pragma once

#include "core.hpp"
#include "exact.hpp"
#include "fft.hpp"
#include "fit.hpp"
#include "norms.hpp"

#include <boost/math/tools/minima.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <ostream>
#include <variant>
#include <vector>

namespace blaschke {

// ---------------------------------------------------------------------------
// Circle extrema

struct CircleExtrema {
  double radius = 0;
  double min_modulus = 0;
  double argument = 0;  // angle of the minimizer
  double max_modulus = 0;
  std::int64_t samples = 0;
  double error_bound = 0;  // from coefficient errors and the truncation tail
};

namespace detail {

inline std::complex<double> horner(const std::vector<double>& c, std::size_t deg, std::complex<double> z) {
  std::complex<double> acc = 0;
  for (std::size_t k = deg + 1; k-- > 0;) acc = acc * z + c[k];
  return acc;
}

inline std::size_t effective_degree(const std::vector<double>& c) {
  std::size_t d = c.size();
  while (d > 0 && c[d - 1] == 0) --d;
  return d == 0 ? 0 : d - 1;
}

inline std::int64_t auto_circle_samples(std::size_t deg, double radius) {
  const double band = std::min(static_cast<double>(deg + 1), std::ceil(36 / (1 - radius)));
  std::int64_t s = 1 << 14;
  while (static_cast<double>(s) < 8 * band && s < (std::int64_t{1} << 22)) s <<= 1;
  return s;
}

}  // namespace detail

/// Min and max of |sum c_k z^k| on |z| = radius: folded FFT samples, then Brent minimization
/// (Horner evaluation) within one sample step of the best sampled local minima.
/// tail_bound bounds sum_{k > cap} |c_k| for coefficients not stored in seq.
inline constexpr std::size_t refine_candidates = 64;

inline CircleExtrema circle_extrema(const CoeffSequence& seq, double radius, std::int64_t samples = 0,
                                    double tail_bound = 0, double tail_tol = 1e-8) {
  if (!(radius > 0 && radius <= 1)) throw domain_error("radius must lie in (0, 1]");
  const std::size_t deg = detail::effective_degree(seq.values);
  if (samples == 0) samples = detail::auto_circle_samples(deg, radius);
  if (samples < 8) throw config_error("need at least 8 circle samples");
  const std::size_t s = static_cast<std::size_t>(samples);
  std::vector<std::complex<double>> folded(s);
  double rk = 1, rsum = 0;
  for (std::size_t k = 0; k <= deg && k < seq.size(); ++k) {
    folded[k % s] += seq.values[k] * rk;
    rsum += rk;
    rk *= radius;
  }
  const auto vals = detail::fft<double>(folded, FFTW_BACKWARD);
  CircleExtrema out;
  out.radius = radius;
  out.samples = samples;
  std::vector<std::pair<double, std::size_t>> mags(s);
  for (std::size_t j = 0; j < s; ++j) {
    mags[j] = {std::abs(vals[j]), j};
    out.max_modulus = std::max(out.max_modulus, mags[j].first);
  }
  // local minima, best first
  std::vector<std::pair<double, std::size_t>> cand;
  for (std::size_t j = 0; j < s; ++j) {
    const double l = mags[(j + s - 1) % s].first, r = mags[(j + 1) % s].first;
    if (mags[j].first <= l && mags[j].first <= r) cand.push_back(mags[j]);
  }
  std::sort(cand.begin(), cand.end());
  if (cand.size() > refine_candidates) cand.resize(refine_candidates);
  const double step = 2 * pi / static_cast<double>(s);
  out.min_modulus = cand.front().first;
  out.argument = step * static_cast<double>(cand.front().second);
  for (const auto& [m, j] : cand) {
    const double theta = step * static_cast<double>(j);
    // offset from the sample point, so the tolerance is not relative to theta
    auto f = [&](double t) { return std::abs(detail::horner(seq.values, deg, std::polar(radius, theta + t))); };
    std::uintmax_t iters = 200;
    const auto [t, v] = boost::math::tools::brent_find_minima(f, -step, step, std::numeric_limits<double>::digits, iters);
    if (v < out.min_modulus) {
      out.min_modulus = v;
      out.argument = theta + t;
    }
  }
  out.argument = std::remainder(out.argument, 2 * pi);
  if (out.argument < 0) out.argument += 2 * pi;
  const double tail = tail_bound * rk;
  out.error_bound = seq.error_bound * rsum + tail;
  if (tail > tail_tol * out.min_modulus)
    throw numerical_refusal("circle_extrema: truncation tail " + std::to_string(tail) +
                            " exceeds tolerance relative to the minimum; raise degree_cap");
  return out;
}

inline double min_modulus_on_circle(const CoeffSequence& seq, double radius, std::int64_t samples = 0,
                                    double tail_bound = 0) {
  return circle_extrema(seq, radius, samples, tail_bound).min_modulus;
}

// ---------------------------------------------------------------------------
// Block lemma for g_N

struct NormRatio {
  double p = 2;
  double lp = 0, paired = 0, u = 0;
  double lp_ratio() const { return lp / u; }
  double paired_ratio() const { return paired / u; }
};

struct Lemma1Report {
  std::int64_t N = 0;
  double max_on_unit_circle = 0;           // (i)
  double min_on_inner_circle = 0;          // (ii), radius 1 - 1/N
  double min_closed_form = 0;              // ((1 - 2/N) / (1 + 1/N))^N
  double tail_delta = 0, tail_r2 = 0;      // (iii), fit over k in [4N, 8N]
  double sup_norm = 0;                     // (iv)
  double sup_times_root = 0;               // sup_norm N^{1/2}
  double sup_times_cube_root = 0;          // sup_norm N^{1/3}
  std::vector<NormRatio> ratios;           // (v)
  bool i_ok = false, ii_ok = false, iii_ok = false, iv_ok = false;
};

inline Lemma1Report lemma1_verify(std::int64_t N, const std::vector<double>& ps = {2, 3, 4, 6}) {
  if (N < 10) throw domain_error("lemma1_verify needs N >= 10");
  Lemma1Report r;
  r.N = N;
  const CoeffSequence seq = coeff_dft_auto(0.5, N);
  const double nn = static_cast<double>(N);
  r.max_on_unit_circle = circle_extrema(seq, 1.0).max_modulus;
  r.i_ok = std::fabs(r.max_on_unit_circle - 1) <= 1e-12;
  r.min_on_inner_circle = circle_extrema(seq, 1 - 1 / nn).min_modulus;
  r.min_closed_form = std::pow((1 - 2 / nn) / (1 + 1 / nn), nn);
  r.ii_ok = r.min_on_inner_circle >= std::exp(-4.0);
  std::vector<double> ks, logs;
  for (int i = 0; i <= 32; ++i) {
    const std::int64_t k = 4 * N + i * N / 8;
    ks.push_back(static_cast<double>(k));
    logs.push_back(coeff_saddle_circle(0.5, N, k, 1e-10).value.log_abs);
  }
  const LineFit f = fit_line(ks, logs);
  r.tail_delta = -f.slope;
  r.tail_r2 = f.r_squared;
  r.iii_ok = r.tail_delta > 0 && r.tail_r2 > 0.99;
  r.sup_norm = lp_norm(seq, infinity_p).value;
  r.sup_times_root = r.sup_norm * std::sqrt(nn);
  r.sup_times_cube_root = r.sup_norm * std::cbrt(nn);
  r.iv_ok = r.sup_times_root >= 0.1 && r.sup_times_root <= 10;
  for (double p : ps) r.ratios.push_back({p, lp_norm(seq, p).value, paired_min_norm(seq, p), u_p(nn, p)});
  return r;
}

inline nlohmann::json to_json(const Lemma1Report& r) {
  nlohmann::json j;
  j["N"] = r.N;
  j["i"] = {{"max_on_unit_circle", r.max_on_unit_circle}, {"ok", r.i_ok}};
  j["ii"] = {{"min_on_inner_circle", r.min_on_inner_circle}, {"closed_form", r.min_closed_form},
             {"bound", std::exp(-4.0)}, {"ok", r.ii_ok}};
  j["iii"] = {{"delta", r.tail_delta}, {"r_squared", r.tail_r2}, {"ok", r.iii_ok}};
  j["iv"] = {{"sup_norm", r.sup_norm}, {"sup_times_root_N", r.sup_times_root},
             {"sup_times_cube_root_N", r.sup_times_cube_root}, {"ok", r.iv_ok}};
  for (const auto& q : r.ratios)
    j["v"].push_back({{"p", q.p}, {"lp", q.lp}, {"paired_min", q.paired}, {"u_p", q.u},
                      {"lp_ratio", q.lp_ratio()}, {"paired_ratio", q.paired_ratio()}});
  return j;
}

// ---------------------------------------------------------------------------
// Construction

struct LpGap {
  double p = 2, q = 3, r = 2.5;
  std::int64_t A = 16;
  int levels = 4;
};

/// phi is given as a function of log x; it must be nondecreasing.
struct PhiGap {
  std::function<double(double)> phi_of_log;
  double A = 4;
  int levels = 3;
};

struct AnnularBlock {
  int level = 0;
  double log2_N = 0;  // block order N_k as a power of two (PhiGap N_k can exceed any integer type)
  std::int64_t N = 0;
  std::int64_t shift = 0;
  double weight = 0;
};

struct AnnularSpec {
  std::variant<LpGap, PhiGap> mode;

  /// A^{v_r} >= a0_threshold is checked for LpGap.
  void validate(double a0_threshold = 1.0) const {
    if (const auto* g = std::get_if<LpGap>(&mode)) {
      if (!(g->p >= 2 && g->p < g->q)) throw config_error("LpGap needs 2 <= p < q");
      if (!(g->r > g->p && g->r < g->q) || g->r == 4) throw config_error("LpGap needs r in (p, q) minus {4}");
      if (g->A < 2) throw config_error("LpGap needs A >= 2");
      if (g->levels < 0) throw config_error("levels must be >= 0");
      if (std::pow(static_cast<double>(g->A), v_r(g->r)) < a0_threshold) throw config_error("A^{v_r} below threshold");
    } else {
      const auto& h = std::get<PhiGap>(mode);
      if (!h.phi_of_log) throw config_error("PhiGap needs a phi function");
      if (!(h.A > 1)) throw config_error("PhiGap needs A > 1");
      if (h.levels < 0) throw config_error("levels must be >= 0");
    }
  }

  std::vector<AnnularBlock> blocks() const {
    validate();
    std::vector<AnnularBlock> out;
    if (const auto* g = std::get_if<LpGap>(&mode)) {
      const double v = v_r(g->r);
      std::int64_t N = 1;
      for (int k = 1; k <= g->levels; ++k) {
        if (N > (std::int64_t{1} << 40) / g->A) throw budget_exceeded("LpGap block order overflows");
        N *= g->A;
        out.push_back({k, std::log2(static_cast<double>(N)), N, N, std::pow(static_cast<double>(g->A), k * v)});
      }
      return out;
    }
    const auto& h = std::get<PhiGap>(mode);
    // N_k: smallest power of two with N_k >= A N_{k-1} and phi(N_k^{1/4}) >= A^{3k}
    double prev = 0;  // log2 N_{k-1}; N_0 = 1
    for (int k = 1; k <= h.levels; ++k) {
      const double target = 3 * k * std::log(h.A);
      auto ok = [&](double e) { return std::log(h.phi_of_log(e * std::log(2.0) / 4)) >= target; };
      double lo = k == 1 ? 0 : std::ceil(prev + std::log2(h.A)), e = lo;
      if (!ok(lo)) {
        // doubling then integer bisection on the exponent
        double step = 1;
        while (!ok(lo + step)) {
          step *= 2;
          if (lo + step > 1e15) throw budget_exceeded("PhiGap: no N_k below 2^(1e15) satisfies the growth condition");
        }
        double a = lo + step / 2, b = lo + step;
        if (step == 1) a = lo;
        while (b - a > 1) {
          const double mid = std::floor((a + b) / 2);
          (ok(mid) ? b : a) = mid;
        }
        e = b;
      }
      AnnularBlock b{k, e, 0, 0, std::pow(h.A, k)};
      if (e < 62) b.N = b.shift = std::int64_t{1} << static_cast<int>(e);
      out.push_back(b);
      prev = e;
    }
    return out;
  }
};

struct AnnularSequence {
  CoeffSequence seq;
  std::vector<AnnularBlock> blocks;
  std::int64_t degree_cap = 0;
  double tail_bound = 0;  // bound on the dropped coefficient mass beyond degree_cap
};

/// DFT length for a block: the default size, widened so small blocks resolve their exponential tail.
inline std::int64_t block_dft_size(std::int64_t N) {
  std::int64_t m = default_dft_size(0.5, N);
  while (m < 4 * N + 128) m <<= 1;
  return m;
}

inline std::int64_t default_degree_cap(const std::vector<AnnularBlock>& blocks) {
  if (blocks.empty()) return 0;
  const auto& b = blocks.back();
  return b.shift + block_dft_size(b.N) - 1;
}

/// Dense coefficients of sum_k weight_k g_{N_k}(z) z^{N_k}, truncated at degree_cap.
inline AnnularSequence build_annular(const AnnularSpec& spec, std::int64_t degree_cap = -1,
                                     std::int64_t max_degree = std::int64_t{1} << 25) {
  AnnularSequence out;
  out.blocks = spec.blocks();
  for (const auto& b : out.blocks)
    if (b.N == 0 || b.shift + 4 * b.N > max_degree)
      throw budget_exceeded("build_annular: block N = 2^" + std::to_string(b.log2_N) + " exceeds the degree budget");
  if (degree_cap < 0) degree_cap = default_degree_cap(out.blocks);
  if (!out.blocks.empty() && degree_cap < out.blocks.back().shift + 4 * out.blocks.back().N)
    throw config_error("degree_cap must be >= last shift + 4 N_last");
  if (degree_cap > max_degree) throw budget_exceeded("degree_cap exceeds the degree budget");
  out.degree_cap = degree_cap;
  out.seq.values.assign(static_cast<std::size_t>(degree_cap) + 1, 0.0);
  out.seq.lambda = 0.5;
  out.seq.lambda_text = "1/2";
  out.seq.provenance = Provenance::DftSampling;
  out.seq.precision = "binary64";
  for (const auto& b : out.blocks) {
    const CoeffSequence g = coeff_dft_auto(0.5, b.N, block_dft_size(b.N));
    const std::int64_t keep = std::min<std::int64_t>(static_cast<std::int64_t>(g.size()), degree_cap - b.shift + 1);
    for (std::int64_t j = 0; j < keep; ++j) out.seq.values[b.shift + j] += b.weight * g.values[j];
    double dropped = 0;
    for (std::size_t j = static_cast<std::size_t>(keep); j < g.size(); ++j) dropped += std::fabs(g.values[j]);
    out.tail_bound += b.weight * (dropped + g.error_bound);
    out.seq.error_bound += b.weight * g.error_bound;
    out.seq.n = std::max(out.seq.n, b.N);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Verification

struct CircleLevel {
  int level = 0;
  double radius = 0;
  double min_modulus = 0;
  double predicted_scale = 0;  // A^{k v_r} (LpGap) or A^k (PhiGap)
  double dominance_bound = 0;  // e^{-6} scale_k - sum_{s<k} scale_s - sum_{s>k} scale_s exp(-N_s/N_k)
  double ratio() const { return min_modulus / predicted_scale; }
};

struct AnnularReport {
  std::vector<CircleLevel> circles;
  std::vector<double> lq_increments, lq_partial;          // sum |f_n|^q over [N_l, N_{l+1})
  std::vector<double> paired_increments, paired_partial;  // paired-min sum |f_n|^p over the same windows
  double q = 3, p = 2;
  bool minima_increasing = false;
  double ratio_spread = 0;  // max / min of min_k / scale_k
  bool ratio_bracket_ok = false;
  bool lq_geometric = false;
  bool paired_growing = false;
};

inline AnnularReport annular_verify(const AnnularSpec& spec, int levels_checked, std::int64_t degree_cap = -1) {
  const AnnularSequence a = build_annular(spec, degree_cap);
  if (levels_checked > static_cast<int>(a.blocks.size())) throw config_error("levels_checked exceeds built levels");
  AnnularReport rep;
  if (const auto* g = std::get_if<LpGap>(&spec.mode)) {
    rep.p = g->p;
    rep.q = g->q;
  } else {
    rep.p = rep.q = 2;
  }
  for (int k = 1; k <= levels_checked; ++k) {
    const auto& b = a.blocks[k - 1];
    CircleLevel c;
    c.level = k;
    c.radius = 1 - 1 / static_cast<double>(b.N);
    c.min_modulus = circle_extrema(a.seq, c.radius, 0, a.tail_bound).min_modulus;
    c.predicted_scale = b.weight;
    c.dominance_bound = std::exp(-6.0) * b.weight;
    for (const auto& o : a.blocks) {
      if (o.level < k) c.dominance_bound -= o.weight;
      if (o.level > k) c.dominance_bound -= o.weight * std::exp(-static_cast<double>(o.N) / static_cast<double>(b.N));
    }
    rep.circles.push_back(c);
  }
  // level windows [N_l, N_{l+1}), the last one running to the end of the sequence
  for (std::size_t l = 0; l < a.blocks.size(); ++l) {
    const std::size_t lo = static_cast<std::size_t>(a.blocks[l].shift);
    const std::size_t hi = l + 1 < a.blocks.size() ? static_cast<std::size_t>(a.blocks[l + 1].shift) : a.seq.size();
    double sq = 0, sp = 0;
    for (std::size_t n = lo; n < hi; ++n) sq += std::pow(std::fabs(a.seq.values[n]), rep.q);
    for (std::size_t n = lo; n + 1 < hi; n += 2)
      sp += std::pow(std::min(std::fabs(a.seq.values[n]), std::fabs(a.seq.values[n + 1])), rep.p);
    rep.lq_increments.push_back(sq);
    rep.paired_increments.push_back(sp);
    rep.lq_partial.push_back(sq + (l ? rep.lq_partial.back() : 0));
    rep.paired_partial.push_back(sp + (l ? rep.paired_partial.back() : 0));
  }
  rep.minima_increasing = !rep.circles.empty();
  double lo = INFINITY, hi = 0;
  for (std::size_t i = 0; i < rep.circles.size(); ++i) {
    if (i && !(rep.circles[i].min_modulus > rep.circles[i - 1].min_modulus)) rep.minima_increasing = false;
    lo = std::min(lo, rep.circles[i].ratio());
    hi = std::max(hi, rep.circles[i].ratio());
  }
  rep.ratio_spread = rep.circles.empty() ? 0 : hi / lo;
  rep.ratio_bracket_ok = !rep.circles.empty() && rep.ratio_spread <= 10;
  rep.lq_geometric = rep.lq_increments.size() >= 2;
  rep.paired_growing = rep.paired_increments.size() >= 2;
  for (std::size_t i = 1; i < rep.lq_increments.size(); ++i) {
    if (!(rep.lq_increments[i] < 0.9 * rep.lq_increments[i - 1])) rep.lq_geometric = false;
    if (!(rep.paired_increments[i] > rep.paired_increments[i - 1])) rep.paired_growing = false;
  }
  return rep;
}

inline nlohmann::json to_json(const AnnularReport& r) {
  nlohmann::json j;
  for (const auto& c : r.circles)
    j["circle_minima"].push_back({{"level", c.level}, {"radius", c.radius}, {"min_modulus", c.min_modulus},
                                  {"predicted_scale", c.predicted_scale}, {"ratio", c.ratio()},
                                  {"dominance_bound", c.dominance_bound}});
  j["tail_norms"] = {{"q", r.q}, {"p", r.p}, {"lq_increments", r.lq_increments}, {"lq_partial", r.lq_partial},
                     {"paired_min_increments", r.paired_increments}, {"paired_min_partial", r.paired_partial}};
  j["verdicts"] = {{"minima_increasing", r.minima_increasing}, {"ratio_spread", r.ratio_spread},
                   {"ratio_bracket_ok", r.ratio_bracket_ok}, {"lq_increments_geometric", r.lq_geometric},
                   {"paired_min_increments_growing", r.paired_growing}};
  return j;
}

inline void write_csv(std::ostream& os, const AnnularReport& r) {
  os << "# annular circle minima; radius = 1 - 1/N_k\n";
  os << "k,radius,min_modulus,predicted_scale\n";
  char buf[160];
  for (const auto& c : r.circles) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g\n", c.level, c.radius, c.min_modulus, c.predicted_scale);
    os << buf;
  }
}

}  // namespace blaschke
