#include "commands.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <complex>
#include <random>
#include <sstream>
#include <stdexcept>

#include "digitseq/analytic.hpp"
#include "digitseq/carry.hpp"
#include "digitseq/function_spec.hpp"
#include "digitseq/normality.hpp"
#include "digitseq/seqgen.hpp"
#include "digitseq/transfer.hpp"
#include "digitseq/witness.hpp"

namespace digitseq::cli {

using json = nlohmann::ordered_json;

namespace {

constexpr int kSchema = 1;

json envelope(std::string_view command) {
  json j;
  j["schema"] = kSchema;
  j["command"] = command;
  return j;
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

json complex_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

std::vector<std::uint64_t> parse_grid(const std::string& text) {
  std::vector<std::uint64_t> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto v = parse_u128(item);
    if (!v || *v == 0 || *v > (u128{1} << 40)) throw std::invalid_argument("bad grid value: " + item);
    grid.push_back(static_cast<std::uint64_t>(*v));
  }
  if (grid.empty()) throw std::invalid_argument("empty grid");
  return grid;
}

IndexVector parse_index(const std::string& text) {
  IndexVector v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(std::stoll(item));
  return v;
}

std::int64_t below(std::mt19937_64& rng, std::int64_t n) {
  return std::uniform_int_distribution<std::int64_t>(0, n - 1)(rng);
}

const IndexVector& pick(std::mt19937_64& rng, const std::vector<IndexVector>& v) {
  return v[static_cast<std::size_t>(below(rng, static_cast<std::int64_t>(v.size())))];
}

json condition_json(const ConditionReport& r) {
  return {{"window", r.window},           {"c0", r.c0},
          {"eta", r.eta},                 {"holds", r.holds},
          {"worst_margin", r.worst_margin}, {"worst_h", r.worst_h},
          {"worst_start", r.worst_start}, {"rows_checked", r.rows_checked},
          {"violations", r.violations}};
}

json witness_json(const WitnessRecord& w) {
  json parts = json::array();
  for (const auto& c : w.partition) {
    parts.push_back({{"c", c.c}, {"c_plus", c.c_plus}, {"members", c.members}, {"beta", c.beta_num}});
  }
  return {{"I", to_string(w.I)},
          {"delta", w.delta},
          {"x0", w.x0},
          {"c0", w.c0},
          {"c0_plus", w.c0_plus},
          {"e1", w.e.e1},
          {"e2", w.e.e2},
          {"eps1", w.eps1},
          {"eps2", w.eps2},
          {"m1_prime", w.m1_prime},
          {"xi1", w.xi1},
          {"xi2", w.xi2},
          {"collisions_hold", w.collisions_hold},
          {"phases_separated", w.phases_separated},
          {"eta_prime", w.eta_prime},
          {"grid_max", w.grid_max},
          {"exact_max", w.exact_max},
          {"disjoint", w.disjoint},
          {"candidates_tried", w.candidates_tried},
          {"verified", w.verified()},
          {"partition", parts}};
}

json bound_json(const BoundCheck& c) {
  return {{"value", complex_json(c.value)},
          {"abs", c.abs},
          {"bound", c.bound},
          {"margin", c.margin()},
          {"constant", c.bound > 0 ? c.abs / c.bound : 0.0}};
}

}  // namespace

DigitalFunction Source::function() const {
  if (!preset.empty() && !spec_file.empty()) throw std::invalid_argument("give either --preset or --spec-file");
  if (!spec_file.empty()) return load_function_spec(spec_file);
  if (!preset.empty()) return digitseq::preset(preset);
  throw std::invalid_argument("a function source (--preset or --spec-file) is required");
}

void run_generate(const Source& src, const GenerateArgs& a, std::ostream& out) {
  const DigitalFunction f = src.function();
  const IndexMap map = IndexMap::parse(src.map);
  const auto start = parse_u128(a.start);
  if (!start) throw std::invalid_argument("bad --start");
  const auto symbols = stream_parallel(f, map, *start, a.count, src.threads);
  if (a.format == "csv") {
    out << "t,symbol\n";
    u128 t = *start;
    for (const auto s : symbols) out << to_string(t++) << ',' << static_cast<int>(s) << '\n';
    return;
  }
  if (a.format != "raw") throw std::invalid_argument("--format must be raw or csv");
  std::string line;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    line.push_back(static_cast<char>('0' + symbols[i]));
    if (line.size() == 64 || i + 1 == symbols.size()) {
      out << line << '\n';
      line.clear();
    }
  }
}

void run_stats(const Source& src, const StatsArgs& a, std::ostream& out) {
  const DigitalFunction f = src.function();
  const IndexMap map = IndexMap::parse(src.map);
  const auto symbols = stream_parallel(f, map, 0, a.N, src.threads);
  bool ok = true;
  json rows = json::array();
  for (int k = 1; k <= a.k; ++k) {
    const auto h = block_histogram(symbols, k, f.modulus());
    const auto st = normality_deviation(h, f.modulus());
    if (a.tolerance && (st.max_deviation > *a.tolerance || st.missing_blocks > 0)) ok = false;
    rows.push_back({{"k", k},
                    {"max_deviation", st.max_deviation},
                    {"chi_square", st.chi_square},
                    {"missing_blocks", st.missing_blocks},
                    {"distinct", h.distinct()}});
  }
  const auto complexity =
      a.complexity > 0 ? subword_complexity(symbols, a.complexity) : std::vector<std::uint64_t>{};
  if (a.report == "csv") {
    out << "k,max_deviation,chi_square,missing_blocks,distinct\n";
    for (const auto& r : rows) {
      out << r["k"] << ',' << r["max_deviation"] << ',' << r["chi_square"] << ','
          << r["missing_blocks"] << ',' << r["distinct"] << '\n';
    }
    if (!complexity.empty()) {
      out << "n,complexity\n";
      for (std::size_t n = 0; n < complexity.size(); ++n) out << n + 1 << ',' << complexity[n] << '\n';
    }
  } else if (a.report == "json") {
    json j = envelope("stats");
    j["inputs"] = {{"map", map.describe()}, {"N", a.N}, {"k", a.k}, {"modulus", f.modulus()}};
    j["blocks"] = rows;
    if (!complexity.empty()) j["complexity"] = complexity;
    if (a.tolerance) {
      j["tolerance"] = *a.tolerance;
      j["passed"] = ok;
    }
    emit(out, j);
  } else {
    throw std::invalid_argument("--report must be csv or json");
  }
  if (!ok) throw CheckFailed{"block frequencies outside tolerance"};
}

void run_expsum(const Source& src, const ExpsumArgs& a, std::ostream& out) {
  const DigitalFunction f = src.function();
  const AlphaVector alpha = AlphaVector::parse(a.alpha, f.modulus());
  const auto grid = parse_grid(a.grid);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (grid[i] <= grid[i - 1]) throw std::invalid_argument("--grid must be increasing");
  }
  const DecayFit fit = decay_exponent(f, alpha, grid);
  if (a.report == "csv") {
    out << "N,re,im,abs,log_ratio\n";
    for (const auto& e : fit.table) {
      const double absval = std::abs(e.value);
      const double ratio = std::log(std::max(1.0, absval)) / std::log(static_cast<double>(e.n));
      out << e.n << ',' << e.value.real() << ',' << e.value.imag() << ',' << absval << ',' << ratio
          << '\n';
    }
    return;
  }
  if (a.report != "json") throw std::invalid_argument("--report must be csv or json");
  json j = envelope("expsum");
  j["inputs"] = {{"alpha", alpha.describe()}, {"grid", grid}};
  json rows = json::array();
  for (const auto& e : fit.table) {
    rows.push_back({{"N", e.n}, {"value", complex_json(e.value)}, {"abs", std::abs(e.value)}});
  }
  j["rows"] = rows;
  j["slope"] = fit.slope;
  j["intercept"] = fit.intercept;
  emit(out, j);
}

void run_fourier(const Source& src, const FourierArgs& a, std::ostream& out) {
  const DigitalFunction f = src.function();
  const FourierContext ctx(f, AlphaVector::parse(a.alpha, f.modulus()));
  const int q = ctx.base();
  const int m = ctx.window();
  const std::int64_t Q1 = pow64(q, m - 1);
  std::mt19937_64 rng(src.seed);
  if (a.lambda < 0 || a.samples < 1) throw std::invalid_argument("need --lambda >= 0 and --samples >= 1");

  json j = envelope("fourier");
  j["inputs"] = {{"alpha", ctx.alpha().describe()}, {"lambda", a.lambda}, {"check", a.check},
                 {"samples", a.samples}, {"seed", src.seed}};
  bool ok = true;

  if (a.check == "parseval") {
    double worst = 0.0;
    for (int s = 0; s < a.samples; ++s) {
      const auto& I = pick(rng, ctx.space().elements());
      const std::int64_t d = below(rng, pow64(q, a.lambda + 1));
      worst = std::max(worst, parseval_residual(ctx, I, a.lambda, d));
    }
    ok = worst <= 1e-9;
    j["worst_residual"] = worst;
  } else if (a.check == "recursion") {
    if (a.lambda < 1) throw std::invalid_argument("recursion check needs --lambda >= 1");
    double worst_h = 0.0, worst_g = 0.0;
    for (int s = 0; s < a.samples; ++s) {
      const int lam = 1 + static_cast<int>(below(rng, a.lambda));
      const std::int64_t h = below(rng, pow64(q, lam + m - 1));
      const std::int64_t d = below(rng, pow64(q, lam));
      const auto& Ip = pick(rng, ctx.space().primed());
      worst_h = std::max(worst_h, h_recursion_residual(ctx, Ip, lam, h, d, below(rng, Q1)));
      const auto& I = pick(rng, ctx.space().elements());
      const int jj = 1 + static_cast<int>(below(rng, lam));
      worst_g = std::max(worst_g, g_recursion_residual(ctx, I, lam, jj, h, d, below(rng, pow64(q, jj))));
    }
    ok = worst_h <= 1e-9 && worst_g <= 1e-9;
    j["worst_H_residual"] = worst_h;
    j["worst_G_residual"] = worst_g;
  } else if (a.check == "cond1" || a.check == "cond2") {
    const auto hs = stratified_samples(pow64(q, a.lambda), a.samples, src.seed);
    const auto r = a.check == "cond1" ? check_condition1(ctx, hs, a.lambda)
                                      : check_condition2(ctx, hs, a.lambda);
    ok = r.holds;
    j["report"] = condition_json(r);
  } else if (a.check == "prop1") {
    const IndexVector I = a.index.empty() ? ctx.space().primed().front() : parse_index(a.index);
    std::vector<int> lambdas;
    for (int l = 1; l <= a.lambda; ++l) lambdas.push_back(l);
    const auto p = prop1_decay_profile(ctx, I, a.h, lambdas);
    json rows = json::array();
    double worst_route = 0.0;
    for (const auto& r : p.rows) {
      const double via_matrix = prop1_value_matrix(ctx, I, a.h, r.lambda, r.lambda_prime);
      worst_route = std::max(worst_route, std::abs(via_matrix - r.value));
      rows.push_back({{"lambda", r.lambda}, {"lambda_prime", r.lambda_prime}, {"value", r.value},
                      {"matrix_route", via_matrix}});
    }
    ok = worst_route <= 1e-9;
    j["I"] = to_string(I);
    j["rows"] = rows;
    j["strictly_decreasing"] = p.strictly_decreasing;
    j["log_slope"] = p.log_slope;
    j["route_disagreement"] = worst_route;
  } else if (a.check == "prop2") {
    const IndexVector I = a.index.empty() ? ctx.space().primed().front() : parse_index(a.index);
    std::vector<int> Ls;
    for (int L = 0; L <= a.lambda; ++L) Ls.push_back(L);
    const auto r = prop2_decay_check(ctx, I, a.lambda, a.h, a.d, Ls, a.limit);
    json rows = json::array();
    for (const auto& row : r.rows) {
      rows.push_back({{"L", row.L}, {"abs_H", row.abs_H}, {"max_G", row.max_G}, {"rate", row.rate},
                      {"constant", row.constant}});
    }
    ok = r.within_limit;
    j["I"] = to_string(I);
    j["eta"] = r.eta;
    j["m1"] = r.m1;
    j["rows"] = rows;
    j["max_constant"] = r.max_constant;
    j["limit"] = a.limit;
  } else if (a.check == "witness") {
    const int m1 = saving_length(m, ctx.length());
    json records = json::array();
    int failures = 0;
    for (int s = 0; s < a.samples; ++s) {
      const auto& I = pick(rng, ctx.space().elements());
      const std::int64_t delta = below(rng, pow64(q, m1));
      const auto w = find_saving_witness(ctx, I, delta);
      const bool good = w.verified() && verify_witness(ctx, w);
      if (!good) ++failures;
      records.push_back(witness_json(w));
    }
    ok = failures == 0;
    j["failures"] = failures;
    j["records"] = records;
  } else {
    throw std::invalid_argument("unknown --check " + a.check);
  }
  j["passed"] = ok;
  emit(out, j);
  if (!ok) throw CheckFailed{"fourier check " + a.check + " failed"};
}

void run_toolbox(const std::string& tool, const Source& src, const ToolboxArgs& a,
                 std::ostream& out) {
  json j = envelope("toolbox " + tool);
  bool ok = true;
  if (tool == "gauss") {
    BoundCheck c;
    if (a.N) {
      c = incomplete_gauss_sum(a.a, a.b, a.m, a.n0.value_or(0), *a.N);
      j["inputs"] = {{"a", a.a}, {"b", a.b}, {"m", a.m}, {"n0", a.n0.value_or(0)}, {"N", *a.N}};
    } else {
      c = gauss_sum(a.a, a.b, a.m);
      j["inputs"] = {{"a", a.a}, {"b", a.b}, {"m", a.m}};
    }
    j.update(bound_json(c));
    ok = c.holds();
  } else if (tool == "vaaler") {
    const auto p = vaaler_build(a.alpha, a.H);
    const auto r = vaaler_check(p, a.grid);
    json coeffs = json::array();
    for (int h = -p.H; h <= p.H; ++h) {
      coeffs.push_back({{"h", h}, {"a", complex_json(p.a_coeff(h))}, {"b", complex_json(p.b_coeff(h))}});
    }
    j["inputs"] = {{"alpha", a.alpha}, {"H", a.H}, {"grid", a.grid}};
    j["value"] = r.worst_gap;
    j["bound"] = 0.0;
    j["margin"] = -r.worst_gap;
    j["constant"] = nullptr;
    j["a0_exact"] = r.a0_exact;
    j["worst_a_excess"] = r.worst_a_excess;
    j["worst_b_excess"] = r.worst_b_excess;
    j["max_imag_B"] = r.max_imag_B;
    j["coefficients"] = coeffs;
    ok = r.holds();
  } else if (tool == "vdc") {
    std::mt19937_64 rng(src.seed);
    std::normal_distribution<double> g;
    std::vector<std::complex<double>> z(static_cast<std::size_t>(a.length));
    for (auto& v : z) v = {g(rng), g(rng)};
    const auto c = van_der_corput_check(z, a.Q, a.R);
    j["inputs"] = {{"N", a.length}, {"Q", a.Q}, {"R", a.R}, {"seed", src.seed}};
    j["value"] = c.lhs;
    j["bound"] = c.rhs;
    j["margin"] = c.rhs - c.lhs;
    j["constant"] = c.rhs > 0 ? c.lhs / c.rhs : 0.0;
    ok = c.holds();
  } else if (tool == "carry") {
    const DigitalFunction f = src.function();
    if (a.mu > 0) {
      const CarryDecompositionParams p{a.lambda, a.mu, a.nu, a.rho_prime, a.ell, a.s, a.r};
      const auto r = carry_decomposition_check(f, p);
      j["inputs"] = {{"nu", a.nu}, {"lambda", a.lambda}, {"mu", a.mu}, {"rho_prime", a.rho_prime},
                     {"ell", a.ell}, {"s", a.s}, {"r", a.r}};
      j["value"] = r.count;
      j["bound"] = r.scale;
      j["margin"] = r.scale - static_cast<double>(r.count);
      j["constant"] = r.constant;
      j["identity_failures"] = r.identity_failures;
    } else {
      const auto e = carry_exception_count(f, a.nu, a.lambda, a.rho, a.r);
      j["inputs"] = {{"nu", a.nu}, {"lambda", a.lambda}, {"rho", a.rho}, {"r", a.r}};
      j["value"] = e.count;
      j["bound"] = e.scale;
      j["margin"] = e.scale - static_cast<double>(e.count);
      j["constant"] = e.constant;
      j["b_count"] = e.b_count;
      j["b_constant"] = e.b_constant;
    }
  } else if (tool == "sinsum") {
    const auto r = sinus_sum_checks(a.a, a.m, a.shift, a.U, a.A);
    j["inputs"] = {{"a", a.a}, {"m", a.m}, {"b", a.shift}, {"U", a.U}, {"A", a.A}};
    j["value"] = r.lhs;
    j["bound"] = r.rhs;
    j["margin"] = r.rhs - r.lhs;
    j["constant"] = r.constant;
    j["double_sum"] = r.double_sum;
    j["shape"] = r.shape;
    j["tau"] = r.tau_m;
    j["omega"] = r.omega_m;
    ok = r.holds();
  } else {
    throw std::invalid_argument("unknown toolbox " + tool);
  }
  j["passed"] = ok;
  emit(out, j);
  if (!ok) throw CheckFailed{"toolbox " + tool + " bound violated"};
}

void run_bench(const Source& src, const BenchArgs& a, std::ostream& out) {
  const DigitalFunction f = src.function();
  const IndexMap map = IndexMap::parse(src.map);
  const auto t0 = std::chrono::steady_clock::now();
  const auto symbols = stream_parallel(f, map, 0, a.count, src.threads);
  const auto t1 = std::chrono::steady_clock::now();
  std::uint64_t ones = 0;
  for (const auto s : symbols) ones += s != 0;
  json j = envelope("bench");
  j["inputs"] = {{"map", map.describe()}, {"count", a.count}, {"threads", src.threads}};
  j["nonzero_symbols"] = ones;
  if (a.timing) j["seconds"] = std::chrono::duration<double>(t1 - t0).count();
  emit(out, j);
}

}  // namespace digitseq::cli
