#include "digitseq/transfer.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <numbers>
#include <random>
#include <stdexcept>

#include "digitseq/errors.hpp"
#include "digitseq/integer.hpp"

namespace digitseq {

namespace {

// For fixed (j, delta): target position and v-phase of every (I, eps).
struct StepTable {
  std::size_t n = 0;       // |I_k|
  std::int64_t width = 0;  // q^j
  std::vector<std::uint32_t> col;
  std::vector<std::uint16_t> phase;

  std::size_t at(std::size_t a, std::int64_t eps) const {
    return a * static_cast<std::size_t>(width) + static_cast<std::size_t>(eps);
  }
};

StepTable step_table(const FourierContext& ctx, int j, std::int64_t delta) {
  const IndexSpace& space = ctx.space();
  StepTable t;
  t.n = space.size();
  t.width = pow64(ctx.base(), j);
  t.col.resize(t.n * static_cast<std::size_t>(t.width));
  t.phase.resize(t.col.size());
  IndexVector T;
  for (std::size_t a = 0; a < t.n; ++a) {
    for (std::int64_t eps = 0; eps < t.width; ++eps) {
      transform_T_into(space[a], eps, delta, j, ctx.base(), ctx.step(), T);
      t.col[t.at(a, eps)] = static_cast<std::uint32_t>(index_position(T, ctx.step()));
      t.phase[t.at(a, eps)] = static_cast<std::uint16_t>(ctx.v_phase(space[a], eps, delta, j));
    }
  }
  return t;
}

bool k_integral(const FourierContext& ctx) { return ctx.alpha().k_integral(); }

}  // namespace

TransferMatrix build_transfer_matrix(const FourierContext& ctx, ExactPhase beta) {
  if (beta.den < 1) throw std::invalid_argument("phase denominator must be >= 1");
  const int q = ctx.base();
  const std::size_t n = ctx.space().size();
  const std::size_t pairs = n * n;
  TransferMatrix out;
  out.values = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(pairs), static_cast<Eigen::Index>(pairs));
  out.path_counts = CountMatrix::Zero(static_cast<Eigen::Index>(pairs), static_cast<Eigen::Index>(pairs));

  std::vector<StepTable> tables;
  for (int delta = 0; delta < q; ++delta) tables.push_back(step_table(ctx, 1, delta));
  // e(-(e1 - e2) beta) for e1 - e2 in (-q, q).
  std::vector<cplx> shift(static_cast<std::size_t>(2 * q - 1));
  for (int diff = -(q - 1); diff <= q - 1; ++diff) {
    shift[static_cast<std::size_t>(diff + q - 1)] =
        unit_root(-static_cast<std::int64_t>(mod_floor(static_cast<i128>(diff) * beta.num, static_cast<i128>(beta.den))), beta.den);
  }
  const double scale = 1.0 / static_cast<double>(q * q * q);
  const int mod = ctx.modulus();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const auto row = static_cast<Eigen::Index>(a * n + b);
      for (int delta = 0; delta < q; ++delta) {
        const StepTable& t = tables[static_cast<std::size_t>(delta)];
        for (int e1 = 0; e1 < q; ++e1) {
          for (int e2 = 0; e2 < q; ++e2) {
            const std::size_t i1 = t.at(a, e1);
            const std::size_t i2 = t.at(b, e2);
            const auto col = static_cast<Eigen::Index>(t.col[i1] * n + t.col[i2]);
            const cplx w = unit_root(static_cast<std::int64_t>(t.phase[i1]) - t.phase[i2], mod) *
                           shift[static_cast<std::size_t>(e1 - e2 + q - 1)];
            out.values(row, col) += scale * w;
            out.path_counts(row, col) += 1;
          }
        }
      }
    }
  }
  return out;
}

Eigen::VectorXd absolute_row_sums(const Eigen::MatrixXcd& m) {
  return m.cwiseAbs().rowwise().sum();
}

CountMatrix path_counts_direct(const FourierContext& ctx, int j) {
  const std::size_t n = ctx.space().size();
  const auto pairs = static_cast<Eigen::Index>(n * n);
  CountMatrix counts = CountMatrix::Zero(pairs, pairs);
  const std::int64_t width = pow64(ctx.base(), j);
  for (std::int64_t delta = 0; delta < width; ++delta) {
    const StepTable t = step_table(ctx, j, delta);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        const auto row = static_cast<Eigen::Index>(a * n + b);
        for (std::int64_t e1 = 0; e1 < width; ++e1) {
          const std::size_t c1 = t.col[t.at(a, e1)];
          for (std::int64_t e2 = 0; e2 < width; ++e2) {
            counts(row, static_cast<Eigen::Index>(c1 * n + t.col[t.at(b, e2)])) += 1;
          }
        }
      }
    }
  }
  return counts;
}

CountMatrix path_counts_power(const FourierContext& ctx, int j) {
  const CountMatrix one = build_transfer_matrix(ctx, {0, 1}).path_counts;
  CountMatrix acc = CountMatrix::Identity(one.rows(), one.cols());
  for (int i = 0; i < j; ++i) acc = acc * one;
  return acc;
}

Eigen::VectorXcd phi_matrix_route(const FourierContext& ctx, int lambda, int lambda_prime,
                                  std::int64_t h) {
  if (lambda_prime < 0 || lambda_prime > lambda) throw std::invalid_argument("need 0 <= lambda' <= lambda");
  const IndexSpace& space = ctx.space();
  const std::size_t n = space.size();
  std::vector<cplx> g(n);
  for (std::size_t a = 0; a < n; ++a) g[a] = fourier_G(ctx, space[a], lambda - lambda_prime, h, 0);
  Eigen::VectorXcd psi(static_cast<Eigen::Index>(n * n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) psi(static_cast<Eigen::Index>(a * n + b)) = g[a] * std::conj(g[b]);
  }
  for (int s = lambda - lambda_prime + 1; s <= lambda; ++s) {
    psi = build_transfer_matrix(ctx, {h, pow64(ctx.base(), s)}).values * psi;
  }
  return psi;
}

int ceil_log(int q, std::int64_t n) {
  int t = 0;
  std::int64_t p = 1;
  while (p < n) {
    p *= q;
    ++t;
  }
  return t;
}

int floor_log(int q, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("floor_log needs n >= 1");
  int t = 0;
  std::int64_t p = q;
  while (p <= n) {
    p *= q;
    ++t;
  }
  return t;
}

int condition1_length(int q, int m, int k) { return m - 1 + ceil_log(q, k + 1); }
int condition2_length(int q, int m, int k) { return floor_log(q, k) + 4 * m - 1; }

std::vector<std::int64_t> stratified_samples(std::int64_t range, std::int64_t count,
                                             std::uint64_t seed) {
  std::vector<std::int64_t> out;
  if (range <= count) {
    for (std::int64_t h = 0; h < range; ++h) out.push_back(h);
    return out;
  }
  std::mt19937_64 rng(seed);
  for (std::int64_t i = 0; i < count; ++i) {
    const auto lo = static_cast<std::int64_t>(static_cast<i128>(i) * range / count);
    const auto hi = static_cast<std::int64_t>(static_cast<i128>(i + 1) * range / count);
    out.push_back(lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo)));
  }
  return out;
}

namespace {

void require_nonzero_alpha(const FourierContext& ctx) {
  if (ctx.alpha().is_zero()) throw std::invalid_argument("alpha must not be the zero vector");
}

std::vector<Eigen::MatrixXcd> chain(const FourierContext& ctx, std::int64_t h, int lambda) {
  // chain[l] = M(h / q^l), l = 1..lambda.
  std::vector<Eigen::MatrixXcd> out(static_cast<std::size_t>(lambda + 1));
  for (int l = 1; l <= lambda; ++l) {
    out[static_cast<std::size_t>(l)] = build_transfer_matrix(ctx, {h, pow64(ctx.base(), l)}).values;
  }
  return out;
}

}  // namespace

ConditionReport check_condition1(const FourierContext& ctx, std::span<const std::int64_t> h_samples,
                                 int lambda) {
  require_nonzero_alpha(ctx);
  const int q = ctx.base();
  ConditionReport r;
  r.window = condition1_length(q, ctx.window(), ctx.length());
  r.eta = std::pow(static_cast<double>(q), -3.0 * r.window);
  r.c0 = r.eta / 2.0;
  r.worst_margin = std::numeric_limits<double>::infinity();
  if (lambda < r.window) throw std::invalid_argument("lambda is shorter than the condition window");
  for (std::int64_t h : h_samples) {
    const auto mats = chain(ctx, h, lambda);
    for (int start = lambda; start >= r.window; --start) {
      Eigen::MatrixXcd A = mats[static_cast<std::size_t>(start)];
      for (int s = start - 1; s > start - r.window; --s) A = A * mats[static_cast<std::size_t>(s)];
      const Eigen::VectorXd sums = absolute_row_sums(A);
      for (Eigen::Index row = 0; row < A.rows(); ++row) {
        const double margin = std::max(std::abs(A(row, 0)) - r.c0, (1.0 - r.eta) - sums(row));
        ++r.rows_checked;
        if (margin < 0) {
          ++r.violations;
          r.holds = false;
        }
        if (margin < r.worst_margin) {
          r.worst_margin = margin;
          r.worst_h = h;
          r.worst_start = start;
        }
      }
    }
  }
  return r;
}

ConditionReport check_condition2(const FourierContext& ctx, std::span<const std::int64_t> h_samples,
                                 int lambda) {
  require_nonzero_alpha(ctx);
  if (!k_integral(ctx)) throw WrongBranch("condition (2) applies when K is an integer; K = " +
                                          std::to_string(ctx.alpha().k_numerator()) + "/" +
                                          std::to_string(ctx.modulus()));
  const int q = ctx.base();
  ConditionReport r;
  r.window = condition2_length(q, ctx.window(), ctx.length());
  const double s = std::sin(std::numbers::pi / (2.0 * ctx.modulus()));
  r.eta = 4.0 * s * s * std::pow(static_cast<double>(q), -3.0 * r.window);
  r.worst_margin = std::numeric_limits<double>::infinity();
  if (lambda < r.window) throw std::invalid_argument("lambda is shorter than the condition window");
  for (std::int64_t h : h_samples) {
    const auto mats = chain(ctx, h, lambda);
    for (int start = lambda; start >= r.window; --start) {
      Eigen::RowVectorXcd row = mats[static_cast<std::size_t>(start)].row(0);
      for (int t = start - 1; t > start - r.window; --t) row = row * mats[static_cast<std::size_t>(t)];
      const double margin = (1.0 - r.eta) - row.cwiseAbs().sum();
      ++r.rows_checked;
      if (margin < 0) {
        ++r.violations;
        r.holds = false;
      }
      if (margin < r.worst_margin) {
        r.worst_margin = margin;
        r.worst_h = h;
        r.worst_start = start;
      }
    }
  }
  return r;
}

double prop1_value_direct(const FourierContext& ctx, const IndexVector& I, std::int64_t h,
                          int lambda, int lambda_prime) {
  const std::int64_t D = pow64(ctx.base(), lambda_prime);
  double acc = 0.0;
  for (std::int64_t d = 0; d < D; ++d) acc += std::norm(fourier_H(ctx, I, lambda, h, d));
  return acc / static_cast<double>(D);
}

double prop1_value_matrix(const FourierContext& ctx, const IndexVector& I, std::int64_t h,
                          int lambda, int lambda_prime) {
  if (!ctx.space().contains_primed(I)) throw std::invalid_argument("I must be start-normalized");
  const int inner = lambda_prime - (ctx.window() - 1);
  if (inner < 0) throw std::invalid_argument("lambda' must be at least m - 1 for the matrix route");
  const Eigen::VectorXcd psi = phi_matrix_route(ctx, lambda, inner, h);
  const std::size_t n = ctx.space().size();
  const std::int64_t Q = ctx.step();
  const std::int64_t P = pow64(ctx.base(), lambda + ctx.window() - 1);
  ComplexSum acc;
  IndexVector J(I.size());
  std::vector<std::size_t> pos(static_cast<std::size_t>(Q));
  for (std::int64_t delta = 0; delta < Q; ++delta) {
    for (std::int64_t eps = 0; eps < Q; ++eps) {
      for (std::size_t l = 0; l < I.size(); ++l) J[l] = I[l] + static_cast<std::int64_t>(l) * delta + eps;
      pos[static_cast<std::size_t>(eps)] = ctx.space().index_of(J);
    }
    for (std::int64_t e1 = 0; e1 < Q; ++e1) {
      for (std::int64_t e2 = 0; e2 < Q; ++e2) {
        const cplx w = unit_root(-static_cast<std::int64_t>(mod_floor(static_cast<i128>(h) * (e1 - e2), static_cast<i128>(P))), P);
        acc.add(w * psi(static_cast<Eigen::Index>(pos[static_cast<std::size_t>(e1)] * n + pos[static_cast<std::size_t>(e2)])));
      }
    }
  }
  return acc.value().real() / static_cast<double>(Q * Q * Q);
}

Prop1Profile prop1_decay_profile(const FourierContext& ctx, const IndexVector& I, std::int64_t h,
                                 std::span<const int> lambdas) {
  if (!k_integral(ctx)) throw WrongBranch("the averaged decay profile applies when K is an integer");
  Prop1Profile p;
  for (int lambda : lambdas) {
    const int lp = (lambda + 1) / 2;
    p.rows.push_back({lambda, lp, prop1_value_direct(ctx, I, h, lambda, lp)});
  }
  p.strictly_decreasing = p.rows.size() >= 2;
  for (std::size_t i = 1; i < p.rows.size(); ++i) {
    if (!(p.rows[i].value < p.rows[i - 1].value)) p.strictly_decreasing = false;
  }
  if (p.rows.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double logq = std::log(static_cast<double>(ctx.base()));
    for (const auto& row : p.rows) {
      const double x = row.lambda;
      const double y = std::log(std::max(row.value, 1e-300)) / logq;
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const auto n = static_cast<double>(p.rows.size());
    p.log_slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }
  return p;
}

Eigen::MatrixXcd small_matrix_M(const FourierContext& ctx, int j, std::int64_t delta, cplx z) {
  const StepTable t = step_table(ctx, j, delta);
  const auto n = static_cast<Eigen::Index>(t.n);
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t a = 0; a < t.n; ++a) {
    cplx zp = 1.0;
    for (std::int64_t eps = 0; eps < t.width; ++eps) {
      M(static_cast<Eigen::Index>(a), t.col[t.at(a, eps)]) += unit_root(t.phase[t.at(a, eps)], ctx.modulus()) * zp;
      zp *= z;
    }
  }
  return M;
}

Eigen::MatrixXcd small_matrix_M_root(const FourierContext& ctx, int j, std::int64_t delta,
                                     std::int64_t z_num, std::int64_t z_den) {
  const StepTable t = step_table(ctx, j, delta);
  const auto n = static_cast<Eigen::Index>(t.n);
  const std::int64_t mod = ctx.modulus();
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t a = 0; a < t.n; ++a) {
    for (std::int64_t eps = 0; eps < t.width; ++eps) {
      // e(phase/m' + eps z_num/z_den) over the common denominator m' z_den.
      const i128 num = static_cast<i128>(t.phase[t.at(a, eps)]) * z_den +
                       static_cast<i128>(mod) * mod_floor(static_cast<i128>(eps) * z_num, static_cast<i128>(z_den));
      M(static_cast<Eigen::Index>(a), t.col[t.at(a, eps)]) +=
          unit_root(static_cast<std::int64_t>(mod_floor(num, static_cast<i128>(mod * z_den))), mod * z_den);
    }
  }
  return M;
}

double max_row_norm(const Eigen::MatrixXcd& m) {
  return m.rows() == 0 ? 0.0 : absolute_row_sums(m).maxCoeff();
}

int saving_length(int m, int k) { return (4 * m - 2) * k; }

double saving_eta(int modulus) {
  const double s = std::sin(std::numbers::pi / (4.0 * modulus));
  return 8.0 * s * s;
}

SavingReport check_m_saving(const FourierContext& ctx, int j, std::span<const std::int64_t> deltas,
                            int z_count) {
  require_nonzero_alpha(ctx);
  if (k_integral(ctx)) throw WrongBranch("the uniform saving applies when K is not an integer");
  if (z_count < 1) throw std::invalid_argument("z grid must be non-empty");
  SavingReport r;
  r.j = j;
  r.bound = static_cast<double>(pow64(ctx.base(), j)) - saving_eta(ctx.modulus());
  const int mod = ctx.modulus();
  // Entry phase e(phase/m' + r eps / Z) over denominator L = lcm(m', Z).
  const std::int64_t L = std::lcm(static_cast<std::int64_t>(mod), static_cast<std::int64_t>(z_count));
  std::vector<cplx> roots(static_cast<std::size_t>(L));
  for (std::int64_t i = 0; i < L; ++i) roots[static_cast<std::size_t>(i)] = unit_root(i, L);
  const std::int64_t phase_scale = L / mod;
  const std::int64_t z_scale = L / z_count;

  for (std::int64_t delta : deltas) {
    const StepTable t = step_table(ctx, j, delta);
    std::vector<cplx> acc(t.n);
    for (int zr = 0; zr < z_count; ++zr) {
      double norm = 0.0;
      for (std::size_t a = 0; a < t.n; ++a) {
        std::fill(acc.begin(), acc.end(), cplx{});
        std::int64_t zexp = 0;  // zr * eps mod Z
        for (std::int64_t eps = 0; eps < t.width; ++eps) {
          const std::size_t i = t.at(a, eps);
          const std::int64_t idx = (t.phase[i] * phase_scale + zexp * z_scale) % L;
          acc[t.col[i]] += roots[static_cast<std::size_t>(idx)];
          zexp += zr;
          if (zexp >= z_count) zexp -= z_count;
        }
        double row = 0.0;
        for (const cplx& v : acc) row += std::abs(v);
        norm = std::max(norm, row);
      }
      ++r.cases;
      if (norm > r.bound + 1e-9) ++r.violations;
      if (norm > r.worst_norm) {
        r.worst_norm = norm;
        r.worst_delta = delta;
        r.worst_z = zr;
      }
    }
  }
  return r;
}

Prop2Report prop2_decay_check(const FourierContext& ctx, const IndexVector& I, int lambda,
                              std::int64_t h, std::int64_t d, std::span<const int> Ls,
                              double constant_limit) {
  require_nonzero_alpha(ctx);
  if (k_integral(ctx)) throw WrongBranch("the uniform decay check applies when K is not an integer");
  Prop2Report r;
  r.m1 = saving_length(ctx.window(), ctx.length());
  const double qm1 = std::pow(static_cast<double>(ctx.base()), r.m1);
  r.eta = saving_eta(ctx.modulus()) / (qm1 * std::log(qm1));
  const double absH = std::abs(fourier_H(ctx, I, lambda, h, d));
  for (int L : Ls) {
    if (L < 0 || L > lambda) throw std::invalid_argument("need 0 <= L <= lambda");
    Prop2Row row;
    row.L = L;
    row.abs_H = absH;
    const std::int64_t dL = d / pow64(ctx.base(), L);
    for (const auto& J : ctx.space().elements()) {
      row.max_G = std::max(row.max_G, std::abs(fourier_G(ctx, J, lambda - L, h, dL)));
    }
    row.rate = std::pow(static_cast<double>(ctx.base()), -r.eta * L);
    row.constant = row.max_G > 0 ? absH / (row.rate * row.max_G) : 0.0;
    r.max_constant = std::max(r.max_constant, row.constant);
    r.rows.push_back(row);
  }
  r.within_limit = r.max_constant <= constant_limit;
  return r;
}

IndexVector path_target(int q, int m, int k, int n0) {
  if (n0 < 0 || n0 >= k) throw std::invalid_argument("n0 must lie in [0, k)");
  const std::int64_t Q = pow64(q, m - 1);
  IndexVector v(static_cast<std::size_t>(k), Q);
  for (int l = 0; l <= n0; ++l) v[static_cast<std::size_t>(l)] = Q - 1;
  return v;
}

int path_lemma_failures(int q, int m, int k) {
  const int n1 = floor_log(q, k) + m;
  const std::int64_t qn1 = pow64(q, n1);
  const IndexVector zero(static_cast<std::size_t>(k), 0);
  int failures = 0;
  for (int n0 = 0; n0 < k; ++n0) {
    if (transform_T(zero, qn1 - n0 - 1, 1, n1, q, m) != path_target(q, m, k, n0)) ++failures;
  }
  return failures;
}

std::uint64_t zero_collapse_failures(int q, int m, int k) {
  const IndexSpace space(q, m, k);
  const int m0 = condition1_length(q, m, k);
  const IndexVector zero(static_cast<std::size_t>(k), 0);
  std::uint64_t failures = 0;
  for (const auto& I : space.elements()) {
    if (transform_T(I, 0, 0, m0, q, m) != zero) ++failures;
  }
  return failures;
}

}  // namespace digitseq
