#include "digitseq/witness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "digitseq/errors.hpp"
#include "digitseq/integer.hpp"
#include "digitseq/transfer.hpp"

namespace digitseq {

namespace {

constexpr double kTolerance = 1e-12;

std::vector<std::int64_t> keys(const FourierContext& ctx, const IndexVector& I, std::int64_t delta) {
  std::vector<std::int64_t> out(I.size());
  for (std::size_t l = 0; l < I.size(); ++l) {
    out[l] = I[l] / ctx.step() + static_cast<std::int64_t>(l) * delta;
  }
  return out;
}

int refinement_gap(const FourierContext& ctx) { return 4 * ctx.window() - 2; }

struct PairCheck {
  bool collisions = false;
  int xi1 = 0;
  int xi2 = 0;
  double grid_max = 0.0;
  double exact_max = 0.0;
};

PairCheck check_pairs(const FourierContext& ctx, const IndexVector& I, std::int64_t delta, int j,
                      std::int64_t eps1, std::int64_t eps2, int z_count) {
  PairCheck out;
  const std::int64_t width = pow64(ctx.base(), j);
  const int mod = ctx.modulus();
  out.collisions = true;
  IndexVector a;
  IndexVector b;
  for (std::int64_t eps : {eps1, eps2}) {
    if (eps < 0 || eps + 1 >= width) {
      out.collisions = false;
      continue;
    }
    transform_T_into(I, eps, delta, j, ctx.base(), ctx.step(), a);
    transform_T_into(I, eps + 1, delta, j, ctx.base(), ctx.step(), b);
    if (a != b) out.collisions = false;
  }
  const int p1 = ctx.v_phase(I, eps1, delta, j);
  const int p1n = ctx.v_phase(I, eps1 + 1, delta, j);
  const int p2 = ctx.v_phase(I, eps2, delta, j);
  const int p2n = ctx.v_phase(I, eps2 + 1, delta, j);
  out.xi1 = static_cast<int>(mod_floor(p1n - p1, mod));
  out.xi2 = static_cast<int>(mod_floor(p2n - p2, mod));

  const cplx v1 = unit_root(p1, mod), v1n = unit_root(p1n, mod);
  const cplx v2 = unit_root(p2, mod), v2n = unit_root(p2n, mod);
  for (int r = 0; r < z_count; ++r) {
    const cplx z = unit_root(r, z_count);
    out.grid_max = std::max(out.grid_max, std::abs(v1 + z * v1n) + std::abs(v2 + z * v2n));
  }
  const int diff = static_cast<int>(mod_floor(out.xi1 - out.xi2, mod));
  const double dist = static_cast<double>(std::min(diff, mod - diff)) / mod;
  out.exact_max = 4.0 * std::cos(std::numbers::pi * dist / 2.0);
  return out;
}

}  // namespace

std::vector<PartitionClass> partition_classes(const FourierContext& ctx, const IndexVector& I,
                                              std::int64_t delta, int x) {
  const std::int64_t qx = pow64(ctx.base(), x);
  const std::int64_t qx_plus = pow64(ctx.base(), x + refinement_gap(ctx));
  const auto key = keys(ctx, I, delta);
  std::vector<PartitionClass> classes;
  for (std::size_t l = 0; l < key.size(); ++l) {
    const std::int64_t c = key[l] % qx;
    auto it = std::find_if(classes.begin(), classes.end(), [&](const PartitionClass& pc) { return pc.c == c; });
    if (it == classes.end()) {
      classes.push_back({c, key[l] % qx_plus, {}, 0});
      it = classes.end() - 1;
    }
    it->members.push_back(static_cast<int>(l));
    it->beta_num = (it->beta_num + ctx.alpha()[static_cast<int>(l)]) % ctx.modulus();
  }
  std::sort(classes.begin(), classes.end(), [](const auto& a, const auto& b) { return a.c < b.c; });
  return classes;
}

bool partition_stable(const FourierContext& ctx, const IndexVector& I, std::int64_t delta, int x) {
  const std::int64_t qx = pow64(ctx.base(), x);
  const std::int64_t qx_plus = pow64(ctx.base(), x + refinement_gap(ctx));
  const auto key = keys(ctx, I, delta);
  for (std::size_t a = 0; a < key.size(); ++a) {
    for (std::size_t b = a + 1; b < key.size(); ++b) {
      if ((key[a] - key[b]) % qx == 0 && (key[a] - key[b]) % qx_plus != 0) return false;
    }
  }
  return true;
}

bool WitnessRecord::verified() const {
  return collisions_hold && phases_separated && grid_max <= 4.0 - eta_prime + kTolerance &&
         exact_max <= 4.0 - eta_prime + kTolerance;
}

WitnessRecord find_saving_witness(const FourierContext& ctx, const IndexVector& I,
                                  std::int64_t delta, int z_count) {
  if (ctx.alpha().is_zero()) throw std::invalid_argument("alpha must not be the zero vector");
  if (ctx.alpha().k_integral()) throw WrongBranch("the saving witness applies when K is not an integer");
  if (!ctx.space().contains(I)) throw std::invalid_argument("vector " + to_string(I) + " is not in the index set");

  const int m = ctx.window();
  const int k = ctx.length();
  const int gap = refinement_gap(ctx);
  const std::int64_t m1_width = pow64(ctx.base(), saving_length(m, k));
  const std::int64_t d = mod_floor(delta, m1_width);
  const double eta_prime = saving_eta(ctx.modulus());

  int tried = 0;
  for (int x = 0; x <= gap * (k - 1); ++x) {
    if (!partition_stable(ctx, I, d, x)) continue;
    const auto classes = partition_classes(ctx, I, d, x);
    const int j = x + gap;
    const std::int64_t width = pow64(ctx.base(), j);
    const std::int64_t lift = pow64(ctx.base(), x + m - 1);
    for (const auto& cls : classes) {
      if (cls.beta_num == 0) continue;
      for (const auto& e : all_difference_witnesses(ctx.function(), cls.beta_num)) {
        ++tried;
        WitnessRecord w;
        w.I = I;
        w.delta = d;
        w.x0 = x;
        w.c0 = cls.c;
        w.c0_plus = cls.c_plus;
        w.e = e;
        w.m1_prime = j;
        w.partition = classes;
        w.eps1 = mod_floor(lift * (e.e1 + 1) - cls.c_plus - 1, width);
        w.eps2 = mod_floor(lift * (e.e2 + 1) - cls.c_plus - 1, width);
        const PairCheck pc = check_pairs(ctx, I, d, j, w.eps1, w.eps2, z_count);
        w.collisions_hold = pc.collisions;
        w.xi1 = pc.xi1;
        w.xi2 = pc.xi2;
        w.phases_separated = pc.xi1 != pc.xi2;
        w.eta_prime = eta_prime;
        w.grid_max = pc.grid_max;
        w.exact_max = pc.exact_max;
        w.disjoint = w.eps1 + 1 < w.eps2 || w.eps2 + 1 < w.eps1;
        w.candidates_tried = tried;
        if (w.verified()) return w;
      }
    }
  }
  throw HypothesisViolation("no verified saving witness for I = " + to_string(I) +
                            ", delta = " + std::to_string(d));
}

bool verify_witness(const FourierContext& ctx, const WitnessRecord& w, int z_count) {
  // The difference identity behind the pair.
  const DigitalFunction& f = ctx.function();
  if (boundary_difference(f, w.e.e1) - boundary_difference(f, w.e.e2) != w.e.d) return false;
  const auto classes = partition_classes(ctx, w.I, w.delta, w.x0);
  bool found = false;
  for (const auto& cls : classes) {
    if (cls.c == w.c0) {
      found = cls.c_plus == w.c0_plus && cls.beta_num != 0 &&
              mod_floor(w.e.d * cls.beta_num, static_cast<std::int64_t>(ctx.modulus())) != 0;
    }
  }
  if (!found || !partition_stable(ctx, w.I, w.delta, w.x0)) return false;
  const PairCheck pc = check_pairs(ctx, w.I, w.delta, w.m1_prime, w.eps1, w.eps2, z_count);
  const double limit = 4.0 - saving_eta(ctx.modulus()) + kTolerance;
  return pc.collisions && pc.xi1 != pc.xi2 && pc.grid_max <= limit && pc.exact_max <= limit;
}

double two_pair_sum(double x1, double xi1, double x2, double xi2) {
  const double tau = 2.0 * std::numbers::pi;
  return std::abs(std::polar(1.0, tau * x1) + std::polar(1.0, tau * (x1 + xi1))) +
         std::abs(std::polar(1.0, tau * x2) + std::polar(1.0, tau * (x2 + xi2)));
}

double two_pair_bound(double xi1, double xi2) {
  const double t = xi1 - xi2;
  const double dist = std::abs(t - std::round(t));
  const double s = std::sin(std::numbers::pi * dist / 4.0);
  return 4.0 - 8.0 * s * s;
}

}  // namespace digitseq
