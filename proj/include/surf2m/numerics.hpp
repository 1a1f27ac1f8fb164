#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <utility>
#include <vector>

#include "surf2m/errors.hpp"

namespace surf2m {

/// Tolerances and budget for adaptive quadrature. The returned estimate
/// satisfies estimated_error <= max(abs_tol, rel_tol * |value|) or the call
/// raises NonConvergence.
struct QuadratureConfig {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  int max_subdivisions = 2000;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
};

/// Tolerances and budget for monotone inversion. The result x satisfies
/// |f(x) - target| <= tolerance * (1 + |target|).
struct InversionConfig {
  double tolerance = 1e-13;
  int max_iterations = 200;
  double bracket_growth = 2.0;
};

struct Bracket {
  double lo = 0.0;
  double hi = 1.0;
};

namespace detail {

inline constexpr double kEps = 2.220446049250313e-16;
inline constexpr double kOverflow = 1.79769313486231571e+308;

// 15-point Kronrod extension of the 7-point Gauss rule. All nodes are
// interior, so the original endpoints are never evaluated.
inline constexpr std::array<double, 8> kGK15Nodes = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
inline constexpr std::array<double, 8> kGK15KronrodW = {
    0.02293532201052922, 0.06309209262997855, 0.1047900103222502,
    0.1406532597155259,  0.1690047266392679,  0.1903505780647854,
    0.2044329400752989,  0.2094821410847278};
inline constexpr std::array<double, 4> kGK15GaussW = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
    0.4179591836734694};

struct PanelEstimate {
  double value = 0.0;
  double error = 0.0;
};

struct Segment {
  double lo, hi;
  double value, error;
};

struct SegmentWorse {
  bool operator()(const Segment& a, const Segment& b) const {
    return a.error < b.error;
  }
};

/// Wraps the integrand with the endpoint guard: a non-finite value within
/// round-off distance of an ORIGINAL endpoint is replaced by zero (the true
/// contribution there lies below double resolution; the extrapolation stage
/// recovers that mass), while a non-finite value at a genuinely interior
/// point raises NonFinite.
template <class F>
class GuardedIntegrand {
 public:
  GuardedIntegrand(F& f, double lower, double upper)
      : f_(f),
        lower_(lower),
        upper_(upper),
        guard_lo_(32.0 * kEps * (std::abs(lower) + 1.0)),
        guard_hi_(32.0 * kEps * (std::abs(upper) + 1.0)) {}

  double operator()(double x) {
    ++evaluations_;
    const double v = f_(x);
    if (std::isfinite(v)) return v;
    if (x - lower_ <= guard_lo_ || upper_ - x <= guard_hi_) return 0.0;
    raise(Errc::NonFinite, "integrand is not finite at an interior point");
  }

  long evaluations() const { return evaluations_; }

 private:
  F& f_;
  double lower_, upper_;
  double guard_lo_, guard_hi_;
  long evaluations_ = 0;
};

template <class Eval>
PanelEstimate gk15_panel(Eval& eval, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  std::array<double, 15> fv{};
  const double fc = eval(center);
  fv[7] = fc;
  double result_gauss = kGK15GaussW[3] * fc;
  double result_kronrod = kGK15KronrodW[7] * fc;
  double result_abs = std::abs(result_kronrod);
  for (int j = 0; j < 7; ++j) {
    const double f1 = eval(center - half * kGK15Nodes[j]);
    const double f2 = eval(center + half * kGK15Nodes[j]);
    fv[j] = f1;
    fv[14 - j] = f2;
    result_kronrod += kGK15KronrodW[j] * (f1 + f2);
    result_abs += kGK15KronrodW[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) result_gauss += kGK15GaussW[j / 2] * (f1 + f2);
  }
  const double mean = 0.5 * result_kronrod;
  double result_asc = kGK15KronrodW[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) {
    result_asc += kGK15KronrodW[j] *
                  (std::abs(fv[j] - mean) + std::abs(fv[14 - j] - mean));
  }
  result_abs *= std::abs(half);
  result_asc *= std::abs(half);
  double err = std::abs((result_kronrod - result_gauss) * half);
  if (result_asc != 0.0 && err != 0.0) {
    err = result_asc *
          std::min(1.0, std::pow(200.0 * err / result_asc, 1.5));
  }
  if (result_abs > 1e-290) err = std::max(err, 50.0 * kEps * result_abs);
  return {result_kronrod * half, err};
}

/// Epsilon-table extrapolation with the QUADPACK error model. State mirrors
/// the classic table compaction so the error estimate stays honest.
class EpsilonTable {
 public:
  /// Appends a partial sum; returns the current best extrapolant and its
  /// error estimate (error is +inf until enough history accumulates).
  std::pair<double, double> append(double x) {
    if (count_ < kLimit) tab_[++count_] = x;
    else tab_[count_] = x;
    double result = x;
    double abserr = kOverflow;
    if (count_ < 3) return {result, std::max(abserr, 5.0 * kEps * std::abs(result))};
    ++nres_;
    int n = count_;
    const int limexp = kLimit;
    tab_[n + 2] = tab_[n];
    const int newelm = (n - 1) / 2;
    tab_[n] = kOverflow;
    const int num = n;
    int k1 = n;
    bool early_exit = false;
    for (int i = 1; i <= newelm; ++i) {
      const int k2 = k1 - 1;
      const int k3 = k1 - 2;
      double res = tab_[k1 + 2];
      const double e0 = tab_[k3];
      const double e1 = tab_[k2];
      const double e2 = res;
      const double e1abs = std::abs(e1);
      const double delta2 = e2 - e1;
      const double err2 = std::abs(delta2);
      const double tol2 = std::max(std::abs(e2), e1abs) * kEps;
      const double delta3 = e1 - e0;
      const double err3 = std::abs(delta3);
      const double tol3 = std::max(e1abs, std::abs(e0)) * kEps;
      if (err2 <= tol2 && err3 <= tol3) {
        result = res;
        abserr = err2 + err3;
        early_exit = true;
        break;
      }
      const double e3 = tab_[k1];
      tab_[k1] = e1;
      const double delta1 = e1 - e3;
      const double err1 = std::abs(delta1);
      const double tol1 = std::max(e1abs, std::abs(e3)) * kEps;
      if (err1 <= tol1 || err2 <= tol2 || err3 <= tol3) {
        n = i + i - 1;
        break;
      }
      const double ss = 1.0 / delta1 + 1.0 / delta2 - 1.0 / delta3;
      if (std::abs(ss * e1) <= 1e-4) {
        n = i + i - 1;
        break;
      }
      res = e1 + 1.0 / ss;
      tab_[k1] = res;
      k1 -= 2;
      const double error = err2 + std::abs(res - e2) + err3;
      if (error <= abserr) {
        abserr = error;
        result = res;
      }
    }
    if (!early_exit) {
      if (n == limexp) n = 2 * (limexp / 2) - 1;
      int ib = (num % 2 == 0) ? 2 : 1;
      for (int i = 1; i <= newelm + 1; ++i) {
        tab_[ib] = tab_[ib + 2];
        ib += 2;
      }
      if (num != n) {
        int indx = num - n + 1;
        for (int i = 1; i <= n; ++i) {
          tab_[i] = tab_[indx];
          ++indx;
        }
      }
      count_ = n;
      if (nres_ >= 4) {
        abserr = std::abs(result - res3la_[3]) +
                 std::abs(result - res3la_[2]) +
                 std::abs(result - res3la_[1]);
        res3la_[1] = res3la_[2];
        res3la_[2] = res3la_[3];
        res3la_[3] = result;
      } else {
        res3la_[nres_] = result;
        abserr = kOverflow;
      }
    }
    abserr = std::max(abserr, 5.0 * kEps * std::abs(result));
    return {result, abserr};
  }

 private:
  static constexpr int kLimit = 50;
  std::array<double, kLimit + 6> tab_{};
  std::array<double, 4> res3la_{};
  int count_ = 0;
  int nres_ = 0;
};

struct AdaptOutcome {
  double value = 0.0;
  double error = 0.0;
  bool stalled = false;
};

/// Wide intervals are pre-split with geometric shells from both endpoints so
/// mass hiding between the nodes of one huge panel cannot be missed (e.g.
/// truncation integrals over [0, 1e6]).
inline std::vector<double> initial_breakpoints(double lo, double hi) {
  const double span = hi - lo;
  std::vector<double> pts;
  pts.push_back(lo);
  if (span > 16.0) {
    std::vector<int> ks;
    for (int k = 1; k <= 40 && span * std::ldexp(1.0, -k) > 0.25; ++k)
      ks.push_back(k);
    for (auto it = ks.rbegin(); it != ks.rend(); ++it)
      pts.push_back(lo + span * std::ldexp(1.0, -*it));
    for (int k : ks) pts.push_back(hi - span * std::ldexp(1.0, -k));
  }
  pts.push_back(hi);
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](double a, double b) { return b <= a; }),
            pts.end());
  return pts;
}

template <class Eval>
AdaptOutcome adapt(Eval& eval, double lo, double hi, double abs_tol,
                   double rel_tol, int max_subdivisions) {
  std::priority_queue<Segment, std::vector<Segment>, SegmentWorse> heap;
  double total_value = 0.0;
  double total_error = 0.0;
  const std::vector<double> pts = initial_breakpoints(lo, hi);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const auto est = gk15_panel(eval, pts[i], pts[i + 1]);
    total_value += est.value;
    total_error += est.error;
    heap.push({pts[i], pts[i + 1], est.value, est.error});
  }
  double frozen_error = 0.0;
  int used = 0;
  while (used < max_subdivisions) {
    const double tol = std::max(abs_tol, rel_tol * std::abs(total_value));
    if (total_error <= tol) return {total_value, total_error, false};
    if (heap.empty()) break;
    const Segment worst = heap.top();
    heap.pop();
    // The splittability floor is local to the panel: panels far from the
    // origin run out of representable midpoints much sooner than panels
    // near it, and a global floor would freeze the latter prematurely.
    const double width_floor =
        50.0 * kEps * (std::abs(worst.lo) + std::abs(worst.hi) + 1.0);
    if (worst.hi - worst.lo < width_floor) {
      // Splitting cannot continue here; if the frozen mass alone already
      // exceeds the tolerance the phase is hopeless, hand over to
      // extrapolation immediately.
      frozen_error += worst.error;
      if (frozen_error > tol) return {total_value, total_error, true};
      continue;
    }
    const double mid = 0.5 * (worst.lo + worst.hi);
    const auto left = gk15_panel(eval, worst.lo, mid);
    const auto right = gk15_panel(eval, mid, worst.hi);
    total_value += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    heap.push({worst.lo, mid, left.value, left.error});
    heap.push({mid, worst.hi, right.value, right.error});
    ++used;
  }
  const double tol = std::max(abs_tol, rel_tol * std::abs(total_value));
  return {total_value, total_error, total_error > tol};
}

}  // namespace detail

/// Adaptive quadrature of f over [lower, upper].
///
/// The base rule never evaluates the original endpoints, so integrable
/// power-type endpoint singularities (exponent < 1) need no special casing
/// at call sites; they are resolved by an extrapolation pass over geometric
/// endpoint shells when plain subdivision stalls. Raises NonFinite if f is
/// non-finite at an interior point and NonConvergence if the tolerances
/// cannot be certified within the subdivision budget.
template <class F>
QuadratureResult integrate(F&& f, double lower, double upper,
                           QuadratureConfig cfg = {}) {
  if (!(lower <= upper)) raise(Errc::InvalidArgument, "integrate: lower > upper");
  if (lower == upper) return {0.0, 0.0, 0};
  detail::GuardedIntegrand<F> eval(f, lower, upper);
  auto phase1 = detail::adapt(eval, lower, upper, cfg.abs_tol, cfg.rel_tol,
                              cfg.max_subdivisions);
  if (!phase1.stalled)
    return {phase1.value, phase1.error, eval.evaluations()};

  const double tol =
      std::max(cfg.abs_tol, cfg.rel_tol * std::abs(phase1.value));
  const double span = upper - lower;
  // Shell depth is limited per endpoint by the local double resolution, so
  // a singularity near the origin keeps its full geometric tail even when
  // the other endpoint is huge.
  auto shells_for = [&](double endpoint) {
    const double floor = 64.0 * detail::kEps * (std::abs(endpoint) + 1.0);
    int k = 1;
    while (k < 46 && span * std::ldexp(1.0, -(2 + k)) > floor) ++k;
    return k;
  };
  const int shells_lo = shells_for(lower);
  const int shells_hi = shells_for(upper);
  auto offset = [&](int k) { return span * std::ldexp(1.0, -(2 + k)); };
  const double panel_tol =
      std::max(tol / (8.0 * (shells_lo + shells_hi + 2)), 1e-16);

  auto core = detail::adapt(eval, lower + offset(0), upper - offset(0),
                            panel_tol, 0.0, 400);
  double sum = core.value;
  double accumulated_error = core.error;
  detail::EpsilonTable table;
  double best_value = phase1.value;
  double best_error = phase1.error;
  for (int k = 1; k <= std::max(shells_lo, shells_hi); ++k) {
    if (k <= shells_lo) {
      const auto left = detail::adapt(eval, lower + offset(k),
                                      lower + offset(k - 1), panel_tol, 0.0, 100);
      sum += left.value;
      accumulated_error += left.error;
    }
    if (k <= shells_hi) {
      const auto right = detail::adapt(eval, upper - offset(k - 1),
                                       upper - offset(k), panel_tol, 0.0, 100);
      sum += right.value;
      accumulated_error += right.error;
    }
    const auto [value, wynn_error] = table.append(sum);
    if (wynn_error < detail::kOverflow &&
        wynn_error + accumulated_error < best_error) {
      best_value = value;
      best_error = wynn_error + accumulated_error;
    }
  }
  if (best_error <= tol) return {best_value, best_error, eval.evaluations()};
  raise(Errc::NonConvergence,
        "integrate: tolerance not reached within subdivision budget");
}

/// Inverts a strictly increasing function: returns x with
/// |f(x) - target| <= tolerance * (1 + |target|).
///
/// The seed bracket is grown geometrically until it straddles the target
/// (OutOfRange if growth limits are exceeded first), then refined by
/// bisection with derivative-free secant acceleration. Never requires f'.
template <class F>
double invert_monotone(F&& f, double target, Bracket seed,
                       InversionConfig cfg = {}) {
  if (!(seed.lo < seed.hi))
    raise(Errc::InvalidArgument, "invert_monotone: empty seed bracket");
  double lo = seed.lo, hi = seed.hi;
  double flo = f(lo), fhi = f(hi);
  const double accept =
      cfg.tolerance * (1.0 + std::abs(target));

  for (int grow = 0; flo > target || fhi < target; ++grow) {
    if (grow >= cfg.max_iterations)
      raise(Errc::OutOfRange,
            "invert_monotone: bracket growth exceeded limits; target may lie "
            "outside the function range");
    const double width = hi - lo;
    if (fhi < target) {
      hi += width * cfg.bracket_growth;
      fhi = f(hi);
    } else {
      lo -= width * cfg.bracket_growth;
      flo = f(lo);
    }
  }

  double x = 0.5 * (lo + hi);
  double fx;
  for (int it = 0; it < cfg.max_iterations; ++it) {
    // Secant candidate from the bracket endpoints; fall back to bisection
    // whenever it is not strictly interior.
    double candidate = x;
    if (fhi != flo) {
      candidate = lo + (target - flo) * (hi - lo) / (fhi - flo);
    }
    const double mid = 0.5 * (lo + hi);
    if (!(candidate > lo && candidate < hi)) candidate = mid;
    // Alternate with bisection so the bracket provably shrinks.
    if (it % 2 == 1) candidate = mid;
    x = candidate;
    fx = f(x);
    if (std::abs(fx - target) <= accept) return x;
    if (fx < target) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
      fhi = fx;
    }
    if (hi - lo <= detail::kEps * (std::abs(lo) + std::abs(hi)) ) {
      // Bracket has collapsed to adjacent doubles; accept the better end.
      return (std::abs(flo - target) < std::abs(fhi - target)) ? lo : hi;
    }
  }
  raise(Errc::NonConvergence,
        "invert_monotone: iteration budget exhausted before tolerance");
}

}  // namespace surf2m
