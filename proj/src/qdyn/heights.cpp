#include "qdyn/heights.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qdyn {

namespace {

struct ChartPoly {
  // quadratic with integer coefficients, on s in [-1,1]
  Integer c0, c1, c2;
  Integer lipschitz;  // |c1| + 2|c2| bounds |p'| on [-1,1]

  explicit ChartPoly(const IntPoly& p)
      : c0(p.coeff(0)), c1(p.coeff(1)), c2(p.coeff(2)),
        lipschitz(p.coeff(1).abs() + Integer(2) * p.coeff(2).abs()) {}

  Rational eval_abs(const Rational& s) const {
    Rational v = (Rational(c2) * s + Rational(c1)) * s + Rational(c0);
    return v.abs();
  }
};

struct Node {
  Rational lo, hi;
  int chart;
};

// Certified min of max(|A|,|B|) over [-1,1] for both charts at once.
// Returns the largest proven lower bound L with L >= (1-rel_gap) * sampled
// minimum; L is exact and positive for nondegenerate maps.
Rational certified_min(const ChartPoly& a1, const ChartPoly& b1, const ChartPoly& a2,
                       const ChartPoly& b2, double rel_gap, long max_nodes,
                       bool& exhausted) {
  auto value_at = [](const ChartPoly& A, const ChartPoly& B, const Rational& s) {
    return std::max(A.eval_abs(s), B.eval_abs(s));
  };
  // sampled upper bound
  Rational U = value_at(a1, b1, Rational(0));
  for (long num = -2; num <= 2; ++num) {
    Rational s(num, 2);
    U = std::min(U, value_at(a1, b1, s));
    U = std::min(U, value_at(a2, b2, s));
  }

  long gap_num = std::max<long>(1, std::lround(rel_gap * 1000000.0));
  auto tau = [&]() { return U * Rational(1000000 - gap_num, 1000000); };

  std::vector<Node> stack;
  stack.push_back({Rational(-1), Rational(1), 1});
  stack.push_back({Rational(-1), Rational(1), 2});
  Rational frontier_min = U;  // min node_lb among pruned nodes
  bool have_frontier = false;
  long nodes = 0;
  exhausted = false;

  while (!stack.empty()) {
    if (++nodes > max_nodes) {
      exhausted = true;
      break;
    }
    Node nd = stack.back();
    stack.pop_back();
    const ChartPoly& A = nd.chart == 1 ? a1 : a2;
    const ChartPoly& B = nd.chart == 1 ? b1 : b2;
    Rational mid = (nd.lo + nd.hi) * Rational(1, 2);
    Rational half = (nd.hi - nd.lo) * Rational(1, 2);
    Rational va = A.eval_abs(mid), vb = B.eval_abs(mid);
    Rational v = std::max(va, vb);
    if (v < U) U = v;
    Rational lb = std::max(va - Rational(A.lipschitz) * half, vb - Rational(B.lipschitz) * half);
    if (lb.sign() < 0) lb = Rational(0);
    if (lb >= tau()) {
      if (!have_frontier || lb < frontier_min) {
        frontier_min = lb;
        have_frontier = true;
      }
      continue;
    }
    stack.push_back({nd.lo, mid, nd.chart});
    stack.push_back({mid, nd.hi, nd.chart});
  }

  if (exhausted) {
    // take the worst lower bound over everything still alive
    Rational L = have_frontier ? frontier_min : Rational(0);
    bool any = have_frontier;
    for (const auto& nd : stack) {
      const ChartPoly& A = nd.chart == 1 ? a1 : a2;
      const ChartPoly& B = nd.chart == 1 ? b1 : b2;
      Rational mid = (nd.lo + nd.hi) * Rational(1, 2);
      Rational half = (nd.hi - nd.lo) * Rational(1, 2);
      Rational lb = std::max(A.eval_abs(mid) - Rational(A.lipschitz) * half,
                             B.eval_abs(mid) - Rational(B.lipschitz) * half);
      if (lb.sign() < 0) lb = Rational(0);
      if (!any || lb < L) L = lb, any = true;
    }
    return L;
  }
  // every point sits in a pruned node, so the global min is >= min(node lbs),
  // and each pruned lb was >= tau at its prune time; tau only grew tighter as
  // U fell, so the frontier minimum is the certificate
  return have_frontier ? std::min(frontier_min, U) : U;
}

}  // namespace

HeightBoundData height_bound_data(const QuadRatMap& phi, double rel_gap, long max_nodes) {
  HeightBoundData out;
  out.R = phi.resultant();
  ChartPoly a1(phi.f()), b1(phi.g());
  ChartPoly a2(phi.f().reverse(2)), b2(phi.g().reverse(2));
  out.D_exact = certified_min(a1, b1, a2, b2, rel_gap, max_nodes, out.exhausted);
  if (out.D_exact.sign() <= 0)
    throw std::runtime_error("certified minimization failed to separate from zero");
  out.D = out.D_exact.to_double() * (1.0 - 1e-13);
  out.C = std::max(0.0, out.R.abs().log_abs() - std::log(out.D));
  return out;
}

double upper_growth_const(const QuadRatMap& phi) {
  return std::log(3.0) + phi.max_abs_coeff().log_abs();
}

namespace {

struct FastChart {
  double c0, c1, c2;
  double lip;  // upper bound for |p'| on [-1,1]
  double eps;  // evaluation error margin

  explicit FastChart(const IntPoly& p) {
    c0 = p.coeff(0).to_double();
    c1 = p.coeff(1).to_double();
    c2 = p.coeff(2).to_double();
    double scale = std::fabs(c0) + std::fabs(c1) + std::fabs(c2);
    lip = (std::fabs(c1) + 2.0 * std::fabs(c2)) * (1.0 + 1e-12) + 1e-300;
    eps = scale * 0x1p-45;  // covers coefficient rounding plus the Horner steps
  }
  double eval_abs(double s) const { return std::fabs((c2 * s + c1) * s + c0); }
};

}  // namespace

FastHeightBound fast_height_bound(const QuadRatMap& phi) {
  if (phi.max_abs_coeff().bit_length() > 500) {
    HeightBoundData hbd = height_bound_data(phi);
    return {hbd.D, hbd.C};
  }
  FastChart charts[2][2] = {{FastChart(phi.f()), FastChart(phi.g())},
                            {FastChart(phi.f().reverse(2)), FastChart(phi.g().reverse(2))}};
  auto upper_at = [&](int chart, double s) {
    const FastChart& A = charts[chart][0];
    const FastChart& B = charts[chart][1];
    return std::max(A.eval_abs(s) + A.eps, B.eval_abs(s) + B.eps);
  };
  double U = upper_at(0, 0.0);
  for (double s : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
    U = std::min(U, upper_at(0, s));
    U = std::min(U, upper_at(1, s));
  }
  struct Node {
    double lo, hi;
    int chart;
  };
  std::vector<Node> stack = {{-1.0, 1.0, 0}, {-1.0, 1.0, 1}};
  stack.reserve(256);
  double frontier = U;
  bool have_frontier = false;
  int nodes = 0;
  const int max_nodes = 20000;
  while (!stack.empty()) {
    if (++nodes > max_nodes) {
      HeightBoundData hbd = height_bound_data(phi);
      return {hbd.D, hbd.C};
    }
    Node nd = stack.back();
    stack.pop_back();
    const FastChart& A = charts[nd.chart][0];
    const FastChart& B = charts[nd.chart][1];
    double mid = 0.5 * (nd.lo + nd.hi);
    double half = 0.5 * (nd.hi - nd.lo);
    double va = A.eval_abs(mid), vb = B.eval_abs(mid);
    U = std::min(U, std::max(va + A.eps, vb + B.eps));
    double lb = std::max(va - A.lip * half - A.eps, vb - B.lip * half - B.eps);
    if (lb >= 0.99 * U) {
      if (!have_frontier || lb < frontier) frontier = lb, have_frontier = true;
      continue;
    }
    stack.push_back({nd.lo, mid, nd.chart});
    stack.push_back({mid, nd.hi, nd.chart});
  }
  double D = have_frontier ? std::min(frontier, U) : U;
  if (!(D > 0.0)) {
    HeightBoundData hbd = height_bound_data(phi);
    return {hbd.D, hbd.C};
  }
  double C = std::max(0.0, phi.resultant().abs().log_abs() - std::log(D) + 1e-9);
  return {D, C};
}

CanonicalHeightResult canonical_height(const QuadRatMap& phi, const P1Point& x, long iters) {
  if (iters < 1) throw std::domain_error("canonical_height needs iters >= 1");
  HeightBoundData hbd = height_bound_data(phi);
  CanonicalHeightResult res;
  res.iters_used = iters;
  std::vector<P1Point> seen;
  seen.push_back(x);
  double floor = weil_height(x) - hbd.C;  // the i = 0 bound
  P1Point cur = x;
  for (long i = 1; i <= iters; ++i) {
    cur = phi.apply(cur);
    for (const auto& p : seen) {
      if (p == cur) {
        res.preperiodic = true;
        res.estimate = 0.0;
        res.floor = std::min(floor, 0.0);
        res.iters_used = i;
        return res;
      }
    }
    seen.push_back(cur);
    double hi = weil_height(cur);
    floor = std::max(floor, std::ldexp(hi - hbd.C, static_cast<int>(-i)));
    if (i == iters) res.estimate = std::ldexp(hi, static_cast<int>(-i));
  }
  res.floor = floor;
  return res;
}

CanonicalHeightResult canonical_height_refined(const QuadRatMap& phi, const P1Point& x,
                                               double abs_err) {
  if (!(abs_err > 0)) throw std::domain_error("abs_err must be positive");
  HeightBoundData hbd = height_bound_data(phi);
  double c_star = std::max({hbd.C, upper_growth_const(phi), 1e-9});
  long iters = static_cast<long>(std::ceil(std::log2(c_star / abs_err)));
  iters = std::clamp<long>(iters, 1, 64);
  return canonical_height(phi, x, iters);
}

double padic_height_floor(const Rational& c, const Integer& p, long i) {
  if (!is_prime(p)) throw std::domain_error("padic_height_floor: p is not prime");
  auto v = valuation(c, p);
  long s = v ? *v : 0;  // c = 0 has no negative valuation; falls to "otherwise"
  double logp = p.log_abs();
  if (p == 2 && s == -2) return 0.5 * M_LN2;
  if (p == 2 && s == -4) return M_LN2;
  if (s <= -2 && s % 2 == 0)
    return std::ldexp(static_cast<double>(2 - s) * logp, static_cast<int>(-i - 1));
  return 0.5 * logp;
}

std::vector<Integer> bad_primes(const QuadRatMap& phi) {
  std::vector<Integer> out;
  Integer r = phi.resultant().abs();
  if (r.is_one()) return out;
  for (auto& [p, e] : factor(r)) out.push_back(p);
  return out;
}

}  // namespace qdyn
