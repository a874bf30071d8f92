#include "plancherel/quadrature.hpp"

#include "plancherel/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <omp.h>

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

namespace plancherel {

namespace {

constexpr int kOrder = 16;

struct Rule {
  std::array<double, kOrder> x{};  // nodes on [0, 1]
  std::array<double, kOrder> w{};
};

const Rule& unit_rule() {
  static const Rule rule = [] {
    using G = boost::math::quadrature::gauss<double, kOrder>;
    const auto& a = G::abscissa();
    const auto& wt = G::weights();
    Rule r;
    int j = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {  // a holds the nonnegative half
      r.x[j] = 0.5 * (1 + a[i]);
      r.w[j++] = 0.5 * wt[i];
      r.x[j] = 0.5 * (1 - a[i]);
      r.w[j++] = 0.5 * wt[i];
    }
    return r;
  }();
  return rule;
}

std::vector<double> graded_both(int depth) {
  std::vector<double> b{0.0};
  for (int j = depth; j >= 2; --j) b.push_back(std::ldexp(1.0, -j));
  b.push_back(0.5);
  for (int j = 2; j <= depth; ++j) b.push_back(1.0 - std::ldexp(1.0, -j));
  b.push_back(1.0);
  return b;
}

std::vector<double> graded_low(int depth) {
  std::vector<double> b{0.0};
  for (int j = depth; j >= 1; --j) b.push_back(std::ldexp(1.0, -j));
  b.push_back(1.0);
  return b;
}

double cell(const SquareIntegrand& f, bool mirror, double u0, double u1, double v0, double v1) {
  const Rule& r = unit_rule();
  const double hu = u1 - u0, hv = v1 - v0;
  constexpr double pi = std::numbers::pi;
  double total = 0;
  for (int a = 0; a < kOrder; ++a) {
    const double u = u0 + hu * r.x[a];
    double row = 0;
    for (int b = 0; b < kOrder; ++b) {
      const double v = v0 + hv * r.x[b];
      const double big = pi * u;
      const double small = pi * u * (1 - v);
      const double d = pi * u * v;
      row += r.w[b] * (mirror ? f(small, big, -d) : f(big, small, d));
    }
    total += r.w[a] * u * row;
  }
  return total * hu * hv * pi * pi;
}

}  // namespace

double integrate_square(const SquareIntegrand& f, int depth, bool parallel, int threads,
                        std::size_t* cells) {
  if (depth < 1) throw InvalidArgument("grading depth must be positive");
  const auto ub = graded_both(depth);
  const auto vb = graded_low(depth);
  const auto nu = static_cast<std::int64_t>(ub.size() - 1);
  const auto nv = static_cast<std::int64_t>(vb.size() - 1);
  const std::int64_t n = 2 * nu * nv;
  std::vector<double> sums(static_cast<std::size_t>(n));
  auto one = [&](std::int64_t c) {
    const bool mirror = c >= nu * nv;
    const std::int64_t rest = c % (nu * nv);
    const auto i = static_cast<std::size_t>(rest / nv), j = static_cast<std::size_t>(rest % nv);
    sums[static_cast<std::size_t>(c)] = cell(f, mirror, ub[i], ub[i + 1], vb[j], vb[j + 1]);
  };
  if (parallel) {
    const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 4) num_threads(nt)
    for (std::int64_t c = 0; c < n; ++c) one(c);
  } else {
    for (std::int64_t c = 0; c < n; ++c) one(c);
  }
  // pairwise reduction in cell-index order
  std::size_t width = sums.size();
  while (width > 1) {
    const std::size_t half = (width + 1) / 2;
    for (std::size_t i = 0; i + half < width; ++i) sums[i] += sums[i + half];
    width = half;
  }
  if (cells) *cells = static_cast<std::size_t>(n);
  return sums.empty() ? 0.0 : sums[0];
}

QuadratureResult integrate_square_adaptive(const SquareIntegrand& f, const QuadratureOptions& options) {
  if (!(options.tol > 0)) throw InvalidArgument("quadrature tolerance must be positive");
  std::size_t cells = 0;
  double prev = integrate_square(f, 8, options.parallel, options.threads, &cells);
  double best_err = INFINITY;
  for (int level = 1; level <= options.max_level; ++level) {
    const double cur = integrate_square(f, 8 + 8 * level, options.parallel, options.threads, &cells);
    const double err = std::abs(cur - prev) + 1e-15 * std::abs(cur);
    if (!std::isfinite(cur)) break;
    if (err <= options.tol) return {cur, err, cells, level};
    best_err = err;
    prev = cur;
  }
  std::ostringstream msg;
  msg.precision(17);
  msg << "quadrature did not reach tol " << options.tol << "; best value " << prev
      << " with error estimate " << best_err;
  throw ComputationFailed(msg.str());
}

}  // namespace plancherel
