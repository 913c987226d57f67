#include "leafflow/roots.hpp"

#include <algorithm>
#include <cmath>

namespace leafflow {

namespace {

double bisect(const std::function<double(double)>& f, double lo, double hi,
              double flo, double tol) {
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((flo < 0.0) == (fm < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> bracketed_roots(const std::function<double(double)>& f,
                                    const std::function<double(double)>& df,
                                    double a, double b,
                                    const RootOptions& opts) {
  std::vector<double> roots;
  const int n = opts.grid_points;
  const double h = (b - a) / (n - 1);
  double prev = f(a);
  if (prev == 0.0) roots.push_back(a);
  for (int i = 1; i < n; ++i) {
    const double t = a + i * h;
    const double cur = f(t);
    if (cur == 0.0) {
      roots.push_back(t);
      prev = cur;
      continue;
    }
    if ((prev < 0.0) != (cur < 0.0)) {
      double r = bisect(f, t - h, t, prev, opts.bisect_tol);
      // one Newton polish step
      const double d = df(r);
      if (d != 0.0) {
        const double r2 = r - f(r) / d;
        if (r2 >= t - h && r2 <= t) r = r2;
      }
      roots.push_back(r);
    }
    prev = cur;
  }
  // collapse duplicates from grid-exact hits
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [&](double u, double v) {
                            return std::fabs(u - v) < 10 * opts.bisect_tol;
                          }),
              roots.end());
  return roots;
}

std::vector<double> tangent_roots(const std::function<double(double)>& f,
                                  const std::function<double(double)>& df,
                                  double a, double b, double f_tol,
                                  const RootOptions& opts) {
  // zeros of df where |f| is tiny
  auto ddf = [&](double t) {
    const double h = 1e-6 * std::fmax(1.0, std::fabs(t));
    return (df(t + h) - df(t - h)) / (2.0 * h);
  };
  std::vector<double> crit = bracketed_roots(df, ddf, a, b, opts);
  std::vector<double> out;
  for (double z : crit)
    if (std::fabs(f(z)) < f_tol) out.push_back(z);
  return out;
}

}  // namespace leafflow
