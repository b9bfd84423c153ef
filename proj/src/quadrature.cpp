#include "smoothci/quadrature.hpp"

#include <cmath>
#include <sstream>

namespace smoothci {

namespace {

struct Simpson
{
  const std::function<double(double)>& f;
  int max_depth;

  double recurse(double a, double b, double fa, double fm, double fb,
                 double whole, double tol, int depth) const
  {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol)
      return left + right + delta / 15.0;
    if (depth >= max_depth) {
      std::ostringstream msg;
      msg << "adaptive Simpson did not converge on [" << a << ", " << b
          << "] (error estimate " << std::abs(delta) / 15.0 << ")";
      throw QuadratureError(msg.str());
    }
    return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
  }
};

}  // namespace

double integrate(const std::function<double(double)>& f,
                 double a,
                 double b,
                 double tol,
                 int panels,
                 int max_depth)
{
  if (!(a < b))
    return 0.0;
  if (panels < 1)
    panels = 1;
  const Simpson simpson{ f, max_depth };
  const double width = (b - a) / panels;
  const double panel_tol = tol / panels;
  double total = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double lo = a + i * width;
    const double hi = (i + 1 == panels) ? b : lo + width;
    const double flo = f(lo);
    const double fhi = f(hi);
    const double fm = f(0.5 * (lo + hi));
    const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fm + fhi);
    total += simpson.recurse(lo, hi, flo, fm, fhi, whole, panel_tol, 0);
  }
  return total;
}

}  // namespace smoothci
