#pragma once

#include <functional>
#include <stdexcept>

namespace smoothci {

class QuadratureError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

//! Adaptive Simpson quadrature of f over [a, b] to absolute tolerance
//! `tol`. The interval is first cut into `panels` equal pieces so that
//! symmetric integrands cannot fool the first error estimate.
//! Throws QuadratureError when a subinterval fails to converge within
//! `max_depth` bisections.
double integrate(const std::function<double(double)>& f,
                 double a,
                 double b,
                 double tol = 1e-10,
                 int panels = 16,
                 int max_depth = 48);

}  // namespace smoothci
