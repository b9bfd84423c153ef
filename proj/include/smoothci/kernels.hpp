#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace smoothci {

enum class KernelFamily
{
  Gaussian,
  Epanechnikov,
  Uniform,
  Custom
};

struct Interval
{
  double lower;
  double upper;
};

//! Moment constants of a kernel: A = int u^2 K(u) du, B = int K(u)^2 du.
struct KernelConstants
{
  double A;
  double B;
};

//! Smoothing kernel K: a symmetric bounded probability density.
//!
//! Built-in families evaluate in closed form. Custom kernels wrap a user
//! function and must declare an upper bound; values outside a declared
//! support are forced to zero. Immutable after construction.
class Kernel
{
public:
  static Kernel gaussian();
  //! 0.75 (1 - u^2) on [-1, 1]
  static Kernel epanechnikov();
  //! 0.5 on [-1, 1]
  static Kernel uniform();
  static Kernel custom(std::function<double(double)> fn,
                       double sup_bound,
                       std::optional<Interval> support = std::nullopt,
                       std::string name = "custom");

  double operator()(double u) const;

  KernelFamily family() const noexcept { return family_; }
  const std::optional<Interval>& support() const noexcept { return support_; }
  double sup_bound() const noexcept { return sup_bound_; }
  const std::string& name() const noexcept { return name_; }

  //! Declared support, or [-10, 10] for kernels with unbounded support.
  Interval integration_range() const noexcept;

private:
  Kernel(KernelFamily family,
         std::string name,
         double sup_bound,
         std::optional<Interval> support,
         std::function<double(double)> fn = {});

  KernelFamily family_;
  std::string name_;
  double sup_bound_;
  std::optional<Interval> support_;
  std::function<double(double)> fn_;
};

inline double kernel_eval(const Kernel& k, double u)
{
  return k(u);
}

//! Closed forms for built-in families, adaptive quadrature (tolerance
//! 1e-10) for custom kernels. Throws QuadratureError on non-convergence or
//! when an unbounded custom kernel has a non-negligible tail at +-10.
KernelConstants kernel_constants(const Kernel& k);

//! A and B by quadrature regardless of family.
KernelConstants kernel_constants_by_quadrature(const Kernel& k);

enum class KernelProperty
{
  Symmetry,
  UnitIntegral,
  Bounded,
  Nonnegative
};

struct KernelViolation
{
  KernelProperty property;
  std::string detail;
};

struct KernelValidation
{
  std::vector<KernelViolation> violations;

  bool ok() const noexcept { return violations.empty(); }
  bool violates(KernelProperty p) const noexcept;
};

//! Checks symmetry and nonnegativity on a 1001-point grid over the
//! support (or [-10, 10]), the unit integral by quadrature (within 1e-8)
//! and the declared sup bound. Never throws.
KernelValidation validate_kernel(const Kernel& k);

Kernel parse_kernel(std::string_view name);

}  // namespace smoothci
