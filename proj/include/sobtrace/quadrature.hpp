#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace sobtrace {

struct QuadratureOptions {
  double rel_tol = 1e-10;
  std::size_t max_panels = std::size_t{1} << 14;
};

/// 16-point Gauss-Legendre rule on [a, b].
double gauss_legendre16(const std::function<double(double)>& f, double a, double b);

/// Globally adaptive composite Gauss-Legendre. The panel with the largest
/// local change is bisected until the summed change drops below
/// rel_tol * |estimate|. `breaks` (sorted, inside [a, b]) seed the initial
/// panels so known kinks are never straddled. Throws QuadratureFailure past
/// max_panels.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          std::span<const double> breaks = {},
                          const QuadratureOptions& opts = {});

}  // namespace sobtrace
