#pragma once

// Tensor Gauss-Legendre quadrature on [0, pi]^2 for integrands with an
// integrable logarithmic singularity on the diagonal theta = phi.
//
// The square is split into the triangles phi < theta and theta < phi; each is
// mapped to the unit square by theta = pi u, phi = pi u (1 - v) (and the mirror),
// so the diagonal becomes the edge v = 0. Panels are graded dyadically toward
// v = 0 and toward both ends in u, with a 16-point rule per panel.

#include <cstddef>
#include <functional>

namespace plancherel {

/// f(theta, phi, theta - phi); the difference is passed separately because it
/// is known to full relative precision near the diagonal.
using SquareIntegrand = std::function<double(double theta, double phi, double diff)>;

struct QuadratureOptions {
  double tol = 1e-10;
  int max_level = 6;  ///< grading depths 8, 16, ..., 8 (max_level + 1)
  bool parallel = true;
  int threads = 0;  ///< 0 keeps the OpenMP default
};

struct QuadratureResult {
  double value = 0;
  double abs_error_estimate = 0;
  std::size_t cells = 0;  ///< cells used at the accepted level
  int level = 0;
};

/// Integral at a fixed grading depth. Cell sums are combined in a fixed order,
/// so parallel and serial evaluation return identical values.
double integrate_square(const SquareIntegrand& f, int depth, bool parallel, int threads = 0,
                        std::size_t* cells = nullptr);

/// Refines the grading depth until two consecutive levels agree within tol.
/// Throws ComputationFailed (with the best value in the message) otherwise.
QuadratureResult integrate_square_adaptive(const SquareIntegrand& f, const QuadratureOptions& options);

}  // namespace plancherel
