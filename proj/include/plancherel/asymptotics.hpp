#pragma once

// Limiting covariance structure of coupled height functions: overlap densities
// of regular families, the kernel C_ij, contour quadrature for the covariance of
// the limiting Gaussian vector and of contour moments, positive-definiteness
// checks and Wick predictions.
//
// Contours are parameterized as z = R e^{i theta}, theta in (0, pi), with
// R^2 = eta / gamma, x(z) = gamma (1 - 2 Re z) and dx = 2 gamma R sin(theta) dtheta.

#include "plancherel/quadrature.hpp"
#include "plancherel/sequences.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <functional>
#include <ostream>
#include <span>
#include <vector>

namespace plancherel {

struct RegularFamilyLimit {
  double gamma = 1;
  std::vector<double> etas;
  Eigen::MatrixXd overlaps;  ///< c_rs, with c_rr = eta_r

  /// Throws InvalidArgument on eta <= 0, asymmetry, c_rr != eta_r or c_rs > min(eta_r, eta_s).
  void validate() const;
};

enum class AlphaMode { closed_form, finite_L };

struct AlphaValue {
  double value = 0;
  bool fell_back = false;  ///< closed form unavailable, counted at finite L
};

/// |A_{i,[xL]} cap A_{j,[yL]}| / L by direct counting.
double alpha_finite_L(const SequenceRule& a, const SequenceRule& b, double x, double y,
                      std::int64_t L);

/// lim |A_{i,[xL]} cap A_{j,[yL]}| / L. Explicit rules fall back to counting at
/// the given L (which must then be positive).
AlphaValue eval_alpha(const SequenceRule& a, const SequenceRule& b, double x, double y,
                      AlphaMode mode = AlphaMode::closed_form, std::int64_t L = 0);

/// (1/2pi) ln |(alpha - z w) / (alpha - z conj(w))|.
double kernel_Cij(double alpha, std::complex<double> z, std::complex<double> w);

/// -(1/2pi) ln |(z - w) / (z - conj(w))|.
double gff_kernel(std::complex<double> z, std::complex<double> w);

struct CovarianceResult {
  double value = 0;
  double abs_error_estimate = 0;
  std::size_t quadrature_cells = 0;
};

/// E xi_r xi_s for the limits of L^{-k}(p_k - E p_k) on the index sets r and s.
CovarianceResult theorem2_covariance(int k_r, int k_s, const RegularFamilyLimit& limit,
                                     std::size_t r, std::size_t s, double tol = 1e-10,
                                     const QuadratureOptions& options = {});

/// Same computation with serial cell evaluation (reference for the parallel kernel).
CovarianceResult theorem2_covariance_serial(int k_r, int k_s, const RegularFamilyLimit& limit,
                                            std::size_t r, std::size_t s, double tol = 1e-10);

/// Overlap density alpha(y, y2) between the two index sequences.
using AlphaFunction = std::function<double(double y, double y2)>;

struct MomentCovariance {
  CovarianceResult direct;      ///< contour integral of x^k x^k2 C dx dx
  CovarianceResult via_theorem2;  ///< pi / ((k+1)(k2+1)) times E xi xi with orders k+1, k2+1
};

/// Covariance of the limiting contour moments at levels y, y2 and orders k, k2 >= 0.
MomentCovariance prop1_moment_covariance(double y, int k, double y2, int k2, double gamma,
                                         const AlphaFunction& alpha_fn, double tol = 1e-10);

/// One entry per (sequence, level) pair: eta = y, c = alpha in closed form.
RegularFamilyLimit limit_from_sequences(std::span<const SequenceRule> rules,
                                        std::span<const double> levels, double gamma);

struct Probe {
  std::size_t r = 0;
  int k = 1;
};

struct PdReport {
  Eigen::MatrixXd gram;
  double min_eigenvalue = 0;
  double norm = 0;  ///< spectral norm of the Gram matrix
  double max_abs_error = 0;
};

PdReport pd_check(const RegularFamilyLimit& limit, std::span<const Probe> probes, double tol = 1e-10);

/// Gaussian joint moment E prod xi_{indices} from a covariance matrix (Wick).
double gaussian_joint_prediction(const Eigen::MatrixXd& cov, std::span<const int> indices);

struct CovarianceRow {
  std::size_t r = 0, s = 0;
  int k_r = 1, k_s = 1;
  CovarianceResult result;
};

/// Columns r,s,k_r,k_s,eta_r,eta_s,c_rs,gamma,value,error_estimate.
void write_covariance_table_csv(std::ostream& out, const RegularFamilyLimit& limit,
                                std::span<const CovarianceRow> rows);

}  // namespace plancherel
