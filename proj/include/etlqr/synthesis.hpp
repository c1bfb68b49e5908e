#pragma once

#include <stdexcept>

#include <Eigen/Core>

#include "etlqr/model.hpp"

namespace etlqr {

/// Raised when a Riccati or Lyapunov solve cannot produce a valid solution.
class SynthesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LqrWeights {
  Mat4 Q = Vec4(30.0, 10.0, 1.0, 1.0).asDiagonal();
  double R = 1000.0;

  void validate() const;
};

/// Design parameters of the clock-variable event trigger.
///
/// theta_l = theta_r = 1 recovers the original mechanism without the two extra
/// tuning knobs; theta_l > 1 and theta_r < 1 give the improved variant.
struct EtmDesign {
  double z_bar = 1.0;    // clock reset value
  double epsilon = 1.0;  // minimum drain rate
  double theta_l = 8.0;  // >= 1
  double theta_r = 0.1;  // in (0, 1]

  void validate() const;

  static EtmDesign original(double z_bar = 1.0, double epsilon = 1.0) { return {z_bar, epsilon, 1.0, 1.0}; }
};

struct SynthesisResult {
  RowVec4 K = RowVec4::Zero();
  Mat4 P = Mat4::Zero();
  Mat4 M = Mat4::Zero();
  Mat4 N = Mat4::Identity();
  double sigma = 0.0;
  double tau = 0.0;  // certified minimum inter-event time [s]

  // Quantities reused by the event function at every sample.
  double lambda_min_M = 0.0;
  double lambda_min_N = 0.0;
  double mbk_norm = 0.0;  // spectral norm of M B K

  double care_residual = 0.0;  // Frobenius norm
  double lyapunov_residual = 0.0;
};

struct CareOptions {
  int max_iterations = 100;
  double tolerance = 1e-14;             // relative change in P between Newton steps
  double stagnation_tolerance = 1e-9;  // accept a stalled iteration only below this relative change
};

/// Stabilizing solution of A'P + PA - P B R^-1 B' P + Q = 0 by Kleinman-Newton
/// iteration. The initial stabilizing gain comes from a shifted-Lyapunov
/// (Bass) construction when A itself is not Hurwitz. Requires (A, B) stabilizable.
Mat4 solve_care(const Mat4& A, const Vec4& B, const Mat4& Q, double R, const CareOptions& options = {});

RowVec4 lqr_gain(const Mat4& P, const Vec4& B, double R);

/// Solves Acl' M + M Acl = -N. Throws SynthesisError if Acl is not Hurwitz.
Mat4 solve_lyapunov(const Mat4& Acl, const Mat4& N);

double care_residual(const Mat4& A, const Vec4& B, const Mat4& Q, double R, const Mat4& P);
double lyapunov_residual(const Mat4& Acl, const Mat4& N, const Mat4& M);

bool is_hurwitz(const Mat4& A);
double max_real_eigenvalue(const Mat4& A);
double min_eigenvalue_symmetric(const Mat4& S);
double spectral_norm(const Mat4& X);

/// sigma = theta_r^2 |MBK|^2 / (theta_l lambda_min(M) lambda_min(N)).
double compute_sigma(const Mat4& M, const Vec4& B, const RowVec4& K, const Mat4& N, double theta_l,
                     double theta_r);

/// Time for the comparison system z' = -sigma (1 + z)^2 - epsilon to drain
/// from z_bar to zero. Lower bound on every inter-event time.
double min_iet(double sigma, double epsilon, double z_bar);

/// Full pipeline: CARE -> K -> Lyapunov(M; N) -> sigma -> tau.
SynthesisResult synthesize(const PlantMatrices& plant, const LqrWeights& weights, const Mat4& N,
                           const EtmDesign& design);

}  // namespace etlqr
