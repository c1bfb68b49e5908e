#include "etlqr/synthesis.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Dense>

namespace etlqr {

namespace {

using Mat16 = Eigen::Matrix<double, 16, 16>;
using Vec16 = Eigen::Matrix<double, 16, 1>;

// Solves F' X + X F = -C for X through the 16x16 vectorized system, with no
// definiteness requirements on C or X. Column-major vec: X(i, j) -> 4 j + i.
Mat4 solve_lyapunov_raw(const Mat4& F, const Mat4& C) {
  Mat16 L = Mat16::Zero();
  for (int j = 0; j < 4; ++j) {
    for (int i = 0; i < 4; ++i) {
      const int row = 4 * j + i;
      for (int k = 0; k < 4; ++k) {
        L(row, 4 * j + k) += F(k, i);  // (F' X)(i, j) = sum_k F(k, i) X(k, j)
        L(row, 4 * k + i) += F(k, j);  // (X F)(i, j)  = sum_k X(i, k) F(k, j)
      }
    }
  }
  const Vec16 rhs = -Eigen::Map<const Vec16>(C.data());

  Eigen::FullPivLU<Mat16> lu(L);
  if (!lu.isInvertible()) {
    throw SynthesisError("Lyapunov operator is singular (closed loop has eigenvalues summing to zero)");
  }
  Vec16 x = lu.solve(rhs);
  // One step of iterative refinement; the operator can be poorly scaled.
  x += lu.solve(rhs - L * x);

  Mat4 X = Eigen::Map<const Mat4>(x.data());
  return 0.5 * (X + X.transpose());
}

bool is_positive_definite(const Mat4& S) {
  Eigen::LLT<Mat4> llt(S);
  return llt.info() == Eigen::Success && min_eigenvalue_symmetric(S) > 0.0;
}

// Gain K0 with A - B K0 Hurwitz, from (A + aI) X + X (A + aI)' = 2 B B' where
// a > 0 puts every eigenvalue of A + aI in the right half plane. For a
// controllable pair X > 0 and (A - B B' X^-1) X + X (A - B B' X^-1)' = -2 a X.
// Uncontrollable modes span the kernel of X; the pseudo-inverse leaves them
// untouched, which is enough when they are already stable.
RowVec4 initial_stabilizing_gain(const Mat4& A, const Vec4& B) {
  if (is_hurwitz(A)) {
    return RowVec4::Zero();
  }
  Eigen::EigenSolver<Mat4> es(A, false);
  const double shift = std::max(0.0, -es.eigenvalues().real().minCoeff()) + 1.0;
  const Mat4 F = -(A + shift * Mat4::Identity()).transpose();
  const Mat4 X = solve_lyapunov_raw(F, 2.0 * B * B.transpose());

  Eigen::SelfAdjointEigenSolver<Mat4> eig(X);
  const Vec4 lambda = eig.eigenvalues();
  const double cutoff = 1e-12 * lambda.cwiseAbs().maxCoeff();
  Vec4 inv = Vec4::Zero();
  for (int i = 0; i < 4; ++i) {
    if (lambda(i) > cutoff) {
      inv(i) = 1.0 / lambda(i);
    }
  }
  const Mat4 X_pinv = eig.eigenvectors() * inv.asDiagonal() * eig.eigenvectors().transpose();
  const RowVec4 K0 = B.transpose() * X_pinv;
  if (!is_hurwitz(A - B * K0)) {
    throw SynthesisError("no stabilizing initial gain: (A, B) is not stabilizable");
  }
  return K0;
}

}  // namespace

void LqrWeights::validate() const {
  if (!Q.allFinite() || (Q - Q.transpose()).norm() > 1e-12 * (1.0 + Q.norm())) {
    throw InvalidParameter("Q", "must be finite and symmetric");
  }
  if (min_eigenvalue_symmetric(Q) < -1e-12 * (1.0 + Q.norm())) {
    throw InvalidParameter("Q", "must be positive semidefinite");
  }
  if (!std::isfinite(R) || R <= 0.0) {
    throw InvalidParameter("R", "must be finite and > 0");
  }
}

void EtmDesign::validate() const {
  if (!std::isfinite(z_bar) || z_bar <= 0.0) {
    throw InvalidParameter("z_bar", "must be finite and > 0");
  }
  if (!std::isfinite(epsilon) || epsilon <= 0.0) {
    throw InvalidParameter("epsilon", "must be finite and > 0");
  }
  if (!std::isfinite(theta_l) || theta_l < 1.0) {
    throw InvalidParameter("theta_l", "must be >= 1");
  }
  if (!std::isfinite(theta_r) || theta_r <= 0.0 || theta_r > 1.0) {
    throw InvalidParameter("theta_r", "must lie in (0, 1]");
  }
}

bool is_hurwitz(const Mat4& A) { return max_real_eigenvalue(A) < 0.0; }

double max_real_eigenvalue(const Mat4& A) {
  Eigen::EigenSolver<Mat4> es(A, /*computeEigenvectors=*/false);
  return es.eigenvalues().real().maxCoeff();
}

double min_eigenvalue_symmetric(const Mat4& S) {
  Eigen::SelfAdjointEigenSolver<Mat4> es(S, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double spectral_norm(const Mat4& X) {
  Eigen::JacobiSVD<Mat4> svd(X);
  return svd.singularValues()(0);
}

double care_residual(const Mat4& A, const Vec4& B, const Mat4& Q, double R, const Mat4& P) {
  const Mat4 res = A.transpose() * P + P * A - P * B * (1.0 / R) * B.transpose() * P + Q;
  return res.norm();
}

double lyapunov_residual(const Mat4& Acl, const Mat4& N, const Mat4& M) {
  return (Acl.transpose() * M + M * Acl + N).norm();
}

Mat4 solve_care(const Mat4& A, const Vec4& B, const Mat4& Q, double R, const CareOptions& options) {
  if (!(R > 0.0)) {
    throw SynthesisError("solve_care: R must be positive");
  }
  RowVec4 K = initial_stabilizing_gain(A, B);
  Mat4 P = Mat4::Zero();
  double previous_change = std::numeric_limits<double>::infinity();

  for (int it = 0; it < options.max_iterations; ++it) {
    const Mat4 Acl = A - B * K;
    if (!is_hurwitz(Acl)) {
      throw SynthesisError("solve_care: Newton iterate lost stability");
    }
    const Mat4 P_next = solve_lyapunov_raw(Acl, Q + K.transpose() * R * K);
    const double change = (P_next - P).norm();
    const double scale = 1.0 + P_next.norm();
    // Quadratic convergence ends at the rounding floor of the Lyapunov solve;
    // a non-decreasing update there means no further progress is possible.
    if (change > previous_change && previous_change <= options.stagnation_tolerance * scale) {
      return P;
    }
    P = P_next;
    K = lqr_gain(P, B, R);
    if (change <= options.tolerance * scale) {
      return P;
    }
    previous_change = change;
  }
  std::ostringstream msg;
  msg << "solve_care: Kleinman iteration did not converge in " << options.max_iterations
      << " iterations (residual " << care_residual(A, B, Q, R, P) << ")";
  throw SynthesisError(msg.str());
}

RowVec4 lqr_gain(const Mat4& P, const Vec4& B, double R) { return (B.transpose() * P) / R; }

Mat4 solve_lyapunov(const Mat4& Acl, const Mat4& N) {
  if (!is_hurwitz(Acl)) {
    throw SynthesisError("solve_lyapunov: closed-loop matrix is not Hurwitz");
  }
  if (!is_positive_definite(N)) {
    throw SynthesisError("solve_lyapunov: N must be symmetric positive definite");
  }
  Mat4 M = solve_lyapunov_raw(Acl, N);
  if (!is_positive_definite(M)) {
    throw SynthesisError("solve_lyapunov: solution is not positive definite");
  }
  return M;
}

double compute_sigma(const Mat4& M, const Vec4& B, const RowVec4& K, const Mat4& N, double theta_l,
                     double theta_r) {
  const double mbk = spectral_norm(M * B * K);
  return theta_r * theta_r * mbk * mbk / (theta_l * min_eigenvalue_symmetric(M) * min_eigenvalue_symmetric(N));
}

double min_iet(double sigma, double epsilon, double z_bar) {
  // atan(a (1 + z)) - atan(a) = atan(a z / (1 + a^2 (1 + z))), a = sqrt(sigma / epsilon);
  // this form stays accurate as sigma -> 0.
  const double a = std::sqrt(sigma / epsilon);
  return std::atan(a * z_bar / (1.0 + a * a * (1.0 + z_bar))) / std::sqrt(sigma * epsilon);
}

SynthesisResult synthesize(const PlantMatrices& plant, const LqrWeights& weights, const Mat4& N,
                           const EtmDesign& design) {
  weights.validate();
  design.validate();

  SynthesisResult out;
  out.P = solve_care(plant.A, plant.B, weights.Q, weights.R);
  out.K = lqr_gain(out.P, plant.B, weights.R);
  out.care_residual = care_residual(plant.A, plant.B, weights.Q, weights.R, out.P);

  const Mat4 Acl = plant.A - plant.B * out.K;
  out.N = N;
  out.M = solve_lyapunov(Acl, N);
  out.lyapunov_residual = lyapunov_residual(Acl, N, out.M);

  out.lambda_min_M = min_eigenvalue_symmetric(out.M);
  out.lambda_min_N = min_eigenvalue_symmetric(N);
  out.mbk_norm = spectral_norm(out.M * plant.B * out.K);
  out.sigma = compute_sigma(out.M, plant.B, out.K, N, design.theta_l, design.theta_r);
  out.tau = min_iet(out.sigma, design.epsilon, design.z_bar);
  return out;
}

}  // namespace etlqr
