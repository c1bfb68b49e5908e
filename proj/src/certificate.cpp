#include <Eigen/Eigenvalues>
#include <sstream>

#include "etlqr/comparison.hpp"
#include "etlqr/csv_log.hpp"

namespace etlqr {

std::string emit_certificate(const PlantMatrices& plant, const SynthesisResult& syn, const EtmDesign& design) {
  std::ostringstream out;
  const auto row = [&](const char* label, double value) { out << label << format_double(value) << '\n'; };

  out << "design: z_bar=" << format_double(design.z_bar) << " epsilon=" << format_double(design.epsilon)
      << " theta_l=" << format_double(design.theta_l) << " theta_r=" << format_double(design.theta_r) << '\n';
  out << "K =";
  for (int i = 0; i < 4; ++i) {
    out << ' ' << format_double(syn.K(i));
  }
  out << '\n';

  Eigen::EigenSolver<Mat4> es(plant.A - plant.B * syn.K, false);
  out << "eig(A - BK) =";
  for (int i = 0; i < 4; ++i) {
    const auto lambda = es.eigenvalues()(i);
    out << ' ' << format_double(lambda.real()) << (lambda.imag() < 0 ? "-" : "+") << format_double(std::abs(lambda.imag()))
        << 'i';
  }
  out << '\n';
  row("CARE residual      = ", syn.care_residual);
  row("Lyapunov residual  = ", syn.lyapunov_residual);
  row("lambda_min(M)      = ", syn.lambda_min_M);
  row("lambda_min(N)      = ", syn.lambda_min_N);
  row("|MBK|              = ", syn.mbk_norm);
  row("sigma              = ", syn.sigma);
  row("tau (min IET) [s]  = ", syn.tau);
  return out.str();
}

}  // namespace etlqr
