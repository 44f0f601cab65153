#include "excol/spectral.hpp"

#include <stdexcept>
#include <string>

namespace excol {

namespace {
constexpr double kThresholdSlack = 1e-9;
}

SpectralDecomposition eig_sym(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("eig_sym: matrix not square");
  }
  const double asym = (m - m.transpose()).array().abs().maxCoeff();
  if (asym > 1e-9) {
    throw std::invalid_argument("eig_sym: matrix not symmetric, max |A - A^T| = " +
                                std::to_string(asym));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eig_sym: eigensolver failed to converge");
  }
  // Eigen returns ascending order; flip to descending.
  const int n = static_cast<int>(m.rows());
  SpectralDecomposition out;
  out.values = solver.eigenvalues().reverse();
  out.vectors.resize(n, n);
  for (int i = 0; i < n; ++i) {
    out.vectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  return out;
}

int threshold_rank(const SpectralDecomposition& spec, double tau, Side side) {
  if (tau < 0.0) throw std::invalid_argument("threshold_rank: tau must be >= 0");
  int count = 0;
  for (int i = 0; i < spec.n(); ++i) {
    const double v = spec.values[i];
    if (side == Side::Top ? v >= tau - kThresholdSlack
                          : v <= -tau + kThresholdSlack) {
      ++count;
    }
  }
  return count;
}

WitnessReport witness_matrix(const Eigen::MatrixXd& source,
                             const SpectralDecomposition& spec, double lam,
                             int t) {
  if (t < 1) throw std::invalid_argument("witness_matrix: t must be >= 1");
  const int available = threshold_rank(spec, lam, Side::Bottom);
  if (available < t) {
    throw std::runtime_error("witness_matrix: bottom rank at lambda=" +
                             std::to_string(lam) + " is " +
                             std::to_string(available) + " < t=" +
                             std::to_string(t));
  }
  const int n = spec.n();

  // U: columns are the t bottom-most eigenvectors scaled by 1/sqrt(t).
  Eigen::MatrixXd u(n, t);
  for (int s = 0; s < t; ++s) {
    u.col(s) = spec.vectors.col(n - 1 - s) / std::sqrt(static_cast<double>(t));
  }

  // v_i = w_i^{tensor 2} / ||w_i|| from the rows w_i of U; zero rows map to
  // the zero column.
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(t * t, n);
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd w = u.row(i).transpose();
    const double norm = w.norm();
    if (norm < 1e-12) continue;
    for (int a = 0; a < t; ++a) {
      for (int b = 0; b < t; ++b) {
        v(a * t + b, i) = w[a] * w[b] / norm;
      }
    }
  }

  const Eigen::MatrixXd gram = v.transpose() * v;
  WitnessReport report;
  report.v = std::move(v);
  report.inner_product = (source.array() * gram.array()).sum();
  report.frobenius_sq = gram.squaredNorm();
  report.trace = gram.trace();
  report.lambda = lam;
  report.t = t;
  report.conditions_hold =
      report.inner_product >= lam * lam - 1e-8 &&
      report.frobenius_sq <= 1.0 / t + 1e-8 &&
      std::abs(report.trace - 1.0) <= 1e-8;
  return report;
}

RankReport verify_rank_inequality(const Eigen::MatrixXd& source,
                                  const SpectralDecomposition& spec,
                                  double tau, double sigma) {
  if (!(sigma > 0.0 && sigma < 1.0)) {
    throw std::invalid_argument("verify_rank_inequality: sigma must be in (0,1)");
  }
  if (!(tau > 0.0)) {
    throw std::invalid_argument("verify_rank_inequality: tau must be > 0");
  }
  RankReport r;
  r.tau = tau;
  r.sigma = sigma;
  r.tau_prime = (tau * tau - sigma) / (1.0 - sigma);
  r.bottom_rank = threshold_rank(spec, tau, Side::Bottom);
  r.top_rank = r.tau_prime >= 0.0
                   ? threshold_rank(spec, r.tau_prime, Side::Top)
                   : static_cast<int>((spec.values.array() >=
                                       r.tau_prime - kThresholdSlack)
                                          .count());
  r.lhs = sigma * sigma * r.bottom_rank;
  r.preconditions_ok = source.minCoeff() >= -1e-12 &&
                       spec.values.array().abs().maxCoeff() <= 1.0 + 1e-9;
  r.holds = static_cast<double>(r.top_rank) + kThresholdSlack >= r.lhs;
  return r;
}

}  // namespace excol
