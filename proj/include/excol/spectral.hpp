#pragma once

#include <Eigen/Dense>

namespace excol {

/// Full symmetric eigendecomposition, eigenvalues sorted descending and
/// eigenvectors stored as the aligned orthonormal columns of `vectors`.
struct SpectralDecomposition {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;

  int n() const { return static_cast<int>(values.size()); }
};

enum class Side { Top, Bottom };

struct WitnessReport {
  Eigen::MatrixXd v;        // t^2 x n
  double inner_product;     // <A, V^T V>
  double frobenius_sq;      // ||V^T V||_F^2
  double trace;             // Tr(V^T V)
  double lambda;
  int t;
  bool conditions_hold;     // all three within 1e-8
};

struct RankReport {
  double tau = 0.0;
  double sigma = 0.0;
  double tau_prime = 0.0;   // (tau^2 - sigma) / (1 - sigma)
  int bottom_rank = 0;      // rank_{<= -tau}
  int top_rank = 0;         // rank_{>= tau_prime}
  double lhs = 0.0;         // sigma^2 * bottom_rank
  bool preconditions_ok = true;  // non-negative entries, norm <= 1
  bool holds = false;
};

// Throws if the input is not symmetric within 1e-9.
SpectralDecomposition eig_sym(const Eigen::MatrixXd& m);

// Eigenvalue threshold comparisons are inclusive with 1e-9 slack so that
// analytically exact eigenvalues count deterministically.
int threshold_rank(const SpectralDecomposition& spec, double tau, Side side);

// Tensoring witness for the bottom-to-top threshold rank transfer. Requires
// rank_{<= -lam} >= t; throws otherwise, reporting the available rank.
WitnessReport witness_matrix(const Eigen::MatrixXd& source,
                             const SpectralDecomposition& spec, double lam,
                             int t);

// Checks rank_{>= (tau^2-sigma)/(1-sigma)} >= sigma^2 * rank_{<= -tau}.
// For any symmetric matrix with non-negative entries and norm at most 1,
// `holds` must come back true; a false result is an implementation bug.
RankReport verify_rank_inequality(const Eigen::MatrixXd& source,
                                  const SpectralDecomposition& spec,
                                  double tau, double sigma);

}  // namespace excol
