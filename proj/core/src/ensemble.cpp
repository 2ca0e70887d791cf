#include "rmtlab/ensemble.hpp"

#include <sstream>

#include "rmtlab/errors.hpp"

namespace rmt {

void EnsembleConfig::validate() const {
  if (p <= 0 || n <= 0) {
    throw PreconditionError("EnsembleConfig: p and n must be positive");
  }
  if (p > n) {
    std::ostringstream msg;
    msg << "EnsembleConfig: p <= n required (got p = " << p << ", n = " << n
        << "); for p > n transpose the data matrix, the conjugate W^T W has the "
           "same nonzero spectrum";
    throw PreconditionError(msg.str());
  }
  const std::size_t bytes =
      static_cast<std::size_t>(p) * static_cast<std::size_t>(n) * sizeof(double);
  if (bytes > max_bytes) {
    std::ostringstream msg;
    msg << "EnsembleConfig: " << p << "x" << n << " matrix needs " << bytes
        << " bytes, exceeding the declared budget of " << max_bytes;
    throw ResourceError(msg.str());
  }
}

Eigen::MatrixXd sample_matrix(const EnsembleConfig& config, std::int64_t trial_index) {
  config.validate();
  StreamRng rng(config.master_seed, static_cast<std::uint64_t>(trial_index));
  Eigen::MatrixXd W(config.p, config.n);
  // Row-major fill order is part of the reproducibility contract.
  for (int i = 0; i < config.p; ++i) {
    for (int j = 0; j < config.n; ++j) {
      W(i, j) = sample(config.spec, rng);
    }
  }
  return W;
}

Eigen::MatrixXd covariance(const Eigen::MatrixXd& W, int n) {
  if (n != W.cols()) {
    std::ostringstream msg;
    msg << "covariance: W has " << W.cols() << " columns but n = " << n;
    throw PreconditionError(msg.str());
  }
  Eigen::MatrixXd G = (W * W.transpose()) / static_cast<double>(n);
  G = 0.5 * (G + G.transpose()).eval();
  return G;
}

double max_row_sq_norm(const Eigen::MatrixXd& W) {
  if (W.size() == 0) {
    throw PreconditionError("max_row_sq_norm: empty matrix");
  }
  return W.rowwise().squaredNorm().maxCoeff();
}

}  // namespace rmt
