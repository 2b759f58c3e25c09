#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <stdexcept>
#include <string>

namespace sdlab {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
// Compressed row storage; inner indices are sorted once compressed.
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;
using Triplet = Eigen::Triplet<double>;

/// Invalid user input: bad flags, nonpositive parameters, inconsistent sizes.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Request exceeds a documented limit of the implementation (e.g. dense-path size).
struct CapabilityError : std::runtime_error {
  explicit CapabilityError(const std::string& what) : std::runtime_error(what) {}
};

/// An SPD factorization met a nonpositive pivot (signals an assembly bug).
struct DefinitenessError : std::runtime_error {
  explicit DefinitenessError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sdlab
