#pragma once

#include <Eigen/Sparse>
#include <string>

namespace tubespec {

/// Write a sparse matrix in Matrix Market coordinate format (general,
/// 1-based indices, 17 significant digits).
void write_matrix_market(const Eigen::SparseMatrix<double>& m, const std::string& path);

/// Read a real general/symmetric Matrix Market coordinate file.
Eigen::SparseMatrix<double> read_matrix_market(const std::string& path);

} // namespace tubespec
