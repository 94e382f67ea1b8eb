#include "quiverconn/linalg.hpp"

#include <algorithm>

namespace qc {

namespace {

std::size_t rank_from(const Eigen::VectorXd& sv) {
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double cutoff = kRankTolerance * sv(0);
  std::size_t r = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv(k) > cutoff) ++r;
  return r;
}

}  // namespace

std::size_t numerical_rank(const CMatrix& m) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return rank_from(svd.singularValues());
}

CMatrix column_space_basis(const CMatrix& m) {
  if (m.size() == 0) return CMatrix(m.rows(), 0);
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU);
  const auto r = static_cast<Eigen::Index>(rank_from(svd.singularValues()));
  return svd.matrixU().leftCols(r);
}

CMatrix kernel_basis(const CMatrix& m) {
  if (m.cols() == 0) return CMatrix(0, 0);
  if (m.rows() == 0) return CMatrix::Identity(m.cols(), m.cols());
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullV);
  const auto r = static_cast<Eigen::Index>(rank_from(svd.singularValues()));
  return svd.matrixV().rightCols(m.cols() - r);
}

std::pair<double, double> singular_value_range(const CMatrix& m) {
  if (m.size() == 0) return {0.0, 0.0};
  Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& sv = svd.singularValues();
  return {sv(sv.size() - 1), sv(0)};
}

double max_abs(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

}  // namespace qc
