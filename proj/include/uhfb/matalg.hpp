#pragma once

/// @file matalg.hpp
/// Dense complex matrices: matrix units, the Kronecker product with its
/// 1-based index convention, density-matrix validation and span ranks.
/// Eigen supplies decompositions; the index conventions live here.

#include <Eigen/Dense>
#include <vector>

#include "uhfb/common.hpp"

namespace uhfb {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

/// Matrix unit E^{(n)}_{i,j}, 1-based indices.
inline Mat matrix_unit(Eigen::Index n, Eigen::Index i, Eigen::Index j) {
    require(n >= 1 && i >= 1 && i <= n && j >= 1 && j <= n, "matrix_unit: index out of range");
    Mat e = Mat::Zero(n, n);
    e(i - 1, j - 1) = 1.0;
    return e;
}

/// Kronecker product: for A n x n and B m x m,
/// (A kron B)_{m(i-1)+i', m(j-1)+j'} = A_{i,j} B_{i',j'} (1-based).
/// Defined for rectangular blocks as well.
inline Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline Vec kron_vec(const Vec& x, const Vec& y) {
    Vec out(x.size() * y.size());
    for (Eigen::Index i = 0; i < x.size(); ++i)
        out.segment(i * y.size(), y.size()) = x(i) * y;
    return out;
}

inline bool all_finite(const Mat& m) { return m.allFinite(); }

/// Hermitian + positive semidefinite + unit trace, each within tol.
/// PSD is decided by a full eigendecomposition of the Hermitian part.
inline bool is_density(const Mat& t, double tol = 1e-10) {
    if (t.rows() != t.cols() || t.rows() == 0 || !all_finite(t)) return false;
    const double scale = std::max(1.0, t.cwiseAbs().maxCoeff());
    if ((t - t.adjoint()).cwiseAbs().maxCoeff() > tol * scale) return false;
    if (std::abs(t.trace() - Complex(1.0, 0.0)) > tol) return false;
    Eigen::SelfAdjointEigenSolver<Mat> es((t + Mat(t.adjoint())) / 2.0);
    require(es.info() == Eigen::Success, "is_density: eigendecomposition failed");
    return es.eigenvalues().minCoeff() > -tol;
}

/// Validated density matrix for one tensor site.
class DensityMatrix {
public:
    explicit DensityMatrix(Mat t, double tol = 1e-10) : mat_(std::move(t)) {
        require(is_density(mat_, tol), "DensityMatrix: not hermitian/PSD/trace-1 within tolerance");
    }
    const Mat& mat() const { return mat_; }
    Eigen::Index size() const { return mat_.rows(); }

private:
    Mat mat_;
};

/// Dimension of the linear span of a family of equally sized matrices.
/// Matrices are flattened to rows and the rank is the number of singular
/// values above tol relative to the largest; the empty family has rank 0.
inline Eigen::Index span_rank(const std::vector<Mat>& ms, double tol = 1e-10) {
    if (ms.empty()) return 0;
    const Eigen::Index r = ms[0].rows(), c = ms[0].cols();
    Mat stack(static_cast<Eigen::Index>(ms.size()), r * c);
    for (std::size_t k = 0; k < ms.size(); ++k) {
        require(ms[k].rows() == r && ms[k].cols() == c, "span_rank: size mismatch");
        stack.row(static_cast<Eigen::Index>(k)) = ms[k].reshaped().transpose();
    }
    Eigen::JacobiSVD<Mat> svd(stack);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) <= 0.0) return 0;
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > tol * sv(0)) ++rank;
    return rank;
}

/// Largest singular value.
inline double operator_norm(const Mat& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Mat> svd(m);
    return svd.singularValues()(0);
}

inline double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

} // namespace uhfb
