#include "hyproc/isometry.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <cmath>
#include <string>

#include "hyproc/rng.hpp"

namespace hyproc {

bool is_hunitary(const Mat& r, double tol) {
    if (r.rows() != r.cols() || r.rows() < 2) return false;
    if (!r.allFinite()) return false;
    if (r(0, 0) <= 0.0) return false;
    const int d = static_cast<int>(r.rows()) - 1;
    Mat hr = r;
    hr.row(0) *= -1.0;  // H * R
    const Mat residual = r.transpose() * hr - lorentz_form(d);
    return residual.cwiseAbs().maxCoeff() <= tol;
}

HUnitary::HUnitary(Mat m, double tol) : mat_(std::move(m)) {
    if (mat_.rows() != mat_.cols() || mat_.rows() < 2) {
        throw ValidationError("HUnitary: matrix must be square with size >= 2");
    }
    if (!is_hunitary(mat_, tol)) {
        throw ValidationError("HUnitary: matrix is not H-unitary within tolerance");
    }
}

HUnitary HUnitary::identity(int d) {
    if (d < 1) throw ValidationError("HUnitary::identity: d must be >= 1");
    return HUnitary(Mat::Identity(d + 1, d + 1));
}

HUnitary translation_matrix(const Vec& b) {
    if (b.size() < 1) throw ValidationError("translation_matrix: empty parameter");
    if (!b.allFinite()) throw ValidationError("translation_matrix: non-finite parameter");
    const int d = static_cast<int>(b.size());
    const double nsq = b.squaredNorm();
    const double head = std::sqrt(1.0 + nsq);
    // (sqrt(1+t) - 1)/t with its t -> 0 limit.
    const double coeff = nsq < 1e-24 ? 0.5 : (head - 1.0) / nsq;
    Mat r(d + 1, d + 1);
    r(0, 0) = head;
    r.block(0, 1, 1, d) = b.transpose();
    r.block(1, 0, d, 1) = b;
    r.block(1, 1, d, d) = Mat::Identity(d, d) + coeff * (b * b.transpose());
    return HUnitary(std::move(r));
}

HUnitary rotation_matrix(const Mat& u) {
    if (u.rows() != u.cols() || u.rows() < 1) {
        throw ValidationError("rotation_matrix: U must be square, d >= 1");
    }
    const int d = static_cast<int>(u.rows());
    const Mat gram = u.transpose() * u - Mat::Identity(d, d);
    if (gram.cwiseAbs().maxCoeff() > kHUnitaryTol) {
        throw ValidationError("rotation_matrix: U is not orthogonal within tolerance");
    }
    Mat r = Mat::Zero(d + 1, d + 1);
    r(0, 0) = 1.0;
    r.block(1, 1, d, d) = u;
    return HUnitary(std::move(r));
}

LoidPoint apply(const HUnitary& r, const LoidPoint& x) {
    if (r.dim() != x.dim()) throw ValidationError("apply: dimension mismatch");
    Vec y = r.matrix() * x.coords();
    if (!y.allFinite()) throw NumericError("apply: non-finite image");
    y[0] = std::sqrt(1.0 + y.tail(y.size() - 1).squaredNorm());
    return LoidPoint(std::move(y));
}

PointSet apply(const HUnitary& r, const PointSet& x) {
    if (r.dim() != x.dim()) throw ValidationError("apply: dimension mismatch");
    Mat y = r.matrix() * x.coords();
    if (!y.allFinite()) throw NumericError("apply: non-finite image");
    y.row(0) = (y.bottomRows(x.dim()).colwise().squaredNorm().array() + 1.0).sqrt();
    return PointSet(std::move(y));
}

HUnitary compose(const HUnitary& a, const HUnitary& b) {
    if (a.dim() != b.dim()) throw ValidationError("compose: dimension mismatch");
    Mat p = a.matrix() * b.matrix();
    if (!is_hunitary(p, kHUnitaryTol)) {
        throw NumericError("compose: product drifted off the H-unitary group");
    }
    return HUnitary(std::move(p));
}

HUnitary inverse(const HUnitary& r) {
    // H R^T H: transpose, then flip the sign of the first row and column
    // (the (0,0) entry flips twice).
    Mat inv = r.matrix().transpose();
    inv.row(0).tail(r.dim()) *= -1.0;
    inv.col(0).tail(r.dim()) *= -1.0;
    return HUnitary(std::move(inv));
}

IsometryFactors factor(const HUnitary& r) {
    const int d = r.dim();
    // First column of R_b R_U is lift(b).
    const Vec b = r.matrix().col(0).tail(d);
    const Mat residual = compose(inverse(translation_matrix(b)), r).matrix();
    const double off = std::max(residual.row(0).tail(d).cwiseAbs().maxCoeff(),
                                residual.col(0).tail(d).cwiseAbs().maxCoeff());
    if (off > 1e-6) {
        throw NumericError("factor: residual is not block-diagonal; input is not H-unitary");
    }
    Mat u = residual.block(1, 1, d, d);
    const Mat gram = u.transpose() * u - Mat::Identity(d, d);
    if (gram.cwiseAbs().maxCoeff() > kHUnitaryTol) {
        throw NumericError("factor: rotation block is too far from O(d)");
    }
    return IsometryFactors{b, polar_orthogonal(u)};
}

Mat polar_orthogonal(const Mat& m) {
    Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().transpose();
}

Mat random_orthogonal(int d, std::mt19937_64& rng) {
    if (d < 1) throw ValidationError("random_orthogonal: d must be >= 1");
    Mat a(d, d);
    for (int j = 0; j < d; ++j) a.col(j) = normal_vector(d, rng);
    Eigen::HouseholderQR<Mat> qr(a);
    Mat q = qr.householderQ();
    const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fixing the signs of R's diagonal makes Q Haar-distributed over O(d).
    for (int j = 0; j < d; ++j) {
        if (r(j, j) < 0.0) q.col(j) *= -1.0;
    }
    return q;
}

HUnitary random_hunitary(int d, std::mt19937_64& rng) {
    if (d < 1) throw ValidationError("random_hunitary: d must be >= 1");
    const Vec b = normal_vector(d, rng);
    return compose(translation_matrix(b), rotation_matrix(random_orthogonal(d, rng)));
}

} // namespace hyproc
