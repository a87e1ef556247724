#pragma once

// Truncated-Fock-space linear algebra: ladder operators, diagonal
// unitaries, projectors, Hermitian eigendecomposition, matrix exponential.

#include <Eigen/Dense>
#include <complex>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qeclab {

using cplx = std::complex<double>;
using Mat  = Eigen::MatrixXcd;
using Vec  = Eigen::VectorXcd;

inline double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

/// Annihilation operator on |0..D-1>, <n-1|a|n> = sqrt(n).
inline Mat annihilation(int dim) {
    if (dim < 2) throw std::invalid_argument("invalid-dimension: ladder operators need D >= 2");
    Mat a = Mat::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(double(n));
    return a;
}

/// Number operator diag(0..D-1).
inline Mat number_op(int dim) {
    if (dim < 1) throw std::invalid_argument("invalid-dimension");
    Mat n = Mat::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) n(k, k) = double(k);
    return n;
}

/// Diagonal unitary with entries e^{i c n^2}.
inline Mat kerr_unitary(int dim, double c) {
    if (dim < 1) throw std::invalid_argument("invalid-dimension");
    Mat u = Mat::Zero(dim, dim);
    for (int n = 0; n < dim; ++n)
        u(n, n) = std::exp(cplx(0.0, c * double(n) * double(n)));
    return u;
}

/// Phase rotation e^{i theta n}.
inline Mat phase_rotation(int dim, double theta) {
    Mat u = Mat::Zero(dim, dim);
    for (int n = 0; n < dim; ++n) u(n, n) = std::exp(cplx(0.0, theta * n));
    return u;
}

/// Projector onto Fock states with n = r (mod S).
inline Mat mod_projector(int dim, int r, int S) {
    if (S < 1 || r < 0 || r >= S) throw std::invalid_argument("invalid-residue: need 0 <= r < S");
    Mat p = Mat::Zero(dim, dim);
    for (int n = 0; n < dim; ++n)
        if (n % S == r) p(n, n) = 1.0;
    return p;
}

struct Eig {
    Eigen::VectorXd values;  // descending
    Mat vectors;             // orthonormal columns, same order
};

/// Hermitian eigendecomposition, eigenvalues sorted descending.
inline Eig hermitian_eig(const Mat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("contract-violation: non-square matrix");
    if (max_abs(m - m.adjoint()) > 1e-10 * std::max(1.0, max_abs(m)))
        throw std::invalid_argument("contract-violation: non-Hermitian input to hermitian_eig");
    Eigen::SelfAdjointEigenSolver<Mat> es((m + m.adjoint()) / 2.0);
    if (es.info() != Eigen::Success) throw std::runtime_error("hermitian_eig failed to converge");
    const int d = int(m.rows());
    Eig out;
    out.values = Eigen::VectorXd(d);
    out.vectors = Mat(d, d);
    for (int i = 0; i < d; ++i) {  // Eigen returns ascending order
        out.values(i)      = es.eigenvalues()(d - 1 - i);
        out.vectors.col(i) = es.eigenvectors().col(d - 1 - i);
    }
    return out;
}

/// e^M via Pade-13 with scaling and squaring (Higham 2005).
inline Mat matrix_exp(const Mat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("matrix_exp needs a square matrix");
    if (!m.allFinite()) throw std::invalid_argument("matrix_exp: non-finite entries");
    const int d = int(m.rows());
    static const double b[] = {
        64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
        1187353796428800.0,  129060195264000.0,   10559470521600.0,
        670442572800.0,      33522128640.0,       1323241920.0,
        40840800.0,          960960.0,            16380.0, 182.0, 1.0};
    const double theta13 = 5.371920351148152;
    double norm1 = m.cwiseAbs().colwise().sum().maxCoeff();
    int s = 0;
    if (norm1 > theta13)
        s = int(std::ceil(std::log2(norm1 / theta13)));
    Mat a = m / std::pow(2.0, s);

    Mat id = Mat::Identity(d, d);
    Mat a2 = a * a;
    Mat a4 = a2 * a2;
    Mat a6 = a4 * a2;
    Mat u = a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) +
                 b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
    Mat v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) +
            b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
    Mat r = (v - u).partialPivLu().solve(v + u);
    for (int i = 0; i < s; ++i) r = r * r;
    return r;
}

}  // namespace qeclab
