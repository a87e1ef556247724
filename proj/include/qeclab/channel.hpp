#pragma once

// Quantum channel calculus: loss, Kerr, joint loss+Kerr, composition,
// Choi/Kraus conversion. Conventions, fixed once:
//   * vectorization of density matrices is column-stacking, so the
//     superoperator of rho -> A rho B is  B^T (x) A;
//   * Choi matrix is X = sum_{ij} E(|i><j|) (x) |i><j|  (output-major
//     Kronecker index a*dim_in + i), equivalently X = sum_k w_k w_k^dag
//     with w_k the row-major vectorization of Kraus operator K_k.

#include "fock.hpp"

#include <vector>

namespace qeclab {

struct QuantumChannel {
    int dim_in  = 0;
    int dim_out = 0;
    std::vector<Mat> kraus;  // each dim_out x dim_in
};

struct ChoiMatrix {
    int dim_in  = 0;
    int dim_out = 0;
    Mat m;  // (dim_out*dim_in) square
};

inline Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

/// Row-major vectorization of a Kraus operator, index a*dim_in + i.
inline Vec vec_kraus(const Mat& k) {
    Vec v(k.rows() * k.cols());
    for (int a = 0; a < k.rows(); ++a)
        for (int i = 0; i < k.cols(); ++i) v(a * k.cols() + i) = k(a, i);
    return v;
}

inline Mat unvec_kraus(const Vec& v, int dim_out, int dim_in) {
    Mat k(dim_out, dim_in);
    for (int a = 0; a < dim_out; ++a)
        for (int i = 0; i < dim_in; ++i) k(a, i) = v(a * dim_in + i);
    return k;
}

inline ChoiMatrix choi_from_kraus(const QuantumChannel& ch) {
    const int n = ch.dim_in * ch.dim_out;
    ChoiMatrix x{ch.dim_in, ch.dim_out, Mat::Zero(n, n)};
    for (const auto& k : ch.kraus) {
        Vec w = vec_kraus(k);
        x.m.noalias() += w * w.adjoint();
    }
    return x;
}

/// Partial trace of a Choi matrix over the output factor; yields a
/// dim_in x dim_in matrix (identity for trace-preserving channels).
inline Mat choi_partial_trace_out(const ChoiMatrix& x) {
    Mat t = Mat::Zero(x.dim_in, x.dim_in);
    for (int a = 0; a < x.dim_out; ++a)
        t += x.m.block(a * x.dim_in, a * x.dim_in, x.dim_in, x.dim_in);
    return t;
}

inline QuantumChannel kraus_from_choi(const ChoiMatrix& x, double cutoff = 1e-12) {
    Eig e = hermitian_eig(x.m);
    if (e.values.minCoeff() < -1e-8)
        throw std::runtime_error("not-a-channel: Choi matrix has eigenvalue " +
                                 std::to_string(e.values.minCoeff()));
    QuantumChannel ch{x.dim_in, x.dim_out, {}};
    for (int i = 0; i < e.values.size(); ++i) {
        if (e.values(i) <= cutoff) continue;
        Vec w = std::sqrt(e.values(i)) * e.vectors.col(i);
        ch.kraus.push_back(unvec_kraus(w, x.dim_out, x.dim_in));
    }
    return ch;
}

/// Column-stacking superoperator, (dim_out^2) x (dim_in^2).
inline Mat superop(const QuantumChannel& ch) {
    Mat s = Mat::Zero(ch.dim_out * ch.dim_out, ch.dim_in * ch.dim_in);
    for (const auto& k : ch.kraus) s += kron(k.conjugate(), k);
    return s;
}

/// Reshuffle a column-stacking superoperator into a Choi matrix.
inline ChoiMatrix choi_from_superop(const Mat& s, int dim_in, int dim_out) {
    ChoiMatrix x{dim_in, dim_out, Mat::Zero(dim_out * dim_in, dim_out * dim_in)};
    for (int a = 0; a < dim_out; ++a)
        for (int i = 0; i < dim_in; ++i)
            for (int b = 0; b < dim_out; ++b)
                for (int j = 0; j < dim_in; ++j)
                    x.m(a * dim_in + i, b * dim_in + j) = s(b * dim_out + a, j * dim_in + i);
    return x;
}

inline Mat apply_channel(const QuantumChannel& ch, const Mat& rho) {
    if (rho.rows() != ch.dim_in || rho.cols() != ch.dim_in)
        throw std::invalid_argument("apply: dimension mismatch");
    Mat out = Mat::Zero(ch.dim_out, ch.dim_out);
    for (const auto& k : ch.kraus) out.noalias() += k * rho * k.adjoint();
    return out;
}

inline QuantumChannel identity_channel(int dim) {
    return {dim, dim, {Mat::Identity(dim, dim)}};
}

/// a after b. Kraus products are pruned through the Choi matrix when the
/// list grows beyond dim_in*dim_out.
inline QuantumChannel compose(const QuantumChannel& a, const QuantumChannel& b) {
    if (a.dim_in != b.dim_out)
        throw std::invalid_argument("compose: dimension mismatch");
    QuantumChannel out{b.dim_in, a.dim_out, {}};
    out.kraus.reserve(a.kraus.size() * b.kraus.size());
    for (const auto& ka : a.kraus)
        for (const auto& kb : b.kraus) out.kraus.push_back(ka * kb);
    if (int(out.kraus.size()) > out.dim_in * out.dim_out)
        out = kraus_from_choi(choi_from_kraus(out));
    return out;
}

/// Excitation-loss Kraus operators E_k = sqrt(gamma^k/k!) (1-gamma)^{n/2} a^k.
inline QuantumChannel loss_channel(double gamma, int dim, int k_max) {
    if (gamma < 0.0 || gamma >= 1.0) throw std::invalid_argument("invalid-rate: need 0 <= gamma < 1");
    if (k_max < 0 || k_max > dim - 1) throw std::invalid_argument("invalid k_max");
    Mat damp = Mat::Zero(dim, dim);
    for (int n = 0; n < dim; ++n) damp(n, n) = std::pow(1.0 - gamma, 0.5 * n);
    Mat a = annihilation(dim);
    QuantumChannel ch{dim, dim, {}};
    Mat ak = Mat::Identity(dim, dim);
    double logfac = 0.0;
    for (int k = 0; k <= k_max; ++k) {
        if (k > 0) { ak = a * ak; logfac += std::log(double(k)); }
        double scale = std::exp(0.5 * (k * std::log(gamma > 0 ? gamma : 1.0) - logfac));
        if (gamma == 0.0 && k > 0) scale = 0.0;
        ch.kraus.push_back(scale * damp * ak);
    }
    return ch;
}

/// First-order loss error operators sqrt(gamma^k/k!) a^k, without the
/// (1-gamma)^{n/2} damping weight. This is the error set under which the
/// spacing codes satisfy the Knill-Laflamme conditions exactly.
inline std::vector<Mat> loss_power_kraus(double gamma, int dim, int k_max) {
    Mat a = annihilation(dim);
    std::vector<Mat> out;
    Mat ak = Mat::Identity(dim, dim);
    double logfac = 0.0;
    for (int k = 0; k <= k_max; ++k) {
        if (k > 0) { ak = a * ak; logfac += std::log(double(k)); }
        double scale = (k == 0) ? 1.0 : std::exp(0.5 * (k * std::log(gamma) - logfac));
        out.push_back(scale * ak);
    }
    return out;
}

/// Single-Kraus Kerr channel, unitary e^{(1/2) i Kt n^2}.
inline QuantumChannel kerr_channel(double kt, int dim) {
    return {dim, dim, {kerr_unitary(dim, 0.5 * kt)}};
}

/// Joint loss+Kerr channel: exponential of the vectorized generator
///   (i/2) Kt [n^2, .] - ln(1-gamma) (a . a^dag - (1/2){n, .}).
inline QuantumChannel joint_loss_kerr(double gamma, double kt, int dim) {
    if (gamma < 0.0 || gamma >= 1.0) throw std::invalid_argument("invalid-rate: need 0 <= gamma < 1");
    Mat a  = annihilation(dim);
    Mat n  = number_op(dim);
    Mat n2 = n * n;
    Mat id = Mat::Identity(dim, dim);
    Mat g = cplx(0.0, 0.5 * kt) * (kron(id, n2) - kron(n2, id));
    g -= std::log(1.0 - gamma) *
         (kron(a, a) - 0.5 * (kron(id, n) + kron(n, id)));
    Mat s = matrix_exp(g);
    return kraus_from_choi(choi_from_superop(s, dim, dim));
}

/// Residual of the phase-rotation covariance N(V rho V^dag) = V N(rho) V^dag.
inline double covariance_residual(const QuantumChannel& ch, double theta, const Mat& rho) {
    Mat v = phase_rotation(ch.dim_in, theta);
    Mat rotated = v * rho * v.adjoint();
    Mat lhs = apply_channel(ch, rotated);
    Mat rhs = v * apply_channel(ch, rho) * v.adjoint();
    return max_abs(lhs - rhs);
}

inline bool is_trace_preserving(const QuantumChannel& ch, double tol = 1e-8) {
    Mat s = Mat::Zero(ch.dim_in, ch.dim_in);
    for (const auto& k : ch.kraus) s += k.adjoint() * k;
    return max_abs(s - Mat::Identity(ch.dim_in, ch.dim_in)) < tol;
}

}  // namespace qeclab
