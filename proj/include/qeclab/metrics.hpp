#pragma once

// QEC matrix, Knill-Laflamme checks, channel fidelity, effective-qubit
// channel Kraus decomposition, Wigner grids.

#include "code.hpp"

#include <algorithm>

namespace qeclab {

/// M_{kl,sigma sigma'} = <mu_sigma| E_k^dag E_l |mu_sigma'>.
struct QecMatrix {
    int k_max = 0;
    std::vector<Eigen::Matrix2cd> blocks;  // index k*(k_max+1)+l

    const Eigen::Matrix2cd& block(int k, int l) const { return blocks[k * (k_max + 1) + l]; }
};

inline QecMatrix qec_matrix(const BosonicCode& code, const std::vector<Mat>& kraus) {
    const int m = int(kraus.size());
    QecMatrix q;
    q.k_max = m - 1;
    q.blocks.resize(m * m);
    std::vector<Vec> e0(m), e1(m);
    for (int k = 0; k < m; ++k) { e0[k] = kraus[k] * code.ket0; e1[k] = kraus[k] * code.ket1; }
    for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
            Eigen::Matrix2cd b;
            b(0, 0) = e0[k].dot(e0[l]);
            b(0, 1) = e0[k].dot(e1[l]);
            b(1, 0) = e1[k].dot(e0[l]);
            b(1, 1) = e1[k].dot(e1[l]);
            q.blocks[k * m + l] = b;
        }
    return q;
}

/// Independent route: the double sum over the codeword magnitude/phase
/// decomposition c_n^sigma e^{i theta_n^sigma}.
inline QecMatrix qec_matrix_from_decomposition(const BosonicCode& code,
                                               const std::vector<Mat>& kraus) {
    const int m = int(kraus.size());
    const int d = code.dim;
    auto support = [&](const Vec& v) {
        std::vector<int> s;
        for (int n = 0; n < d; ++n)
            if (std::abs(v(n)) > 0.0) s.push_back(n);
        return s;
    };
    const Vec* kets[2] = {&code.ket0, &code.ket1};
    std::vector<int> supp[2] = {support(code.ket0), support(code.ket1)};
    QecMatrix q;
    q.k_max = m - 1;
    q.blocks.resize(m * m);
    for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
            Mat ekl = kraus[k].adjoint() * kraus[l];
            Eigen::Matrix2cd b;
            for (int s = 0; s < 2; ++s)
                for (int t = 0; t < 2; ++t) {
                    cplx acc = 0.0;
                    for (int mm : supp[s])
                        for (int nn : supp[t]) {
                            double cm = std::abs((*kets[s])(mm));
                            double cn = std::abs((*kets[t])(nn));
                            double thm = std::arg((*kets[s])(mm));
                            double thn = std::arg((*kets[t])(nn));
                            acc += cm * cn * std::exp(cplx(0.0, thn - thm)) * ekl(mm, nn);
                        }
                    b(s, t) = acc;
                }
            q.blocks[k * m + l] = b;
        }
    return q;
}

struct KlResult {
    bool ok = false;
    double violation = 0.0;
};

/// Max deviation of each 2x2 block from c_{kl} I, with c_{kl} the mean of
/// the block diagonal.
inline KlResult kl_check(const QecMatrix& q, double tol) {
    double worst = 0.0;
    for (int k = 0; k <= q.k_max; ++k)
        for (int l = 0; l <= q.k_max; ++l) {
            const auto& b = q.block(k, l);
            cplx c = 0.5 * (b(0, 0) + b(1, 1));
            Eigen::Matrix2cd dev = b - c * Eigen::Matrix2cd::Identity();
            worst = std::max(worst, dev.cwiseAbs().maxCoeff());
        }
    return {worst < tol, worst};
}

/// Channel fidelity F = (1/4) sum_k |Tr K_k|^2 of a qubit channel.
inline double channel_fidelity(const QuantumChannel& ch) {
    if (ch.dim_in != 2 || ch.dim_out != 2)
        throw std::invalid_argument("invalid-dimension: channel_fidelity needs a qubit channel");
    double f = 0.0;
    for (const auto& k : ch.kraus) f += 0.25 * std::norm(k.trace());
    return f;
}

/// Direct evaluation <Psi| (I (x) E)(|Psi><Psi|) |Psi> with the maximally
/// entangled |Psi>; independent route for consistency checks.
inline double channel_fidelity_direct(const QuantumChannel& ch) {
    if (ch.dim_in != 2 || ch.dim_out != 2)
        throw std::invalid_argument("invalid-dimension");
    Vec psi = Vec::Zero(4);
    psi(0) = psi(3) = 1.0 / std::sqrt(2.0);  // (|00>+|11>)/sqrt(2)
    Mat rho = psi * psi.adjoint();
    Mat out = Mat::Zero(4, 4);
    Mat id2 = Mat::Identity(2, 2);
    for (const auto& k : ch.kraus) {
        Mat kk = kron(id2, k);
        out += kk * rho * kk.adjoint();
    }
    return std::real(psi.dot(out * psi));
}

struct EffectiveQubitChannel {
    std::vector<Eigen::Matrix2cd> kraus;  // descending probability
    std::vector<double> probs;            // p_i = Tr[K_i^dag K_i]/2
    bool excess = false;                  // more than 4 nonzero directions
};

/// Canonical Kraus decomposition of decode . recovery . noise . encode.
inline EffectiveQubitChannel effective_qubit_channel(const BosonicCode& code,
                                                     const QuantumChannel& noise,
                                                     const QuantumChannel& recovery) {
    if (recovery.dim_out != 2 || recovery.dim_in != noise.dim_out || noise.dim_in != code.dim)
        throw std::invalid_argument("effective_qubit_channel: dims must chain 2->D->D->2");
    QuantumChannel fused = compose(recovery, compose(noise, encoding_channel(code)));
    Eig e = hermitian_eig(choi_from_kraus(fused).m);
    EffectiveQubitChannel out;
    int live = 0;
    for (int i = 0; i < e.values.size(); ++i)
        if (e.values(i) > 1e-10) ++live;
    out.excess = live > 4;
    for (int i = 0; i < e.values.size(); ++i) {
        if (e.values(i) <= 1e-10 && int(out.kraus.size()) >= 4 && !out.excess) break;
        if (e.values(i) <= 1e-10 && out.excess && int(out.kraus.size()) >= live) break;
        if (e.values(i) <= 0.0) break;
        Eigen::Matrix2cd k = unvec_kraus(std::sqrt(e.values(i)) * e.vectors.col(i), 2, 2);
        // global phase: largest-magnitude entry made real
        int r = 0, c = 0;
        k.cwiseAbs().maxCoeff(&r, &c);
        cplx z = k(r, c);
        if (std::abs(z) > 0.0) k *= std::conj(z) / std::abs(z);
        out.kraus.push_back(k);
        out.probs.push_back(0.5 * std::real((k.adjoint() * k).trace()));
    }
    std::vector<int> idx(out.kraus.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = int(i);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int a, int b) { return out.probs[a] > out.probs[b]; });
    EffectiveQubitChannel sorted;
    sorted.excess = out.excess;
    for (int i : idx) {
        sorted.kraus.push_back(out.kraus[i]);
        sorted.probs.push_back(out.probs[i]);
    }
    return sorted;
}

struct WignerGrid {
    std::vector<double> q, p;  // axis values
    std::vector<double> w;     // row-major, w[iq*p.size()+ip]
};

/// W(alpha) = (2/pi) Tr[rho D(alpha) Pi D(alpha)^dag], alpha = (q+ip)/sqrt(2).
inline WignerGrid wigner_grid(const Mat& rho, double q_min, double q_max,
                              double p_min, double p_max, int n_points) {
    if (max_abs(rho - rho.adjoint()) > 1e-8 || std::real(rho.trace()) > 1.0 + 1e-8)
        throw std::invalid_argument("wigner_grid: need a Hermitian rho with trace <= 1");
    const int d = int(rho.rows());
    Mat a = annihilation(d);
    Mat parity = Mat::Zero(d, d);
    for (int n = 0; n < d; ++n) parity(n, n) = (n % 2 == 0 ? 1.0 : -1.0);
    WignerGrid g;
    for (int i = 0; i < n_points; ++i)
        g.q.push_back(q_min + (q_max - q_min) * i / std::max(1, n_points - 1));
    for (int i = 0; i < n_points; ++i)
        g.p.push_back(p_min + (p_max - p_min) * i / std::max(1, n_points - 1));
    g.w.resize(n_points * n_points);
    for (int iq = 0; iq < n_points; ++iq)
        for (int ip = 0; ip < n_points; ++ip) {
            cplx alpha(g.q[iq] / std::sqrt(2.0), g.p[ip] / std::sqrt(2.0));
            Mat disp = matrix_exp(alpha * a.adjoint() - std::conj(alpha) * a);
            g.w[iq * n_points + ip] =
                (2.0 / M_PI) * std::real((rho * disp * parity * disp.adjoint()).trace());
        }
    return g;
}

}  // namespace qeclab
