#pragma once

// Structured recoveries for spacing-S ladder codes: the one-level recovery
// built from mod-S projectors and restoring unitaries, and the two-level
// recovery that additionally exploits the component of S..2S-1 loss error
// words orthogonal to the lower-level ones.

#include "metrics.hpp"

namespace qeclab {

/// Normalized error words |mu_sigma^k> = E_k|mu_sigma>/norm for k = 0..2S-1.
struct ErrorWordSet {
    int spacing = 0;
    double gamma = 0.0;
    std::vector<Vec> words0, words1;    // index k
    std::vector<double> norms0, norms1;
};

inline ErrorWordSet error_words(const BosonicCode& code, int s, double gamma) {
    QuantumChannel loss = loss_channel(gamma, code.dim, std::min(2 * s - 1, code.dim - 1));
    ErrorWordSet ew;
    ew.spacing = s;
    ew.gamma = gamma;
    for (int k = 0; k < int(loss.kraus.size()); ++k) {
        Vec w0 = loss.kraus[k] * code.ket0;
        Vec w1 = loss.kraus[k] * code.ket1;
        ew.norms0.push_back(w0.norm());
        ew.norms1.push_back(w1.norm());
        ew.words0.push_back(w0.norm() > 0 ? Vec(w0 / w0.norm()) : w0);
        ew.words1.push_back(w1.norm() > 0 ? Vec(w1 / w1.norm()) : w1);
    }
    return ew;
}

namespace detail {

/// Codes handled by the structured recoveries live on two Fock ladders
/// n = 0 (mod 2S) and n = S (mod 2S).
inline void check_ladder_structure(const BosonicCode& code, int s) {
    for (int n = 0; n < code.dim; ++n) {
        int r = n % (2 * s);
        if (r != 0 && std::abs(code.ket0(n)) > 1e-12)
            throw std::invalid_argument("structure-violation: ket0 off the 0 (mod 2S) ladder");
        if (r != s && std::abs(code.ket1(n)) > 1e-12)
            throw std::invalid_argument("structure-violation: ket1 off the S (mod 2S) ladder");
    }
}

}  // namespace detail

/// One-level recovery: Kraus R_i = U_i Pi_{i mod S}, i = 0..S-1, where U_i
/// restores the error words of residue class i to the codewords and is
/// completed to an isometry on the projector range.
inline QuantumChannel one_level_recovery(const BosonicCode& code, int s, double gamma) {
    detail::check_ladder_structure(code, s);
    const int d = code.dim;
    ErrorWordSet ew = error_words(code, s, gamma);
    QuantumChannel rec{d, d, {}};
    for (int i = 0; i < s; ++i) {
        const int k = (s - i) % s;  // loss order landing in residue class i
        // source orthonormal basis of the class-i subspace, error words first;
        // error words annihilated by E_k (small-support codewords) are skipped
        std::vector<Vec> src, tgt;
        if (ew.norms0[k] > 1e-12) { src.push_back(ew.words0[k]); tgt.push_back(code.ket0); }
        if (ew.norms1[k] > 1e-12) { src.push_back(ew.words1[k]); tgt.push_back(code.ket1); }
        for (int n = 0; n < d; ++n) {
            if (n % s != i) continue;
            Vec v = Vec::Unit(d, n);
            for (const auto& b : src) v -= b.dot(v) * b;
            if (v.norm() < 1e-8) continue;
            v.normalize();
            src.push_back(v);
            // complete the target frame with the same Fock vector when
            // possible, otherwise any direction orthogonal to what we have
            Vec t = Vec::Unit(d, n);
            for (const auto& b : tgt) t -= b.dot(t) * b;
            if (t.norm() < 1e-8) {
                for (int m = 0; m < d && t.norm() < 1e-8; ++m) {
                    t = Vec::Unit(d, m);
                    for (const auto& b : tgt) t -= b.dot(t) * b;
                }
            }
            t.normalize();
            tgt.push_back(t);
        }
        Mat r = Mat::Zero(d, d);
        for (size_t j = 0; j < src.size(); ++j) r += tgt[j] * src[j].adjoint();
        rec.kraus.push_back(r);
    }
    return rec;
}

/// Two-level recovery: level one restores the k = 0..S-1 error words; level
/// two restores the normalized components of the S+k error words orthogonal
/// to the level-one ones; a completion Kraus (identity on the remaining
/// subspace) makes the map CPTP.
inline QuantumChannel two_level_recovery(const BosonicCode& code, int s, double gamma) {
    detail::check_ladder_structure(code, s);
    const int d = code.dim;
    if (2 * s - 1 > d - 1) throw std::invalid_argument("truncation-too-small for two-level recovery");
    ErrorWordSet ew = error_words(code, s, gamma);
    QuantumChannel rec{d, d, {}};
    Mat covered = Mat::Zero(d, d);  // sum of the range projectors
    for (int k = 0; k < s; ++k) {
        Mat r = Mat::Zero(d, d);
        bool any = false;
        if (ew.norms0[k] > 1e-12) {
            r += code.ket0 * ew.words0[k].adjoint();
            covered += ew.words0[k] * ew.words0[k].adjoint();
            any = true;
        }
        if (ew.norms1[k] > 1e-12) {
            r += code.ket1 * ew.words1[k].adjoint();
            covered += ew.words1[k] * ew.words1[k].adjoint();
            any = true;
        }
        if (any) rec.kraus.push_back(r);
    }
    for (int k = 0; k < s; ++k) {
        // |nu_sigmabar^k> ~ |mu_sigmabar^{S+k}> - <mu_sigma^k|mu_sigmabar^{S+k}> |mu_sigma^k>
        Vec nu1 = ew.words1[s + k] - ew.words0[k].dot(ew.words1[s + k]) * ew.words0[k];
        Vec nu0 = ew.words0[s + k] - ew.words1[k].dot(ew.words0[s + k]) * ew.words1[k];
        Mat r = Mat::Zero(d, d);
        bool any = false;
        if (nu1.norm() >= 1e-8) {
            nu1.normalize();
            r += code.ket1 * nu1.adjoint();
            covered += nu1 * nu1.adjoint();
            any = true;
        }
        if (nu0.norm() >= 1e-8) {
            nu0.normalize();
            r += code.ket0 * nu0.adjoint();
            covered += nu0 * nu0.adjoint();
            any = true;
        }
        if (any) rec.kraus.push_back(r);
    }
    rec.kraus.push_back(Mat(Mat::Identity(d, d) - covered));  // V_res = identity
    return rec;
}

/// Fidelity of the effective qubit channel decode . recovery . noise . encode
/// for a D->D recovery such as the structured ones.
inline double recovery_fidelity(const BosonicCode& code, const QuantumChannel& noise,
                                const QuantumChannel& recovery) {
    QuantumChannel rec2 = compose(decoding_channel(code), recovery);
    QuantumChannel qubit = compose(rec2, compose(noise, encoding_channel(code)));
    return channel_fidelity(qubit);
}

}  // namespace qeclab
