#pragma once

// Bosonic code constructions: binomial, sign-altered binomial, cat,
// sign-altered cat, the sqrt(17) code, and user-supplied codewords.

#include "channel.hpp"

#include <map>
#include <string>

namespace qeclab {

struct BosonicCode {
    int dim = 0;
    Vec ket0, ket1;
    std::string label;
    std::map<std::string, double> params;
};

namespace detail {

inline void validate_code(const BosonicCode& c) {
    if (std::abs(c.ket0.norm() - 1.0) > 1e-10 || std::abs(c.ket1.norm() - 1.0) > 1e-10)
        throw std::runtime_error("invalid-code: codeword not normalized (" + c.label + ")");
    if (std::abs(c.ket0.dot(c.ket1)) > 1e-10)
        throw std::runtime_error("invalid-code: codewords not orthogonal (" + c.label + ")");
}

inline double log_binom(int n, int k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace detail

/// Default truncation for bin/sab: keeps two-loss-level error words
/// representable without truncation bias.
inline int binomial_default_dim(int n, int s) { return n * s + 2 * s + 5; }

inline BosonicCode binomial_code(int n, int s, int dim) {
    if (n < 1 || s < 1) throw std::invalid_argument("binomial_code: need N >= 1, S >= 1");
    if (dim <= n * s) throw std::invalid_argument("truncation-too-small: need D > N*S");
    BosonicCode c;
    c.dim = dim;
    c.ket0 = Vec::Zero(dim);
    c.ket1 = Vec::Zero(dim);
    const double pref = std::pow(2.0, -0.5 * (n - 1));
    for (int p = 0; p <= n; ++p) {
        double amp = pref * std::exp(0.5 * detail::log_binom(n, p));
        (p % 2 == 0 ? c.ket0 : c.ket1)(p * s) = amp;
    }
    c.label = "bin(" + std::to_string(n) + "," + std::to_string(s) + ")";
    c.params = {{"N", double(n)}, {"S", double(s)}};
    detail::validate_code(c);
    return c;
}

/// Sign-altered binomial code: extra (-1)^{p/2} on |pS>, p even.
inline BosonicCode sab_code(int n, int s, int dim) {
    BosonicCode c = binomial_code(n, s, dim);
    for (int p = 0; p <= n; p += 2)
        c.ket0(p * s) *= ((p / 2) % 2 == 0 ? 1.0 : -1.0);
    c.label = "sab(" + std::to_string(n) + "," + std::to_string(s) + ")";
    return c;
}

namespace detail {

/// Unnormalized Fock-ladder amplitudes of |C_alpha^r> on r, r+2S, r+4S, ...
/// built from the log-domain formula to avoid cancellation.
inline Vec cat_ladder(double alpha, int s, int r, int dim) {
    Vec v = Vec::Zero(dim);
    for (int n = r; n < dim; n += 2 * s)
        v(n) = std::exp(-0.5 * alpha * alpha + n * std::log(alpha) - 0.5 * std::lgamma(n + 1.0));
    return v;
}

inline void check_ladder_tail(const Vec& v, int s, const std::string& label) {
    // total probability on the top two occupied rungs of the ladder
    const int dim = int(v.size());
    double tail = 0.0;
    int found = 0;
    for (int n = dim - 1; n >= 0 && found < 2; --n) {
        if (std::abs(v(n)) > 0.0) { tail += std::norm(v(n)); ++found; }
    }
    (void)s;
    if (tail >= 1e-8)
        throw std::invalid_argument("truncation-too-small: codeword tail " + label);
}

}  // namespace detail

inline BosonicCode cat_code(double alpha, int s, int dim) {
    if (alpha <= 0.0 || s < 1) throw std::invalid_argument("cat_code: need alpha > 0, S >= 1");
    BosonicCode c;
    c.dim = dim;
    c.ket0 = detail::cat_ladder(alpha, s, 0, dim);
    c.ket1 = detail::cat_ladder(alpha, s, s, dim);
    c.ket0.normalize();
    c.ket1.normalize();
    detail::check_ladder_tail(c.ket0, s, "ket0");
    detail::check_ladder_tail(c.ket1, s, "ket1");
    c.label = "cat";
    c.params = {{"alpha", alpha}, {"S", double(s)}};
    detail::validate_code(c);
    return c;
}

/// Sign-altered cat code: (-1)^m on the |2mS> ladder of ket0.
inline BosonicCode sac_code(double alpha, int s, int dim) {
    BosonicCode c = cat_code(alpha, s, dim);
    int m = 0;
    for (int n = 0; n < dim; n += 2 * s, ++m)
        c.ket0(n) *= (m % 2 == 0 ? 1.0 : -1.0);
    c.label = "sac";
    return c;
}

/// Smallest D with codeword ladder tail below 1e-10, scanned upward from
/// ceil(alpha^2 + 8 alpha + 10).
inline int cat_default_dim(double alpha, int s) {
    const int big = std::max(256, int(alpha * alpha + 20 * alpha + 64));
    Vec l0 = detail::cat_ladder(alpha, s, 0, big);
    Vec l1 = detail::cat_ladder(alpha, s, s, big);
    l0.normalize();
    l1.normalize();
    int start = int(std::ceil(alpha * alpha + 8.0 * alpha + 10.0));
    for (int d = start; d < big; ++d) {
        double tail = 0.0;
        for (int n = d - 2 * s; n < big; ++n)
            if (n >= 0) tail += std::norm(l0(n)) + std::norm(l1(n));
        if (tail < 1e-10) return d;
    }
    throw std::runtime_error("cat_default_dim: no adequate truncation found");
}

/// The sqrt(17) code: corrects a single loss without a parity structure.
inline BosonicCode sqrt17_code(int dim) {
    if (dim < 6) throw std::invalid_argument("sqrt17_code: need D >= 6");
    const double r17 = std::sqrt(17.0);
    BosonicCode c;
    c.dim = dim;
    c.ket0 = Vec::Zero(dim);
    c.ket1 = Vec::Zero(dim);
    c.ket0(0) = std::sqrt(7.0 - r17) / std::sqrt(6.0);
    c.ket0(3) = std::sqrt(r17 - 1.0) / std::sqrt(6.0);
    c.ket1(1) = std::sqrt(9.0 - r17) / std::sqrt(6.0);
    c.ket1(4) = -std::sqrt(r17 - 3.0) / std::sqrt(6.0);
    c.label = "sqrt17";
    detail::validate_code(c);
    return c;
}

inline BosonicCode custom_code(const Vec& amps0, const Vec& amps1,
                               const std::string& label = "custom") {
    if (amps0.size() != amps1.size()) throw std::invalid_argument("custom_code: length mismatch");
    if (amps0.norm() == 0.0 || amps1.norm() == 0.0)
        throw std::invalid_argument("custom_code: zero vector");
    BosonicCode c;
    c.dim = int(amps0.size());
    c.ket0 = amps0.normalized();
    c.ket1 = amps1.normalized();
    if (std::abs(c.ket0.dot(c.ket1)) >= 1e-8)
        throw std::invalid_argument("invalid-code: codewords not orthogonal");
    c.label = label;
    return c;
}

/// Tr[n (|0><0| + |1><1|)/2].
inline double mean_photon(const BosonicCode& c) {
    double m = 0.0;
    for (int n = 0; n < c.dim; ++n)
        m += 0.5 * n * (std::norm(c.ket0(n)) + std::norm(c.ket1(n)));
    return m;
}

/// Single-Kraus isometry V = |mu0><0| + |mu1><1|, dimension 2 -> D.
inline QuantumChannel encoding_channel(const BosonicCode& c) {
    Mat v(c.dim, 2);
    v.col(0) = c.ket0;
    v.col(1) = c.ket1;
    return {2, c.dim, {v}};
}

/// Adjoint isometry V^dag as a (non-TP) D -> 2 map; composing after a
/// recovery that lands in the codespace gives the decoded qubit channel.
inline QuantumChannel decoding_channel(const BosonicCode& c) {
    Mat v(c.dim, 2);
    v.col(0) = c.ket0;
    v.col(1) = c.ket1;
    return {c.dim, 2, {Mat(v.adjoint())}};
}

inline Mat code_projector(const BosonicCode& c) {
    return c.ket0 * c.ket0.adjoint() + c.ket1 * c.ket1.adjoint();
}

}  // namespace qeclab
