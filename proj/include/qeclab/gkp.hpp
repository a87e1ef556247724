#pragma once

// Displacement-exponent algebra for grid (GKP) codes: the Gaussian shear
// acting on stabilizer exponents, logical lattices, and brute-force
// shortest-uncorrectable-shift searches (square vs sheared/hexagonal).

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace qeclab {

/// The operator e^{i(c_q q + c_p p)} up to a global phase.
struct DisplacementExponent {
    double c_q = 0.0;
    double c_p = 0.0;
};

struct Lattice2D {
    // generators in (q-shift, p-shift) coordinates
    std::array<double, 2> g1{};
    std::array<double, 2> g2{};

    double det() const { return g1[0] * g2[1] - g1[1] * g2[0]; }
};

inline void validate_lattice(const Lattice2D& lat) {
    if (std::abs(lat.det()) <= 1e-12)
        throw std::invalid_argument("invalid-lattice: generators are linearly dependent");
}

/// Conjugation by the shear e^{i lambda q^2}: p -> p - 2 lambda q, q -> q.
inline DisplacementExponent shear_conjugate(const DisplacementExponent& e, double lambda) {
    return {e.c_q - 2.0 * lambda * e.c_p, e.c_p};
}

/// Logical displacement lattice: q-shift (alpha, 0) and p-shift (0, pi/alpha).
inline Lattice2D logical_lattice(double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("invalid-lattice: alpha must be positive");
    return {{alpha, 0.0}, {0.0, M_PI / alpha}};
}

inline Lattice2D scale_lattice(const Lattice2D& lat, double s) {
    return {{s * lat.g1[0], s * lat.g1[1]}, {s * lat.g2[0], s * lat.g2[1]}};
}

/// Shear acting on shift vectors. The exponent (c_q, c_p) of e^{i(c_q q + c_p p)}
/// corresponds to the phase-space shift (dq, dp) = (c_p, -c_q), so the exponent
/// map (c_q, c_p) -> (c_q - 2 lambda c_p, c_p) reads (dq, dp) -> (dq, dp + 2 lambda dq)
/// in shift coordinates.
inline Lattice2D shear_lattice(const Lattice2D& lat, double lambda) {
    auto shear_vec = [&](const std::array<double, 2>& v) {
        DisplacementExponent e = shear_conjugate({-v[1], v[0]}, lambda);
        return std::array<double, 2>{e.c_p, -e.c_q};
    };
    return {shear_vec(lat.g1), shear_vec(lat.g2)};
}

namespace detail {

inline bool in_lattice(const Lattice2D& lat, double q, double p, double tol = 1e-9) {
    // solve integer coordinates against the generators
    double det = lat.det();
    double a = (q * lat.g2[1] - p * lat.g2[0]) / det;
    double b = (lat.g1[0] * p - lat.g1[1] * q) / det;
    return std::abs(a - std::round(a)) < tol && std::abs(b - std::round(b)) < tol;
}

}  // namespace detail

struct ShortestShift {
    double length = 0.0;
    int multiplicity = 0;  // count of shortest nonzero logical vectors
};

/// Brute-force shortest nonzero vector of the logical lattice that is not a
/// stabilizer displacement, enumerating integer combinations within a safe
/// radius (stable under doubling, which the tests verify).
inline ShortestShift min_uncorrectable_shift(const Lattice2D& logical,
                                             const Lattice2D& stabilizer, int radius = 12) {
    validate_lattice(logical);
    validate_lattice(stabilizer);
    double best = std::numeric_limits<double>::infinity();
    int mult = 0;
    for (int a = -radius; a <= radius; ++a)
        for (int b = -radius; b <= radius; ++b) {
            if (a == 0 && b == 0) continue;
            double q = a * logical.g1[0] + b * logical.g2[0];
            double p = a * logical.g1[1] + b * logical.g2[1];
            if (detail::in_lattice(stabilizer, q, p)) continue;
            double len = std::hypot(q, p);
            if (len < best - 1e-9) {
                best = len;
                mult = 1;
            } else if (len < best + 1e-9) {
                ++mult;
            }
        }
    if (!std::isfinite(best))
        throw std::invalid_argument("invalid-lattice: no logical vector outside the stabilizer sublattice");
    return {best, mult};
}

struct GkpComparison {
    double square_min_shift = 0.0;
    double hex_min_shift = 0.0;
    double ratio = 0.0;
    int square_multiplicity = 0;
    int hex_multiplicity = 0;
};

/// Square lattice at alpha^2 = pi versus the sheared lattice at
/// alpha^2 = sqrt(3) pi / 2 with lambda = pi / (4 alpha^2); both unit cells
/// have symplectic area pi, so the shift lengths compare a fixed-area pair.
inline GkpComparison compare_square_hexagonal() {
    GkpComparison out;
    {
        double alpha = std::sqrt(M_PI);
        Lattice2D logical = logical_lattice(alpha);
        ShortestShift s = min_uncorrectable_shift(logical, scale_lattice(logical, 2.0));
        out.square_min_shift = s.length;
        out.square_multiplicity = s.multiplicity;
    }
    {
        double alpha = std::sqrt(std::sqrt(3.0) * M_PI / 2.0);
        double lambda = M_PI / (4.0 * alpha * alpha);
        Lattice2D logical = shear_lattice(logical_lattice(alpha), lambda);
        ShortestShift s = min_uncorrectable_shift(logical, scale_lattice(logical, 2.0));
        out.hex_min_shift = s.length;
        out.hex_multiplicity = s.multiplicity;
    }
    out.ratio = out.hex_min_shift / out.square_min_shift;
    return out;
}

}  // namespace qeclab
