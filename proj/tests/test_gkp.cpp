#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <qeclab/gkp.hpp>

using namespace qeclab;

TEST_CASE("shear conjugation on displacement exponents") {
    // S1 = e^{-ip alpha} has exponent (c_q, c_p) = (0, -alpha); conjugating by
    // e^{i lambda q^2} with lambda = pi/(4 alpha^2) must give
    // S1' = e^{-i(p - pi q / (2 alpha^2)) alpha}, i.e. c_q = pi/(2 alpha)
    for (double alpha : {1.0, std::sqrt(M_PI), 1.7}) {
        double lambda = M_PI / (4.0 * alpha * alpha);
        DisplacementExponent e = shear_conjugate({0.0, -alpha}, lambda);
        CHECK(std::abs(e.c_q - M_PI / (2.0 * alpha)) < 1e-15);
        CHECK(e.c_p == -alpha);
    }
    // a pure q-displacement exponent is untouched (S2 = e^{2 pi i q / alpha})
    DisplacementExponent s2 = shear_conjugate({2.0 * M_PI / 1.3, 0.0}, 0.77);
    CHECK(s2.c_q == 2.0 * M_PI / 1.3);
    CHECK(s2.c_p == 0.0);
}

TEST_CASE("shear preserves lattice area and fixes the q axis") {
    Lattice2D lat = logical_lattice(std::sqrt(M_PI));
    CHECK(std::abs(std::abs(lat.det()) - M_PI) < 1e-14);
    for (double lambda : {0.1, M_PI / 4.0, -0.8}) {
        Lattice2D sheared = shear_lattice(lat, lambda);
        CHECK(std::abs(std::abs(sheared.det()) - M_PI) < 1e-12);
        // the pure q-shift generator is invariant; the p-shift gains dp slope 0
        CHECK(sheared.g1[0] == lat.g1[0]);
        CHECK(sheared.g1[1] == lat.g1[1] + 2.0 * lambda * lat.g1[0]);
    }
}

TEST_CASE("square lattice shortest uncorrectable shift") {
    Lattice2D logical = logical_lattice(std::sqrt(M_PI));
    ShortestShift s = min_uncorrectable_shift(logical, scale_lattice(logical, 2.0));
    CHECK(std::abs(s.length - std::sqrt(M_PI)) < 1e-12);
    CHECK(s.multiplicity == 4);
}

TEST_CASE("brute-force search is stable under radius doubling") {
    double alpha = std::sqrt(std::sqrt(3.0) * M_PI / 2.0);
    Lattice2D logical = shear_lattice(logical_lattice(alpha), M_PI / (4.0 * alpha * alpha));
    Lattice2D stab = scale_lattice(logical, 2.0);
    ShortestShift a = min_uncorrectable_shift(logical, stab, 12);
    ShortestShift b = min_uncorrectable_shift(logical, stab, 24);
    CHECK(a.length == b.length);
    CHECK(a.multiplicity == b.multiplicity);
}

TEST_CASE("hexagonal versus square comparison") {
    GkpComparison g = compare_square_hexagonal();
    CHECK(std::abs(g.ratio - std::pow(4.0 / 3.0, 0.25)) < 1e-3);
    CHECK(g.square_multiplicity == 4);
    CHECK(g.hex_multiplicity == 6);
    CHECK(g.hex_min_shift > g.square_min_shift);
}

TEST_CASE("degenerate lattices are rejected") {
    CHECK_THROWS(validate_lattice(Lattice2D{{1.0, 2.0}, {2.0, 4.0}}));
    CHECK_THROWS(logical_lattice(0.0));
}
