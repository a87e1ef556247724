#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <qeclab/code.hpp>

using namespace qeclab;

TEST_CASE("binomial code amplitudes from the closed form") {
    // bin(2,2): |0> = (|0> + |4>)/sqrt(2), |1> = |2>
    BosonicCode c = binomial_code(2, 2, binomial_default_dim(2, 2));
    CHECK(std::abs(c.ket0(0) - 1.0 / std::sqrt(2.0)) < 1e-14);
    CHECK(std::abs(c.ket0(4) - 1.0 / std::sqrt(2.0)) < 1e-14);
    CHECK(std::abs(c.ket1(2) - 1.0) < 1e-14);
    // bin(4,1): binomial coefficients 1,4,6,4,1 under the 2^{-(N-1)/2} prefactor
    BosonicCode c4 = binomial_code(4, 1, binomial_default_dim(4, 1));
    for (int p = 0; p <= 4; ++p) {
        double coeff[] = {1, 4, 6, 4, 1};
        double amp = std::sqrt(coeff[p] / 8.0);
        Vec& side = (p % 2 == 0) ? c4.ket0 : c4.ket1;
        CHECK(std::abs(side(p) - amp) < 1e-14);
    }
    CHECK(std::abs(c.ket0.norm() - 1.0) < 1e-14);
    CHECK(std::abs(c.ket0.dot(c.ket1)) < 1e-14);
}

TEST_CASE("sign-altered binomial flips every other even rung") {
    BosonicCode b = binomial_code(4, 3, binomial_default_dim(4, 3));
    BosonicCode s = sab_code(4, 3, binomial_default_dim(4, 3));
    // p = 0, 2, 4 rungs at n = 0, 6, 12 pick up signs +, -, +
    CHECK(std::abs(s.ket0(0) - b.ket0(0)) < 1e-15);
    CHECK(std::abs(s.ket0(6) + b.ket0(6)) < 1e-15);
    CHECK(std::abs(s.ket0(12) - b.ket0(12)) < 1e-15);
    CHECK(max_abs(Mat(s.ket1 - b.ket1)) == 0.0);
    CHECK(std::abs(mean_photon(s) - mean_photon(b)) < 1e-13);
}

TEST_CASE("Kerr map carries the binomial code to the sign-altered code") {
    // U_S = exp(i pi n^2 / (2S)^2) acts as identity on |0_bin> -> |0_sab>
    // and as e^{i pi/4} on |1_bin> -> |1_sab>
    for (auto [n, s] : {std::pair{2, 2}, {3, 2}, {4, 3}}) {
        int dim = binomial_default_dim(n, s);
        BosonicCode bin = binomial_code(n, s, dim);
        BosonicCode sab = sab_code(n, s, dim);
        Mat us = kerr_unitary(dim, M_PI / (4.0 * s * s));
        CHECK(Vec(us * bin.ket0 - sab.ket0).norm() < 1e-12);
        CHECK(Vec(us * bin.ket1 - std::exp(cplx(0.0, M_PI / 4.0)) * sab.ket1).norm() < 1e-12);
    }
}

TEST_CASE("cat codewords from explicit coherent-state projection") {
    const double alpha = 1.7;
    const int s = 2, dim = 40;
    // independent oracle: build |alpha> directly, project onto n mod 2S
    Vec coh = Vec::Zero(dim);
    double log_amp = -0.5 * alpha * alpha;
    for (int n = 0; n < dim; ++n)
        coh(n) = std::exp(log_amp + n * std::log(alpha) - 0.5 * std::lgamma(n + 1.0));
    auto project = [&](int r) {
        Vec v = Vec::Zero(dim);
        for (int n = r; n < dim; n += 2 * s) v(n) = coh(n);
        return Vec(v.normalized());
    };
    BosonicCode c = cat_code(alpha, s, dim);
    CHECK(Vec(c.ket0 - project(0)).norm() < 1e-12);
    CHECK(Vec(c.ket1 - project(s)).norm() < 1e-12);
}

TEST_CASE("sign-altered cat flips alternate rungs of ket0 only") {
    const double alpha = 2.0;
    const int s = 1, dim = cat_default_dim(2.0, 1);
    BosonicCode cat = cat_code(alpha, s, dim);
    BosonicCode sac = sac_code(alpha, s, dim);
    int m = 0;
    for (int n = 0; n < dim; n += 2 * s, ++m) {
        double sign = (m % 2 == 0) ? 1.0 : -1.0;
        CHECK(std::abs(sac.ket0(n) - sign * cat.ket0(n)) < 1e-15);
    }
    CHECK(max_abs(Mat(sac.ket1 - cat.ket1)) == 0.0);
}

TEST_CASE("sqrt(17) code single-loss structure") {
    BosonicCode c = sqrt17_code(8);
    Mat a = annihilation(8);
    // equal mean photon number (sqrt(17) - 1)/2 on both codewords
    double target = (std::sqrt(17.0) - 1.0) / 2.0;
    Mat n = number_op(8);
    CHECK(std::abs(std::real(c.ket0.dot(n * c.ket0)) - target) < 1e-12);
    CHECK(std::abs(std::real(c.ket1.dot(n * c.ket1)) - target) < 1e-12);
    // exact single-loss orthogonality
    CHECK(std::abs(c.ket0.dot(a * c.ket1)) < 1e-12);
    CHECK(std::abs(c.ket1.dot(a * c.ket0)) < 1e-12);
}

TEST_CASE("custom code validation and helpers") {
    Vec v0 = Vec::Zero(4), v1 = Vec::Zero(4);
    v0(0) = 2.0;  // unnormalized on purpose
    v1(1) = -3.0;
    BosonicCode c = custom_code(v0, v1, "probe");
    CHECK(std::abs(c.ket0.norm() - 1.0) < 1e-15);
    CHECK(std::abs(c.ket1(1) + 1.0) < 1e-15);
    CHECK_THROWS(custom_code(v0, v0));  // not orthogonal

    QuantumChannel enc = encoding_channel(c);
    CHECK(enc.dim_in == 2);
    CHECK(enc.dim_out == 4);
    CHECK(is_trace_preserving(enc));
    Mat p = code_projector(c);
    CHECK(max_abs(p * p - p) < 1e-14);
    CHECK(std::abs(std::real(p.trace()) - 2.0) < 1e-14);
}

TEST_CASE("truncation guards") {
    CHECK_THROWS(binomial_code(4, 3, 12));          // D <= N*S
    CHECK_THROWS(cat_code(4.0, 1, 18));             // heavy tail at the cutoff
    CHECK(cat_default_dim(2.0, 1) > 4);             // comfortably above alpha^2
}
