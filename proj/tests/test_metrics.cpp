#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <qeclab/metrics.hpp>
#include <qeclab/recovery.hpp>

#include <random>

using namespace qeclab;

namespace {

Mat random_matrix(int rows, int cols, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Mat m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = cplx(g(rng), g(rng));
    return m;
}

QuantumChannel random_qubit_channel(int r, std::mt19937_64& rng) {
    Mat stacked = random_matrix(2 * r, 2, rng);
    Eigen::HouseholderQR<Mat> qr(stacked);
    Mat q = qr.householderQ() * Mat::Identity(2 * r, 2);
    QuantumChannel ch{2, 2, {}};
    for (int k = 0; k < r; ++k) ch.kraus.push_back(q.middleRows(2 * k, 2));
    return ch;
}

BosonicCode random_code(int d, std::mt19937_64& rng) {
    Mat m = random_matrix(d, 2, rng);
    Eigen::HouseholderQR<Mat> qr(m);
    Mat q = qr.householderQ() * Mat::Identity(d, 2);
    return custom_code(q.col(0), q.col(1), "random");
}

}  // namespace

TEST_CASE("QEC matrix: two independent routes agree on random inputs") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 5; ++trial) {
        const int d = 9;
        BosonicCode code = random_code(d, rng);
        std::vector<Mat> kraus = {random_matrix(d, d, rng), random_matrix(d, d, rng),
                                  random_matrix(d, d, rng)};
        QecMatrix qa = qec_matrix(code, kraus);
        QecMatrix qb = qec_matrix_from_decomposition(code, kraus);
        for (int k = 0; k < 3; ++k)
            for (int l = 0; l < 3; ++l)
                CHECK((qa.block(k, l) - qb.block(k, l)).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("Knill-Laflamme check: sqrt(17) and spacing codes under loss powers") {
    BosonicCode s17 = sqrt17_code(8);
    QecMatrix q = qec_matrix(s17, loss_power_kraus(0.1, 8, 1));
    KlResult r = kl_check(q, 1e-10);
    CHECK(r.ok);
    CHECK(r.violation < 1e-12);

    int dim = binomial_default_dim(4, 3);
    BosonicCode b43 = binomial_code(4, 3, dim);
    CHECK(kl_check(qec_matrix(b43, loss_power_kraus(0.25, dim, 2)), 1e-9).ok);
    BosonicCode s43 = sab_code(4, 3, dim);
    CHECK(kl_check(qec_matrix(s43, loss_power_kraus(0.25, dim, 2)), 1e-9).ok);

    // a genuinely uncorrectable case must be flagged
    BosonicCode bad = binomial_code(1, 1, 8);
    CHECK_FALSE(kl_check(qec_matrix(bad, loss_power_kraus(0.25, 8, 1)), 1e-9).ok);
}

TEST_CASE("channel fidelity: trace formula equals the entangled-state route") {
    std::mt19937_64 rng(23);
    for (int r : {1, 2, 4}) {
        QuantumChannel ch = random_qubit_channel(r, rng);
        CHECK(std::abs(channel_fidelity(ch) - channel_fidelity_direct(ch)) < 1e-12);
    }
    CHECK(std::abs(channel_fidelity(identity_channel(2)) - 1.0) < 1e-15);
}

TEST_CASE("effective qubit channel of a noiseless loop is the identity") {
    int dim = binomial_default_dim(2, 2);
    BosonicCode code = binomial_code(2, 2, dim);
    EffectiveQubitChannel eff =
        effective_qubit_channel(code, identity_channel(dim), decoding_channel(code));
    REQUIRE(!eff.probs.empty());
    CHECK(std::abs(eff.probs[0] - 1.0) < 1e-10);
    Eigen::Matrix2cd k0 = eff.kraus[0];
    CHECK((k0 - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() < 1e-6);

    // a structured recovery built from damped error words is only the
    // identity up to O(gamma) when fed undamped states
    QuantumChannel rec = compose(decoding_channel(code), one_level_recovery(code, 2, 0.1));
    EffectiveQubitChannel eff1 = effective_qubit_channel(code, identity_channel(dim), rec);
    REQUIRE(!eff1.probs.empty());
    CHECK(eff1.probs[0] > 0.98);
    CHECK((eff1.kraus[0] - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() < 0.02);
}

TEST_CASE("Wigner grid against Gaussian closed forms") {
    const int d = 25;
    Mat vac = Mat::Zero(d, d);
    vac(0, 0) = 1.0;
    WignerGrid g = wigner_grid(vac, -1.0, 1.0, -1.0, 1.0, 5);
    for (int iq = 0; iq < 5; ++iq)
        for (int ip = 0; ip < 5; ++ip) {
            double expect = (2.0 / M_PI) * std::exp(-(g.q[iq] * g.q[iq] + g.p[ip] * g.p[ip]));
            CHECK(std::abs(g.w[iq * 5 + ip] - expect) < 1e-10);
        }
    // Fock |1>: W(0,0) = -2/pi (negativity at the origin)
    Mat one = Mat::Zero(d, d);
    one(1, 1) = 1.0;
    WignerGrid g1 = wigner_grid(one, 0.0, 0.0, 0.0, 0.0, 1);
    CHECK(std::abs(g1.w[0] + 2.0 / M_PI) < 1e-10);
}
