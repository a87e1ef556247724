#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <qeclab/optimal.hpp>

using namespace qeclab;

TEST_CASE("biconvex at small dimension recovers a near-trivial optimum") {
    // with gamma -> 0 the identity encoding into the lowest levels is
    // essentially optimal; the optimizer must find fidelity close to 1
    OptimizationConfig cfg;
    cfg.dim = 8;
    cfg.gamma = 0.02;
    cfg.n_cap = 1.5;
    cfg.restarts = 2;
    cfg.max_rounds = 40;
    cfg.seed = 5;
    cfg.jobs = 1;
    QuantumChannel noise = joint_loss_kerr(cfg.gamma, 0.0, cfg.dim);
    OptimizationResult r = biconvex(cfg, noise);
    CHECK(r.fidelity > 0.98);
    CHECK(r.isometric);
    CHECK(r.energy <= cfg.n_cap + 1e-6);
    CHECK(std::abs(r.code.ket0.norm() - 1.0) < 1e-10);
    CHECK(std::abs(r.code.ket0.dot(r.code.ket1)) < 1e-8);
    CHECK(int(r.per_restart.size()) == cfg.restarts);
}

TEST_CASE("biconvex is deterministic for a fixed seed") {
    OptimizationConfig cfg;
    cfg.dim = 8;
    cfg.gamma = 0.05;
    cfg.n_cap = 1.5;
    cfg.restarts = 1;
    cfg.max_rounds = 15;
    cfg.seed = 7;
    cfg.jobs = 1;
    QuantumChannel noise = joint_loss_kerr(cfg.gamma, 0.0, cfg.dim);
    OptimizationResult a = biconvex(cfg, noise);
    OptimizationResult b = biconvex(cfg, noise);
    CHECK(a.fidelity == b.fidelity);
    CHECK(max_abs(Mat(a.code.ket0 - b.code.ket0)) == 0.0);
    CHECK(max_abs(Mat(a.code.ket1 - b.code.ket1)) == 0.0);
}

TEST_CASE("real-restricted optimization returns real codewords") {
    OptimizationConfig cfg;
    cfg.dim = 8;
    cfg.gamma = 0.05;
    cfg.n_cap = 1.5;
    cfg.restarts = 1;
    cfg.max_rounds = 20;
    cfg.seed = 3;
    cfg.jobs = 1;
    cfg.real_restricted = true;
    QuantumChannel noise = joint_loss_kerr(cfg.gamma, 0.0, cfg.dim);
    OptimizationResult r = biconvex(cfg, noise);
    double imag_part = 0.0;
    for (int n = 0; n < cfg.dim; ++n)
        imag_part = std::max({imag_part, std::abs(std::imag(r.code.ket0(n))),
                              std::abs(std::imag(r.code.ket1(n)))});
    CHECK(imag_part < 1e-7);
    CHECK(r.fidelity > 0.9);
}

TEST_CASE("okb scan hits the sign-altered code at the matching Kerr strength") {
    const int n = 3, s = 2;
    const double gamma = 0.2;
    int dim = binomial_default_dim(n, s);
    double k_sab = 2.0 * M_PI / double((2 * s) * (2 * s));
    SdpOptions opts;
    opts.tol = 1e-9;
    opts.max_iter = 100000;
    OkbScan scan = okb_scan(n, s, gamma, {0.0, k_sab}, dim, opts);
    BosonicCode sab = sab_code(n, s, dim);
    QuantumChannel loss = loss_channel(gamma, dim, dim - 1);
    double f_sab = optimal_recovery(sab, loss, opts).fidelity;
    CHECK(std::abs(scan.fidelities[1] - f_sab) < 1e-8);
    // K = 0 is the plain binomial code
    BosonicCode bin = binomial_code(n, s, dim);
    double f_bin = optimal_recovery(bin, loss, opts).fidelity;
    CHECK(std::abs(scan.fidelities[0] - f_bin) < 1e-8);
}

TEST_CASE("derotation finds an exact real representative") {
    // rotate a real code by a known phase and recover it
    int dim = binomial_default_dim(2, 2);
    BosonicCode code = binomial_code(2, 2, dim);
    const double theta = 0.4321;
    Mat rot = phase_rotation(dim, theta);
    BosonicCode rotated = custom_code(rot * code.ket0, rot * code.ket1, "rotated");
    Derotation d = derotate_to_real(rotated);
    CHECK(d.residual < 1e-9);
}

TEST_CASE("random initial isometries satisfy the constraints") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 5; ++t) {
        Mat iso = detail::random_initial_isometry(12, 2.0, t % 2 == 0, rng);
        CHECK(max_abs(iso.adjoint() * iso - Mat::Identity(2, 2)) < 1e-12);
        double e = 0.0;
        for (int n = 0; n < 12; ++n)
            e += 0.5 * n * (std::norm(iso(n, 0)) + std::norm(iso(n, 1)));
        CHECK(e <= 2.0 + 1e-9);
    }
}
