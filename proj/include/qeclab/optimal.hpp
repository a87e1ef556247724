#pragma once

// SDP-based optimal recovery, energy-constrained optimal encoding, the
// biconvex (seesaw) optimization of both, the optimal-Kerr binomial scan,
// and phase-derotation analysis of optimized codes.

#include "recovery.hpp"
#include "sdp.hpp"

#include <atomic>
#include <random>
#include <thread>

namespace qeclab {

struct OptimalRecovery {
    QuantumChannel recovery;  // D -> 2, decode folded in
    double fidelity = 0.0;
    SdpResult sdp;
};

/// Optimal recovery R(o): maximize Tr[X C] over Choi matrices of CPTP
/// D -> 2 maps, C built from the composed noise.encoding Kraus operators.
inline OptimalRecovery optimal_recovery(const BosonicCode& code, const QuantumChannel& noise,
                                        SdpOptions opts = {}) {
    if (noise.dim_in != code.dim || noise.dim_out != code.dim)
        throw std::invalid_argument("optimal_recovery: noise must be D -> D on the code dimension");
    QuantumChannel fused = compose(noise, encoding_channel(code));
    Mat c = fidelity_objective(fused.kraus, code.dim, 2);
    opts.real_restricted = false;
    opts.energy.reset();
    SdpResult r = maximize_fidelity_choi(c, code.dim, 2, opts);
    OptimalRecovery out;
    out.recovery = kraus_from_choi({code.dim, 2, r.x});
    out.fidelity = r.objective;
    out.sdp = std::move(r);
    return out;
}

/// Choi matrix of decode . two_level_recovery, usable as an SDP warm start.
inline Mat two_level_warm_start(const BosonicCode& code, int s, double gamma) {
    QuantumChannel r2 = compose(decoding_channel(code), two_level_recovery(code, s, gamma));
    return choi_from_kraus(r2).m;
}

struct EncodingStep {
    Mat choi;  // Choi of the 2 -> D encoding
    double fidelity = 0.0;
    double energy = 0.0;  // Tr[n S(I/2)] at the optimum
    SdpResult sdp;
};

/// Convex half-step: optimal encoding for a fixed recovery, under the
/// mean-photon cap Tr[n S(I/2)] <= n_cap.
inline EncodingStep optimal_encoding_step(const QuantumChannel& recovery,
                                          const QuantumChannel& noise, double n_cap,
                                          bool real_restricted, SdpOptions opts = {}) {
    if (n_cap <= 0.0) throw std::invalid_argument("invalid-config: energy cap must be positive");
    if (recovery.dim_in != noise.dim_out || recovery.dim_out != 2)
        throw std::invalid_argument("optimal_encoding_step: recovery must be D -> 2");
    const int d = noise.dim_in;
    QuantumChannel fixed = compose(recovery, noise);  // D -> 2
    Mat c = fidelity_objective(fixed.kraus, 2, d);
    EnergyCap cap;
    cap.weight = 0.5 * kron(number_op(d), Mat::Identity(2, 2));
    cap.cap = n_cap;
    opts.energy = cap;
    opts.real_restricted = real_restricted;
    SdpResult r = maximize_fidelity_choi(c, 2, d, opts);
    EncodingStep out;
    out.choi = r.x;
    out.fidelity = r.objective;
    out.energy = std::real((cap.weight.adjoint() * r.x).trace());
    out.sdp = std::move(r);
    return out;
}

struct OptimizationConfig {
    int dim = 20;
    double gamma = 0.1;
    double kt = 0.0;
    double n_cap = 2.0;
    bool real_restricted = false;
    int restarts = 10;
    std::uint64_t seed = 1;
    int max_rounds = 120;
    double f_tol = 1e-8;
    // inner seesaw rounds run at a loose tolerance (each half-step only has
    // to improve the objective); the returned fidelity comes from a final
    // strict validation solve at sdp_tol
    double sdp_tol = 1e-8;
    double sdp_inner_tol = 1e-6;
    int sdp_max_iter = 50000;
    int jobs = 0;  // 0 = hardware concurrency
    // extra restarts initialized from known codes (continuation / polishing);
    // they run before the random restarts and count toward the best result
    std::vector<BosonicCode> seed_codes;
};

struct RestartTrace {
    double fidelity = 0.0;
    int rounds = 0;
    bool converged = false;
    bool failed = false;
};

struct OptimizationResult {
    BosonicCode code;     // rank-2 compression of the optimal encoding
    double fidelity = 0.0;
    int rounds = 0;
    std::vector<RestartTrace> per_restart;
    bool converged = false;
    bool isometric = true;  // top-2 Kraus directions carry > 1 - 1e-6
    double energy = 0.0;
    double energy_slack = 0.0;
};

namespace detail {

/// Haar-ish random isometry into the n <= ceil(2 n_cap)+2 Fock subspace,
/// rescaled toward the vacuum until the mean-photon cap is met.
inline Mat random_initial_isometry(int d, double n_cap, bool real_restricted,
                                   std::mt19937_64& rng) {
    const int levels = std::min(d, int(std::ceil(2.0 * n_cap)) + 3);
    std::normal_distribution<double> g(0.0, 1.0);
    Mat v = Mat::Zero(d, 2);
    for (int i = 0; i < levels; ++i)
        for (int j = 0; j < 2; ++j)
            v(i, j) = real_restricted ? cplx(g(rng), 0.0) : cplx(g(rng), g(rng));
    auto orthonormalize = [](Mat m) {
        Eigen::HouseholderQR<Mat> qr(m);
        Mat q = qr.householderQ() * Mat::Identity(m.rows(), 2);
        return q;
    };
    auto energy_of = [&](const Mat& iso) {
        double e = 0.0;
        for (int n = 0; n < d; ++n)
            e += 0.5 * n * (std::norm(iso(n, 0)) + std::norm(iso(n, 1)));
        return e;
    };
    Mat iso = orthonormalize(v);
    double beta = 1.0;
    for (int it = 0; it < 400 && energy_of(iso) > n_cap; ++it) {
        beta *= 0.95;
        Mat scaled = v;
        for (int n = 0; n < d; ++n) scaled.row(n) *= std::pow(beta, n);
        iso = orthonormalize(scaled);
    }
    return iso;
}

inline RestartTrace seesaw_restart(const OptimizationConfig& cfg, const QuantumChannel& noise,
                                   std::uint64_t restart_seed, Mat& final_choi,
                                   const Mat* init = nullptr) {
    std::mt19937_64 rng(restart_seed);
    RestartTrace tr;
    SdpOptions sopt;
    sopt.tol = cfg.sdp_inner_tol;
    sopt.max_iter = cfg.sdp_max_iter;
    const double f_stop = std::max(cfg.f_tol, 2.0 * cfg.sdp_inner_tol);

    Mat iso = init ? *init
                   : random_initial_isometry(cfg.dim, cfg.n_cap, cfg.real_restricted, rng);
    QuantumChannel enc{2, cfg.dim, {iso}};
    Mat x_enc = choi_from_kraus(enc).m;
    SdpResult rsol, esol;
    esol.z = x_enc;
    double f_prev = -1.0;
    for (int round = 1; round <= cfg.max_rounds; ++round) {
        QuantumChannel enc_ch = kraus_from_choi({2, cfg.dim, x_enc});
        QuantumChannel fused = compose(noise, enc_ch);
        Mat c_rec = fidelity_objective(fused.kraus, cfg.dim, 2);
        SdpOptions ro = sopt;
        if (rsol.z.size() > 0) {  // reuse primal, dual, and penalty across rounds
            ro.warm_start = &rsol.z;
            ro.warm_start_dual = &rsol.u;
            ro.rho = rsol.rho;
        }
        rsol = maximize_fidelity_choi(c_rec, cfg.dim, 2, ro);

        // decompose the PSD iterate: the affine iterate can carry small
        // negative eigenvalues at a loose tolerance
        QuantumChannel rec = kraus_from_choi({cfg.dim, 2, rsol.z});
        SdpOptions eo = sopt;
        eo.warm_start = &esol.z;
        if (esol.u.size() > 0) {
            eo.warm_start_dual = &esol.u;
            eo.rho = esol.rho;
        }
        EncodingStep est = optimal_encoding_step(rec, noise, cfg.n_cap, cfg.real_restricted, eo);
        esol = est.sdp;
        x_enc = esol.z;
        tr.fidelity = est.fidelity;
        tr.rounds = round;
        if (f_prev >= 0.0 && std::abs(est.fidelity - f_prev) < f_stop) {
            tr.converged = true;
            break;
        }
        f_prev = est.fidelity;
    }
    final_choi = x_enc;
    return tr;
}

}  // namespace detail

/// Alternating optimization of encoding and recovery from random restarts;
/// returns the best restart with the encoding compressed back to a qubit
/// code and its fidelity re-validated under a fresh optimal recovery.
inline OptimizationResult biconvex(const OptimizationConfig& cfg, const QuantumChannel& noise) {
    const int n_seed = int(cfg.seed_codes.size());
    const int total = n_seed + cfg.restarts;
    if (cfg.n_cap <= 0.0 || cfg.restarts < 0 || total < 1)
        throw std::invalid_argument("invalid-config");
    std::vector<Mat> seeds(n_seed);
    for (int i = 0; i < n_seed; ++i) {
        const BosonicCode& sc = cfg.seed_codes[i];
        if (sc.dim != cfg.dim) throw std::invalid_argument("seed-code dimension mismatch");
        Mat iso(cfg.dim, 2);
        iso.col(0) = sc.ket0;
        iso.col(1) = sc.ket1;
        seeds[i] = iso;
    }
    std::vector<RestartTrace> traces(total);
    std::vector<Mat> chois(total);
    int jobs = cfg.jobs > 0 ? cfg.jobs : int(std::thread::hardware_concurrency());
    jobs = std::max(1, std::min(jobs, total));
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int t = 0; t < jobs; ++t)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < total; i = next.fetch_add(1)) {
                try {
                    traces[i] = detail::seesaw_restart(cfg, noise, cfg.seed + i, chois[i],
                                                       i < n_seed ? &seeds[i] : nullptr);
                } catch (const std::exception&) {
                    traces[i].failed = true;
                }
            }
        });
    for (auto& th : pool) th.join();

    int best = -1;
    for (int i = 0; i < total; ++i)
        if (!traces[i].failed && (best < 0 || traces[i].fidelity > traces[best].fidelity))
            best = i;
    if (best < 0) throw std::runtime_error("convergence-failure: all biconvex restarts failed");

    Eig e = hermitian_eig(chois[best]);
    double tr_total = e.values.sum();
    double top2 = e.values(0) + (e.values.size() > 1 ? e.values(1) : 0.0);
    Mat k1 = unvec_kraus(std::sqrt(std::max(e.values(0), 0.0)) * e.vectors.col(0), cfg.dim, 2);
    // polar orthonormalization of the dominant Kraus direction
    Eigen::JacobiSVD<Mat> svd(k1, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Mat v = svd.matrixU() * svd.matrixV().adjoint();

    OptimizationResult out;
    out.code = custom_code(v.col(0), v.col(1), cfg.real_restricted ? "rcqc" : "ccqc");
    out.isometric = top2 > (1.0 - 1e-6) * tr_total;
    out.per_restart = traces;
    out.rounds = traces[best].rounds;
    out.converged = traces[best].converged;
    SdpOptions vopt;
    vopt.tol = cfg.sdp_tol;
    vopt.max_iter = 3 * cfg.sdp_max_iter;
    out.fidelity = optimal_recovery(out.code, noise, vopt).fidelity;
    out.energy = mean_photon(out.code);
    out.energy_slack = cfg.n_cap - out.energy;
    return out;
}

struct OkbScan {
    double best_k = 0.0;
    double best_fidelity = 0.0;
    std::vector<double> k_grid;
    std::vector<double> fidelities;
};

/// Scan the Kerr coefficient K in the conjugated encoding U_K S_bin U_K^dag
/// and maximize the optimal-recovery fidelity under pure loss.
inline OkbScan okb_scan(int n, int s, double gamma, const std::vector<double>& k_grid,
                        int dim = 0, SdpOptions opts = {}) {
    if (k_grid.empty()) throw std::invalid_argument("okb_scan: empty K grid");
    if (dim == 0) dim = binomial_default_dim(n, s);
    BosonicCode bin = binomial_code(n, s, dim);
    QuantumChannel loss = loss_channel(gamma, dim, dim - 1);
    OkbScan out;
    out.k_grid = k_grid;
    for (double k : k_grid) {
        Mat uk = kerr_unitary(dim, 0.5 * k);
        BosonicCode code = custom_code(uk * bin.ket0, uk * bin.ket1, "okb");
        double f = optimal_recovery(code, loss, opts).fidelity;
        out.fidelities.push_back(f);
        if (f > out.best_fidelity) { out.best_fidelity = f; out.best_k = k; }
    }
    return out;
}

struct Derotation {
    double theta = 0.0;
    double residual = 0.0;
};

/// Find the phase rotation V_theta minimizing the largest imaginary part of
/// V_theta P_code V_theta^dag in the Fock basis.
inline Derotation derotate_to_real(const BosonicCode& code) {
    Mat p = code_projector(code);
    const int d = code.dim;
    auto residual = [&](double th) {
        double worst = 0.0;
        for (int m = 0; m < d; ++m)
            for (int n = 0; n < d; ++n)
                worst = std::max(worst,
                                 std::abs(std::imag(p(m, n) * std::exp(cplx(0.0, th * (m - n))))));
        return worst;
    };
    double best_th = 0.0, best = residual(0.0);
    const int coarse = 1440;
    for (int i = 0; i < coarse; ++i) {
        double th = 2.0 * M_PI * i / coarse;
        double r = residual(th);
        if (r < best) { best = r; best_th = th; }
    }
    double span = 2.0 * M_PI / coarse;
    for (int level = 0; level < 6; ++level) {
        double lo = best_th - span, hi = best_th + span;
        for (int i = 0; i <= 128; ++i) {
            double th = lo + (hi - lo) * i / 128.0;
            double r = residual(th);
            if (r < best) { best = r; best_th = th; }
        }
        span /= 32.0;
    }
    return {best_th, best};
}

/// Derotate a code, strip per-codeword global phases, drop the remaining
/// imaginary parts, and re-orthonormalize (polar projection). Used to polish
/// optimizer output when the noise channel commutes with phase rotations.
inline BosonicCode realify_code(const BosonicCode& code) {
    Derotation d = derotate_to_real(code);
    Mat iso(code.dim, 2);
    iso.col(0) = phase_rotation(code.dim, d.theta) * code.ket0;
    iso.col(1) = phase_rotation(code.dim, d.theta) * code.ket1;
    for (int j = 0; j < 2; ++j) {
        int arg = 0;
        for (int i = 1; i < code.dim; ++i)
            if (std::abs(iso(i, j)) > std::abs(iso(arg, j))) arg = i;
        cplx ph = iso(arg, j) / std::abs(iso(arg, j));
        iso.col(j) *= std::conj(ph);
    }
    Mat re = iso.real().cast<cplx>();
    Eigen::JacobiSVD<Mat> svd(re, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Mat v = svd.matrixU() * svd.matrixV().adjoint();
    return custom_code(v.col(0), v.col(1), code.label + "-real");
}

}  // namespace qeclab
