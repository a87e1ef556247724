#pragma once

// First-order operator-splitting (ADMM) solver for channel-fidelity SDPs:
//
//   maximize   Tr[X C]
//   subject to X >= 0,  Tr_out X = I_in,
//              optionally Tr[W X] <= cap   (energy constraint)
//              optionally X real symmetric (real-restricted codes)
//
// over Choi matrices X of CPTP maps dim_in -> dim_out in the convention of
// channel.hpp. Alternates an affine projection (TP constraint, plus the
// energy hyperplane when active) with a PSD cone projection, with
// over-relaxation and residual-balancing penalty updates.

#include "channel.hpp"

#include <functional>
#include <limits>
#include <optional>

namespace qeclab {

struct EnergyCap {
    Mat weight;  // Hermitian W, constraint Tr[W X] <= cap
    double cap = 0.0;
};

struct SdpOptions {
    double tol      = 1e-9;
    int max_iter    = 50000;
    double rho      = 1.0;
    // Relaxed-iterate weight. On these degenerate-face problems any
    // alpha != 1 was observed to settle into a translation limit cycle
    // (constant residuals, linearly drifting objective), so the default
    // is the unrelaxed scheme; the knob stays for experimentation.
    double relax    = 1.0;
    bool real_restricted = false;
    int balance_every = 100;   // residual-balancing cadence; 0 disables
    int anderson_memory = 10;  // fixed-point acceleration history; 0 disables
    std::optional<EnergyCap> energy;
    const Mat* warm_start = nullptr;       // primal iterate Z
    const Mat* warm_start_dual = nullptr;  // scaled dual U (pairs with warm_start)
    // optional per-iteration trace: (iter, primal, dual, objective)
    std::function<void(int, double, double, double)> trace;
};

struct SdpResult {
    Mat x;             // affine-feasible iterate
    Mat z;             // PSD iterate (primal warm start for related solves)
    Mat u;             // scaled dual iterate (dual warm start)
    double objective = 0.0;
    int iterations   = 0;
    double primal_residual = 0.0;
    double dual_residual   = 0.0;
    double rho = 1.0;  // final penalty (pass back in when reusing u)
    bool converged = false;
    bool certified = false;     // solution validated by a dual certificate
    double duality_gap = 0.0;   // certified bound on the objective error
};

namespace detail {

/// Exact projection onto {Tr_out X = I} intersected, when violated, with
/// the energy hyperplane {Tr[W X] = cap}. The displacement is taken in the
/// span of the constraint normals {I_out (x) M} + {W}.
class AffineProjector {
public:
    AffineProjector(int dim_in, int dim_out, const std::optional<EnergyCap>& energy)
        : din_(dim_in), dout_(dim_out), energy_(energy) {
        if (energy_) {
            const Mat& w = energy_->weight;
            // Tr_out(W) and the Gram entries used by the joint projection
            trout_w_ = Mat::Zero(din_, din_);
            for (int a = 0; a < dout_; ++a)
                trout_w_ += w.block(a * din_, a * din_, din_, din_);
            ww_ = std::real((w.adjoint() * w).trace());
        }
    }

    Mat operator()(const Mat& x) const {
        Mat out = project_tp(x);
        if (!energy_) return out;
        double t = std::real((energy_->weight.adjoint() * out).trace());
        if (t <= energy_->cap + 1e-14) return out;
        // joint projection: X + I (x) M + lambda W with Tr_out fixed and the
        // energy constraint active
        const Mat& w = energy_->weight;
        // parametrize M = M0 - lambda * Tr_out(W)/dout; M0 = 0 since out is
        // already TP; solve the scalar equation for lambda
        Mat im = kron(Mat::Identity(dout_, dout_), trout_w_);
        double coef = ww_ - std::real((w.adjoint() * im).trace()) / double(dout_);
        double lambda = (energy_->cap - t) / coef;
        Mat delta = lambda * (w - im / double(dout_));
        return out + delta;
    }

private:
    Mat project_tp(const Mat& x) const {
        Mat t = Mat::Zero(din_, din_);
        for (int a = 0; a < dout_; ++a)
            t += x.block(a * din_, a * din_, din_, din_);
        Mat corr = (Mat::Identity(din_, din_) - t) / double(dout_);
        Mat out = x;
        for (int a = 0; a < dout_; ++a)
            out.block(a * din_, a * din_, din_, din_) += corr;
        return out;
    }

    int din_, dout_;
    std::optional<EnergyCap> energy_;
    Mat trout_w_;
    double ww_ = 0.0;
};

inline Mat psd_project(const Mat& m, bool real_restricted) {
    Mat h = (m + m.adjoint()) / 2.0;
    if (real_restricted) h = h.real().cast<cplx>();
    Eig e = hermitian_eig(h);
    Mat out = Mat::Zero(h.rows(), h.cols());
    for (int i = 0; i < e.values.size(); ++i) {
        if (e.values(i) <= 0.0) break;
        out.noalias() += e.values(i) * e.vectors.col(i) * e.vectors.col(i).adjoint();
    }
    return out;
}

// --- Active-face polish -----------------------------------------------------
//
// ADMM converges slowly in the tail on these degenerate problems, but it
// identifies the optimal face (the eigenspace of Z with non-negligible
// eigenvalues) quickly. On the correct face the objective is constant over
// the feasible set, so projecting the iterate onto {Tr_out(V S V^dag) = I}
// within the face gives the exact optimum up to a least-squares solve. The
// result is accepted only with a dual certificate: a Hermitian Y (and a
// multiplier for the energy cap, if active) with kron(I, Y) + lambda W - C
// vanishing on the face, PSD overall, and negligible duality gap.

#ifdef QECLAB_POLISH_DEBUG
#define QECLAB_POLISH_LOG(...) std::fprintf(stderr, __VA_ARGS__)
#else
#define QECLAB_POLISH_LOG(...) (void)0
#endif

struct PolishOutcome {
    bool ok = false;
    Mat x;
    double objective = 0.0;
    double certificate = 0.0;  // max of feasibility residual and duality gap
};

// Orthonormal Hermitian basis coordinates: dim d Hermitian matrix <-> d^2 reals.
inline void pack_hermitian(const Mat& h, double* out) {
    const int d = int(h.rows());
    int k = 0;
    const double s2 = std::sqrt(2.0);
    for (int p = 0; p < d; ++p) out[k++] = std::real(h(p, p));
    for (int p = 0; p < d; ++p)
        for (int q = p + 1; q < d; ++q) {
            out[k++] = s2 * std::real(h(p, q));
            out[k++] = -s2 * std::imag(h(p, q));
        }
}

inline Mat unpack_hermitian(const double* in, int d) {
    Mat h = Mat::Zero(d, d);
    int k = 0;
    const double s2 = std::sqrt(2.0);
    for (int p = 0; p < d; ++p) h(p, p) = in[k++];
    for (int p = 0; p < d; ++p)
        for (int q = p + 1; q < d; ++q) {
            double re = in[k++] / s2;
            double im = -in[k++] / s2;
            h(p, q) = cplx(re, im);
            h(q, p) = cplx(re, -im);
        }
    return h;
}

inline Mat partial_trace_out(const Mat& x, int din, int dout) {
    Mat t = Mat::Zero(din, din);
    for (int a = 0; a < dout; ++a) t += x.block(a * din, a * din, din, din);
    return t;
}

inline PolishOutcome try_polish(const Mat& c, int din, int dout, const Mat& z,
                                const std::optional<EnergyCap>& energy, bool real_restricted,
                                double tol) {
    PolishOutcome out;
    const int n = din * dout;
    Eig ez = hermitian_eig(z);
    double top = std::max(ez.values(0), 1e-30);

    for (double rel_cut : {1e-5, 1e-7, 1e-9}) {
        int r = 0;
        while (r < n && ez.values(r) > rel_cut * top) ++r;
        if (r == 0 || r == n) continue;
        Mat v = ez.vectors.leftCols(r);
        if (real_restricted) {
            // rotate each eigenvector to a real representative
            for (int j = 0; j < r; ++j) {
                int imax = 0;
                v.col(j).cwiseAbs().maxCoeff(&imax);
                cplx ph = v(imax, j) / std::abs(v(imax, j));
                v.col(j) *= std::conj(ph);
            }
            v = v.real().cast<cplx>();
            Eigen::HouseholderQR<Mat> qr(v);
            v = qr.householderQ() * Mat::Identity(n, r);
        }

        const bool cap_active =
            energy && std::real((energy->weight.adjoint() * z).trace()) > energy->cap - 1e-9;
        const int m = din * din + (cap_active ? 1 : 0);
        const int nu = r * r;

        // primal system: Tr_out(V S V^dag) = I (+ energy equality if active)
        Eigen::MatrixXd a(m, nu);
        std::vector<double> col(din * din);
        for (int k = 0; k < nu; ++k) {
            std::vector<double> sk(nu, 0.0);
            sk[k] = 1.0;
            Mat hk = unpack_hermitian(sk.data(), r);
            Mat img = v * hk * v.adjoint();
            pack_hermitian(partial_trace_out(img, din, dout), col.data());
            for (int i = 0; i < din * din; ++i) a(i, k) = col[i];
            if (cap_active)
                a(din * din, k) = std::real((energy->weight.adjoint() * img).trace());
        }
        Eigen::VectorXd b(m);
        pack_hermitian(Mat(Mat::Identity(din, din)), b.data());
        if (cap_active) b(din * din) = energy->cap;

        Eigen::VectorXd s0(nu);
        {
            Mat zr = v.adjoint() * z * v;
            pack_hermitian(zr, s0.data());
        }
        // least-norm correction onto the affine set within the face
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
        Eigen::VectorXd s = s0 + cod.solve(Eigen::VectorXd(b - a * s0));
        double primal_feas = (a * s - b).norm();
        QECLAB_POLISH_LOG("polish cut=%g r=%d feas=%.3e\n", rel_cut, r, primal_feas);
        if (primal_feas > 0.1 * tol) continue;

        Mat smat = unpack_hermitian(s.data(), r);
        Eig es = hermitian_eig(smat);
        if (es.values(es.values.size() - 1) < -0.1 * tol) {
            QECLAB_POLISH_LOG("polish cut=%g r=%d sneg=%.3e reject\n", rel_cut, r,
                              es.values(es.values.size() - 1));
            continue;
        }
        Mat xp = v * smat * v.adjoint();
        double obj = std::real((c.adjoint() * xp).trace());

        // dual certificate: (kron(I,Y) + lambda W - C) V = 0, PSD, gap ~ 0
        const int ndu = din * din + (cap_active ? 1 : 0);
        Eigen::MatrixXd ad(2 * n * r, ndu);
        Eigen::VectorXd bd(2 * n * r);
        Mat cv = real_restricted ? Mat(((c + c.adjoint()) / 2.0).real().cast<cplx>() * v)
                                 : Mat(c * v);
        for (int i = 0; i < n * r; ++i) {
            cplx e = cv(i % n, i / n);
            bd(2 * i) = e.real();
            bd(2 * i + 1) = e.imag();
        }
        for (int k = 0; k < din * din; ++k) {
            std::vector<double> yk(din * din, 0.0);
            yk[k] = 1.0;
            Mat gk = unpack_hermitian(yk.data(), din);
            Mat gv = kron(Mat::Identity(dout, dout), gk) * v;
            for (int i = 0; i < n * r; ++i) {
                cplx e = gv(i % n, i / n);
                ad(2 * i, k) = e.real();
                ad(2 * i + 1, k) = e.imag();
            }
        }
        if (cap_active) {
            Mat wv = energy->weight * v;
            for (int i = 0; i < n * r; ++i) {
                cplx e = wv(i % n, i / n);
                ad(2 * i, ndu - 1) = e.real();
                ad(2 * i + 1, ndu - 1) = e.imag();
            }
        }
        Eigen::VectorXd yd = ad.colPivHouseholderQr().solve(bd);
        Mat y = unpack_hermitian(yd.data(), din);
        double lambda = cap_active ? yd(ndu - 1) : 0.0;
        if (lambda < -0.1 * tol) continue;  // cap multiplier must be >= 0
        lambda = std::max(lambda, 0.0);
        Mat zd = kron(Mat::Identity(dout, dout), y) - c;
        if (cap_active) zd += lambda * energy->weight;
        if (real_restricted) zd = ((zd + zd.adjoint()) / 2.0).real().cast<cplx>();
        Eig ezd = hermitian_eig(zd);
        double neg = std::max(0.0, -ezd.values(ezd.values.size() - 1));
        double dual_bound = std::real(y.trace()) + neg * din + lambda * (cap_active ? energy->cap : 0.0);
        double gap = std::abs(dual_bound - obj);
        double cert = std::max({primal_feas, gap, -es.values(es.values.size() - 1)});
        QECLAB_POLISH_LOG("polish cut=%g r=%d gap=%.3e sneg=%.3e lam=%.3e cert=%.3e\n",
                          rel_cut, r, gap, -es.values(es.values.size() - 1), lambda, cert);
        if (cert >= tol) continue;

        // clip the harmless negative part of S and report the face solution
        Mat spsd = Mat::Zero(r, r);
        for (int i = 0; i < es.values.size(); ++i)
            if (es.values(i) > 0.0)
                spsd.noalias() += es.values(i) * es.vectors.col(i) * es.vectors.col(i).adjoint();
        out.ok = true;
        out.x = v * spsd * v.adjoint();
        out.objective = std::real((c.adjoint() * out.x).trace());
        out.certificate = cert;
        return out;
    }
    return out;
}

// Rigorous duality-gap certificate at an arbitrary iterate. The scaled dual
// u satisfies -rho u = kron(I, Y) + lambda W - C at the fixed point, so a
// candidate (Y, lambda) is least-squares-fit from C - rho u; shifting Y by
// the negative part of the dual slack makes the bound valid uncondition-
// ally. The primal value comes from the TP-projected PSD iterate.
struct GapCertificate {
    double gap = std::numeric_limits<double>::infinity();
    double primal_negativity = 0.0;
};

inline GapCertificate gap_certificate(const Mat& c, const Mat& z, const Mat& u, double rho,
                                      int din, int dout, const std::optional<EnergyCap>& energy,
                                      bool real_restricted, const AffineProjector& affine,
                                      Mat& x_feasible) {
    GapCertificate out;
    Mat ceff = real_restricted ? Mat(((c + c.adjoint()) / 2.0).real().cast<cplx>()) : c;
    Mat r0 = ceff - rho * u;
    if (real_restricted) r0 = ((r0 + r0.adjoint()) / 2.0).real().cast<cplx>();
    Mat pw, y;
    double lambda = 0.0;
    if (energy) {
        const Mat& w = energy->weight;
        pw = partial_trace_out(w, din, dout);
        double ww = std::real((w.adjoint() * w).trace());
        double pwpw = std::real((pw.adjoint() * pw).trace());
        double denom = ww - pwpw / double(dout);
        if (denom > 1e-14) {
            double wr0 = std::real((w.adjoint() * r0).trace());
            double pwpr0 = std::real((pw.adjoint() * partial_trace_out(r0, din, dout)).trace());
            lambda = std::max(0.0, (wr0 - pwpr0 / double(dout)) / denom);
        }
    }
    y = partial_trace_out(r0, din, dout) / double(dout);
    if (energy) y -= lambda * pw / double(dout);
    Mat zc = kron(Mat::Identity(dout, dout), y) - ceff;
    if (energy) zc += lambda * energy->weight;
    // u accumulates asymmetric rounding over many iterations (amplified when
    // the penalty shrinks), so work with the Hermitian part throughout
    zc = (zc + zc.adjoint()) / 2.0;
    if (real_restricted) zc = zc.real().cast<cplx>();
    Eig ez = hermitian_eig(zc);
    double neg = std::max(0.0, -ez.values(ez.values.size() - 1));
    double dual_bound = std::real(y.trace()) + neg * din + (energy ? lambda * energy->cap : 0.0);

    x_feasible = affine(z);
    x_feasible = (x_feasible + x_feasible.adjoint()) / 2.0;
    Eig ex = hermitian_eig(x_feasible);
    out.primal_negativity = std::max(0.0, -ex.values(ex.values.size() - 1));
    double primal_value = std::real((ceff.adjoint() * x_feasible).trace());
    out.gap = std::max(0.0, dual_bound - primal_value) + out.primal_negativity * din;
    return out;
}

// Safeguarded type-II Anderson acceleration of the splitting fixed-point
// map w = (Z, U) -> T(w). The degenerate optimal faces met here make the
// plain iteration linearly convergent with rate ~ 1 - 1e-4; extrapolating
// through the iterate history restores fast convergence. Candidates that
// increase the fixed-point residual are rejected in favor of the stored
// plain step and the history is flushed.
class AndersonAccel {
public:
    explicit AndersonAccel(int memory) : m_(memory) {}

    void reset() { dw_.clear(); dg_.clear(); has_prev_ = false; }

    // record (w, g) and return the accelerated candidate (or g-step if the
    // history is empty)
    Eigen::VectorXd next(const Eigen::VectorXd& w, const Eigen::VectorXd& g) {
        if (has_prev_) {
            dw_.push_back(w - w_prev_);
            dg_.push_back(g - g_prev_);
            if (int(dw_.size()) > m_) { dw_.erase(dw_.begin()); dg_.erase(dg_.begin()); }
        }
        w_prev_ = w;
        g_prev_ = g;
        has_prev_ = true;
        const int k = int(dw_.size());
        if (k == 0) return w + g;
        Eigen::MatrixXd dg(g.size(), k), dwdg(g.size(), k);
        for (int j = 0; j < k; ++j) {
            dg.col(j) = dg_[j];
            dwdg.col(j) = dw_[j] + dg_[j];
        }
        Eigen::MatrixXd gram = dg.transpose() * dg;
        gram.diagonal().array() += 1e-12 * gram.trace() + 1e-30;
        Eigen::VectorXd gamma = gram.ldlt().solve(dg.transpose() * g);
        return w + g - dwdg * gamma;
    }

private:
    int m_;
    std::vector<Eigen::VectorXd> dw_, dg_;
    Eigen::VectorXd w_prev_, g_prev_;
    bool has_prev_ = false;
};

inline Eigen::VectorXd stack_pair(const Mat& z, const Mat& u) {
    Eigen::VectorXd w(4 * z.size());
    w.head(2 * z.size()) =
        Eigen::Map<const Eigen::VectorXd>(reinterpret_cast<const double*>(z.data()), 2 * z.size());
    w.tail(2 * u.size()) =
        Eigen::Map<const Eigen::VectorXd>(reinterpret_cast<const double*>(u.data()), 2 * u.size());
    return w;
}

inline void unstack_pair(const Eigen::VectorXd& w, Mat& z, Mat& u) {
    Eigen::Map<Eigen::VectorXd>(reinterpret_cast<double*>(z.data()), 2 * z.size()) =
        w.head(2 * z.size());
    Eigen::Map<Eigen::VectorXd>(reinterpret_cast<double*>(u.data()), 2 * u.size()) =
        w.tail(2 * u.size());
}

}  // namespace detail

inline SdpResult maximize_fidelity_choi(const Mat& c, int dim_in, int dim_out,
                                        const SdpOptions& opts = {}) {
    const int n = dim_in * dim_out;
    if (c.rows() != n || c.cols() != n)
        throw std::invalid_argument("maximize_fidelity_choi: objective size mismatch");
    detail::AffineProjector affine(dim_in, dim_out, opts.energy);

    double rho = opts.rho;
    Mat z = opts.warm_start ? *opts.warm_start
                            : Mat(Mat::Identity(n, n) / double(dim_out));
    z = detail::psd_project(z, opts.real_restricted);
    Mat u = opts.warm_start_dual ? *opts.warm_start_dual : Mat(Mat::Zero(n, n));
    Mat x = z;
    double pr = 0.0, dr = 0.0;
    double polish_level = 1e-4;  // retry the face polish once per residual decade
    detail::AndersonAccel aa(opts.anderson_memory);
    Mat zt = z, ut = u;        // outputs of the latest splitting step
    Mat plain_z, plain_u;      // fallback when an accelerated step is rejected
    double ng_prev = std::numeric_limits<double>::infinity();
    bool used_aa = false;
    int it = 0;
    for (it = 1; it <= opts.max_iter; ++it) {
        x = affine(z - u + c / rho);
        Mat xr = opts.relax * x + (1.0 - opts.relax) * z;
        zt = detail::psd_project(xr + u, opts.real_restricted);
        ut = u + xr - zt;
        ut = (ut + ut.adjoint()) / 2.0;  // strip rounding-level asymmetry
        double ng = std::sqrt((zt - z).squaredNorm() + (ut - u).squaredNorm());
        if (used_aa && ng > 1.2 * ng_prev) {
            // the accelerated candidate grew the fixed-point residual:
            // restart from the stored plain step
            z = plain_z;
            u = plain_u;
            aa.reset();
            used_aa = false;
            x = affine(z - u + c / rho);
            xr = opts.relax * x + (1.0 - opts.relax) * z;
            zt = detail::psd_project(xr + u, opts.real_restricted);
            ut = u + xr - zt;
            ng = std::sqrt((zt - z).squaredNorm() + (ut - u).squaredNorm());
        }
        ng_prev = ng;
        pr = (x - zt).norm();
        dr = rho * (zt - z).norm();
        if (opts.trace && it % 25 == 0)
            opts.trace(it, pr, dr, std::real((c.adjoint() * x).trace()));
        if (std::max(pr, dr) < opts.tol) break;
        // Certified early exit: strict complementarity can fail on the
        // degenerate recovery faces, pinning the raw dual residual well
        // above tol while the iterate is already optimal. A rigorous
        // duality-gap bound from the scaled dual settles those cases.
        if (it % 50 == 0 && std::max(pr, dr) < 1e-4) {
            Mat xf;
            detail::GapCertificate cert = detail::gap_certificate(
                c, zt, ut, rho, dim_in, dim_out, opts.energy, opts.real_restricted, affine, xf);
            if (cert.gap < opts.tol && cert.primal_negativity < opts.tol) {
                SdpResult res;
                res.x = std::move(xf);
                res.z = zt;
                res.u = ut;
                res.rho = rho;
                res.objective = std::real((c.adjoint() * res.x).trace());
                res.iterations = it;
                res.primal_residual = pr;
                res.dual_residual = dr;
                res.converged = true;
                res.certified = true;
                res.duality_gap = cert.gap;
                return res;
            }
        }
        if (std::max(pr, dr) < polish_level) {
            detail::PolishOutcome p =
                detail::try_polish(c, dim_in, dim_out, zt, opts.energy, opts.real_restricted,
                                   opts.tol);
            if (p.ok) {
                SdpResult res;
                res.x = std::move(p.x);
                res.z = res.x;
                res.u = ut;
                res.rho = rho;
                res.objective = p.objective;
                res.iterations = it;
                res.primal_residual = p.certificate;
                res.dual_residual = p.certificate;
                res.converged = true;
                res.certified = true;
                res.duality_gap = p.certificate;
                return res;
            }
            polish_level = std::max(pr, dr) / 10.0;
        }
        // advance; a penalty rebalance rescales the dual and flushes the
        // acceleration history since it changes the fixed-point map
        bool rebalanced = false;
        if (opts.balance_every > 0 && it % opts.balance_every == 0) {
            if (pr > 10.0 * dr) { rho *= 2.0; ut /= 2.0; rebalanced = true; }
            else if (dr > 10.0 * pr) { rho /= 2.0; ut *= 2.0; rebalanced = true; }
        }
        plain_z = zt;
        plain_u = ut;
        if (rebalanced || opts.anderson_memory <= 0) {
            z = zt;
            u = ut;
            if (rebalanced) aa.reset();
            used_aa = false;
        } else {
            Eigen::VectorXd w = detail::stack_pair(z, u);
            Eigen::VectorXd g = detail::stack_pair(zt, ut) - w;
            detail::unstack_pair(aa.next(w, g), z, u);
            used_aa = true;
        }
    }
    SdpResult res;
    res.x = affine(zt);
    res.x = (res.x + res.x.adjoint()) / 2.0;
    res.z = zt;
    res.u = ut;
    res.rho = rho;
    res.objective = std::real((c.adjoint() * res.x).trace());
    res.iterations = std::min(it, opts.max_iter);
    res.primal_residual = pr;
    res.dual_residual = dr;
    res.converged = std::max(pr, dr) < opts.tol;
    if (!res.converged) {
        Mat xf;
        detail::GapCertificate cert = detail::gap_certificate(
            c, zt, ut, rho, dim_in, dim_out, opts.energy, opts.real_restricted, affine, xf);
        if (cert.gap < opts.tol && cert.primal_negativity < opts.tol) {
            res.x = std::move(xf);
            res.objective = std::real((c.adjoint() * res.x).trace());
            res.converged = true;
            res.certified = true;
            res.duality_gap = cert.gap;
            return res;
        }
    }
    if (!res.converged)
        throw std::runtime_error("convergence-failure: SDP residuals (" + std::to_string(pr) +
                                 ", " + std::to_string(dr) + ") after " +
                                 std::to_string(opts.max_iter) + " iterations");
    return res;
}

/// Fidelity objective matrix for optimizing a CPTP map with Kraus shape
/// (dim_out x dim_in) composed against fixed operators B_k (dim_in x dim_out):
/// F = (1/4) sum_{j,k} |Tr(A_j B_k)|^2 = Tr[X C].
inline Mat fidelity_objective(const std::vector<Mat>& fixed, int dim_in, int dim_out) {
    const int n = dim_in * dim_out;
    Mat c = Mat::Zero(n, n);
    for (const auto& b : fixed) {
        Vec v = vec_kraus(Mat(b.adjoint()));  // (dim_out x dim_in)-shaped
        c.noalias() += 0.25 * v * v.adjoint();
    }
    return c;
}

}  // namespace qeclab
