// qeclab: command-line workbench for loss-correcting bosonic codes,
// sign-altered variants, optimized encodings, and qubit-code censuses.

#include <qeclab/gkp.hpp>
#include <qeclab/io.hpp>
#include <qeclab/metrics.hpp>
#include <qeclab/optimal.hpp>
#include <qeclab/qubit.hpp>

#include <CLI11.hpp>

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <thread>

using namespace qeclab;

namespace {

std::uint64_t default_seed() {
    if (const char* env = std::getenv("QEC_LAB_SEED")) return std::strtoull(env, nullptr, 10);
    return 1;
}

std::string fmt4(double x) {
    std::ostringstream os;
    os.precision(4);
    os << x;
    return os.str();
}

BosonicCode make_code(const std::string& family, int n, int s, double alpha, int dim) {
    if (family == "bin") return binomial_code(n, s, dim);
    if (family == "sab") return sab_code(n, s, dim);
    if (family == "cat") return cat_code(alpha, s, dim);
    if (family == "sac") return sac_code(alpha, s, dim);
    if (family == "sqrt17") return sqrt17_code(dim);
    throw std::invalid_argument("unknown code family: " + family);
}

int family_dim(const std::string& family, int n, int s, double alpha) {
    if (family == "cat" || family == "sac") return cat_default_dim(alpha, s);
    if (family == "sqrt17") return 12;
    return binomial_default_dim(n, s);
}

// Inject values from a --config JSON file as synthetic argv tokens placed
// before the user's flags, so explicitly passed flags win.
std::vector<std::string> with_config(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string path;
    for (std::size_t i = 0; i + 1 < args.size(); ++i)
        if (args[i] == "--config") path = args[i + 1];
    if (path.empty()) return args;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("unwritable path: cannot read config " + path);
    json cfg = json::parse(in);
    auto user_passed = [&](const std::string& key) {
        for (const auto& a : args)
            if (a == "--" + key || a.rfind("--" + key + "=", 0) == 0) return true;
        return false;
    };
    std::vector<std::string> tokens;
    for (auto it = cfg.begin(); it != cfg.end(); ++it) {
        if (user_passed(it.key())) continue;
        auto emit = [&](const json& v) {
            std::string s = v.is_string() ? v.get<std::string>() : v.dump();
            tokens.push_back("--" + it.key() + "=" + s);
        };
        if (it.value().is_array())
            for (const auto& v : it.value()) emit(v);
        else
            emit(it.value());
    }
    // insert right after the subcommand name
    std::size_t at = args.empty() ? 0 : 1;
    args.insert(args.begin() + at, tokens.begin(), tokens.end());
    return args;
}

struct SweepRow {
    std::string cells;
    SweepRow() = default;
};

int cmd_sweep(const std::string& family, int nmin, int nmax, int smin, int smax,
              std::vector<double> alphas, const std::vector<double>& gammas,
              const std::string& recovery, const std::string& out_path, int jobs) {
    struct Point {
        int n = 0, s = 0;
        double alpha = 0.0, gamma = 0.0;
    };
    const bool cat_like = family == "cat" || family == "sac";
    if (cat_like && alphas.empty()) alphas = {1.0, 1.5, 2.0, 2.5, 3.0};
    std::vector<Point> grid;
    for (double g : gammas) {
        if (cat_like) {
            for (double a : alphas)
                for (int s = smin; s <= smax; ++s) grid.push_back({0, s, a, g});
        } else {
            for (int n = nmin; n <= nmax; ++n)
                for (int s = smin; s <= smax; ++s) grid.push_back({n, s, 0.0, g});
        }
    }
    std::vector<std::vector<std::string>> rows(grid.size());
    std::atomic<std::size_t> next{0};
    std::atomic<int> failures{0};
    auto work = [&] {
        for (std::size_t i = next.fetch_add(1); i < grid.size(); i = next.fetch_add(1)) {
            const Point& pt = grid[i];
            std::vector<std::string> row = {family,
                                            std::to_string(pt.n),
                                            std::to_string(pt.s),
                                            fmt17(pt.alpha),
                                            fmt17(pt.gamma),
                                            recovery};
            try {
                int dim = family_dim(family, pt.n, pt.s, pt.alpha);
                BosonicCode code = make_code(family, pt.n, pt.s, pt.alpha, dim);
                QuantumChannel noise = loss_channel(pt.gamma, dim, dim - 1);
                double f;
                if (recovery == "optimal")
                    f = optimal_recovery(code, noise).fidelity;
                else if (recovery == "one_level")
                    f = recovery_fidelity(code, noise, one_level_recovery(code, pt.s, pt.gamma));
                else if (recovery == "two_level")
                    f = recovery_fidelity(code, noise, two_level_recovery(code, pt.s, pt.gamma));
                else
                    throw std::invalid_argument("unknown recovery: " + recovery);
                row.push_back(std::to_string(dim));
                row.push_back(fmt17(f));
                row.push_back(fmt17(1.0 - f));
                row.push_back(fmt17(std::log10(std::max(1.0 - f, 1e-300))));
                row.push_back("ok");
            } catch (const std::exception& e) {
                row.insert(row.end(), {"", "", "", "", "failed"});
                ++failures;
            }
            rows[i] = std::move(row);
        }
    };
    int nthreads = jobs > 0 ? jobs : int(std::thread::hardware_concurrency());
    nthreads = std::max(1, std::min<int>(nthreads, int(grid.size())));
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();

    CsvWriter csv(out_path);
    csv.row({"family", "N", "S", "alpha", "gamma", "recovery", "D", "fidelity", "infidelity",
             "log10_infidelity", "status"});
    for (const auto& r : rows) csv.row(r);
    std::cout << "sweep: " << grid.size() << " points, " << failures.load()
              << " failed, written to " << out_path << "\n";
    return 0;
}

int cmd_table1(double gamma, double ncap, const std::vector<double>& kts, int restarts,
               std::uint64_t seed, int dim, const std::string& prefix, int jobs) {
    CsvWriter csv(prefix + ".csv");
    csv.row({"kt", "code", "fidelity", "infidelity", "converged"});
    json report = json::array();
    for (double kt : kts) {
        QuantumChannel noise = joint_loss_kerr(gamma, kt, dim);
        BosonicCode bin22 = binomial_code(2, 2, dim);
        double f_bin = optimal_recovery(bin22, noise).fidelity;

        OptimizationConfig cfg;
        cfg.dim = dim;
        cfg.gamma = gamma;
        cfg.kt = kt;
        cfg.n_cap = ncap;
        cfg.restarts = restarts;
        cfg.seed = seed;
        cfg.jobs = jobs;
        cfg.real_restricted = false;
        OptimizationResult ccqc = biconvex(cfg, noise);
        cfg.real_restricted = true;
        OptimizationResult rcqc = biconvex(cfg, noise);

        csv.row({fmt17(kt), "bin(2,2)", fmt17(f_bin), fmt17(1 - f_bin), "true"});
        csv.row({fmt17(kt), "ccqc", fmt17(ccqc.fidelity), fmt17(1 - ccqc.fidelity),
                 ccqc.converged ? "true" : "false"});
        csv.row({fmt17(kt), "rcqc", fmt17(rcqc.fidelity), fmt17(1 - rcqc.fidelity),
                 rcqc.converged ? "true" : "false"});
        report.push_back({{"kt", kt},
                          {"bin22_infidelity", 1 - f_bin},
                          {"ccqc", to_json(ccqc)},
                          {"rcqc", to_json(rcqc)}});

        for (const auto& [tag, res] : {std::pair<const char*, const OptimizationResult*>{
                                           "ccqc", &ccqc},
                                       {"rcqc", &rcqc}}) {
            Mat rho = 0.5 * code_projector(res->code);
            WignerGrid w = wigner_grid(rho, -4.5, 4.5, -4.5, 4.5, 61);
            CsvWriter wout(prefix + "_" + tag + "_kt" + fmt4(kt) + "_wigner.csv");
            wout.row({"q", "p", "w"});
            for (std::size_t iq = 0; iq < w.q.size(); ++iq)
                for (std::size_t ip = 0; ip < w.p.size(); ++ip)
                    wout.row({fmt17(w.q[iq]), fmt17(w.p[ip]), fmt17(w.w[iq * w.p.size() + ip])});
        }
        std::cout << "Kt=" << kt << "  1-F: bin=" << fmt4(1 - f_bin)
                  << " ccqc=" << fmt4(1 - ccqc.fidelity) << " rcqc=" << fmt4(1 - rcqc.fidelity)
                  << "\n";
    }
    write_json(prefix + ".json", report);
    return 0;
}

int cmd_kraus(const std::string& family, int n, int s, double gamma) {
    int dim = family_dim(family, n, s, 0.0);
    BosonicCode code = make_code(family, n, s, 0.0, dim);
    QuantumChannel noise = loss_channel(gamma, dim, dim - 1);
    OptimalRecovery rec = optimal_recovery(code, noise);
    EffectiveQubitChannel eff = effective_qubit_channel(code, noise, rec.recovery);
    std::cout << family << "(" << n << "," << s << ") gamma=" << gamma
              << "  F=" << fmt4(rec.fidelity) << "\n";
    double psum = 0.0;
    for (std::size_t i = 0; i < eff.kraus.size(); ++i) {
        psum += eff.probs[i];
        std::cout << "K" << i + 1 << "  p=" << fmt4(eff.probs[i]) << "\n";
        for (int r = 0; r < 2; ++r) {
            for (int c = 0; c < 2; ++c) {
                cplx z = eff.kraus[i](r, c);
                std::cout << "  (" << fmt4(z.real()) << (z.imag() < 0 ? "-" : "+")
                          << fmt4(std::abs(z.imag())) << "i)";
            }
            std::cout << "\n";
        }
    }
    std::cout << "sum p = " << fmt17(psum) << (eff.excess ? "  (excess rank)" : "") << "\n";
    return 0;
}

int cmd_qec_check(const std::string& family, int n, int s, double gamma, int kmax, double tol) {
    int dim = family_dim(family, n, s, 0.0);
    BosonicCode code = make_code(family, n, s, 0.0, dim);
    if (kmax < 0) kmax = family == "sqrt17" ? 1 : s - 1;
    std::vector<Mat> kraus = loss_power_kraus(gamma, dim, kmax);
    KlResult kl = kl_check(qec_matrix(code, kraus), tol);
    json report{{"family", family}, {"N", n},         {"S", s},       {"gamma", gamma},
                {"k_max", kmax},    {"tol", tol},     {"pass", kl.ok}, {"violation", kl.violation}};
    std::cout << report.dump(2) << "\n";
    return kl.ok ? 0 : 1;
}

int cmd_qubit(const std::string& name, const std::string& alphabet_str, int max_weight,
              const std::string& out_path) {
    QubitCode code = build_code(name);
    ErrorAlphabet alphabet;
    if (alphabet_str == "X-only")
        alphabet = ErrorAlphabet::XOnly;
    else if (alphabet_str == "XY-hybrid")
        alphabet = ErrorAlphabet::XYHybrid;
    else if (alphabet_str == "damping")
        alphabet = ErrorAlphabet::Damping;
    else
        throw CLI::ValidationError("--alphabet", "must be X-only, XY-hybrid, or damping");
    CsvWriter csv(out_path);
    csv.row({"code", "alphabet", "weight", "total", "detectable", "undetectable"});
    json undet = json::object();
    for (int w = 1; w <= max_weight; ++w) {
        Census c = census(code, w, alphabet);
        csv.row({name, alphabet_str, std::to_string(w), std::to_string(c.total),
                 std::to_string(c.detectable), std::to_string(c.undetectable)});
        undet["weight_" + std::to_string(w)] = c.undetectable_letters;
        std::cout << name << " " << alphabet_str << " weight " << w << ": " << c.undetectable
                  << "/" << c.total << " undetectable\n";
    }
    write_json(out_path + ".undetectable.json", undet);
    return 0;
}

int cmd_gkp() {
    GkpComparison g = compare_square_hexagonal();
    json report{{"square_min_shift", g.square_min_shift},
                {"hex_min_shift", g.hex_min_shift},
                {"ratio", g.ratio},
                {"shortest_vector_multiplicity",
                 {{"square", g.square_multiplicity}, {"hexagonal", g.hex_multiplicity}}}};
    std::cout << report.dump(2) << "\n";
    return 0;
}

int cmd_wigner(const std::string& family, int n, int s, double alpha, double extent, int points,
               const std::string& out_path) {
    int dim = family_dim(family, n, s, alpha);
    BosonicCode code = make_code(family, n, s, alpha, dim);
    Mat rho = 0.5 * code_projector(code);
    WignerGrid w = wigner_grid(rho, -extent, extent, -extent, extent, points);
    CsvWriter csv(out_path);
    csv.row({"q", "p", "w"});
    for (std::size_t iq = 0; iq < w.q.size(); ++iq)
        for (std::size_t ip = 0; ip < w.p.size(); ++ip)
            csv.row({fmt17(w.q[iq]), fmt17(w.p[ip]), fmt17(w.w[iq * w.p.size() + ip])});
    std::cout << "wigner grid written to " << out_path << "\n";
    return 0;
}

int cmd_okb(int n, int s, double gamma, int points, int dim, const std::string& out_path) {
    double k_sab = 2.0 * M_PI / ((2.0 * s) * (2.0 * s));
    std::vector<double> grid;
    for (int i = 0; i < points; ++i) grid.push_back(k_sab * i / std::max(1, points - 1));
    if (std::find(grid.begin(), grid.end(), k_sab) == grid.end()) grid.push_back(k_sab);
    OkbScan scan = okb_scan(n, s, gamma, grid, dim);
    json report = to_json(scan);
    report["k_sab"] = k_sab;
    if (!out_path.empty()) write_json(out_path, report);
    std::cout << report.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qeclab: bosonic / qubit QEC code workbench"};
    app.require_subcommand(1);
    app.option_defaults()->take_last();

    std::string config_path, family = "bin", recovery = "optimal", out = "out.csv";
    std::string qubit_code = "shor'", alphabet = "X-only", prefix = "table1";
    int nmin = 1, nmax = 5, smin = 1, smax = 5, n = 2, s = 2, kmax = -1, jobs = 0;
    int restarts = 10, dim = 20, points = 9, weight = 3;
    double gamma = 0.1, ncap = 2.0, tol = 1e-9, alpha = 2.0, extent = 4.5;
    std::vector<double> gammas = {0.1}, alphas, kts = {0.0, 0.5, 1.0, 1.5};
    std::uint64_t seed = default_seed();

    auto add_common = [&](CLI::App* c) {
        c->add_option("--config", config_path, "JSON config file; flags override");
        c->add_option("--jobs", jobs, "worker threads (0 = cores)");
    };

    auto* sweep = app.add_subcommand("sweep", "fidelity sweep over a code grid");
    add_common(sweep);
    sweep->add_option("--family", family)->check(CLI::IsMember({"bin", "sab", "cat", "sac"}));
    sweep->add_option("--nmin", nmin);
    sweep->add_option("--nmax", nmax);
    sweep->add_option("--smin", smin);
    sweep->add_option("--smax", smax);
    sweep->add_option("--alphas", alphas);
    sweep->add_option("--gammas", gammas);
    sweep->add_option("--recovery", recovery)
        ->check(CLI::IsMember({"one_level", "two_level", "optimal"}));
    sweep->add_option("--out", out);

    auto* table1 = app.add_subcommand("table1", "biconvex-optimized code table");
    add_common(table1);
    table1->add_option("--gamma", gamma);
    table1->add_option("--ncap", ncap);
    table1->add_option("--kts", kts);
    table1->add_option("--restarts", restarts);
    table1->add_option("--seed", seed);
    table1->add_option("--dim", dim);
    table1->add_option("--prefix", prefix);

    auto* kraus = app.add_subcommand("kraus", "canonical Kraus table of the decoded channel");
    add_common(kraus);
    kraus->add_option("--family", family)->check(CLI::IsMember({"bin", "sab"}));
    kraus->add_option("--n", n);
    kraus->add_option("--s", s);
    kraus->add_option("--gamma", gamma);

    auto* qec = app.add_subcommand("qec-check", "Knill-Laflamme check");
    add_common(qec);
    qec->add_option("--family", family)
        ->check(CLI::IsMember({"bin", "sab", "sqrt17"}));
    qec->add_option("--n", n);
    qec->add_option("--s", s);
    qec->add_option("--gamma", gamma);
    qec->add_option("--kmax", kmax);
    qec->add_option("--tol", tol);

    auto* qubit = app.add_subcommand("qubit", "multi-qubit code error census");
    add_common(qubit);
    qubit->add_option("--code", qubit_code)
        ->check(CLI::IsMember({"shor", "shor'", "shor''", "steane", "stn'"}));
    qubit->add_option("--alphabet", alphabet);
    qubit->add_option("--weight", weight);
    qubit->add_option("--out", out);

    auto* gkp = app.add_subcommand("gkp", "square vs hexagonal lattice report");
    add_common(gkp);

    auto* wig = app.add_subcommand("wigner", "Wigner grid of the half-projector");
    add_common(wig);
    wig->add_option("--family", family)
        ->check(CLI::IsMember({"bin", "sab", "cat", "sac", "sqrt17"}));
    wig->add_option("--n", n);
    wig->add_option("--s", s);
    wig->add_option("--alpha", alpha);
    wig->add_option("--extent", extent);
    wig->add_option("--points", points);
    wig->add_option("--out", out);

    auto* okb = app.add_subcommand("okb", "optimal-Kerr binomial scan");
    add_common(okb);
    okb->add_option("--n", n);
    okb->add_option("--s", s);
    okb->add_option("--gamma", gamma);
    okb->add_option("--points", points);
    okb->add_option("--dim", dim);
    okb->add_option("--out", out);

    try {
        std::vector<std::string> args = with_config(argc, argv);
        std::reverse(args.begin(), args.end());  // CLI11 parses reversed vectors
        app.parse(args);
        if (sweep->parsed()) {
            if (gammas.empty()) throw CLI::ValidationError("--gammas", "at least one loss rate");
            for (double g : gammas)
                if (g <= 0.0 || g >= 1.0)
                    throw CLI::ValidationError("--gammas", "rates must be in (0,1)");
            return cmd_sweep(family, nmin, nmax, smin, smax, alphas, gammas, recovery, out, jobs);
        }
        if (table1->parsed())
            return cmd_table1(gamma, ncap, kts, restarts, seed, dim, prefix, jobs);
        if (kraus->parsed()) return cmd_kraus(family, n, s, gamma);
        if (qec->parsed()) return cmd_qec_check(family, n, s, gamma, kmax, tol);
        if (qubit->parsed()) return cmd_qubit(qubit_code, alphabet, weight, out);
        if (gkp->parsed()) return cmd_gkp();
        if (wig->parsed()) return cmd_wigner(family, n, s, alpha, extent, points, out);
        if (okb->parsed()) return cmd_okb(n, s, gamma, points, dim, out);
        return 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
