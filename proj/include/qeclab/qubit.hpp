#pragma once

// Sparse multi-qubit codeword algebra: the Shor/Steane families and their
// sign-altered variants, Pauli strings and amplitude-damping monomials, and
// detectability / correctability / stabilizer checks with error censuses.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace qeclab {

using qcplx = std::complex<double>;

/// Sparse state on n qubits; basis keys are bit patterns with qubit 1 in the
/// most significant position (matching the printed ket strings left-to-right).
struct NQubitState {
    int n = 0;
    std::map<std::uint32_t, qcplx> amps;

    double norm() const {
        double s = 0.0;
        for (const auto& [k, a] : amps) s += std::norm(a);
        return std::sqrt(s);
    }
};

inline qcplx inner(const NQubitState& a, const NQubitState& b) {
    qcplx s = 0.0;
    const auto& small = a.amps.size() <= b.amps.size() ? a.amps : b.amps;
    const auto& other = a.amps.size() <= b.amps.size() ? b.amps : a.amps;
    for (const auto& [k, v] : small) {
        auto it = other.find(k);
        if (it == other.end()) continue;
        s += (&small == &a.amps) ? std::conj(v) * it->second : std::conj(it->second) * v;
    }
    return s;
}

struct PauliString {
    int n = 0;
    std::string letters;  // per-qubit symbol from {I, X, Y, Z}
    qcplx phase = 1.0;

    PauliString() = default;
    explicit PauliString(std::string s, qcplx ph = 1.0)
        : n(int(s.size())), letters(std::move(s)), phase(ph) {
        for (char c : letters)
            if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z')
                throw std::invalid_argument("PauliString: letters must be I/X/Y/Z");
    }

    int weight() const {
        int w = 0;
        for (char c : letters) w += c != 'I';
        return w;
    }

    NQubitState apply(const NQubitState& s) const {
        if (s.n != n) throw std::invalid_argument("PauliString: qubit count mismatch");
        NQubitState out;
        out.n = n;
        for (const auto& [key, amp] : s.amps) {
            std::uint32_t k = key;
            qcplx a = amp * phase;
            for (int q = 0; q < n; ++q) {
                std::uint32_t bit = (k >> (n - 1 - q)) & 1u;
                switch (letters[q]) {
                    case 'X': k ^= 1u << (n - 1 - q); break;
                    case 'Y':
                        a *= bit ? qcplx(0, -1) : qcplx(0, 1);
                        k ^= 1u << (n - 1 - q);
                        break;
                    case 'Z':
                        if (bit) a = -a;
                        break;
                    default: break;
                }
            }
            out.amps[k] += a;
        }
        return out;
    }
};

/// Product of sigma_minus = |0><1| on a set of qubits (the gamma-dependent
/// scalar of A_1 = sqrt(gamma) sigma_minus is irrelevant to detectability).
struct DampingMonomial {
    int n = 0;
    std::vector<int> lowering;  // 1-based qubit indices carrying sigma_minus

    int weight() const { return int(lowering.size()); }

    NQubitState apply(const NQubitState& s) const {
        if (s.n != n) throw std::invalid_argument("DampingMonomial: qubit count mismatch");
        NQubitState out;
        out.n = n;
        for (const auto& [key, amp] : s.amps) {
            std::uint32_t k = key;
            bool kill = false;
            for (int q : lowering) {
                std::uint32_t mask = 1u << (n - q);
                if (!(k & mask)) { kill = true; break; }
                k &= ~mask;
            }
            if (!kill) out.amps[k] += amp;
        }
        return out;
    }

    std::string letters() const {
        std::string s(n, 'I');
        for (int q : lowering) s[q - 1] = '-';
        return s;
    }
};

using QubitOperator = std::variant<PauliString, DampingMonomial>;

inline NQubitState apply_op(const QubitOperator& op, const NQubitState& s) {
    return std::visit([&](const auto& o) { return o.apply(s); }, op);
}

struct QubitCode {
    std::string label;
    int n = 0;
    NQubitState word0;  // |+> (Shor family) or |0> (Steane family)
    NQubitState word1;
};

namespace detail {

inline NQubitState superpose(int n, const std::vector<std::pair<std::string, double>>& terms) {
    NQubitState s;
    s.n = n;
    double nrm = 0.0;
    for (const auto& [bits, sign] : terms) nrm += sign * sign;
    nrm = std::sqrt(nrm);
    for (const auto& [bits, sign] : terms) {
        std::uint32_t k = 0;
        for (char c : bits) k = (k << 1) | std::uint32_t(c - '0');
        s.amps[k] += sign / nrm;
    }
    return s;
}

}  // namespace detail

inline QubitCode build_code(const std::string& name) {
    using detail::superpose;
    QubitCode c;
    c.label = name;
    if (name == "shor" || name == "shor'" || name == "shor''") {
        c.n = 9;
        std::vector<std::pair<std::string, double>> plus = {
            {"000000000", 1}, {"000111111", 1}, {"111000111", 1}, {"111111000", 1}};
        std::vector<std::pair<std::string, double>> minus = {
            {"111000000", 1}, {"000111000", 1}, {"000000111", 1}, {"111111111", 1}};
        if (name == "shor'") {
            plus[1].second = -1;  // sign-altered |+>: + - + -
            plus[3].second = -1;
        } else if (name == "shor''") {
            minus[3].second = -1;  // |-_shor''>: sign flip on |111 111 111>
        }
        c.word0 = superpose(9, plus);
        c.word1 = superpose(9, minus);
    } else if (name == "steane" || name == "stn'") {
        c.n = 7;
        std::vector<std::pair<std::string, double>> zero = {
            {"0000000", 1}, {"1010101", 1}, {"0110011", 1}, {"1100110", 1},
            {"0001111", 1}, {"1011010", 1}, {"0111100", 1}, {"1101001", 1}};
        std::vector<std::pair<std::string, double>> one = {
            {"1111111", 1}, {"0101010", 1}, {"1001100", 1}, {"0011001", 1},
            {"1110000", 1}, {"0100101", 1}, {"1000011", 1}, {"0010110", 1}};
        if (name == "stn'") one[0].second = -1;
        c.word0 = superpose(7, zero);
        c.word1 = superpose(7, one);
    } else {
        throw std::invalid_argument("build_code: unknown code name '" + name + "'");
    }
    if (std::abs(c.word0.norm() - 1.0) > 1e-12 || std::abs(c.word1.norm() - 1.0) > 1e-12 ||
        std::abs(inner(c.word0, c.word1)) > 1e-12)
        throw std::logic_error("build_code: codewords fail normalization/orthogonality");
    return c;
}

struct Detectability {
    bool detectable = false;
    qcplx coefficient = 0.0;  // c in P E P = c P (may be 0)
    double violation = 0.0;
};

/// P E P proportional to P: the 2x2 matrix G = <mu_s|E|mu_s'> must equal c I.
inline Detectability detectable(const QubitCode& code, const QubitOperator& op,
                                double tol = 1e-10) {
    NQubitState e0 = apply_op(op, code.word0);
    NQubitState e1 = apply_op(op, code.word1);
    qcplx g00 = inner(code.word0, e0), g01 = inner(code.word0, e1);
    qcplx g10 = inner(code.word1, e0), g11 = inner(code.word1, e1);
    Detectability d;
    d.coefficient = 0.5 * (g00 + g11);
    d.violation = std::max({std::abs(g01), std::abs(g10), std::abs(g00 - g11)});
    d.detectable = d.violation < tol;
    return d;
}

struct Correctability {
    bool correctable = false;
    double worst_violation = 0.0;
};

/// Knill-Laflamme pair check: P E^dag F P proportional to P for all E, F.
inline Correctability correctable_set(const QubitCode& code,
                                      const std::vector<QubitOperator>& errors,
                                      double tol = 1e-10) {
    std::vector<NQubitState> im0, im1;
    for (const auto& e : errors) {
        im0.push_back(apply_op(e, code.word0));
        im1.push_back(apply_op(e, code.word1));
    }
    Correctability out;
    for (std::size_t i = 0; i < errors.size(); ++i)
        for (std::size_t j = 0; j < errors.size(); ++j) {
            qcplx g00 = inner(im0[i], im0[j]), g01 = inner(im0[i], im1[j]);
            qcplx g10 = inner(im1[i], im0[j]), g11 = inner(im1[i], im1[j]);
            out.worst_violation = std::max(
                {out.worst_violation, std::abs(g01), std::abs(g10), std::abs(g00 - g11)});
        }
    out.correctable = out.worst_violation < tol;
    return out;
}

/// Every stabilizer must fix both codewords: || S|mu> - |mu> || < 1e-12.
inline bool stabilizer_check(const QubitCode& code, const std::vector<PauliString>& stabilizers,
                             double tol = 1e-12) {
    for (const auto& s : stabilizers)
        for (const NQubitState* w : {&code.word0, &code.word1}) {
            NQubitState sw = s.apply(*w);
            double diff2 = 0.0;
            std::map<std::uint32_t, qcplx> delta = sw.amps;
            for (const auto& [k, a] : w->amps) delta[k] -= a;
            for (const auto& [k, a] : delta) diff2 += std::norm(a);
            if (std::sqrt(diff2) >= tol) return false;
        }
    return true;
}

enum class ErrorAlphabet { XOnly, XYHybrid, Damping };

struct Census {
    int total = 0;
    int detectable = 0;
    int undetectable = 0;
    std::vector<std::string> undetectable_letters;
};

namespace detail {

inline void for_each_support(int n, int weight, const std::function<void(const std::vector<int>&)>& f) {
    std::vector<int> idx(weight);
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == weight) { f(idx); return; }
        for (int q = start; q <= n - (weight - depth) + 1; ++q) {
            idx[depth] = q;
            rec(q + 1, depth + 1);
        }
    };
    rec(1, 0);
}

}  // namespace detail

/// Exhaustive enumeration of exact-weight errors from the given alphabet.
inline Census census(const QubitCode& code, int weight, ErrorAlphabet alphabet,
                     double tol = 1e-10) {
    if (weight > code.n) throw std::invalid_argument("census: weight exceeds qubit count");
    Census out;
    auto tally = [&](const QubitOperator& op, const std::string& letters) {
        ++out.total;
        if (detectable(code, op, tol).detectable) {
            ++out.detectable;
        } else {
            ++out.undetectable;
            out.undetectable_letters.push_back(letters);
        }
    };
    detail::for_each_support(code.n, weight, [&](const std::vector<int>& support) {
        if (alphabet == ErrorAlphabet::Damping) {
            DampingMonomial d{code.n, support};
            tally(d, d.letters());
        } else {
            const int choices = alphabet == ErrorAlphabet::XOnly ? 1 : 2;
            int combos = 1;
            for (int i = 0; i < weight; ++i) combos *= choices;
            for (int c = 0; c < combos; ++c) {
                std::string letters(code.n, 'I');
                int rem = c;
                for (int i = 0; i < weight; ++i) {
                    letters[support[i] - 1] = (rem % choices == 0) ? 'X' : 'Y';
                    rem /= choices;
                }
                tally(PauliString(letters), letters);
            }
        }
    });
    return out;
}

}  // namespace qeclab
