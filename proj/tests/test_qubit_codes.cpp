#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <qeclab/qubit.hpp>

using namespace qeclab;

namespace {

std::vector<PauliString> shared_z_stabilizers() {
    return {PauliString("ZZIIIIIII"), PauliString("IZZIIIIII"), PauliString("IIIZZIIII"),
            PauliString("IIIIZZIII"), PauliString("IIIIIIZZI"), PauliString("IIIIIIIZZ")};
}

std::vector<QubitOperator> weight_le1_paulis(int n) {
    std::vector<QubitOperator> ops;
    ops.emplace_back(PauliString(std::string(n, 'I')));
    for (int q = 0; q < n; ++q)
        for (char p : {'X', 'Y', 'Z'}) {
            std::string s(n, 'I');
            s[q] = p;
            ops.emplace_back(PauliString(s));
        }
    return ops;
}

}  // namespace

TEST_CASE("Pauli string algebra on sparse states") {
    NQubitState s;
    s.n = 2;
    s.amps[0b10] = 1.0;  // |10>: qubit 1 (MSB) set
    NQubitState y1 = PauliString("YI").apply(s);
    CHECK(std::abs(y1.amps.at(0b00) - qcplx(0, -1)) < 1e-15);  // Y|1> = -i|0>
    NQubitState y2 = PauliString("IY").apply(s);
    CHECK(std::abs(y2.amps.at(0b11) - qcplx(0, 1)) < 1e-15);   // Y|0> = i|1>
    NQubitState z = PauliString("ZI").apply(s);
    CHECK(std::abs(z.amps.at(0b10) + 1.0) < 1e-15);

    DampingMonomial d{2, {1}};
    NQubitState lowered = d.apply(s);
    CHECK(std::abs(lowered.amps.at(0b00) - 1.0) < 1e-15);  // sigma_minus |1> = |0>
    CHECK(d.apply(lowered).amps.empty());                  // annihilates |0>
    CHECK(d.letters() == "-I");
}

TEST_CASE("stabilizer lists for shor and shor'") {
    QubitCode shor = build_code("shor");
    auto shor_stabs = shared_z_stabilizers();
    shor_stabs.emplace_back("XXXXXXIII");
    shor_stabs.emplace_back("IIIXXXXXX");
    CHECK(stabilizer_check(shor, shor_stabs));

    QubitCode shorp = build_code("shor'");
    auto shorp_stabs = shared_z_stabilizers();
    shorp_stabs.emplace_back("XXXIIIXXX");
    shorp_stabs.emplace_back("YXXYXXZII");
    CHECK(stabilizer_check(shorp, shorp_stabs));
    // the plain weight-six X stabilizers of shor do NOT stabilize shor'
    CHECK_FALSE(stabilizer_check(shorp, {PauliString("XXXXXXIII")}));
}

TEST_CASE("single-qubit Pauli errors are correctable for all five codes") {
    for (const char* name : {"shor", "shor'", "shor''", "steane", "stn'"}) {
        QubitCode code = build_code(name);
        Correctability c = correctable_set(code, weight_le1_paulis(code.n));
        CHECK_MESSAGE(c.correctable, name, " violation=", c.worst_violation);
    }
}

TEST_CASE("weight-three X-only census: shor has exactly the 3 block logicals") {
    QubitCode shor = build_code("shor");
    Census cs = census(shor, 3, ErrorAlphabet::XOnly);
    CHECK(cs.total == 84);
    CHECK(cs.undetectable == 3);
    std::vector<std::string> expected = {"XXXIIIIII", "IIIXXXIII", "IIIIIIXXX"};
    CHECK(cs.undetectable_letters == expected);

    QubitCode shorp = build_code("shor'");
    Census cp = census(shorp, 3, ErrorAlphabet::XOnly);
    CHECK(cp.total == 84);
    CHECK(cp.undetectable == 0);
}

TEST_CASE("Z-only errors cannot distinguish shor from shor'") {
    // the sign alteration lives entirely in the X sector
    QubitCode shor = build_code("shor");
    QubitCode shorp = build_code("shor'");
    for (int w = 1; w <= 3; ++w) {
        int und_a = 0, und_b = 0, total = 0;
        detail::for_each_support(9, w, [&](const std::vector<int>& support) {
            std::string letters(9, 'I');
            for (int q : support) letters[q - 1] = 'Z';
            PauliString e(letters);
            ++total;
            und_a += !detectable(shor, e).detectable;
            und_b += !detectable(shorp, e).detectable;
        });
        CHECK(und_a == und_b);
        CHECK(total == (w == 1 ? 9 : (w == 2 ? 36 : 84)));
    }
}

TEST_CASE("hybrid X/Y weight-three census improves under the sign alteration") {
    QubitCode shor = build_code("shor");
    QubitCode shorp = build_code("shor'");
    Census a = census(shor, 3, ErrorAlphabet::XYHybrid);
    Census b = census(shorp, 3, ErrorAlphabet::XYHybrid);
    CHECK(a.total == 84 * 8);
    CHECK(b.total == 84 * 8);
    CHECK(b.undetectable < a.undetectable);
}

TEST_CASE("damping triples: shor'' and stn' beat their parents") {
    QubitCode shor = build_code("shor");
    QubitCode shorpp = build_code("shor''");
    Census a = census(shor, 3, ErrorAlphabet::Damping);
    Census b = census(shorpp, 3, ErrorAlphabet::Damping);
    CHECK(a.total == 84);
    CHECK(b.total == 84);
    // the block-aligned triples sigma_-^(i,i+1,i+2), i = 1,4,7, stay only
    // half-detectable for both variants (the census counts agree)...
    CHECK(a.undetectable == 3);
    CHECK(b.undetectable == 3);
    // ...but the sign flip makes the damaged |-> orthogonal to |+>
    DampingMonomial tri{9, {1, 2, 3}};
    double plus_denom = std::sqrt(std::real(inner(shor.word0, shor.word0)));
    qcplx o_shor = inner(shor.word0, tri.apply(shor.word1));
    qcplx o_pp = inner(shorpp.word0, tri.apply(shorpp.word1));
    CHECK(std::abs(o_shor) / plus_denom > 1e-2);
    CHECK(std::abs(o_pp) < 1e-12);
    // the reverse matrix element stays nonzero for both (not fully detectable)
    CHECK(std::abs(inner(shor.word1, tri.apply(shor.word0))) > 1e-12);
    CHECK(std::abs(inner(shorpp.word1, tri.apply(shorpp.word0))) > 1e-12);

    QubitCode stn = build_code("stn'");
    Census c = census(stn, 3, ErrorAlphabet::Damping);
    CHECK(c.total == 35);
    CHECK(c.undetectable == 0);

    QubitCode steane = build_code("steane");
    Census d = census(steane, 3, ErrorAlphabet::Damping);
    CHECK(d.undetectable > 0);
}

TEST_CASE("detectable reports the proportionality coefficient") {
    QubitCode steane = build_code("steane");
    Detectability id = detectable(steane, PauliString("IIIIIII"));
    CHECK(id.detectable);
    CHECK(std::abs(id.coefficient - 1.0) < 1e-12);
    // a logical operator is undetectable with large violation
    Detectability zl = detectable(steane, PauliString("ZZZZZZZ"));
    CHECK_FALSE(zl.detectable);
}

TEST_CASE("input validation") {
    CHECK_THROWS(build_code("shor'''"));
    CHECK_THROWS(PauliString("XQZ"));
    QubitCode shor = build_code("shor");
    CHECK_THROWS(census(shor, 10, ErrorAlphabet::XOnly));
    CHECK_THROWS(PauliString("XX").apply(shor.word0));
}
