// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: runs every gate criterion at its stated tolerance
// (all exact arithmetic, tolerance zero) and prints one PASS/FAIL line per
// criterion. Usage: qcurv_acceptance <cli-binary> <corpus-dir> <schema.json>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "qcurv/qcurv.hpp"

using namespace qcurv;
using Clock = std::chrono::steady_clock;
using Sys = QDiffSystem<Rational>;
using QR = QRat<Rational>;
using XR = XRat<Rational>;
using KX = RatFn<Rational, 'x'>;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string& what) {
    std::printf("%s criterion %2d: %s\n", ok ? "PASS" : "FAIL", criterion, what.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

XR expr(const std::string& s) { return parse_expr(s); }
PlacePtr<Rational> place(long n) { return CycloPlace<Rational>::make(n); }

// Random T in GL_2(Q(x)) with polynomial entries of degree <= 2 and
// invertible constant term (resampled until both determinants are nonzero).
Matrix<XR> random_gauge(std::mt19937& rng) {
    std::uniform_int_distribution<int> coef(-3, 3), deg(0, 2);
    while (true) {
        Matrix<XR> t(2, 2);
        for (long i = 0; i < 2; ++i)
            for (long j = 0; j < 2; ++j) {
                int d = deg(rng);
                std::vector<QR> c(static_cast<std::size_t>(d) + 1);
                for (auto& v : c) v = QR::from_int(coef(rng));
                if (c.back().is_zero()) c.back() = QR::one();
                t.at(i, j) = XR(XPoly<Rational>(std::move(c)));
            }
        if (t.det().is_zero()) continue;
        Matrix<QR> t0(2, 2);
        bool ok = true;
        for (long i = 0; i < 2; ++i)
            for (long j = 0; j < 2; ++j) t0.at(i, j) = t.at(i, j).num().coeff(0);
        if (t0.det().is_zero()) ok = false;
        if (ok) return t;
    }
}

Matrix<XR> random_unimodular(std::mt19937& rng) {
    std::uniform_int_distribution<int> coef(-2, 2), deg(0, 1), pick(0, 1);
    Matrix<XR> m = Matrix<XR>::identity(2);
    for (int f = 0; f < 2; ++f) {
        long i = pick(rng), j = 1 - i;
        Matrix<XR> e = Matrix<XR>::identity(2);
        int d = deg(rng);
        std::vector<QR> c(static_cast<std::size_t>(d) + 1);
        for (auto& v : c) {
            std::vector<Rational> qc(static_cast<std::size_t>(deg(rng)) + 1);
            for (auto& y : qc) y = Rational(coef(rng));
            v = QR(QPoly<Rational>(std::move(qc)));
        }
        if (c.back().is_zero()) c.back() = QR::one();
        e.at(i, j) = XR(XPoly<Rational>(std::move(c)));
        m = m * e;
    }
    return m;
}

DifferentialSystem<Rational> random_diff(std::mt19937& rng, long dim, int deg) {
    std::uniform_int_distribution<int> coef(-3, 3), dd(0, deg);
    Matrix<KX> g(dim, dim);
    for (long i = 0; i < dim; ++i)
        for (long j = 0; j < dim; ++j) {
            std::vector<Rational> num(static_cast<std::size_t>(dd(rng)) + 1);
            for (auto& c : num) c = Rational(coef(rng));
            std::vector<Rational> den(static_cast<std::size_t>(dd(rng)) + 1);
            for (auto& c : den) c = Rational(coef(rng));
            if (den.back().is_zero()) den.back() = Rational(1);
            g.at(i, j) = KX(UPoly<Rational, 'x'>(std::move(num)), UPoly<Rational, 'x'>(std::move(den)));
        }
    return {dim, std::move(g), Derivation::DDx};
}

// ---------------------------------------------------------------------------
// criteria
// ---------------------------------------------------------------------------

void criterion_1() {
    auto t0 = Clock::now();
    bool ok = true;
    std::string why;
    Sys theta = Sys::scalar(expr("q*x"));
    for (long n = 0; n <= 12 && ok; ++n) {
        XR expected = embed_q<Rational>(q_pow<Rational>(n * (n + 1) / 2)) * x_pow<Rational>(n);
        if (!(iterate(theta, n).at(0, 0) == expected)) {
            ok = false;
            why = "iterate mismatch at n = " + std::to_string(n);
        }
    }
    for (long n = 2; n <= 30 && ok; ++n) {
        auto pl = place(n);
        auto c = curvature(theta, pl).at(0, 0);
        // unit times x^n: monomial numerator of degree n over a unit
        bool unit_monomial = !c.is_zero() && c.den().is_one() && c.num().is_monomial() &&
                             c.num().degree() == n;
        if (!unit_monomial) {
            ok = false;
            why = "curvature at order " + std::to_string(n) + " is not a unit times x^n";
        }
    }
    if (ok) {
        auto g = rank1_generic_group(expr("q*x"));
        auto d = rank1_differential_class(expr("q*x"));
        if (g.kind != GroupKind::FullGm) { ok = false; why = "generic group is not FullGm"; }
        if (d.kind != DiffGroupKind::MultiplicativeFlat) { ok = false; why = "differential class is not MultiplicativeFlat"; }
    }
    double dt = seconds_since(t0);
    if (ok && dt >= 5.0) { ok = false; why = "runtime " + std::to_string(dt) + "s exceeds 5s"; }
    report(1, ok, "theta reproduction: iterates, unit*x^n curvatures, FullGm + MultiplicativeFlat (" +
                      std::to_string(dt).substr(0, 5) + "s)" + (ok ? "" : " -- " + why));
}

std::vector<Sys> g_certified;  // criterion 2 instances reused by criterion 3

void criterion_2() {
    auto t0 = Clock::now();
    bool ok = true;
    std::string why;
    std::mt19937 rng(20240301);
    TrivialityOptions topt;  // scan 30, degree bound 10, truncation 40
    for (int trial = 0; trial < 20 && ok; ++trial) {
        Sys sys = gauge_transform(Sys::identity(2), random_gauge(rng));
        auto v = triviality_verdict(sys, topt);
        if (v.scan.count_nilpotent != 0 || v.scan.count_other != 0) {
            ok = false;
            why = "trial " + std::to_string(trial) + ": nonzero curvature class in scan";
            break;
        }
        if (v.kind != VerdictKind::TrivialCertified) {
            ok = false;
            why = "trial " + std::to_string(trial) + ": " + v.str() + " (" + v.note + ")";
            break;
        }
        if (!verify_fundamental_solution(sys, *v.solution)) {
            ok = false;
            why = "trial " + std::to_string(trial) + ": solution failed re-verification";
            break;
        }
        g_certified.push_back(sys);
    }
    if (ok) {
        auto vt = triviality_verdict(Sys::scalar(expr("q*x")), topt);
        auto v2 = triviality_verdict(Sys::scalar(expr("2")), topt);
        if (vt.kind != VerdictKind::NontrivialWitness || vt.witness_order > 3) {
            ok = false;
            why = "theta witness missing or too late";
        }
        if (v2.kind != VerdictKind::NontrivialWitness || v2.witness_order > 3) {
            ok = false;
            why = "constant-2 witness missing or too late";
        }
    }
    double dt = seconds_since(t0);
    if (ok && dt >= 60.0) { ok = false; why = "runtime " + std::to_string(dt) + "s exceeds 60s"; }
    report(2, ok, "two-sided harness: 20 certified random gauges of Id, witnesses for theta and 2 (" +
                      std::to_string(dt).substr(0, 5) + "s)" + (ok ? "" : " -- " + why));
}

void criterion_3() {
    bool ok = true;
    std::string why;
    for (std::size_t i = 0; i < g_certified.size() && ok; ++i) {
        auto seq = g_matrices_pair(g_certified[i], 15);
        for (long n : {2L, 3L, 5L}) {
            auto pl = place(n);
            for (long m = 1; m <= 15; ++m) {
                if (seq.num_of(m).is_zero()) continue;
                long vfact = cyclo_valuation(q_factorial<Rational>(m), pl);
                long val = gauss_valuation_matrix(seq.num_of(m), seq.den_of(m), pl) - vfact;
                if (val < 0) {
                    ok = false;
                    why = "instance " + std::to_string(i) + ": valuation " + std::to_string(val) +
                          " at order " + std::to_string(n) + ", m = " + std::to_string(m);
                    break;
                }
            }
            if (!ok) break;
        }
    }
    if (ok) {
        auto chk = iterative_structure_check(Sys::scalar(expr("q*x")), place(2), 8);
        if (chk.ok) {
            ok = false;
            why = "theta at order 2 unexpectedly satisfies the inequality through m = 8";
        }
    }
    report(3, ok, std::string("iterated-reduction inequality: G_[m] integral at 2,3,5 on certified "
                              "instances; theta fails at order 2") + (ok ? "" : " -- " + why));
}

void criterion_4() {
    bool ok = true;
    std::string why;
    std::mt19937 rng(61);
    std::uniform_int_distribution<long> dd(-6, 6);
    const std::vector<long> pool{11, 13, 17, 19, 23};
    auto admissible = [&pool](const QR& f) {
        long big = std::max(f.num().degree(), f.den().degree());
        std::vector<long> out;
        for (long ell : pool)
            if (2 * big < ell - 1) out.push_back(ell);
        return out;
    };
    int monomials = 0, others = 0, false_rejects = 0, false_accepts = 0;
    while (monomials < 50) {
        long d = dd(rng);
        QR f = q_pow<Rational>(d);
        auto res = monomial_dynamics_test(f, admissible(f));
        if (!res.monomial || res.exponent != d) ++false_rejects;
        ++monomials;
    }
    std::uniform_int_distribution<int> span(-5, 5), degd(0, 4);
    while (others < 50) {
        std::vector<Rational> nc(static_cast<std::size_t>(degd(rng)) + 1), dc(static_cast<std::size_t>(degd(rng)) + 1);
        for (auto& c : nc) c = Rational(span(rng));
        for (auto& c : dc) c = Rational(span(rng));
        if (dc.back().is_zero()) dc.back() = Rational(1);
        if (nc.back().is_zero()) nc.back() = Rational(1);
        QR f{QPoly<Rational>(std::move(nc)), QPoly<Rational>(std::move(dc))};
        if (f.is_zero() || exact_q_power(f)) continue;
        auto res = monomial_dynamics_test(f, admissible(f));
        if (res.monomial) ++false_accepts;
        ++others;
    }
    if (false_rejects || false_accepts) {
        ok = false;
        why = std::to_string(false_rejects) + " false rejects, " + std::to_string(false_accepts) +
              " false accepts";
    }
    report(4, ok, std::string("rational dynamics corpus: 50 monomials + 50 non-monomials, exact "
                              "classification") + (ok ? "" : " -- " + why));
}

void criterion_5() {
    bool ok = true;
    std::string why;
    auto g = rank1_generic_group(expr("-1"));
    if (g.kind != GroupKind::FiniteCyclic || g.cyclic_order != 2) {
        ok = false;
        why = "a = -1 gave " + g.str();
    }
    for (long d = -5; d <= 5 && ok; ++d) {
        auto gd = rank1_generic_group(embed_q<Rational>(q_pow<Rational>(d)));
        if (gd.kind != GroupKind::Trivial) {
            ok = false;
            why = "q^" + std::to_string(d) + " gave " + gd.str();
        }
    }
    report(5, ok, std::string("finite groups: -1 -> FiniteCyclic(2), q^d trivial for |d| <= 5 "
                              "(c*q with c a primitive 3rd root of unity: out of scope over Q(q), "
                              "see README)") + (ok ? "" : " -- " + why));
}

void criterion_6() {
    bool ok = true;
    std::string why;
    std::mt19937 rng(20240302);
    int checks = 0;
    // 80 cocycle checks on unimodular systems
    for (int trial = 0; trial < 4 && ok; ++trial) {
        Sys sys(2, random_unimodular(rng));
        std::uniform_int_distribution<long> mm(-6, 6);
        for (int i = 0; i < 20; ++i) {
            long m = mm(rng), n = mm(rng);
            auto lhs = iterate(sys, m + n);
            auto rhs = sigma_q_matrix(iterate(sys, m), n) * iterate(sys, n);
            ++checks;
            if (!(lhs == rhs)) {
                ok = false;
                why = "cocycle failed at (m, n) = (" + std::to_string(m) + ", " + std::to_string(n) + ")";
                break;
            }
        }
    }
    // 60 tensor + 60 dual curvature functoriality checks
    std::uniform_int_distribution<long> nn(2, 13);
    for (int i = 0; i < 60 && ok; ++i) {
        Sys s1(2, random_unimodular(rng));
        Sys s2 = Sys::scalar(expr(i % 2 ? "q*x" : "-1"));
        long n = nn(rng);
        auto pl = place(n);
        try {
            if (!(curvature(tensor(s1, s2), pl) == kron(curvature(s1, pl), curvature(s2, pl)))) {
                ok = false;
                why = "tensor functoriality failed at order " + std::to_string(n);
            }
            ++checks;
            if (ok && !(curvature(dual(s1), pl) == curvature(s1, pl).inverse().transpose())) {
                ok = false;
                why = "dual functoriality failed at order " + std::to_string(n);
            }
            ++checks;
        } catch (const BadReduction&) {
            continue;
        }
    }
    if (ok && checks < 200) {
        ok = false;
        why = "only " + std::to_string(checks) + " checks ran";
    }
    report(6, ok, "cocycle and functoriality suite: " + std::to_string(checks) +
                      " randomized exact checks" + (ok ? "" : " -- " + why));
}

void criterion_7() {
    bool ok = true;
    std::string why;
    // residual exactly zero through order 40 on the named examples
    std::vector<Sys> examples;
    examples.push_back(Sys::identity(2));
    examples.push_back(Sys::scalar(expr("(q*x+1)/(x+1)")));
    examples.push_back(Sys::scalar(expr("1+x")));
    for (const auto& sys : examples) {
        auto y = series_solution(sys, 40);
        long r = residual_first_nonzero(sys, y);
        if (r != -1) {
            ok = false;
            why = "series residual nonzero at order " + std::to_string(r);
        }
    }
    // Pade recovers 1/(1-x) and (1+x)
    if (ok) {
        Sys geo = Sys::scalar(expr("(1-x)/(1-q*x)"));
        auto rec = pade_reconstruct(geo, series_solution(geo, 9), 4);
        if (!rec || !(rec->at(0, 0) == expr("1/(1-x)"))) {
            ok = false;
            why = "1/(1-x) not recovered";
        }
        Sys tel = Sys::scalar(expr("(q*x+1)/(x+1)"));
        auto rec2 = pade_reconstruct(tel, series_solution(tel, 5), 1);
        if (ok && (!rec2 || !(rec2->at(0, 0) == expr("x+1")))) {
            ok = false;
            why = "(1+x) not recovered";
        }
    }
    // gauge to constant: F^{-1} A F(qx) = A_0 through order 30
    if (ok) {
        Sys sys = Sys::scalar(expr("1+x"));
        auto g = gauge_to_constant(sys, 30);
        auto a = matrix_series(sys.a, 30);
        QR q = q_gen<Rational>();
        for (long n = 0; n <= 30 && ok; ++n) {
            Matrix<QR> lhs(1, 1);
            for (long k = 0; k <= n; ++k)
                lhs = lhs + a[static_cast<std::size_t>(k)] * g.f.at(n - k).scaled(q.pow(n - k));
            if (!(lhs == g.f.at(n) * g.a0)) {
                ok = false;
                why = "gauge-to-constant relation failed at order " + std::to_string(n);
            }
        }
    }
    // resonant and irregular inputs raise the right errors
    if (ok) {
        Matrix<XR> res(2, 2);
        res.at(0, 0) = expr("1");
        res.at(0, 1) = expr("x");
        res.at(1, 1) = expr("q");
        bool resonant_raised = false;
        try {
            gauge_to_constant(Sys(2, res), 5);
        } catch (const Resonant&) {
            resonant_raised = true;
        }
        bool irregular_raised = false;
        try {
            shear_normalize(Sys::scalar(expr("q*x")));
        } catch (const NotRegularSingularAtZero&) {
            irregular_raised = true;
        }
        if (!resonant_raised) { ok = false; why = "Resonant not raised"; }
        if (ok && !irregular_raised) { ok = false; why = "NotRegularSingularAtZero not raised"; }
    }
    report(7, ok, std::string("series and gauge machinery: residuals zero through order 40, Pade "
                              "recoveries, Frobenius relation to order 30, error paths") +
                      (ok ? "" : " -- " + why));
}

void criterion_8() {
    bool ok = true;
    std::string why;
    std::mt19937 rng(20240303);
    for (int trial = 0; trial < 50 && ok; ++trial) {
        auto g = random_diff(rng, 1 + (trial % 3), 3);
        auto back = specialize_q1(deform_differential(g));
        if (!(back.g == g.g)) {
            ok = false;
            why = "round trip failed at trial " + std::to_string(trial);
        }
    }
    if (ok) {
        std::vector<DifferentialSystem<Rational>> samples;
        samples.push_back(random_diff(rng, 2, 2));
        samples.push_back(DifferentialSystem<Rational>::scalar(KX(UPoly<Rational, 'x'>::one(),
                                                                  UPoly<Rational, 'x'>::gen())));
        for (const auto& g : samples)
            for (long n : {2L, 3L, 5L, 7L}) {
                try {
                    if (!(deformation_curvature(g, place(n)) ==
                          curvature(deform_differential(g), place(n)))) {
                        ok = false;
                        why = "product curvature mismatch at order " + std::to_string(n);
                    }
                } catch (const BadReduction&) {
                    continue;
                }
            }
    }
    if (ok) {
        auto inv_x = DifferentialSystem<Rational>::scalar(
            KX(UPoly<Rational, 'x'>::one(), UPoly<Rational, 'x'>::gen()));
        auto r1 = differential_triviality_scan(inv_x, 30);
        if (r1.kind != DiffScanKind::BasisCertified) {
            ok = false;
            why = "G = 1/x did not certify";
        }
        UPoly<Rational, 'x'> two_x{std::vector<Rational>{Rational(0), Rational(2)}};
        auto half = DifferentialSystem<Rational>::scalar(KX(UPoly<Rational, 'x'>::one(), two_x));
        auto r2 = differential_triviality_scan(half, 30);
        if (ok && (r2.kind != DiffScanKind::FailWitness || r2.witness_order != 2)) {
            ok = false;
            why = "G = 1/(2x) did not fail at order 2";
        }
        if (ok && r2.caveat.find("basis") == std::string::npos) {
            ok = false;
            why = "basis-dependence caveat missing from the report";
        }
    }
    report(8, ok, std::string("confluence: 50 round trips, product curvatures match, 1/x certifies, "
                              "1/(2x) fails at 2 with caveat") + (ok ? "" : " -- " + why));
}

void criterion_9() {
    bool ok = true;
    std::string why;
    std::vector<Sys> examples;
    examples.push_back(Sys::scalar(expr("(q*x+1)/(x+1)")));
    examples.push_back(Sys::scalar(expr("1+x")));
    examples.push_back(Sys::identity(2));
    for (const auto& sys : examples) {
        auto y = series_solution(sys, 40);
        auto stacked = y.stack_prolonged();
        Sys p = prolong(sys);
        long r = residual_first_nonzero(p, stacked);
        if (!(r == -1 || r > 39)) {
            ok = false;
            why = "stacked solution failed the prolonged system at order " + std::to_string(r);
        }
    }
    if (ok) {
        Matrix<XR> a(2, 2), b(2, 2);
        a.at(0, 0) = expr("1");
        a.at(0, 1) = expr("1");
        a.at(1, 1) = expr("1");
        b.at(0, 1) = expr("1");
        if (!integrability_check(Sys(2, a), b)) {
            ok = false;
            why = "constant-unipotent pair rejected";
        }
        // zeroed-B instance: A = qx with B = 0 has dA != 0
        Matrix<XR> zero1(1, 1);
        if (ok && integrability_check(Sys::scalar(expr("q*x")), zero1)) {
            ok = false;
            why = "zeroed B accepted for A = qx";
        }
    }
    report(9, ok, std::string("prolongation: stacked solutions solve F(M) through order 39; "
                              "integrability pair accepted, zeroed-B instance rejected") +
                      (ok ? "" : " -- " + why));
}

// ---------------------------------------------------------------------------
// criterion 10: CLI determinism, schema validation, exit codes
// ---------------------------------------------------------------------------

struct CliRun {
    std::string out;
    int code = -1;
};

CliRun run_cli(const std::string& cmdline) {
    CliRun r;
    FILE* p = popen((cmdline + " 2>/dev/null").c_str(), "r");
    if (!p) return r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

/// Minimal structural validator for the subset of JSON Schema the shipped
/// schema uses: $ref into #/definitions, oneOf, type, enum, required,
/// properties, pattern.
bool validate_schema(const json& value, const json& schema, const json& root, std::string* err) {
    if (schema.contains("$ref")) {
        std::string ref = schema["$ref"].get<std::string>();
        const std::string prefix = "#/definitions/";
        if (ref.rfind(prefix, 0) != 0) { *err = "unsupported $ref " + ref; return false; }
        return validate_schema(value, root["definitions"][ref.substr(prefix.size())], root, err);
    }
    if (schema.contains("oneOf")) {
        int matches = 0;
        for (const auto& sub : schema["oneOf"]) {
            std::string e;
            if (validate_schema(value, sub, root, &e)) ++matches;
        }
        if (matches != 1) { *err = "oneOf matched " + std::to_string(matches) + " branches"; return false; }
        return true;
    }
    if (schema.contains("enum")) {
        for (const auto& v : schema["enum"])
            if (v == value) return true;
        *err = "value not in enum";
        return false;
    }
    if (schema.contains("type")) {
        std::string t = schema["type"].get<std::string>();
        bool ok = (t == "object" && value.is_object()) || (t == "string" && value.is_string()) ||
                  (t == "integer" && value.is_number_integer()) ||
                  (t == "boolean" && value.is_boolean()) || (t == "array" && value.is_array()) ||
                  (t == "number" && value.is_number());
        if (!ok) { *err = "expected type " + t; return false; }
    }
    if (schema.contains("pattern")) {
        if (!value.is_string()) { *err = "pattern on non-string"; return false; }
        std::regex re(schema["pattern"].get<std::string>());
        if (!std::regex_search(value.get<std::string>(), re)) { *err = "pattern mismatch"; return false; }
    }
    if (schema.contains("required")) {
        for (const auto& k : schema["required"])
            if (!value.contains(k.get<std::string>())) {
                *err = "missing required key " + k.get<std::string>();
                return false;
            }
    }
    if (schema.contains("properties") && value.is_object()) {
        for (const auto& [k, sub] : schema["properties"].items()) {
            if (!value.contains(k)) continue;
            if (!validate_schema(value[k], sub, root, err)) {
                *err = k + ": " + *err;
                return false;
            }
        }
    }
    return true;
}

void criterion_10(const std::string& cli, const std::string& corpus, const std::string& schema_path) {
    bool ok = true;
    std::string why;
    std::ifstream sf(schema_path);
    if (!sf) {
        report(10, false, "cannot open schema " + schema_path);
        return;
    }
    json schema = json::parse(std::string(std::istreambuf_iterator<char>(sf), {}));

    struct Case {
        std::string command, file, flags;
        int expect;
    };
    const std::vector<Case> cases = {
        {"scan", "telescoping.json", "--json", 0},
        {"trivial", "telescoping.json", "--json", 0},
        {"reconstruct", "telescoping.json", "--json", 0},
        {"scan", "theta.json", "--json --primes-only", 0},
        {"trivial", "theta.json", "--json", 0},
        {"galois-rank1", "theta.json", "--json", 0},
        {"trivial", "const2.json", "--json", 0},
        {"galois-rank1", "minus1.json", "--json", 0},
        {"dynamics", "qcube.json", "--json", 0},
        {"integrable", "log_pair.json", "--json", 0},
        {"prolong", "log_pair.json", "--json", 0},
        {"gauge-constant", "log_pair.json", "--json --trunc 10", 0},
        {"galois-diagonal", "diag_q_q2.json", "--json --nmax 20 --height 2", 0},
        {"specialize", "diag_q_q2.json", "--json --place 5 --nmax 20", 0},
        {"series", "one_plus_x.json", "--json --trunc 12", 0},
        {"exponents", "rot.json", "--json", 0},
        {"deform", "diff_invx.json", "--json", 0},
        {"diff-trivial", "diff_invx.json", "--json", 0},
        {"diff-trivial", "diff_half.json", "--json", 0},
        {"scan", "charp_tel.json", "--json --nmax 20", 0},
        {"series", "resonant.json", "--json", 1},
        {"specialize", "bad_place.json", "--json --place 3", 1},
        {"scan", "singular.json", "--json", 1},
        {"scan", "bad_syntax.json", "--json", 1},
        {"frobnicate", "telescoping.json", "--json", 1},
        {"scan", "telescoping.json", "--json --char 7", 1},
        {"exponents", "theta.json", "--json", 1},
    };
    for (const auto& c : cases) {
        std::string cmd = cli + " " + c.command + " " + corpus + "/" + c.file + " " + c.flags;
        CliRun r1 = run_cli(cmd);
        CliRun r2 = run_cli(cmd);
        if (r1.code != c.expect) {
            ok = false;
            why = c.command + " " + c.file + ": exit " + std::to_string(r1.code) + " != " +
                  std::to_string(c.expect);
            break;
        }
        if (r1.out != r2.out || r1.out.empty()) {
            ok = false;
            why = c.command + " " + c.file + ": outputs differ between runs";
            break;
        }
        json rep;
        try {
            rep = json::parse(r1.out);
        } catch (const json::exception&) {
            ok = false;
            why = c.command + " " + c.file + ": output is not JSON";
            break;
        }
        std::string err;
        if (!validate_schema(rep, schema, schema, &err)) {
            ok = false;
            why = c.command + " " + c.file + ": schema violation: " + err;
            break;
        }
    }
    report(10, ok, std::string("CLI determinism and schema: byte-identical reports, schema-valid, "
                               "exit codes as contracted (") +
                       std::to_string(cases.size()) + " runs x2)" + (ok ? "" : " -- " + why));
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 4) {
        std::cerr << "usage: qcurv_acceptance <cli-binary> <corpus-dir> <schema.json>\n";
        return 2;
    }
    // parallel scans default to the machine's cores here; reports stay
    // deterministic by construction
    setenv("QCURV_THREADS", "0", 0);

    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10(argv[1], argv[2], argv[3]);

    if (g_failures) {
        std::printf("ACCEPTANCE: %d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("ACCEPTANCE: all 10 criteria passed\n");
    return 0;
}
