// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "confluence.hpp"
#include "parse.hpp"
#include "version.hpp"

namespace qcurv {

using json = nlohmann::json;  // keys serialize sorted: byte-deterministic

/// Parsed form of the input document
/// {"dim":n, "matrix":[[...expr...]], "char":0, "label":"...",
///  "bmatrix":[[...]], "derivation":"d/dx"|"x*d/dx"}.
struct SystemDescription {
    long dim = 0;
    std::vector<std::vector<std::string>> matrix;
    std::vector<std::vector<std::string>> bmatrix;  // optional second operand
    unsigned long characteristic = 0;
    std::string label;
    Derivation derivation = Derivation::DDx;
    std::string raw;  // original bytes, digested into the report

    static SystemDescription from_json_text(const std::string& text) {
        json doc;
        try {
            doc = json::parse(text);
        } catch (const json::exception& e) {
            throw InputError(std::string("input is not valid JSON: ") + e.what());
        }
        SystemDescription d;
        d.raw = text;
        if (!doc.is_object() || !doc.contains("dim") || !doc.contains("matrix"))
            throw InputError("input document needs \"dim\" and \"matrix\"");
        if (!doc["dim"].is_number_integer() || doc["dim"].get<long>() < 1)
            throw InputError("\"dim\" must be a positive integer");
        d.dim = doc["dim"].get<long>();
        auto read_matrix = [&](const json& m, const char* name) {
            if (!m.is_array() || static_cast<long>(m.size()) != d.dim)
                throw InputError(std::string("\"") + name + "\" must be a " + std::to_string(d.dim) +
                                 "-row array");
            std::vector<std::vector<std::string>> rows;
            for (const auto& r : m) {
                if (!r.is_array() || static_cast<long>(r.size()) != d.dim)
                    throw InputError(std::string("\"") + name + "\" must be square");
                std::vector<std::string> row;
                for (const auto& e : r) {
                    if (!e.is_string()) throw InputError("matrix entries must be expression strings");
                    row.push_back(e.get<std::string>());
                }
                rows.push_back(std::move(row));
            }
            return rows;
        };
        d.matrix = read_matrix(doc["matrix"], "matrix");
        if (doc.contains("bmatrix")) d.bmatrix = read_matrix(doc["bmatrix"], "bmatrix");
        if (doc.contains("char")) {
            if (!doc["char"].is_number_integer() || doc["char"].get<long>() < 0)
                throw InputError("\"char\" must be 0 or a prime");
            d.characteristic = doc["char"].get<unsigned long>();
            if (d.characteristic != 0 && !is_prime_long(static_cast<long>(d.characteristic)))
                throw InputError("\"char\" must be 0 or a prime");
        }
        if (doc.contains("label")) d.label = doc["label"].get<std::string>();
        if (doc.contains("derivation")) {
            std::string s = doc["derivation"].get<std::string>();
            if (s == "d/dx") d.derivation = Derivation::DDx;
            else if (s == "x*d/dx") d.derivation = Derivation::XDDx;
            else throw InputError("\"derivation\" must be \"d/dx\" or \"x*d/dx\"");
        }
        return d;
    }
};

struct CliOptions {
    std::string command;
    long nmin = 2;
    long nmax = 30;
    long trunc = 40;
    long degbound = 10;
    long place = 0;  // required by specialize
    long height = 3;
    long maxorder = 12;
    bool primes_only = false;
    bool json_output = false;
    long char_flag = -1;  // -1: not given
};

inline std::string fnv1a_digest(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string("fnv1a:") + buf;
}

namespace detail {

template <class K>
XRat<K> parse_entry(const std::string& s, unsigned long p);
template <>
inline XRat<Rational> parse_entry<Rational>(const std::string& s, unsigned long) {
    return parse_expr(s);
}
template <>
inline XRat<GFp> parse_entry<GFp>(const std::string& s, unsigned long p) {
    return parse_expr_mod(s, p);
}

template <class K>
Matrix<XRat<K>> parse_matrix(const std::vector<std::vector<std::string>>& rows, unsigned long p) {
    long n = static_cast<long>(rows.size());
    Matrix<XRat<K>> m(n, n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j)
            m.at(i, j) = parse_entry<K>(rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], p);
    return m;
}

template <class T>
json matrix_json(const Matrix<T>& m) {
    json rows = json::array();
    for (long i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (long j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).str());
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json scan_json(const CurvatureReport& rep) {
    json places = json::array();
    for (const auto& [n, cls] : rep.classes) {
        json e;
        e["order"] = n;
        e["class"] = cls.str();
        places.push_back(std::move(e));
    }
    json out;
    out["n_min"] = rep.n_min;
    out["n_max"] = rep.n_max;
    out["places"] = std::move(places);
    out["counts"] = {{"zero", rep.count_zero},
                     {"nilpotent", rep.count_nilpotent},
                     {"other", rep.count_other},
                     {"bad_reduction", rep.count_bad}};
    out["hint"] = rep.verdict_hint;
    return out;
}

inline json group_json(const GroupDescriptor& g) {
    json out;
    out["kind"] = g.str();
    out["certified"] = g.certified;
    if (g.kind == GroupKind::FiniteCyclic) out["cyclic_order"] = g.cyclic_order;
    if (g.kind == GroupKind::SubTorus) {
        json lat = json::array();
        for (const auto& row : g.torus_lattice) lat.push_back(row);
        out["lattice"] = std::move(lat);
        out["lattice_certified"] = g.lattice_certified;
    }
    if (!g.note.empty()) out["note"] = g.note;
    return out;
}

template <class K>
json series_json(const TruncatedSeriesMatrix<K>& y) {
    json coeffs = json::array();
    for (long n = 0; n <= y.order; ++n) coeffs.push_back(matrix_json(y.at(n)));
    json out;
    out["order"] = y.order;
    out["coefficients"] = std::move(coeffs);
    return out;
}

template <class K>
RatFn<K, 'x'> parse_kx_entry(const std::string& s, unsigned long p) {
    XRat<K> f = parse_entry<K>(s, p);
    auto lower = [](const XPoly<K>& poly) {
        std::vector<K> out;
        for (const auto& c : poly.coeffs()) {
            if (!c.den().is_one() || c.num().degree() > 0)
                throw InputError("differential system entries must be free of q");
            out.push_back(c.num().coeff(0));
        }
        return UPoly<K, 'x'>(std::move(out));
    };
    return RatFn<K, 'x'>(lower(f.num()), lower(f.den()));
}

template <class K>
json run_typed(const SystemDescription& desc, const CliOptions& opt) {
    const unsigned long p = desc.characteristic;
    const std::string& cmd = opt.command;
    json result;

    auto q_system = [&]() {
        Matrix<XRat<K>> m = parse_matrix<K>(desc.matrix, p);
        return QDiffSystem<K>(desc.dim, std::move(m));
    };
    auto diff_system = [&]() {
        long n = desc.dim;
        Matrix<RatFn<K, 'x'>> g(n, n);
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j)
                g.at(i, j) = parse_kx_entry<K>(
                    desc.matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], p);
        return DifferentialSystem<K>{n, std::move(g), desc.derivation};
    };
    auto scalar_entry = [&]() {
        if (desc.dim != 1) throw UnsupportedShape(cmd + " expects a 1x1 system");
        return parse_entry<K>(desc.matrix[0][0], p);
    };

    if (cmd == "scan") {
        ScanOptions sopt;
        sopt.prime_orders_only = opt.primes_only;
        sopt.characteristic = p;
        result = scan_json(curvature_scan(q_system(), opt.nmin, opt.nmax, sopt));
    } else if (cmd == "trivial") {
        TrivialityOptions topt;
        topt.scan_bound = opt.nmax;
        topt.degree_bound = opt.degbound;
        topt.truncation = opt.trunc;
        topt.characteristic = p;
        auto v = triviality_verdict(q_system(), topt);
        result["verdict"] = v.str();
        result["note"] = v.note;
        result["scan"] = scan_json(v.scan);
        if (v.kind == VerdictKind::NontrivialWitness) result["witness_order"] = v.witness_order;
        if (v.kind == VerdictKind::ConjecturallyTrivial) result["scan_bound"] = v.scan_bound;
        if (v.solution) result["solution"] = matrix_json(*v.solution);
    } else if (cmd == "galois-rank1") {
        Rank1Options ropt;
        ropt.scan_bound = opt.nmax;
        ropt.max_order = opt.maxorder;
        ropt.degree_bound = opt.degbound;
        ropt.truncation = opt.trunc;
        ropt.characteristic = p;
        XRat<K> a = scalar_entry();
        result["group"] = group_json(rank1_generic_group(a, ropt));
        auto d = rank1_differential_class(a, opt.nmax, p);
        json dj;
        dj["kind"] = d.str();
        if (d.witness_order) dj["witness_order"] = d.witness_order;
        if (!d.note.empty()) dj["note"] = d.note;
        result["diff_group"] = std::move(dj);
    } else if (cmd == "galois-diagonal") {
        auto sys = q_system();
        for (long i = 0; i < sys.dim; ++i)
            for (long j = 0; j < sys.dim; ++j)
                if (i != j && !sys.a.at(i, j).is_zero())
                    throw UnsupportedShape("galois-diagonal expects a diagonal matrix");
        std::vector<XRat<K>> entries;
        for (long i = 0; i < sys.dim; ++i) entries.push_back(sys.a.at(i, i));
        DiagonalOptions dopt;
        dopt.scan_bound = opt.nmax;
        dopt.height = opt.height;
        dopt.degree_bound = opt.degbound;
        dopt.truncation = opt.trunc;
        dopt.characteristic = p;
        result["group"] = group_json(diagonal_group(entries, dopt));
        result["height"] = opt.height;
    } else if (cmd == "dynamics") {
        XRat<K> f = scalar_entry();
        if (f.num().degree() > 0 || f.den().degree() > 0)
            throw InputError("dynamics expects an expression in q only");
        QRat<K> g = f.num().coeff(0) / f.den().coeff(0);
        long bigd = std::max(g.num().degree(), g.den().degree());
        std::vector<long> primes;
        for (long ell : {11L, 13L, 17L, 19L, 23L})
            if (2 * bigd < ell - 1) primes.push_back(ell);
        if (primes.empty()) throw InputError("expression degree too large for the default prime list");
        auto r = monomial_dynamics_test(g, primes);
        result["monomial"] = r.monomial;
        result["primes"] = primes;
        if (r.monomial) result["exponent"] = r.exponent;
        else result["witness_prime"] = r.witness_prime;
        json res = json::array();
        for (auto [ell, kappa] : r.residues) res.push_back({{"prime", ell}, {"kappa", kappa}});
        result["residues"] = std::move(res);
    } else if (cmd == "series") {
        result = series_json(series_solution(q_system(), opt.trunc));
    } else if (cmd == "reconstruct") {
        auto sys = q_system();
        long order = std::max(opt.trunc, 2 * opt.degbound + 1);
        auto y = series_solution(sys, order);
        auto rec = pade_reconstruct(sys, y, opt.degbound);
        result["matched"] = static_cast<bool>(rec);
        result["degree_bound"] = opt.degbound;
        result["series_order"] = order;
        if (rec) result["matrix"] = matrix_json(*rec);
    } else if (cmd == "exponents") {
        auto e = exponents_at_zero(q_system());
        result["char_poly"] = e.char_polynomial.str(true);
        json roots = json::array();
        for (std::size_t i = 0; i < e.exponents.size(); ++i) {
            json r;
            r["value"] = e.exponents[i].first.str();
            switch (e.exponents[i].second) {
                case ExponentClass::QPower:
                    r["class"] = "q-power";
                    r["exponent"] = e.q_exponents[i];
                    break;
                case ExponentClass::NotQPower: r["class"] = "not-in-qZ"; break;
                case ExponentClass::Unresolved: r["class"] = "unresolved"; break;
            }
            roots.push_back(std::move(r));
        }
        result["roots"] = std::move(roots);
        result["unresolved_factor"] = e.unresolved_factor.str(true);
    } else if (cmd == "gauge-constant") {
        auto g = gauge_to_constant(q_system(), opt.trunc);
        result["a0"] = matrix_json(g.a0);
        result["f"] = series_json(g.f);
    } else if (cmd == "prolong") {
        auto pl = prolong(q_system());
        result["dim"] = pl.dim;
        result["matrix"] = matrix_json(pl.a);
    } else if (cmd == "specialize") {
        if (opt.place < 2) throw InputError("specialize needs --place n with n >= 2");
        auto sys = q_system();
        auto place = CycloPlace<K>::make(opt.place, p);
        auto sp = specialize_root_of_unity(sys, place);
        result["order"] = sp.order;
        result["matrix"] = matrix_json(sp.a);
        result["phi"] = place->phi.str();
        try {
            Rank1Options ropt;
            ropt.scan_bound = opt.nmax;
            ropt.max_order = opt.maxorder;
            ropt.degree_bound = opt.degbound;
            ropt.truncation = opt.trunc;
            ropt.characteristic = p;
            auto cont = specialization_containment_check(sys, place, ropt);
            json cj;
            cj["generic"] = group_json(cont.generic);
            cj["specialized"] = group_json(cont.specialized);
            cj["contained"] = cont.contained;
            cj["note"] = cont.note;
            result["containment"] = std::move(cj);
        } catch (const UnsupportedShape&) {
            // containment is reported for rank-1/diagonal inputs only
        }
    } else if (cmd == "deform") {
        auto d = deform_differential(diff_system());
        result["dim"] = d.dim;
        result["matrix"] = matrix_json(d.a);
    } else if (cmd == "diff-trivial") {
        auto rep = differential_triviality_scan(diff_system(), opt.nmax, p);
        result["verdict"] = rep.kind == DiffScanKind::BasisCertified
                                ? "BasisCertified"
                                : "FailWitness(" + std::to_string(rep.witness_order) + ")";
        result["scan_bound"] = rep.scan_bound;
        result["good_places"] = rep.good_places;
        result["bad_places"] = rep.bad_places;
        json by_order = json::array();
        for (auto [n, ident] : rep.identity_by_order)
            by_order.push_back({{"order", n}, {"identity", ident}});
        result["identity_by_order"] = std::move(by_order);
        if (rep.kind == DiffScanKind::FailWitness) {
            result["witness_order"] = rep.witness_order;
            result["caveat"] = rep.caveat;
            result["basis_dependent"] = true;
        }
    } else if (cmd == "integrable") {
        if (desc.bmatrix.empty()) throw InputError("integrable needs a \"bmatrix\" field");
        auto sys = q_system();
        Matrix<XRat<K>> b = parse_matrix<K>(desc.bmatrix, p);
        result["integrable"] = integrability_check(sys, b);
    } else {
        throw UnknownCommand(cmd);
    }
    return result;
}

}  // namespace detail

inline json params_json(const CliOptions& opt) {
    json out;
    out["nmin"] = opt.nmin;
    out["nmax"] = opt.nmax;
    out["trunc"] = opt.trunc;
    out["degbound"] = opt.degbound;
    out["primes_only"] = opt.primes_only;
    if (opt.place) out["place"] = opt.place;
    out["height"] = opt.height;
    out["maxorder"] = opt.maxorder;
    return out;
}

/// Runs one command and assembles the versioned report. Deterministic:
/// identical input bytes and flags give identical output bytes.
inline json run(const SystemDescription& desc, const CliOptions& opt) {
    if (opt.char_flag >= 0 && static_cast<unsigned long>(opt.char_flag) != desc.characteristic)
        throw FlagConflict("--char disagrees with the input document's \"char\"");
    json rep;
    rep["schema"] = "qcurv/1";
    rep["version"] = version_string();
    rep["command"] = opt.command;
    rep["input_digest"] = fnv1a_digest(desc.raw);
    rep["label"] = desc.label;
    rep["characteristic"] = desc.characteristic;
    rep["params"] = params_json(opt);
    rep["result"] = desc.characteristic == 0 ? detail::run_typed<Rational>(desc, opt)
                                             : detail::run_typed<GFp>(desc, opt);
    return rep;
}

inline std::string error_report(const std::string& type, const std::string& message) {
    json rep;
    rep["schema"] = "qcurv/1";
    rep["version"] = version_string();
    rep["error"] = {{"type", type}, {"message", message}};
    return rep.dump(2) + "\n";
}

}  // namespace qcurv
