// SPDX-License-Identifier: Apache-2.0
//
// qcurv: exact certification of triviality and group classification for
// linear q-difference systems via cyclotomic curvature reductions.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "qcurv/qcurv.hpp"

namespace {

std::string read_input(const std::string& path) {
    if (path == "-" || path.empty()) {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream f(path, std::ios::binary);
    if (!f) throw qcurv::InputError("cannot open input file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void print_human(const qcurv::json& rep) {
    const auto& r = rep["result"];
    std::cout << "qcurv " << rep["version"].get<std::string>() << "  command="
              << rep["command"].get<std::string>() << "  digest="
              << rep["input_digest"].get<std::string>() << "\n";
    std::string cmd = rep["command"].get<std::string>();
    if (cmd == "scan") {
        std::cout << "scan [" << r["n_min"] << ", " << r["n_max"] << "]: zero=" << r["counts"]["zero"]
                  << " nilpotent=" << r["counts"]["nilpotent"] << " other=" << r["counts"]["other"]
                  << " bad=" << r["counts"]["bad_reduction"] << "\n"
                  << "hint: " << r["hint"].get<std::string>() << "\n";
    } else if (cmd == "trivial") {
        std::cout << "verdict: " << r["verdict"].get<std::string>() << "\n";
        if (r.contains("solution")) {
            std::cout << "solution:\n";
            for (const auto& row : r["solution"]) {
                std::cout << "  [";
                for (std::size_t j = 0; j < row.size(); ++j)
                    std::cout << (j ? ", " : "") << row[j].get<std::string>();
                std::cout << "]\n";
            }
        }
        std::cout << "note: " << r["note"].get<std::string>() << "\n";
    } else if (cmd == "galois-rank1") {
        std::cout << "group: " << r["group"]["kind"].get<std::string>() << "\n"
                  << "diff_group: " << r["diff_group"]["kind"].get<std::string>() << "\n";
    } else if (cmd == "dynamics") {
        if (r["monomial"].get<bool>())
            std::cout << "Monomial(" << r["exponent"] << ")\n";
        else
            std::cout << "NotMonomial(witness prime " << r["witness_prime"] << ")\n";
    } else if (cmd == "diff-trivial") {
        std::cout << "verdict: " << r["verdict"].get<std::string>() << "\n";
        if (r.contains("caveat")) std::cout << "caveat: " << r["caveat"].get<std::string>() << "\n";
    } else if (cmd == "integrable") {
        std::cout << "integrable: " << (r["integrable"].get<bool>() ? "true" : "false") << "\n";
    } else {
        // matrix-producing and report-heavy commands print the JSON result
        std::cout << r.dump(2) << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qcurv: exact q-difference curvature scans, triviality certificates, and "
                 "generic Galois group classification over Q(q)(x) and F_p(q)(x)"};

    std::string command, input_path = "-";
    qcurv::CliOptions opt;
    app.add_option("command", command,
                   "one of: scan trivial galois-rank1 galois-diagonal dynamics series reconstruct "
                   "exponents gauge-constant prolong specialize deform diff-trivial integrable")
        ->required();
    app.add_option("input", input_path, "input JSON document (file path or - for stdin)");
    app.add_option("--nmin", opt.nmin, "scan range lower bound (default 2)");
    app.add_option("--nmax", opt.nmax, "scan range upper bound (default 30)");
    app.add_option("--trunc", opt.trunc, "series truncation order (default 40)");
    app.add_option("--degbound", opt.degbound, "rational reconstruction degree bound (default 10)");
    app.add_option("--place", opt.place, "cyclotomic order for specialize");
    app.add_option("--height", opt.height, "relation height for galois-diagonal (default 3)");
    app.add_option("--maxorder", opt.maxorder, "cyclic order bound for galois-rank1 (default 12)");
    app.add_flag("--primes-only", opt.primes_only, "scan prime orders only");
    app.add_flag("--json", opt.json_output, "emit the full JSON report");
    app.add_option("--char", opt.char_flag, "expected characteristic (must match the document)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cout << qcurv::error_report("UsageError", e.what());
        return 1;
    }

    opt.command = command;
    try {
        qcurv::SystemDescription desc = qcurv::SystemDescription::from_json_text(read_input(input_path));
        qcurv::json rep = qcurv::run(desc, opt);
        if (opt.json_output)
            std::cout << rep.dump(2) << "\n";
        else
            print_human(rep);
        return 0;
    } catch (const qcurv::SyntaxError& e) {
        std::cout << qcurv::error_report("SyntaxError", e.what());
        return 1;
    } catch (const qcurv::UnknownCommand& e) {
        std::cout << qcurv::error_report("UnknownCommand", e.what());
        return 1;
    } catch (const qcurv::FlagConflict& e) {
        std::cout << qcurv::error_report("FlagConflict", e.what());
        return 1;
    } catch (const qcurv::BadReduction& e) {
        std::cout << qcurv::error_report("BadReduction", e.what());
        return 1;
    } catch (const qcurv::Resonant& e) {
        std::cout << qcurv::error_report("Resonant", e.what());
        return 1;
    } catch (const qcurv::NotRegularSingularAtZero& e) {
        std::cout << qcurv::error_report("NotRegularSingularAtZero", e.what());
        return 1;
    } catch (const qcurv::Unresolved& e) {
        std::cout << qcurv::error_report("Unresolved", e.what());
        return 1;
    } catch (const qcurv::SingularMatrix& e) {
        std::cout << qcurv::error_report("SingularMatrix", e.what());
        return 1;
    } catch (const qcurv::PoleAtZero& e) {
        std::cout << qcurv::error_report("PoleAtZero", e.what());
        return 1;
    } catch (const qcurv::NoConfluence& e) {
        std::cout << qcurv::error_report("NoConfluence", e.what());
        return 1;
    } catch (const qcurv::Error& e) {
        std::cout << qcurv::error_report("InputError", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::cout << qcurv::error_report("InternalError", e.what());
        return 2;
    }
}
