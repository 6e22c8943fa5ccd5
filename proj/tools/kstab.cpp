// kstab: exact verification toolkit for K-stability computations on a
// casebook of polarized Fano threefold families (plus one surface case).
//
// Subcommands:
//   verify     --case <id> [--divisor <name>] [--json]
//   verify-all [--jobs N] [--json]
//   beta       --case <id> --divisor <name> [--at "a=1,b=2"]
//   df         --case <id> [--oracle closed|series|both]
//   certify    --case <id> --target <name>
//   report     --format json|md
//
// Exit codes: 0 all checks pass, 1 verification failure, 2 input error.

#include "kstab/runner.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <iostream>
#include <sstream>

using namespace kstab;

namespace {

int print_case_result(const CaseRunResult& r, bool as_json) {
    if (as_json) {
        nlohmann::ordered_json j;
        j["id"] = r.id;
        j["mechanism"] = r.mechanism;
        j["verdict"] = r.verdict.verdict;
        j["status"] = r.ok() ? "pass" : "fail";
        j["checks"] = nlohmann::ordered_json::array();
        for (const auto& c : r.checks) {
            nlohmann::ordered_json cj;
            cj["name"] = c.name;
            cj["pass"] = c.pass;
            if (!c.detail.empty()) cj["detail"] = c.detail;
            j["checks"].push_back(std::move(cj));
        }
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& c : r.checks) {
            std::cout << (c.pass ? "  ok   " : "  FAIL ") << c.name;
            if (!c.pass && !c.detail.empty()) std::cout << "\n         " << c.detail;
            std::cout << "\n";
        }
        std::cout << (r.ok() ? "PASS " : "FAIL ") << r.id << ": " << r.verdict.verdict << "\n";
    }
    return r.ok() ? 0 : 1;
}

std::map<std::string, Rational> parse_at(const std::string& text) {
    std::map<std::string, Rational> out;
    auto trim = [](std::string s) {
        s.erase(std::remove_if(s.begin(), s.end(),
                               [](unsigned char c) { return std::isspace(c); }),
                s.end());
        return s;
    };
    std::string token;
    std::istringstream is(text);
    while (std::getline(is, token, ',')) {
        auto eq = token.find('=');
        if (eq == std::string::npos) throw InputError("--at expects var=value pairs");
        out[trim(token.substr(0, eq))] = parse_rational(trim(token.substr(eq + 1)));
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact K-stability verification casebook"};
    app.require_subcommand(1);
    std::string cases_dir = default_cases_dir();
    app.add_option("--cases-dir", cases_dir, "directory holding the case documents");

    std::string case_id, divisor, at_text, target, oracle = "both", format = "md";
    bool as_json = false;
    int jobs = 1;

    auto* verify = app.add_subcommand("verify", "run one case's full verification pipeline");
    verify->add_option("--case", case_id)->required();
    verify->add_option("--divisor", divisor);
    verify->add_flag("--json", as_json);

    auto* verify_all = app.add_subcommand("verify-all", "verify every case in the manifest");
    verify_all->add_option("--jobs", jobs);
    verify_all->add_flag("--json", as_json);

    auto* beta = app.add_subcommand("beta", "print the beta-invariant of a divisor");
    beta->add_option("--case", case_id)->required();
    beta->add_option("--divisor", divisor)->required();
    beta->add_option("--at", at_text, "exact rational evaluation point, e.g. a=1,b=2/3");

    auto* df = app.add_subcommand("df", "print the Donaldson-Futaki invariant");
    df->add_option("--case", case_id)->required();
    df->add_option("--oracle", oracle)->check(CLI::IsMember({"closed", "series", "both"}));

    auto* certify = app.add_subcommand("certify", "run one positivity certificate");
    certify->add_option("--case", case_id)->required();
    certify->add_option("--target", target)->required();

    auto* report = app.add_subcommand("report", "emit the casebook verdict table");
    report->add_option("--format", format)->check(CLI::IsMember({"json", "md"}));
    report->add_option("--jobs", jobs);

    CLI11_PARSE(app, argc, argv);

    try {
        Runner runner(cases_dir);
        if (verify->parsed()) {
            return print_case_result(runner.verify_case(case_id, divisor), as_json);
        }
        if (verify_all->parsed()) {
            auto t0 = std::chrono::steady_clock::now();
            auto rows = runner.verify_all(jobs);
            bool all_ok = true;
            int passed = 0;
            for (const auto& r : rows) {
                all_ok = all_ok && r.ok();
                passed += r.ok() ? 1 : 0;
            }
            if (as_json) {
                std::cout << Runner::report_json(rows) << "\n";
            } else {
                for (const auto& r : rows)
                    std::cout << (r.ok() ? "PASS " : "FAIL ") << r.id << " (" << r.mechanism
                              << "): " << r.verdict.verdict << "\n";
            }
            auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
            std::cerr << passed << "/" << rows.size() << " cases passed in " << ms << " ms\n";
            return all_ok ? 0 : 1;
        }
        if (beta->parsed()) {
            const CaseSpec& spec = runner.get_case(case_id);
            auto results = beta_general(spec, divisor);
            if (at_text.empty()) {
                for (const auto& r : results) {
                    std::cout << "beta(" << divisor << ")";
                    if (!r.region_texts.empty()) {
                        std::cout << " on";
                        for (const auto& t : r.region_texts) std::cout << " [" << t << "]";
                    }
                    std::cout << " = " << r.value.str() << "\n";
                }
            } else {
                auto pt = parse_at(at_text);
                bool printed = false;
                for (const auto& r : results) {
                    bool inside = true;
                    for (const auto& iq : r.region)
                        if (!iq.holds_at(pt)) inside = false;
                    if (!inside) continue;
                    std::cout << r.value.eval(pt) << "\n";
                    printed = true;
                    break;
                }
                if (!printed) throw InputError("no region branch contains the given point");
            }
            return 0;
        }
        if (df->parsed()) {
            const CaseSpec& spec = runner.get_case(case_id);
            if (!spec.localization) throw InputError("case " + case_id + " has no localization data");
            Polynomial a0 = spec.geometry.form.power(spec.geometry.polarization) * Rational(1, 6);
            DivisorClass minus_k;
            for (const auto& c : spec.geometry.canonical.coeffs) minus_k.coeffs.push_back(-c);
            Polynomial a1 =
                spec.geometry.form.power_times(spec.geometry.polarization, minus_k) * Rational(1, 4);
            DFResult r = df_invariant(*spec.localization, a0, a1, spec.dim, spec.dim + 4);
            if (oracle == "closed" || oracle == "both") {
                std::cout << "b0 = " << r.b0.str() << "\nb1 = " << r.b1.str() << "\n";
            }
            if (oracle == "series" || oracle == "both") {
                CharacterExpansion ch = character_series_oracle(*spec.localization, spec.dim,
                                                                spec.dim + 4);
                std::cout << "series h(k) = " << ch.h.str() << "\nseries w(k) = " << ch.w.str()
                          << "\npole cancellation: " << (ch.pole_check ? "ok" : "FAILED") << "\n";
            }
            if (oracle == "both")
                std::cout << "routes agree: " << (r.oracle_agreement ? "yes" : "NO") << "\n";
            std::cout << "DF = " << r.df.str() << "\n";
            return r.oracle_agreement ? 0 : 1;
        }
        if (certify->parsed()) {
            const CaseSpec& spec = runner.get_case(case_id);
            const CertificateSpec& cs = spec.certificate(target);
            Certificate cert = certify_on_region(cs.target, cs.substitution, cs.strict);
            std::cout << "status: "
                      << (cert.status == CertStatus::positive
                              ? "positive"
                              : cert.status == CertStatus::nonnegative ? "nonnegative"
                                                                       : "inconclusive")
                      << "\n";
            if (cert.is_positive())
                std::cout << "strictness witness: " << cert.strictness_witness_str << "\n";
            std::cout << "inspected polynomial: " << cert.witness.str() << "\n";
            return cert.is_positive() ? 0 : 1;
        }
        if (report->parsed()) {
            auto rows = runner.verify_all(jobs);
            std::cout << (format == "json" ? Runner::report_json(rows) : Runner::report_markdown(rows))
                      << "\n";
            for (const auto& r : rows)
                if (!r.ok()) return 1;
            return 0;
        }
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const CaseDataError& e) {
        std::cerr << "case data error: " << e.what() << "\n";
        return 2;
    } catch (const VerificationError& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
