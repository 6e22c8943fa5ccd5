#ifndef KSTAB_RUNNER_HPP
#define KSTAB_RUNNER_HPP

#include "kstab/stability.hpp"

#include <mutex>

namespace kstab {

struct Check {
    std::string name;
    bool pass = false;
    std::string detail; // first failing identity carries its difference polynomial
};

struct CaseRunResult {
    std::string id;
    std::string mechanism;
    std::string description;
    std::vector<Check> checks;
    FamilyVerdict verdict;
    std::string witness; // display string for the report row
    std::string formula; // display string for the report row
    bool ok() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return verdict.conclusive;
    }
};

class Runner {
public:
    explicit Runner(std::string cases_dir = default_cases_dir());

    const std::string& cases_dir() const { return dir_; }
    const CaseSpec& get_case(const std::string& id); // cached; InputError for unknown ids

    // Full pipeline for one case: schedule validation, beta / DF computation,
    // golden comparison, identities, certificates, verdict.  When `divisor`
    // is nonempty, beta checks are restricted to that divisor.
    CaseRunResult verify_case(const std::string& id, const std::string& divisor = "");

    // All manifest cases; deterministic merge order regardless of jobs.
    std::vector<CaseRunResult> verify_all(int jobs = 1);

    static std::string report_json(const std::vector<CaseRunResult>& rows);
    static std::string report_markdown(const std::vector<CaseRunResult>& rows);

private:
    std::string dir_;
    std::map<std::string, CaseSpec> cache_;
    std::mutex mutex_;

    void run_beta_case(const CaseSpec& spec, const std::string& only_divisor, CaseRunResult& out);
    void run_localization_case(const CaseSpec& spec, CaseRunResult& out);
    void run_pullback_case(const CaseSpec& spec, CaseRunResult& out);
    std::map<std::string, Certificate> run_certificates(const CaseSpec& spec, CaseRunResult& out);
};

} // namespace kstab

#endif
