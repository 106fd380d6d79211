// validation.hpp - the invariant and oracle suite behind `twoatom validate`
// and the acceptance binary.
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "twoatom/dynamics.hpp"
#include "twoatom/special_functions.hpp"

namespace twoatom::experiments {

struct CheckResult {
    std::string id;
    std::string title;
    bool acceptance = true;  // failures of acceptance checks make validate exit 2
    bool passed = false;
    std::vector<std::pair<std::string, double>> metrics;
    std::string detail;
};

struct ValidationOptions {
    special::SiConvention si_convention = special::SiConvention::Shifted;
    // Replaces the closed-form factors under test (fault injection).
    std::function<EvolutionFactors(const MarkovCoefficients&, double)> factors_under_test;
    std::uint64_t seed = 20240611;
    unsigned threads = 0;
};

CheckResult check_special_functions(const ValidationOptions& opt);
CheckResult check_evolution_factors(const ValidationOptions& opt);
CheckResult check_master_equation(const ValidationOptions& opt);
CheckResult check_state_validity(const ValidationOptions& opt);
CheckResult check_concurrence(const ValidationOptions& opt);
CheckResult check_gp_routes(const ValidationOptions& opt);
CheckResult check_weak_coupling_expansion(const ValidationOptions& opt);
CheckResult check_first_order_consistency(const ValidationOptions& opt);
CheckResult check_qualitative_orderings(const ValidationOptions& opt);
CheckResult check_near_field_scaling(const ValidationOptions& opt);

// Reported, never gating.
CheckResult info_si_convention(const ValidationOptions& opt);
CheckResult info_integrand_variants(const ValidationOptions& opt);
CheckResult info_contact_limit(const ValidationOptions& opt);

// The ten acceptance checks in order.
std::vector<CheckResult> run_acceptance(const ValidationOptions& opt);
// Acceptance checks followed by the informational ones.
std::vector<CheckResult> run_validation(const ValidationOptions& opt);

bool all_acceptance_passed(const std::vector<CheckResult>& results);

nlohmann::json report_json(const std::vector<CheckResult>& results, const ValidationOptions& opt);

// Fault used by `validate --inject-fault F`: F(t) scaled by 1 + 1e-6.
EvolutionFactors corrupted_factors(const MarkovCoefficients& coeffs, double t);

}  // namespace twoatom::experiments
