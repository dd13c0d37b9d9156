#pragma once

#include <hrg/operator.hpp>
#include <hrg/periodicity.hpp>

#include <json.hpp>

#include <string>

namespace hrg::report {

using nlohmann::json;

// Keys are sorted (std::map); numbers that are not counts are exact strings.
json condition(const ConditionResult& c);
json axioms(const AxiomReport& r);
json ck(const CKReport& r);
json validation(const KGraph& g, const ValidationReport& r);
json periodicity(const KGraph& g, const PeriodicityResult& r);
json faithfulness(const IntervalBranchingSystem& bs, const FaithfulnessReport& r, unsigned confirm_up_to);
json unitary(const WUnitaryReport& r);

// Plain-text rendering of a report produced by one of the functions above.
std::string text(const json& j);

}  // namespace hrg::report
