#pragma once

#include "hrg/branching.hpp"
#include "hrg/execution.hpp"
#include "hrg/operator.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hrg {

// The graph is not a single-vertex 2-graph with at least two edges of each
// color.
class NotApplicable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FaithfulnessError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PeriodicityResult {
  bool periodic = false;
  unsigned a = 0, b = 0;
  // (μ, h(μ)) for μ ∈ Λ^{(a,0)}, sorted by μ.
  std::vector<std::pair<Path, Path>> h;
  unsigned bound = 6;
  // Every (p, q) with m^p = n^q, p <= bound, that was tested.
  std::vector<std::pair<unsigned, unsigned>> tried;
};

// Factorizes μν = ν'μ' for every μ ∈ Λ^{(p,0)}, ν ∈ Λ^{(0,q)}. Periodic at
// (p,q) iff ν' depends only on μ, μ' only on ν, and the two maps are inverse.
PeriodicityResult detect_periodicity(const KGraph& g, unsigned bound = 6, Execution exec = Execution::Parallel);

// The pair scan at one (p,q): entry [i*|Λ^{(0,q)}| + j] is (ν', μ') for the
// i-th μ and j-th ν in enumeration order.
std::vector<std::pair<Path, Path>> periodicity_pair_scan(const KGraph& g, unsigned p, unsigned q, Execution exec);

// T = f_{h(μ)} ∘ f_μ^{-1} on f_μ(D_v).
PiecewiseMap periodicity_map(const IntervalBranchingSystem& bs, const Path& mu, const Path& hmu);
// f_μ for a path, composed from its edges.
PiecewiseMap path_map(const IntervalBranchingSystem& bs, const Path& p);

enum class FaithfulnessMode { Bounded, AllN };

struct FaithfulnessRequest {
  FaithfulnessMode mode = FaithfulnessMode::AllN;
  std::vector<long> F;           // Bounded only; nonzero
  std::vector<Box> candidates;   // tried before the generated ones
};

struct FaithfulnessCertificate {
  FaithfulnessMode mode = FaithfulnessMode::AllN;
  Path mu, hmu;
  PiecewiseMap T;
  Box E;
  std::vector<long> F;       // Bounded
  std::size_t coordinate = 0;  // AllN: the escaping coordinate
  Box piece;                 // AllN: piece of T containing E
  Box H;                     // AllN: invariant half-box beside E
  bool H_below = true;       // H lies below E in the escaping coordinate
};

struct CandidateAttempt {
  Path mu;
  Box E;
  std::string reason;
};

struct FaithfulnessReport {
  std::optional<FaithfulnessCertificate> certificate;
  std::vector<CandidateAttempt> attempts;  // every candidate tried, in order
  std::vector<std::string> identities;     // derived identities that were verified
};

// Verifies f_μ(D_v) = f_{h(μ)}(D_v) a.e. for each μ and that the f_μ(D_v)
// partition D_v, then searches quarter boxes of each piece of T (in
// coordinates where T is not the identity) for a certificate. Throws
// FaithfulnessError when a precondition fails.
FaithfulnessReport check_faithfulness(const IntervalBranchingSystem& bs, const PeriodicityResult& pr,
                                      const FaithfulnessRequest& request);

// Exact iteration: T^n(E) ∩ E is null. Iterates too large for Scalar are kept
// as prime-power logarithms.
bool iterate_disjoint(const PiecewiseMap& T, const Box& E, long n);
// T^n(E)'s hull in one coordinate, as strings, for reports.
std::pair<std::string, std::string> iterate_hull(const PiecewiseMap& T, const Box& E, long n, std::size_t coord);

struct WUnitaryReport {
  bool unitary = false;
  std::string witness, detail;
};
WUnitaryReport verify_w_unitary(const IntervalBranchingSystem& bs, const PeriodicityResult& pr);
WUnitaryReport verify_w_unitary(const CanonicalBS& bs, const PeriodicityResult& pr);

}  // namespace hrg
