#pragma once

// Batch verification of the order-theoretic facts relating containers and
// nuclei on one finite frame. Each theorem is checked over the exhaustive
// family of small containers when that family fits the budget, and over
// seeded random instances otherwise.

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oramod/frame.hpp"
#include "oramod/oracle.hpp"

namespace oramod {

enum class Theorem {
  Retraction,          // oracle(pred(j)) = j
  ForcingIff,          // j forces c  <=>  oracle(c) <= j
  OracleLeq,           // oracle(c) <= oracle(d)  <=>  every query of c is forced by oracle(d)
  LeastAboveInstance,  // oracle(c) is the least nucleus above the single-query map
  Sup,                 // oracle(c + d) = oracle(c) \/ oracle(d)
  Surjection,          // oracle(c . q) = oracle(c) for surjective q
  InstanceVsForcing,   // instance reducibility is "the single-query map of d forces c"
};

std::string_view theorem_id(Theorem t);
std::optional<Theorem> parse_theorem(std::string_view id);
const std::vector<Theorem>& all_theorems();

struct VerifyBudget {
  std::uint64_t seed = 1;
  /// Random instances drawn when the exhaustive family is too large.
  std::size_t samples = 500;
  /// Exhaustive families contain every container with at most this many queries.
  std::size_t max_shapes = 2;
  /// A family is enumerated in full when it has at most this many instances.
  std::size_t exhaustive_limit = 20000;
  /// Hard cap on checked instances per theorem; reaching it leaves the
  /// report incomplete.
  std::size_t max_instances = 1000000;
  std::optional<std::chrono::milliseconds> time_limit;
  /// Additional tables checked by the retraction suite. They need not be
  /// nuclei; anything that is not one is reported as a counterexample.
  std::vector<std::vector<std::uint32_t>> extra_tables;
};

struct TheoremReport {
  std::string theorem;
  std::size_t checked = 0;
  std::size_t failed = 0;
  /// First counterexamples, capped at kMaxRecordedFailures.
  std::vector<std::string> failures;
  std::uint64_t seed = 0;
  double elapsed_ms = 0;
  std::string mode;
  /// False when the budget ran out before the family was covered.
  bool complete = true;

  static constexpr std::size_t kMaxRecordedFailures = 20;
  bool pass() const { return failed == 0; }
};

std::vector<TheoremReport> verify_theorems(const Frame& frame, std::span<const Theorem> suite,
                                           const VerifyBudget& budget);

/// Human-readable forms used in counterexamples.
std::string describe(const IndexedPropContainer& c);
std::string describe_table(const Frame& frame, std::span<const std::uint32_t> table);

}  // namespace oramod
