#pragma once

// Propositional containers over a finite frame and the oracle modalities they
// generate.
//
// A container is a finite set of queries. Query `a` exists at stage
// `extent(a)` and is answered at stage `pred(a)`; globally defined containers
// have every extent at top. Existential quantification over queries becomes
// the join of `extent(a) /\ (-)`, which is what keeps the Pred construction an
// exact section of the oracle modality on finite frames.

#include <span>
#include <string>
#include <vector>

#include "oramod/frame.hpp"
#include "oramod/nucleus.hpp"

namespace oramod {

struct Query {
  std::string label;
  Element extent;
  Element pred;
};

class IndexedPropContainer {
 public:
  /// Queries are kept sorted by label; duplicate labels are rejected.
  IndexedPropContainer(Frame frame, std::vector<Query> queries);

  /// Every extent is top.
  static IndexedPropContainer global(Frame frame, std::vector<std::pair<std::string, Element>> preds);

  const Frame& frame() const { return frame_; }
  std::span<const Query> queries() const { return queries_; }
  std::size_t size() const { return queries_.size(); }
  bool empty() const { return queries_.empty(); }

 private:
  Frame frame_;
  std::vector<Query> queries_;
};

/// Monotone endomap of a frame (not necessarily a nucleus).
struct PrenucleusMap {
  Frame frame;
  std::vector<std::uint32_t> table;

  Element operator()(Element x) const;
  bool monotone() const;
};

/// True iff every pred lies below its extent and every element belongs to the
/// container's frame.
bool validate_container(const IndexedPropContainer& c);

/// Coproduct; query `x` of the i-th summand becomes "(i,x)".
IndexedPropContainer container_sum(const Frame& frame, std::span<const IndexedPropContainer> cs);

/// t |-> join over a of extent(a) /\ (pred(a) => t): a single oracle query.
PrenucleusMap instance_prenucleus(const IndexedPropContainer& c);

/// Least fixed point of t |-> s \/ instance(t) for every s, by Kleene
/// iteration from s.
Nucleus oracle_modality(const IndexedPropContainer& c);

/// Meet of all prefixed points, computed by scanning the carrier for each s.
/// Shares no code with oracle_modality.
Nucleus oracle_modality_bruteforce(const IndexedPropContainer& c);

/// extent(a) <= j(pred(a)) for every query.
bool forces(const Nucleus& j, const IndexedPropContainer& c);

/// Queries are the carrier; query s exists at j(s) and is answered at s /\ j(s).
IndexedPropContainer pred_of_nucleus(const Nucleus& j);
/// Pred of an arbitrary table; used to exercise the retraction on tables that
/// fail the nucleus laws.
IndexedPropContainer pred_of_table(const Frame& frame, std::span<const std::uint32_t> table);

/// Every query of c is answered by one query of d.
bool instance_reducible(const IndexedPropContainer& c, const IndexedPropContainer& d);

/// Excluded-middle oracle: one global query per element p, answered by p \/ not p.
IndexedPropContainer lem_container(const Frame& frame);

/// Precomposition with a relabelling `q` of queries: query b of the result
/// copies query q[b] of c.
IndexedPropContainer reindex_container(const IndexedPropContainer& c, std::span<const std::size_t> q);

}  // namespace oramod
