#pragma once

// Finite realizability predicates over the combinatory algebra, a checker
// for supplied Weihrauch reducers, and bounded membership checks for
// realizers of oracle computation trees.
//
// Trees are encoded as <0, a> for a leaf returning a and <1, <b, c>> for a
// node asking b and continuing with c applied to the answer.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "oramod/pca.hpp"

namespace oramod {

/// Finite set of normal forms, compared syntactically.
class RealizerSet {
 public:
  bool insert(const Term& nf);
  bool contains(const Term& nf) const { return keys_.count(nf.str()) != 0; }
  const std::vector<Term>& elements() const { return elems_; }
  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }

 private:
  std::vector<Term> elems_;
  std::set<std::string> keys_;
};

/// Normalizes each term; InvalidInput if one has no normal form within fuel.
RealizerSet normalized_set(const Pca& pca, const std::vector<Term>& terms, std::uint64_t fuel);

struct WeihrauchEntry {
  Term instance;
  std::vector<RealizerSet> families;
};

class ExtWeihrauchPredicate {
 public:
  using RawEntry = std::pair<Term, std::vector<std::vector<Term>>>;

  /// InvalidInput on a repeated instance or a realizer without normal form.
  static ExtWeihrauchPredicate build(const Pca& pca, const std::vector<RawEntry>& raw,
                                     std::uint64_t fuel = Pca::kDefaultFuel);

  const std::vector<WeihrauchEntry>& entries() const { return entries_; }
  /// Families at r, or nullptr when r is not listed.
  const std::vector<RealizerSet>* families(const Term& r) const;
  bool in_support(const Term& r) const;
  std::vector<Term> support() const;

 private:
  std::vector<WeihrauchEntry> entries_;
};

struct AssemblyElement {
  std::string label;
  Term rho;
  RealizerSet pred;
};

class PartitionedAssemblyPredicate {
 public:
  using RawElement = std::tuple<std::string, Term, std::vector<Term>>;

  static PartitionedAssemblyPredicate build(const Pca& pca, const std::vector<RawElement>& raw,
                                            std::uint64_t fuel = Pca::kDefaultFuel);

  const std::vector<AssemblyElement>& elements() const { return elements_; }

 private:
  std::vector<AssemblyElement> elements_;
};

// Weihrauch reducibility.

enum class Verdict { Accepted, Rejected, Unknown };
enum class ObligationStatus { Holds, Fails, Unknown };

std::string_view to_string(Verdict v);
std::string_view to_string(ObligationStatus s);

struct Obligation {
  std::string description;
  ObligationStatus status;
};

struct WeihrauchReport {
  Verdict verdict = Verdict::Accepted;
  /// Index into obligations of the first failing (or unresolved) one.
  std::optional<std::size_t> witness;
  std::vector<Obligation> obligations;
};

/// Checks that l1, l2 reduce f to g: l1 r lands in the support of g, and
/// for every family of f at r some family of g at l1 r is mapped into it
/// by s -> l2 r s. Reducers must be closed and constant-free.
WeihrauchReport check_weihrauch(const Pca& pca, const ExtWeihrauchPredicate& f, const ExtWeihrauchPredicate& g,
                                const Term& l1, const Term& l2, std::uint64_t fuel = Pca::kDefaultFuel);

/// l1 = I, l2 = K I.
std::pair<Term, Term> identity_reducers();
/// Reducers for f <= h from (l1, l2) : f <= g and (m1, m2) : g <= h.
std::pair<Term, Term> composite_reducers(const Term& l1, const Term& l2, const Term& m1, const Term& m2);

// Oracle tree membership.

struct CertificateChild;

struct Certificate {
  /// Normal form of the checked realizer.
  Term term;
  bool leaf = true;
  /// a for leaves, b for nodes.
  Term payload;
  /// Family index at b, or element index for assemblies.
  std::size_t alternative = 0;
  std::vector<CertificateChild> children;
};

struct CertificateChild {
  Term answer;
  Certificate certificate;
};

enum class MembershipKind { Member, NotMember, Unknown };
std::string_view to_string(MembershipKind k);

struct MembershipVerdict {
  MembershipKind kind = MembershipKind::Unknown;
  std::optional<Certificate> certificate;
  std::string reason;
  std::vector<std::string> path;
};

struct MembershipBudget {
  std::size_t depth = 8;
  std::uint64_t fuel = Pca::kDefaultFuel;
};

MembershipVerdict check_oracle_membership_w(const Pca& pca, const ExtWeihrauchPredicate& f, const RealizerSet& s,
                                            const Term& t, const MembershipBudget& budget = {});
MembershipVerdict check_oracle_membership_asm(const Pca& pca, const PartitionedAssemblyPredicate& p,
                                              const RealizerSet& s, const Term& t,
                                              const MembershipBudget& budget = {});

/// Follows a certificate without search.
bool recheck_certificate_w(const Pca& pca, const ExtWeihrauchPredicate& f, const RealizerSet& s, const Term& t,
                           const Certificate& cert, std::uint64_t fuel = Pca::kDefaultFuel);
bool recheck_certificate_asm(const Pca& pca, const PartitionedAssemblyPredicate& p, const RealizerSet& s,
                             const Term& t, const Certificate& cert, std::uint64_t fuel = Pca::kDefaultFuel);

/// Abstract oracle tree: a leaf payload, or a node realizer with one subtree
/// per listed answer.
struct OracleTreeSpec {
  bool leaf = true;
  Term payload;
  std::vector<std::pair<Term, OracleTreeSpec>> branches;
};

/// Encodes a spec, dispatching on answers through fresh constants with
/// rewrite tables. Unlisted answers leave the dispatch stuck.
Term encode_oracle_tree(Pca& pca, const OracleTreeSpec& spec, std::uint64_t fuel = Pca::kDefaultFuel);

}  // namespace oramod
