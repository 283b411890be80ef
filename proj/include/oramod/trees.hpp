#pragma once

// Oracle computation trees over a set-valued container, read classically:
// a shape's answer type is a finite set of positions, possibly empty.
// Values are indices into a finite value set of at most 64 elements.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace oramod {

class SetContainer {
 public:
  SetContainer(std::vector<std::string> shapes, const std::map<std::string, std::vector<std::string>>& positions);

  std::size_t shape_count() const { return shapes_.size(); }
  const std::string& shape(std::size_t a) const { return shapes_.at(a); }
  const std::vector<std::string>& shapes() const { return shapes_; }
  const std::vector<std::string>& positions(std::size_t a) const { return positions_.at(a); }
  std::size_t arity(std::size_t a) const { return positions_.at(a).size(); }
  std::optional<std::size_t> shape_index(const std::string& label) const;
  std::optional<std::size_t> position_index(std::size_t a, const std::string& label) const;
  /// Some shape has no positions.
  bool degenerate() const { return degenerate_; }
  /// Per shape: whether it has at least one position.
  std::vector<bool> inhabited() const;

 private:
  std::vector<std::string> shapes_;
  std::vector<std::vector<std::string>> positions_;
  bool degenerate_ = false;
};

using Value = std::uint32_t;
/// Subset of the value set as a bitmask.
using MemberSet = std::uint64_t;
constexpr std::size_t kMaxValues = 64;

MemberSet all_values(std::size_t xsize);

class Tree {
 public:
  static Tree leaf(Value v);
  /// Children are aligned with the shape's positions.
  static Tree node(std::size_t shape, std::vector<Tree> children);

  bool is_leaf() const;
  Value value() const;
  std::size_t shape() const;
  const std::vector<Tree>& children() const;
  std::size_t depth() const;
  std::size_t node_count() const;

  friend bool operator==(const Tree& a, const Tree& b);

 private:
  struct Rep;
  explicit Tree(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  std::shared_ptr<const Rep> rep_;
};

/// Throws InvalidTree when a node names an unknown shape, has the wrong
/// number of children, or a leaf value lies outside the value set.
void validate_tree(const SetContainer& c, const Tree& t, std::size_t xsize);

std::string render_tree(const SetContainer& c, const Tree& t);

bool modal_eq(const SetContainer& c, Value x, Value y);
bool membership(const SetContainer& c, Value x, const Tree& t);
MemberSet member_set(const SetContainer& c, const Tree& t, std::size_t xsize);

struct EquiWitness {
  Value x;
  /// Positions of the offending node: x is in child u but not in child v.
  std::size_t u;
  std::size_t v;
  /// Position indices leading from the root to the offending node.
  std::vector<std::size_t> path;
};

struct EquiCheck {
  bool equifoliate = true;
  std::optional<EquiWitness> witness;
};

EquiCheck equifoliate(const SetContainer& c, const Tree& t, std::size_t xsize);

class EquiTree {
 public:
  /// Throws InvalidTree if t is malformed or not equifoliate.
  static EquiTree certify(const SetContainer& c, const Tree& t, std::size_t xsize);

  const Tree& tree() const { return tree_; }
  std::size_t value_count() const { return xsize_; }
  MemberSet members() const { return members_; }

 private:
  EquiTree(Tree t, std::size_t xsize, MemberSet members) : tree_(std::move(t)), xsize_(xsize), members_(members) {}
  Tree tree_;
  std::size_t xsize_;
  MemberSet members_;
};

/// Grafts f(x) at every leaf x. f is indexed by value.
Tree tree_bind(const SetContainer& c, std::span<const Tree> f, const Tree& t);

struct CanonicalSheafElement {
  enum class Kind { Collapsed, Pure };
  Kind kind = Kind::Collapsed;
  Value value = 0;

  static CanonicalSheafElement collapsed() { return {}; }
  static CanonicalSheafElement pure(Value v) { return {Kind::Pure, v}; }
  bool contains(Value x) const { return kind == Kind::Collapsed || x == value; }
  friend bool operator==(const CanonicalSheafElement&, const CanonicalSheafElement&) = default;
};

CanonicalSheafElement delta(const SetContainer& c, const EquiTree& e);

// Random generation and the property suites.

struct TreeSuiteLimits {
  std::size_t max_shapes = 3;
  std::size_t max_positions = 3;
  std::size_t max_depth = 4;
  std::size_t max_values = 3;
};

SetContainer random_set_container(std::mt19937_64& rng, const TreeSuiteLimits& limits);
Tree random_tree(const SetContainer& c, std::size_t xsize, std::size_t depth, std::mt19937_64& rng);
/// A random equifoliate tree; over a nondegenerate container every leaf
/// carries the same value.
Tree random_equi_tree(const SetContainer& c, std::size_t xsize, std::size_t depth, std::mt19937_64& rng);

struct SuiteReport {
  std::string suite;
  std::size_t cases = 0;
  std::size_t failed = 0;
  std::vector<std::string> failures;
  std::uint64_t seed = 0;
  bool pass() const { return failed == 0; }
};

const std::vector<std::string>& tree_suite_names();
/// Runs every suite (or the named ones) for `cases` seeded cases each.
std::vector<SuiteReport> run_tree_suites(std::uint64_t seed, std::size_t cases, const TreeSuiteLimits& limits = {},
                                         std::span<const std::string> only = {});

}  // namespace oramod
