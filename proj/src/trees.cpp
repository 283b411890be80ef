#include "oramod/trees.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "oramod/error.hpp"

namespace oramod {

SetContainer::SetContainer(std::vector<std::string> shapes,
                           const std::map<std::string, std::vector<std::string>>& positions)
    : shapes_(std::move(shapes)) {
  std::set<std::string> seen;
  for (const auto& a : shapes_) {
    if (!seen.insert(a).second) throw Error(ErrorCode::InvalidContainer, "duplicate shape '" + a + "'");
  }
  for (const auto& [a, _] : positions) {
    if (!seen.count(a)) throw Error(ErrorCode::InvalidContainer, "positions given for unknown shape '" + a + "'");
  }
  for (const auto& a : shapes_) {
    auto it = positions.find(a);
    if (it == positions.end()) throw Error(ErrorCode::InvalidContainer, "no positions given for shape '" + a + "'");
    std::set<std::string> ps(it->second.begin(), it->second.end());
    if (ps.size() != it->second.size()) {
      throw Error(ErrorCode::InvalidContainer, "duplicate position at shape '" + a + "'");
    }
    if (it->second.empty()) degenerate_ = true;
    positions_.push_back(it->second);
  }
}

std::optional<std::size_t> SetContainer::shape_index(const std::string& label) const {
  for (std::size_t a = 0; a < shapes_.size(); ++a) {
    if (shapes_[a] == label) return a;
  }
  return std::nullopt;
}

std::optional<std::size_t> SetContainer::position_index(std::size_t a, const std::string& label) const {
  const auto& ps = positions_.at(a);
  for (std::size_t u = 0; u < ps.size(); ++u) {
    if (ps[u] == label) return u;
  }
  return std::nullopt;
}

std::vector<bool> SetContainer::inhabited() const {
  std::vector<bool> out;
  for (const auto& ps : positions_) out.push_back(!ps.empty());
  return out;
}

MemberSet all_values(std::size_t xsize) {
  return xsize >= kMaxValues ? ~MemberSet{0} : (MemberSet{1} << xsize) - 1;
}

struct Tree::Rep {
  bool leaf;
  Value value;
  std::size_t shape;
  std::vector<Tree> children;
  std::size_t depth;
  std::size_t count;
};

Tree Tree::leaf(Value v) { return Tree(std::make_shared<const Rep>(Rep{true, v, 0, {}, 0, 1})); }

Tree Tree::node(std::size_t shape, std::vector<Tree> children) {
  std::size_t depth = 0;
  std::size_t count = 1;
  for (const auto& ch : children) {
    depth = std::max(depth, ch.depth());
    count += ch.node_count();
  }
  return Tree(std::make_shared<const Rep>(Rep{false, 0, shape, std::move(children), depth + 1, count}));
}

bool Tree::is_leaf() const { return rep_->leaf; }
Value Tree::value() const { return rep_->value; }
std::size_t Tree::shape() const { return rep_->shape; }
const std::vector<Tree>& Tree::children() const { return rep_->children; }
std::size_t Tree::depth() const { return rep_->depth; }
std::size_t Tree::node_count() const { return rep_->count; }

bool operator==(const Tree& a, const Tree& b) {
  if (a.rep_ == b.rep_) return true;
  if (a.is_leaf() != b.is_leaf()) return false;
  if (a.is_leaf()) return a.value() == b.value();
  return a.shape() == b.shape() && a.children() == b.children();
}

void validate_tree(const SetContainer& c, const Tree& t, std::size_t xsize) {
  if (t.is_leaf()) {
    if (t.value() >= xsize) {
      throw Error(ErrorCode::InvalidTree, "leaf value " + std::to_string(t.value()) + " outside the value set");
    }
    return;
  }
  if (t.shape() >= c.shape_count()) throw Error(ErrorCode::InvalidTree, "node with unknown shape");
  if (t.children().size() != c.arity(t.shape())) {
    throw Error(ErrorCode::InvalidTree, "node at shape '" + c.shape(t.shape()) + "' has " +
                                            std::to_string(t.children().size()) + " children, expected " +
                                            std::to_string(c.arity(t.shape())));
  }
  for (const auto& ch : t.children()) validate_tree(c, ch, xsize);
}

std::string render_tree(const SetContainer& c, const Tree& t) {
  if (t.is_leaf()) return "leaf " + std::to_string(t.value());
  std::string out = "node " + c.shape(t.shape()) + " {";
  for (std::size_t u = 0; u < t.children().size(); ++u) {
    if (u) out += ", ";
    out += c.positions(t.shape())[u] + ": " + render_tree(c, t.children()[u]);
  }
  return out + "}";
}

bool modal_eq(const SetContainer& c, Value x, Value y) { return x == y || c.degenerate(); }

bool membership(const SetContainer& c, Value x, const Tree& t) {
  if (t.is_leaf()) return modal_eq(c, x, t.value());
  for (const auto& ch : t.children()) {
    if (!membership(c, x, ch)) return false;
  }
  return true;
}

MemberSet member_set(const SetContainer& c, const Tree& t, std::size_t xsize) {
  if (t.is_leaf()) return c.degenerate() ? all_values(xsize) : MemberSet{1} << t.value();
  MemberSet out = all_values(xsize);
  for (const auto& ch : t.children()) out &= member_set(c, ch, xsize);
  return out;
}

namespace {

// Member set of t, or the first equifoliate violation found bottom-up.
MemberSet equi_walk(const SetContainer& c, const Tree& t, std::size_t xsize, std::vector<std::size_t>& path,
                    std::optional<EquiWitness>& witness) {
  if (t.is_leaf()) return member_set(c, t, xsize);
  const auto& kids = t.children();
  std::vector<MemberSet> sets;
  for (std::size_t u = 0; u < kids.size(); ++u) {
    path.push_back(u);
    sets.push_back(equi_walk(c, kids[u], xsize, path, witness));
    path.pop_back();
    if (witness) return 0;
  }
  for (std::size_t u = 0; u < sets.size(); ++u) {
    for (std::size_t v = 0; v < sets.size(); ++v) {
      if (const MemberSet diff = sets[u] & ~sets[v]) {
        witness = EquiWitness{static_cast<Value>(std::countr_zero(diff)), u, v, path};
        return 0;
      }
    }
  }
  MemberSet out = all_values(xsize);
  for (auto s : sets) out &= s;
  return out;
}

}  // namespace

EquiCheck equifoliate(const SetContainer& c, const Tree& t, std::size_t xsize) {
  std::vector<std::size_t> path;
  EquiCheck out;
  equi_walk(c, t, xsize, path, out.witness);
  out.equifoliate = !out.witness.has_value();
  return out;
}

EquiTree EquiTree::certify(const SetContainer& c, const Tree& t, std::size_t xsize) {
  if (xsize > kMaxValues) throw Error(ErrorCode::SizeLimitExceeded, "value set larger than 64");
  validate_tree(c, t, xsize);
  const auto check = equifoliate(c, t, xsize);
  if (!check.equifoliate) {
    const auto& w = *check.witness;
    std::string at;
    for (auto u : w.path) at += "/" + std::to_string(u);
    throw Error(ErrorCode::InvalidTree, "not equifoliate at " + (at.empty() ? std::string("/") : at) + ": value " +
                                            std::to_string(w.x) + " is a member below position " +
                                            std::to_string(w.u) + " but not below " + std::to_string(w.v));
  }
  return EquiTree(t, xsize, member_set(c, t, xsize));
}

Tree tree_bind(const SetContainer& c, std::span<const Tree> f, const Tree& t) {
  if (t.is_leaf()) {
    if (t.value() >= f.size()) throw Error(ErrorCode::InvalidTree, "bind: leaf value outside the domain of f");
    return f[t.value()];
  }
  std::vector<Tree> kids;
  kids.reserve(t.children().size());
  for (const auto& ch : t.children()) kids.push_back(tree_bind(c, f, ch));
  return Tree::node(t.shape(), std::move(kids));
}

CanonicalSheafElement delta(const SetContainer& c, const EquiTree& e) {
  if (c.degenerate()) return CanonicalSheafElement::collapsed();
  const MemberSet m = e.members();
  if (std::popcount(m) != 1) {
    throw Error(ErrorCode::InternalInvariantViolation,
                "equifoliate tree over a nondegenerate container has " + std::to_string(std::popcount(m)) +
                    " members");
  }
  return CanonicalSheafElement::pure(static_cast<Value>(std::countr_zero(m)));
}

// Random generation.

SetContainer random_set_container(std::mt19937_64& rng, const TreeSuiteLimits& limits) {
  std::uniform_int_distribution<std::size_t> shapes(1, std::max<std::size_t>(1, limits.max_shapes));
  std::uniform_int_distribution<std::size_t> arity(0, limits.max_positions);
  const std::size_t n = shapes(rng);
  std::vector<std::string> labels;
  std::map<std::string, std::vector<std::string>> positions;
  for (std::size_t a = 0; a < n; ++a) {
    labels.push_back("a" + std::to_string(a));
    auto& ps = positions[labels.back()];
    for (std::size_t u = arity(rng); u > 0; --u) ps.push_back("u" + std::to_string(ps.size()));
  }
  return SetContainer(std::move(labels), positions);
}

namespace {

Tree grow(const SetContainer& c, std::size_t depth, std::mt19937_64& rng, const std::function<Value()>& leaf) {
  std::bernoulli_distribution stop(0.35);
  if (depth == 0 || stop(rng)) return Tree::leaf(leaf());
  std::uniform_int_distribution<std::size_t> shape(0, c.shape_count() - 1);
  const std::size_t a = shape(rng);
  std::vector<Tree> kids;
  for (std::size_t u = 0; u < c.arity(a); ++u) kids.push_back(grow(c, depth - 1, rng, leaf));
  return Tree::node(a, std::move(kids));
}

}  // namespace

Tree random_tree(const SetContainer& c, std::size_t xsize, std::size_t depth, std::mt19937_64& rng) {
  std::uniform_int_distribution<Value> value(0, static_cast<Value>(xsize - 1));
  return grow(c, depth, rng, [&] { return value(rng); });
}

Tree random_equi_tree(const SetContainer& c, std::size_t xsize, std::size_t depth, std::mt19937_64& rng) {
  if (c.degenerate()) return random_tree(c, xsize, depth, rng);
  std::uniform_int_distribution<Value> value(0, static_cast<Value>(xsize - 1));
  const Value v = value(rng);
  return grow(c, depth, rng, [v] { return v; });
}

// Property suites.

namespace {

struct Case {
  SetContainer c;
  std::size_t xsize;
};

class SuiteRunner {
 public:
  SuiteRunner(std::uint64_t seed, std::size_t index, const TreeSuiteLimits& limits) : limits_(limits) {
    std::seed_seq seq{seed, static_cast<std::uint64_t>(index)};
    rng_.seed(seq);
  }

  Case draw() {
    std::uniform_int_distribution<std::size_t> xs(1, std::max<std::size_t>(1, limits_.max_values));
    auto c = random_set_container(rng_, limits_);
    return {std::move(c), xs(rng_)};
  }
  Tree tree(const Case& k) { return random_tree(k.c, k.xsize, limits_.max_depth, rng_); }
  Tree equi(const Case& k) { return random_equi_tree(k.c, k.xsize, limits_.max_depth, rng_); }
  std::vector<Tree> function(const Case& k, bool equifoliate) {
    std::vector<Tree> f;
    for (std::size_t x = 0; x < k.xsize; ++x) f.push_back(equifoliate ? equi(k) : tree(k));
    return f;
  }
  Value value(const Case& k) {
    std::uniform_int_distribution<Value> v(0, static_cast<Value>(k.xsize - 1));
    return v(rng_);
  }

  std::mt19937_64 rng_;
  TreeSuiteLimits limits_;
};

std::string show(const Case& k, const Tree& t) {
  std::string shape = "{";
  for (std::size_t a = 0; a < k.c.shape_count(); ++a) {
    if (a) shape += ", ";
    shape += k.c.shape(a) + ":" + std::to_string(k.c.arity(a));
  }
  return "container " + shape + "}, |X|=" + std::to_string(k.xsize) + ", t = " + render_tree(k.c, t);
}

using SuiteBody = std::function<std::optional<std::string>(SuiteRunner&)>;

std::optional<std::string> monad_laws(SuiteRunner& r) {
  const auto k = r.draw();
  const auto t = r.tree(k);
  const auto f = r.function(k, false);
  const auto g = r.function(k, false);
  const Value x = r.value(k);
  if (!(tree_bind(k.c, f, Tree::leaf(x)) == f[x])) return "left unit fails at x=" + std::to_string(x);
  std::vector<Tree> unit;
  for (std::size_t v = 0; v < k.xsize; ++v) unit.push_back(Tree::leaf(static_cast<Value>(v)));
  if (!(tree_bind(k.c, unit, t) == t)) return "right unit fails: " + show(k, t);
  std::vector<Tree> gf;
  for (const auto& fx : f) gf.push_back(tree_bind(k.c, g, fx));
  if (!(tree_bind(k.c, g, tree_bind(k.c, f, t)) == tree_bind(k.c, gf, t))) return "associativity fails: " + show(k, t);
  return std::nullopt;
}

std::optional<std::string> equi_bind(SuiteRunner& r) {
  const auto k = r.draw();
  const auto t = r.equi(k);
  const auto f = r.function(k, true);
  if (!equifoliate(k.c, t, k.xsize).equifoliate) return "generator produced a non-equifoliate tree: " + show(k, t);
  for (const auto& fx : f) {
    if (!equifoliate(k.c, fx, k.xsize).equifoliate) return "generator produced a non-equifoliate f: " + show(k, fx);
  }
  const auto b = tree_bind(k.c, f, t);
  if (!equifoliate(k.c, b, k.xsize).equifoliate) return "bind is not equifoliate: " + show(k, b);
  return std::nullopt;
}

// Needs t equifoliate: node {leaf 0, leaf 1} has no members, yet its bind need not contain every y.
std::optional<std::string> mem_bind(SuiteRunner& r) {
  const auto k = r.draw();
  const auto t = r.equi(k);
  const auto f = r.function(k, false);
  const auto b = tree_bind(k.c, f, t);
  for (std::size_t y = 0; y < k.xsize; ++y) {
    const bool lhs = membership(k.c, static_cast<Value>(y), b);
    bool rhs = true;
    for (std::size_t x = 0; x < k.xsize; ++x) {
      if (membership(k.c, static_cast<Value>(x), t) && !membership(k.c, static_cast<Value>(y), f[x])) rhs = false;
    }
    if (lhs != rhs) return "y=" + std::to_string(y) + " disagrees: " + show(k, t);
  }
  return std::nullopt;
}

std::optional<std::string> single_member(SuiteRunner& r) {
  const auto k = r.draw();
  // Half the cases use unconstrained trees that happen to be equifoliate.
  std::bernoulli_distribution coin(0.5);
  const auto t = coin(r.rng_) ? r.equi(k) : r.tree(k);
  if (!equifoliate(k.c, t, k.xsize).equifoliate) return std::nullopt;
  MemberSet m = 0;
  for (std::size_t x = 0; x < k.xsize; ++x) {
    if (membership(k.c, static_cast<Value>(x), t)) m |= MemberSet{1} << x;
  }
  const bool ok = k.c.degenerate() ? m == all_values(k.xsize) : std::popcount(m) == 1;
  if (!ok) return "member set " + std::to_string(m) + " of an equifoliate tree: " + show(k, t);
  return std::nullopt;
}

std::optional<std::string> delta_membership(SuiteRunner& r) {
  const auto k = r.draw();
  const auto t = r.equi(k);
  const auto d = delta(k.c, EquiTree::certify(k.c, t, k.xsize));
  for (std::size_t x = 0; x < k.xsize; ++x) {
    if (membership(k.c, static_cast<Value>(x), t) != d.contains(static_cast<Value>(x))) {
      return "membership of " + std::to_string(x) + " not preserved: " + show(k, t);
    }
  }
  return std::nullopt;
}

std::optional<std::string> delta_surjective(SuiteRunner& r) {
  auto k = r.draw();
  if (k.c.degenerate()) {
    std::map<std::string, std::vector<std::string>> ps;
    for (std::size_t a = 0; a < k.c.shape_count(); ++a) {
      ps[k.c.shape(a)] = k.c.positions(a);
      if (ps[k.c.shape(a)].empty()) ps[k.c.shape(a)].push_back("u0");
    }
    k.c = SetContainer(k.c.shapes(), ps);
  }
  for (std::size_t x = 0; x < k.xsize; ++x) {
    const auto leaf = Tree::leaf(static_cast<Value>(x));
    if (!(delta(k.c, EquiTree::certify(k.c, leaf, k.xsize)) == CanonicalSheafElement::pure(static_cast<Value>(x)))) {
      return "pure " + std::to_string(x) + " is not hit by its leaf";
    }
  }
  return std::nullopt;
}

struct Suite {
  std::string name;
  SuiteBody body;
};

const std::vector<Suite>& suites() {
  static const std::vector<Suite> all{
      {"monad-laws", monad_laws},           {"equi-bind", equi_bind},
      {"mem-bind", mem_bind},               {"single-member", single_member},
      {"delta-membership", delta_membership}, {"delta-surjective", delta_surjective},
  };
  return all;
}

}  // namespace

const std::vector<std::string>& tree_suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& s : suites()) out.push_back(s.name);
    return out;
  }();
  return names;
}

std::vector<SuiteReport> run_tree_suites(std::uint64_t seed, std::size_t cases, const TreeSuiteLimits& limits,
                                         std::span<const std::string> only) {
  for (const auto& name : only) {
    if (std::find(tree_suite_names().begin(), tree_suite_names().end(), name) == tree_suite_names().end()) {
      throw Error(ErrorCode::InvalidInput, "unknown tree suite '" + name + "'");
    }
  }
  if (limits.max_values == 0 || limits.max_values > kMaxValues) {
    throw Error(ErrorCode::InvalidInput, "value sets must have between 1 and 64 elements");
  }
  std::vector<SuiteReport> out;
  for (std::size_t i = 0; i < suites().size(); ++i) {
    const auto& s = suites()[i];
    if (!only.empty() && std::find(only.begin(), only.end(), s.name) == only.end()) continue;
    SuiteRunner runner(seed, i, limits);
    SuiteReport rep{s.name, 0, 0, {}, seed};
    for (std::size_t n = 0; n < cases; ++n) {
      ++rep.cases;
      std::optional<std::string> failure;
      try {
        failure = s.body(runner);
      } catch (const Error& e) {
        failure = std::string("error: ") + e.what();
      }
      if (failure) {
        ++rep.failed;
        if (rep.failures.size() < 20) rep.failures.push_back("case " + std::to_string(n) + ": " + *failure);
      }
    }
    out.push_back(std::move(rep));
  }
  return out;
}

}  // namespace oramod
