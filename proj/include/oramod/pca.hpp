#pragma once

// Combinatory logic over S and K with named constants. A constant may carry
// a finite rewrite table: c applied to a listed normal form reduces to the
// paired term; on any other argument it is stuck.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace oramod {

class Term {
 public:
  enum class Kind { S, K, Const, Var, App };

  static Term s();
  static Term k();
  static Term constant(std::uint32_t id, std::string name);
  /// Variables exist only for bracket abstraction; eval rejects them.
  static Term var(std::string name);
  static Term app(Term f, Term a);

  Kind kind() const;
  const Term& fun() const;
  const Term& arg() const;
  const std::string& name() const;
  std::uint32_t constant_id() const;
  bool closed() const;
  bool constant_free() const;

  /// Application with minimal parentheses, e.g. "S (K S) K".
  std::string str() const;

  Term operator()(Term a) const { return app(*this, std::move(a)); }
  friend bool operator==(const Term& a, const Term& b);

  struct Rep;

 private:
  explicit Term(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  std::shared_ptr<const Rep> rep_;
};

struct EvalResult {
  /// Normal form, or nullopt when fuel ran out first.
  std::optional<Term> value;
  std::uint64_t steps = 0;

  bool defined() const { return value.has_value(); }
};

class Pca {
 public:
  static constexpr std::uint64_t kDefaultFuel = 100000;

  /// Declares a constant with no rules; returns the existing one if declared.
  Term declare(const std::string& name);
  /// A constant named prefix + n that is not yet declared.
  Term fresh(const std::string& prefix);
  bool has_constant(const std::string& name) const;
  /// Throws UnknownConstant.
  Term constant(const std::string& name) const;
  const std::string& constant_name(std::uint32_t id) const { return constants_.at(id).name; }
  std::size_t constant_count() const { return constants_.size(); }

  /// c arg ~> result. arg is normalized first; InvalidInput if it has no
  /// normal form within fuel or conflicts with an existing rule.
  void add_rule(const Term& c, const Term& arg, const Term& result, std::uint64_t fuel = kDefaultFuel);
  std::vector<std::pair<Term, Term>> rules(const Term& c) const;

  /// SyntaxError, UnknownConstant.
  Term parse(std::string_view src) const;

  /// Leftmost-outermost weak reduction to normal form. OpenTerm on variables.
  EvalResult eval(const Term& t, std::uint64_t fuel = kDefaultFuel) const;

 private:
  struct Constant {
    std::string name;
    std::map<std::string, std::pair<Term, Term>> rules;  // keyed by the argument's printed form
  };
  std::vector<Constant> constants_;
  std::map<std::string, std::uint32_t> by_name_;
  friend class Evaluator;
};

/// Parses against an empty constant set plus any constants in `pca`.
Term parse_term(const Pca& pca, std::string_view src);

/// [x] t: S/K bracket abstraction.
Term abstract(const std::string& x, const Term& t);

// Encodings.

enum class EncodeKind { Pair, Fst, Snd, Numeral, TagLeaf, TagNode };

Term combinator_i();
Term encode_pair(const Term& p, const Term& q);
Term encode_fst();
Term encode_snd();
Term encode_numeral(unsigned n);
Term tag_leaf(const Term& a);
Term tag_node(const Term& b, const Term& c);
/// Generic entry point; ArityError when args do not fit the kind.
Term encode(EncodeKind kind, std::span<const Term> args, unsigned numeral = 0);
std::optional<EncodeKind> parse_encode_kind(std::string_view name);

/// Syntactic decoding of normal forms built by encode_pair.
std::optional<std::pair<Term, Term>> decode_pair(const Term& nf);

struct DecodedTag {
  enum class Kind { Leaf, Node };
  Kind kind;
  Term first;   // a for leaves, b for nodes
  std::optional<Term> second;  // c for nodes
};
std::optional<DecodedTag> decode_tag(const Term& nf);

}  // namespace oramod
