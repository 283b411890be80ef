#include "oramod/pca.hpp"

#include <cctype>

#include "oramod/error.hpp"

namespace oramod {

struct Term::Rep {
  Kind kind;
  std::string name;
  std::uint32_t id = 0;
  std::optional<Term> fun;
  std::optional<Term> arg;
  bool closed = true;
  bool constant_free = true;
};

namespace {

std::shared_ptr<const Term::Rep> leaf_rep(Term::Kind kind, std::string name, std::uint32_t id) {
  auto r = std::make_shared<Term::Rep>();
  r->kind = kind;
  r->name = std::move(name);
  r->id = id;
  r->closed = kind != Term::Kind::Var;
  r->constant_free = kind != Term::Kind::Const;
  return r;
}

}  // namespace

Term Term::s() {
  static const Term t(leaf_rep(Kind::S, "S", 0));
  return t;
}

Term Term::k() {
  static const Term t(leaf_rep(Kind::K, "K", 0));
  return t;
}

Term Term::constant(std::uint32_t id, std::string name) { return Term(leaf_rep(Kind::Const, std::move(name), id)); }

Term Term::var(std::string name) { return Term(leaf_rep(Kind::Var, std::move(name), 0)); }

Term Term::app(Term f, Term a) {
  auto r = std::make_shared<Rep>();
  r->kind = Kind::App;
  r->closed = f.closed() && a.closed();
  r->constant_free = f.constant_free() && a.constant_free();
  r->fun = std::move(f);
  r->arg = std::move(a);
  return Term(std::move(r));
}

Term::Kind Term::kind() const { return rep_->kind; }

const Term& Term::fun() const {
  if (rep_->kind != Kind::App) throw Error(ErrorCode::InternalInvariantViolation, "fun() of a non-application");
  return *rep_->fun;
}

const Term& Term::arg() const {
  if (rep_->kind != Kind::App) throw Error(ErrorCode::InternalInvariantViolation, "arg() of a non-application");
  return *rep_->arg;
}

const std::string& Term::name() const { return rep_->name; }
std::uint32_t Term::constant_id() const { return rep_->id; }
bool Term::closed() const { return rep_->closed; }
bool Term::constant_free() const { return rep_->constant_free; }

std::string Term::str() const {
  // unwind the spine so long left-nested applications do not recurse
  std::vector<const Term*> args;
  const Term* head = this;
  while (head->kind() == Kind::App) {
    args.push_back(&head->arg());
    head = &head->fun();
  }
  std::string out = head->name();
  for (auto it = args.rbegin(); it != args.rend(); ++it) {
    out += ' ';
    if ((*it)->kind() == Kind::App) {
      out += '(' + (*it)->str() + ')';
    } else {
      out += (*it)->name();
    }
  }
  return out;
}

bool operator==(const Term& a, const Term& b) {
  const Term* x = &a;
  const Term* y = &b;
  for (;;) {
    if (x->rep_ == y->rep_) return true;
    if (x->kind() != y->kind()) return false;
    switch (x->kind()) {
      case Term::Kind::S:
      case Term::Kind::K: return true;
      case Term::Kind::Const: return x->constant_id() == y->constant_id();
      case Term::Kind::Var: return x->name() == y->name();
      case Term::Kind::App:
        if (!(x->arg() == y->arg())) return false;
        x = &x->fun();
        y = &y->fun();
        break;
    }
  }
}

// Evaluation.

class Evaluator {
 public:
  static constexpr std::size_t kMaxNesting = 10000;
  static constexpr std::size_t kMaxSpine = 1 << 16;

  Evaluator(const Pca& pca, std::uint64_t fuel) : pca_(pca), fuel_(fuel) {}

  std::optional<Term> normalize(const Term& t) {
    if (++depth_ > kMaxNesting) return std::nullopt;
    Term head = t;
    std::vector<Term> args;
    if (!whnf(head, args)) return std::nullopt;
    Term out = head;
    for (auto it = args.rbegin(); it != args.rend(); ++it) {
      auto nf = normalize(*it);
      if (!nf) return std::nullopt;
      out = Term::app(out, *nf);
    }
    --depth_;
    return out;
  }

  std::uint64_t steps() const { return steps_; }

 private:
  bool tick() {
    if (steps_ >= fuel_) return false;
    ++steps_;
    return true;
  }

  // Reduces head applied to args (args.back() is the first argument) until
  // no redex is enabled at the head.
  bool whnf(Term& head, std::vector<Term>& args) {
    for (;;) {
      while (head.kind() == Term::Kind::App) {
        args.push_back(head.arg());
        head = Term(head.fun());
      }
      if (args.size() > kMaxSpine) return false;
      switch (head.kind()) {
        case Term::Kind::K:
          if (args.size() < 2) return true;
          if (!tick()) return false;
          head = args.back();
          args.pop_back();
          args.pop_back();
          continue;
        case Term::Kind::S: {
          if (args.size() < 3) return true;
          if (!tick()) return false;
          Term x = args.back();
          args.pop_back();
          Term y = args.back();
          args.pop_back();
          Term z = args.back();
          args.pop_back();
          args.push_back(Term::app(y, z));
          args.push_back(z);
          head = x;
          continue;
        }
        case Term::Kind::Const: {
          const auto& rules = pca_.constants_.at(head.constant_id()).rules;
          if (args.empty() || rules.empty()) return true;
          auto nf = normalize(args.back());
          if (!nf) return false;
          args.back() = *nf;
          auto it = rules.find(nf->str());
          if (it == rules.end()) return true;
          if (!tick()) return false;
          args.pop_back();
          head = it->second.second;
          continue;
        }
        case Term::Kind::Var: throw Error(ErrorCode::OpenTerm, "variable '" + head.name() + "' in evaluated term");
        case Term::Kind::App: break;
      }
    }
  }

  const Pca& pca_;
  std::uint64_t fuel_;
  std::uint64_t steps_ = 0;
  std::size_t depth_ = 0;
};

EvalResult Pca::eval(const Term& t, std::uint64_t fuel) const {
  if (!t.closed()) throw Error(ErrorCode::OpenTerm, "cannot evaluate open term " + t.str());
  Evaluator ev(*this, fuel);
  auto nf = ev.normalize(t);
  return {std::move(nf), ev.steps()};
}

// Constants.

Term Pca::declare(const std::string& name) {
  if (name == "S" || name == "K") throw Error(ErrorCode::InvalidInput, "'" + name + "' is reserved");
  auto it = by_name_.find(name);
  if (it != by_name_.end()) return Term::constant(it->second, name);
  const auto id = static_cast<std::uint32_t>(constants_.size());
  constants_.push_back({name, {}});
  by_name_.emplace(name, id);
  return Term::constant(id, name);
}

Term Pca::fresh(const std::string& prefix) {
  for (std::size_t n = constants_.size();; ++n) {
    auto name = prefix + std::to_string(n);
    if (!has_constant(name)) return declare(name);
  }
}

bool Pca::has_constant(const std::string& name) const { return by_name_.count(name) != 0; }

Term Pca::constant(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) throw Error(ErrorCode::UnknownConstant, "unknown constant '" + name + "'");
  return Term::constant(it->second, name);
}

void Pca::add_rule(const Term& c, const Term& arg, const Term& result, std::uint64_t fuel) {
  if (c.kind() != Term::Kind::Const || c.constant_id() >= constants_.size()) {
    throw Error(ErrorCode::InvalidInput, "rules attach to declared constants only");
  }
  if (!result.closed()) throw Error(ErrorCode::OpenTerm, "rule result " + result.str() + " is open");
  auto nf = eval(arg, fuel);
  if (!nf.value) throw Error(ErrorCode::InvalidInput, "rule argument " + arg.str() + " has no normal form within fuel");
  auto& rules = constants_[c.constant_id()].rules;
  const auto key = nf.value->str();
  auto it = rules.find(key);
  if (it != rules.end()) {
    if (it->second.second == result) return;
    throw Error(ErrorCode::InvalidInput, "conflicting rules for " + c.name() + " " + key);
  }
  rules.emplace(key, std::make_pair(*nf.value, result));
}

std::vector<std::pair<Term, Term>> Pca::rules(const Term& c) const {
  std::vector<std::pair<Term, Term>> out;
  for (const auto& [_, r] : constants_.at(c.constant_id()).rules) out.push_back(r);
  return out;
}

// Parsing.

namespace {

class Parser {
 public:
  Parser(const Pca& pca, std::string_view src) : pca_(pca), src_(src) {}

  Term parse() {
    auto t = term();
    skip();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::SyntaxError, what + " at offset " + std::to_string(pos_) + " in \"" + std::string(src_) + "\"");
  }

  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

  bool atom_ahead() {
    skip();
    return pos_ < src_.size() && (src_[pos_] == '(' || ident_start(src_[pos_]));
  }

  Term term() {
    if (!atom_ahead()) fail(pos_ < src_.size() ? "expected a term" : "unexpected end of input");
    Term t = atom();
    while (atom_ahead()) t = Term::app(t, atom());
    return t;
  }

  Term atom() {
    skip();
    if (src_[pos_] == '(') {
      if (++depth_ > 10000) fail("nesting too deep");
      ++pos_;
      Term t = term();
      skip();
      if (pos_ >= src_.size() || src_[pos_] != ')') fail("expected ')'");
      ++pos_;
      --depth_;
      return t;
    }
    const std::size_t start = pos_;
    while (pos_ < src_.size() && ident_char(src_[pos_])) ++pos_;
    const std::string word(src_.substr(start, pos_ - start));
    if (word == "S") return Term::s();
    if (word == "K") return Term::k();
    return pca_.constant(word);
  }

  const Pca& pca_;
  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t depth_ = 0;
};

}  // namespace

Term Pca::parse(std::string_view src) const { return Parser(*this, src).parse(); }

Term parse_term(const Pca& pca, std::string_view src) { return pca.parse(src); }

// Abstraction.

namespace {

bool occurs(const std::string& x, const Term& t) {
  if (t.closed()) return false;
  if (t.kind() == Term::Kind::Var) return t.name() == x;
  if (t.kind() == Term::Kind::App) return occurs(x, t.fun()) || occurs(x, t.arg());
  return false;
}

}  // namespace

Term abstract(const std::string& x, const Term& t) {
  if (!occurs(x, t)) return Term::app(Term::k(), t);
  if (t.kind() == Term::Kind::Var) return combinator_i();
  return Term::app(Term::app(Term::s(), abstract(x, t.fun())), abstract(x, t.arg()));
}

// Encodings.

Term combinator_i() { return Term::s()(Term::k())(Term::k()); }

Term encode_pair(const Term& p, const Term& q) {
  const Term s = Term::s(), k = Term::k();
  return s(s(combinator_i())(k(p)))(k(q));
}

Term encode_fst() { return Term::s()(combinator_i())(Term::k()(Term::k())); }

Term encode_snd() { return Term::s()(combinator_i())(Term::k()(Term::k()(combinator_i()))); }

Term encode_numeral(unsigned n) {
  Term t = combinator_i();
  for (unsigned i = 0; i < n; ++i) t = encode_pair(Term::k(), t);
  return t;
}

Term tag_leaf(const Term& a) { return encode_pair(encode_numeral(0), a); }

Term tag_node(const Term& b, const Term& c) { return encode_pair(encode_numeral(1), encode_pair(b, c)); }

Term encode(EncodeKind kind, std::span<const Term> args, unsigned numeral) {
  auto need = [&](std::size_t n, const char* what) {
    if (args.size() != n) {
      throw Error(ErrorCode::ArityError, std::string(what) + " takes " + std::to_string(n) + " argument(s), got " +
                                             std::to_string(args.size()));
    }
  };
  switch (kind) {
    case EncodeKind::Pair: need(2, "pair"); return encode_pair(args[0], args[1]);
    case EncodeKind::Fst: need(0, "fst"); return encode_fst();
    case EncodeKind::Snd: need(0, "snd"); return encode_snd();
    case EncodeKind::Numeral: need(0, "numeral"); return encode_numeral(numeral);
    case EncodeKind::TagLeaf: need(1, "tag_leaf"); return tag_leaf(args[0]);
    case EncodeKind::TagNode: need(2, "tag_node"); return tag_node(args[0], args[1]);
  }
  throw Error(ErrorCode::InternalInvariantViolation, "unknown encoding");
}

std::optional<EncodeKind> parse_encode_kind(std::string_view name) {
  if (name == "pair") return EncodeKind::Pair;
  if (name == "fst") return EncodeKind::Fst;
  if (name == "snd") return EncodeKind::Snd;
  if (name == "numeral") return EncodeKind::Numeral;
  if (name == "tag_leaf") return EncodeKind::TagLeaf;
  if (name == "tag_node") return EncodeKind::TagNode;
  return std::nullopt;
}

std::optional<std::pair<Term, Term>> decode_pair(const Term& nf) {
  // S (S I (K p)) (K q)
  auto is = [](const Term& t, Term::Kind k) { return t.kind() == k; };
  if (!is(nf, Term::Kind::App) || !is(nf.fun(), Term::Kind::App) || !is(nf.fun().fun(), Term::Kind::S)) {
    return std::nullopt;
  }
  const Term& left = nf.fun().arg();
  const Term& right = nf.arg();
  if (!is(right, Term::Kind::App) || !is(right.fun(), Term::Kind::K)) return std::nullopt;
  if (!is(left, Term::Kind::App) || !is(left.fun(), Term::Kind::App) || !is(left.fun().fun(), Term::Kind::S)) {
    return std::nullopt;
  }
  if (!(left.fun().arg() == combinator_i())) return std::nullopt;
  const Term& kp = left.arg();
  if (!is(kp, Term::Kind::App) || !is(kp.fun(), Term::Kind::K)) return std::nullopt;
  return std::make_pair(kp.arg(), right.arg());
}

std::optional<DecodedTag> decode_tag(const Term& nf) {
  auto outer = decode_pair(nf);
  if (!outer) return std::nullopt;
  if (outer->first == encode_numeral(0)) return DecodedTag{DecodedTag::Kind::Leaf, outer->second, std::nullopt};
  if (outer->first == encode_numeral(1)) {
    auto inner = decode_pair(outer->second);
    if (!inner) return std::nullopt;
    return DecodedTag{DecodedTag::Kind::Node, inner->first, inner->second};
  }
  return std::nullopt;
}

}  // namespace oramod
