#include "oramod/realizers.hpp"

#include <functional>

#include "oramod/error.hpp"

namespace oramod {

bool RealizerSet::insert(const Term& nf) {
  if (!keys_.insert(nf.str()).second) return false;
  elems_.push_back(nf);
  return true;
}

namespace {

Term normal_form(const Pca& pca, const Term& t, std::uint64_t fuel, const std::string& what) {
  auto r = pca.eval(t, fuel);
  if (!r.value) throw Error(ErrorCode::InvalidInput, what + " " + t.str() + " has no normal form within fuel");
  return *r.value;
}

}  // namespace

RealizerSet normalized_set(const Pca& pca, const std::vector<Term>& terms, std::uint64_t fuel) {
  RealizerSet out;
  for (const auto& t : terms) out.insert(normal_form(pca, t, fuel, "realizer"));
  return out;
}

ExtWeihrauchPredicate ExtWeihrauchPredicate::build(const Pca& pca, const std::vector<RawEntry>& raw,
                                                   std::uint64_t fuel) {
  ExtWeihrauchPredicate out;
  std::set<std::string> seen;
  for (const auto& [instance, families] : raw) {
    auto r = normal_form(pca, instance, fuel, "instance");
    if (!seen.insert(r.str()).second) throw Error(ErrorCode::InvalidInput, "instance " + r.str() + " listed twice");
    WeihrauchEntry e{r, {}};
    for (const auto& fam : families) e.families.push_back(normalized_set(pca, fam, fuel));
    out.entries_.push_back(std::move(e));
  }
  return out;
}

const std::vector<RealizerSet>* ExtWeihrauchPredicate::families(const Term& r) const {
  for (const auto& e : entries_) {
    if (e.instance == r) return &e.families;
  }
  return nullptr;
}

bool ExtWeihrauchPredicate::in_support(const Term& r) const {
  const auto* fams = families(r);
  return fams && !fams->empty();
}

std::vector<Term> ExtWeihrauchPredicate::support() const {
  std::vector<Term> out;
  for (const auto& e : entries_) {
    if (!e.families.empty()) out.push_back(e.instance);
  }
  return out;
}

PartitionedAssemblyPredicate PartitionedAssemblyPredicate::build(const Pca& pca, const std::vector<RawElement>& raw,
                                                                 std::uint64_t fuel) {
  PartitionedAssemblyPredicate out;
  std::set<std::string> seen;
  for (const auto& [label, rho, pred] : raw) {
    if (!seen.insert(label).second) throw Error(ErrorCode::DuplicateLabel, "element '" + label + "' listed twice");
    out.elements_.push_back({label, normal_form(pca, rho, fuel, "realizer of " + label), normalized_set(pca, pred, fuel)});
  }
  return out;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Accepted: return "accepted";
    case Verdict::Rejected: return "rejected";
    case Verdict::Unknown: return "unknown";
  }
  return "?";
}

std::string_view to_string(ObligationStatus s) {
  switch (s) {
    case ObligationStatus::Holds: return "holds";
    case ObligationStatus::Fails: return "fails";
    case ObligationStatus::Unknown: return "unknown";
  }
  return "?";
}

std::string_view to_string(MembershipKind k) {
  switch (k) {
    case MembershipKind::Member: return "member";
    case MembershipKind::NotMember: return "not-member";
    case MembershipKind::Unknown: return "unknown";
  }
  return "?";
}

// Weihrauch reducibility.

WeihrauchReport check_weihrauch(const Pca& pca, const ExtWeihrauchPredicate& f, const ExtWeihrauchPredicate& g,
                                const Term& l1, const Term& l2, std::uint64_t fuel) {
  WeihrauchReport rep;
  auto log = [&](std::string what, ObligationStatus s) { rep.obligations.push_back({std::move(what), s}); };

  for (const auto& [name, l] : {std::pair<const char*, const Term&>{"l1", l1}, {"l2", l2}}) {
    const bool ok = l.closed() && l.constant_free();
    log(std::string(name) + " = " + l.str() + " is closed and mentions no oracle constant",
        ok ? ObligationStatus::Holds : ObligationStatus::Fails);
  }

  if (rep.obligations[0].status == ObligationStatus::Holds && rep.obligations[1].status == ObligationStatus::Holds) {
    for (const auto& r : f.support()) {
      const auto lr = pca.eval(l1(r), fuel);
      if (!lr.value) {
        log("l1 " + r.str() + " is defined", ObligationStatus::Unknown);
        continue;
      }
      const Term& q = *lr.value;
      const bool supported = g.in_support(q);
      log("l1 " + r.str() + " = " + q.str() + " lies in the support of g",
          supported ? ObligationStatus::Holds : ObligationStatus::Fails);
      if (!supported) continue;

      const auto& thetas = *f.families(r);
      const auto& xis = *g.families(q);
      for (std::size_t i = 0; i < thetas.size(); ++i) {
        const auto& theta = thetas[i];
        ObligationStatus status = ObligationStatus::Fails;
        for (const auto& xi : xis) {
          ObligationStatus here = ObligationStatus::Holds;
          for (const auto& s : xi.elements()) {
            const auto v = pca.eval(l2(r)(s), fuel);
            if (!v.value) {
              here = ObligationStatus::Unknown;
            } else if (!theta.contains(*v.value)) {
              here = ObligationStatus::Fails;
              break;
            }
          }
          if (here == ObligationStatus::Holds) {
            status = here;
            break;
          }
          if (here == ObligationStatus::Unknown) status = here;
        }
        log("some family of g at " + q.str() + " is mapped by l2 " + r.str() + " into family #" + std::to_string(i) +
                " of f at " + r.str(),
            status);
      }
    }
  }

  for (std::size_t i = 0; i < rep.obligations.size(); ++i) {
    const auto s = rep.obligations[i].status;
    if (s == ObligationStatus::Fails) {
      rep.verdict = Verdict::Rejected;
      rep.witness = i;
      break;
    }
    if (s == ObligationStatus::Unknown && rep.verdict == Verdict::Accepted) {
      rep.verdict = Verdict::Unknown;
      rep.witness = i;
    }
  }
  return rep;
}

std::pair<Term, Term> identity_reducers() { return {combinator_i(), Term::k()(combinator_i())}; }

std::pair<Term, Term> composite_reducers(const Term& l1, const Term& l2, const Term& m1, const Term& m2) {
  const Term r = Term::var("r");
  const Term s = Term::var("s");
  Term n1 = abstract("r", m1(l1(r)));
  Term n2 = abstract("r", abstract("s", l2(r)(m2(l1(r))(s))));
  return {n1, n2};
}

// Oracle tree membership.

namespace {

struct Alternative {
  std::size_t index;
  std::string label;
  const RealizerSet* answers;
};

using AlternativesOf = std::function<std::vector<Alternative>(const Term& b, std::string& why_none)>;

class MembershipSearch {
 public:
  MembershipSearch(const Pca& pca, const RealizerSet& s, AlternativesOf alts, const MembershipBudget& budget)
      : pca_(pca), s_(s), alts_(std::move(alts)), budget_(budget) {}

  MembershipVerdict run(const Term& t) { return check(t, budget_.depth); }

 private:
  static MembershipVerdict verdict(MembershipKind k, std::string reason, std::vector<std::string> path = {}) {
    return {k, std::nullopt, std::move(reason), std::move(path)};
  }

  MembershipVerdict check(const Term& t, std::size_t depth) {
    if (depth == 0) return verdict(MembershipKind::Unknown, "depth bound reached at " + t.str());
    const auto r = pca_.eval(t, budget_.fuel);
    if (!r.value) return verdict(MembershipKind::Unknown, t.str() + " has no normal form within fuel");
    const Term& nf = *r.value;
    const auto tag = decode_tag(nf);
    if (!tag) return verdict(MembershipKind::NotMember, "malformed: " + nf.str() + " is neither <0, a> nor <1, <b, c>>");
    if (tag->kind == DecodedTag::Kind::Leaf) {
      if (!s_.contains(tag->first)) {
        return verdict(MembershipKind::NotMember, "leaf payload " + tag->first.str() + " is not in S");
      }
      MembershipVerdict v = verdict(MembershipKind::Member, "");
      v.certificate = Certificate{nf, true, tag->first, 0, {}};
      return v;
    }

    const Term& b = tag->first;
    const Term& c = *tag->second;
    std::string why;
    const auto alts = alts_(b, why);
    if (alts.empty()) return verdict(MembershipKind::NotMember, why);

    std::optional<MembershipVerdict> first_unknown;
    std::optional<MembershipVerdict> first_failure;
    for (const auto& alt : alts) {
      Certificate cert{nf, false, b, alt.index, {}};
      bool failed = false;
      bool unknown = false;
      for (const auto& d : alt.answers->elements()) {
        auto sub = check(c(d), depth - 1);
        const std::string step = alt.label + ", answer " + d.str();
        if (sub.kind == MembershipKind::Member) {
          cert.children.push_back({d, std::move(*sub.certificate)});
          continue;
        }
        sub.path.insert(sub.path.begin(), step);
        if (sub.kind == MembershipKind::NotMember) {
          if (!first_failure) first_failure = std::move(sub);
          failed = true;
          break;
        }
        if (!first_unknown) first_unknown = std::move(sub);
        unknown = true;
      }
      if (!failed && !unknown) {
        MembershipVerdict v = verdict(MembershipKind::Member, "");
        v.certificate = std::move(cert);
        return v;
      }
    }
    if (first_unknown) return std::move(*first_unknown);
    return std::move(*first_failure);
  }

  const Pca& pca_;
  const RealizerSet& s_;
  AlternativesOf alts_;
  MembershipBudget budget_;
};

AlternativesOf weihrauch_alternatives(const ExtWeihrauchPredicate& f) {
  return [&f](const Term& b, std::string& why) {
    std::vector<Alternative> out;
    const auto* fams = f.families(b);
    if (!fams || fams->empty()) {
      why = "node realizer " + b.str() + " is outside the support";
      return out;
    }
    for (std::size_t i = 0; i < fams->size(); ++i) out.push_back({i, "family #" + std::to_string(i), &(*fams)[i]});
    return out;
  };
}

AlternativesOf assembly_alternatives(const PartitionedAssemblyPredicate& p) {
  return [&p](const Term& b, std::string& why) {
    std::vector<Alternative> out;
    const auto& els = p.elements();
    for (std::size_t i = 0; i < els.size(); ++i) {
      if (els[i].rho == b) out.push_back({i, "element " + els[i].label, &els[i].pred});
    }
    if (out.empty()) why = "node realizer " + b.str() + " realizes no element";
    return out;
  };
}

// Certificate re-check: no search, every choice comes from the certificate.
bool recheck(const Pca& pca, const RealizerSet& s, const Term& t, const Certificate& cert, std::uint64_t fuel,
             const std::function<const RealizerSet*(const Term& b, std::size_t alt)>& answers) {
  const auto r = pca.eval(t, fuel);
  if (!r.value || !(*r.value == cert.term)) return false;
  const auto tag = decode_tag(*r.value);
  if (!tag || (tag->kind == DecodedTag::Kind::Leaf) != cert.leaf || !(tag->first == cert.payload)) return false;
  if (cert.leaf) return s.contains(cert.payload);
  const RealizerSet* theta = answers(cert.payload, cert.alternative);
  if (!theta || theta->size() != cert.children.size()) return false;
  for (const auto& d : theta->elements()) {
    const CertificateChild* child = nullptr;
    for (const auto& ch : cert.children) {
      if (ch.answer == d) child = &ch;
    }
    if (!child || !recheck(pca, s, (*tag->second)(d), child->certificate, fuel, answers)) return false;
  }
  return true;
}

}  // namespace

MembershipVerdict check_oracle_membership_w(const Pca& pca, const ExtWeihrauchPredicate& f, const RealizerSet& s,
                                            const Term& t, const MembershipBudget& budget) {
  return MembershipSearch(pca, s, weihrauch_alternatives(f), budget).run(t);
}

MembershipVerdict check_oracle_membership_asm(const Pca& pca, const PartitionedAssemblyPredicate& p,
                                              const RealizerSet& s, const Term& t, const MembershipBudget& budget) {
  return MembershipSearch(pca, s, assembly_alternatives(p), budget).run(t);
}

bool recheck_certificate_w(const Pca& pca, const ExtWeihrauchPredicate& f, const RealizerSet& s, const Term& t,
                           const Certificate& cert, std::uint64_t fuel) {
  return recheck(pca, s, t, cert, fuel, [&f](const Term& b, std::size_t alt) -> const RealizerSet* {
    const auto* fams = f.families(b);
    return fams && alt < fams->size() ? &(*fams)[alt] : nullptr;
  });
}

bool recheck_certificate_asm(const Pca& pca, const PartitionedAssemblyPredicate& p, const RealizerSet& s,
                             const Term& t, const Certificate& cert, std::uint64_t fuel) {
  return recheck(pca, s, t, cert, fuel, [&p](const Term& b, std::size_t alt) -> const RealizerSet* {
    const auto& els = p.elements();
    return alt < els.size() && els[alt].rho == b ? &els[alt].pred : nullptr;
  });
}

Term encode_oracle_tree(Pca& pca, const OracleTreeSpec& spec, std::uint64_t fuel) {
  if (spec.leaf) return tag_leaf(spec.payload);
  const Term c = pca.fresh("c");
  for (const auto& [d, child] : spec.branches) pca.add_rule(c, d, encode_oracle_tree(pca, child, fuel), fuel);
  return tag_node(spec.payload, c);
}

}  // namespace oramod
