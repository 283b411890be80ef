// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "oramod/cli.hpp"
#include "oramod/frame.hpp"
#include "oramod/nucleus.hpp"
#include "oramod/oracle.hpp"
#include "oramod/pca.hpp"
#include "oramod/realizers.hpp"
#include "oramod/sheaf.hpp"
#include "oramod/theorems.hpp"
#include "oramod/trees.hpp"
#include "pca_support.hpp"
#include "sheaf_oracle.hpp"
#include "support.hpp"

using namespace oramod;
using namespace oramod::testing;
using Table = std::vector<std::uint32_t>;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> problems;

  void fail(const std::string& what) {
    pass = false;
    if (problems.size() < 5) problems.push_back(what);
  }
};

// Mask-level oracles: downsets are bit sets, meet is intersection, join is
// union, order is inclusion.

bool mask_leq(const Frame& f, std::uint32_t a, std::uint32_t b) {
  return (f.mask(f.at(a)) & ~f.mask(f.at(b))) == 0;
}

std::uint32_t mask_meet(const Frame& f, std::uint32_t a, std::uint32_t b) {
  return f.from_mask(f.mask(f.at(a)) & f.mask(f.at(b)))->index();
}

std::uint32_t mask_join(const Frame& f, std::uint32_t a, std::uint32_t b) {
  return f.from_mask(f.mask(f.at(a)) | f.mask(f.at(b)))->index();
}

// Largest d with d /\ a <= b, by scanning.
std::uint32_t scan_implies(const Frame& f, std::uint32_t a, std::uint32_t b) {
  std::uint64_t acc = 0;
  for (std::uint32_t d = 0; d < f.size(); ++d) {
    if (mask_leq(f, mask_meet(f, d, a), b)) acc |= f.mask(f.at(d));
  }
  return f.from_mask(acc)->index();
}

// x is in not-a iff nothing below x lies in a.
std::uint32_t mask_neg(const Frame& f, std::uint32_t a) {
  const std::uint64_t ma = f.mask(f.at(a));
  std::uint64_t out = 0;
  for (std::size_t x = 0; x < f.poset().size(); ++x) {
    if ((f.poset().down_mask(x) & ma) == 0) out |= std::uint64_t{1} << x;
  }
  return f.from_mask(out)->index();
}

bool is_nucleus(const Frame& f, const Table& t) {
  const std::uint32_t n = static_cast<std::uint32_t>(f.size());
  for (std::uint32_t a = 0; a < n; ++a) {
    if (!mask_leq(f, a, t[a]) || t[t[a]] != t[a]) return false;
    for (std::uint32_t b = 0; b < n; ++b) {
      if (t[mask_meet(f, a, b)] != mask_meet(f, t[a], t[b])) return false;
    }
  }
  return true;
}

bool table_leq(const Frame& f, const Table& a, const Table& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!mask_leq(f, a[i], b[i])) return false;
  }
  return true;
}

Table tab(const Nucleus& j) { return {j.table().begin(), j.table().end()}; }

std::vector<Table> brute_force_nuclei(const Frame& f) {
  const std::uint32_t n = static_cast<std::uint32_t>(f.size());
  std::vector<std::vector<std::uint32_t>> ups(n);
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = 0; b < n; ++b) {
      if (mask_leq(f, a, b)) ups[a].push_back(b);
    }
  }
  std::vector<Table> out;
  Table t(n);
  std::function<void(std::uint32_t)> rec = [&](std::uint32_t a) {
    if (a == n) {
      if (is_nucleus(f, t)) out.push_back(t);
      return;
    }
    for (auto b : ups[a]) {
      t[a] = b;
      rec(a + 1);
    }
  };
  rec(0);
  return out;
}

std::vector<std::pair<Element, Element>> stages(const Frame& f) {
  std::vector<std::pair<Element, Element>> out;
  for (auto e : f.elements()) {
    for (auto p : f.elements()) {
      if (f.leq(p, e)) out.emplace_back(e, p);
    }
  }
  return out;
}

IndexedPropContainer random_container(const Frame& f, std::size_t max_shapes, std::mt19937_64& rng) {
  const auto st = stages(f);
  std::uniform_int_distribution<std::size_t> count(1, max_shapes);
  std::uniform_int_distribution<std::size_t> pick(0, st.size() - 1);
  std::vector<Query> qs;
  const std::size_t n = count(rng);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& [e, p] = st[pick(rng)];
    qs.push_back({"a" + std::to_string(i), e, p});
  }
  return IndexedPropContainer(f, qs);
}

// t |-> join over a of extent(a) /\ (pred(a) => t).
Table instance_map(const IndexedPropContainer& c) {
  const Frame& f = c.frame();
  Table out(f.size());
  for (std::uint32_t t = 0; t < f.size(); ++t) {
    std::uint32_t acc = 0;
    for (const auto& q : c.queries()) {
      acc = mask_join(f, acc, mask_meet(f, q.extent.index(), scan_implies(f, q.pred.index(), t)));
    }
    out[t] = acc;
  }
  return out;
}

bool forces_oracle(const Frame& f, const Table& j, const IndexedPropContainer& c) {
  for (const auto& q : c.queries()) {
    if (!mask_leq(f, q.extent.index(), j[q.pred.index()])) return false;
  }
  return true;
}

// Least member of `all` above every table in `below`.
std::optional<Table> least_above(const Frame& f, const std::vector<Table>& all, const std::vector<Table>& below) {
  std::vector<const Table*> above;
  for (const auto& k : all) {
    bool ok = true;
    for (const auto& b : below) ok = ok && table_leq(f, b, k);
    if (ok) above.push_back(&k);
  }
  for (const auto* k : above) {
    bool least = true;
    for (const auto* m : above) least = least && table_leq(f, *k, *m);
    if (least) return *k;
  }
  return std::nullopt;
}

std::string show(const Frame& f, const Table& t) { return describe_table(f, t); }

// Criteria.

Outcome frame_laws() {
  Outcome out;
  std::vector<Poset> posets;
  for (std::size_t n = 0; n <= 3; ++n) {
    for (auto& p : labelled_posets(n)) posets.push_back(p);
  }
  posets.push_back(chain(4));
  posets.push_back(diamond_poset());
  std::size_t triples = 0;
  for (const auto& p : posets) {
    const Frame f = Frame::downsets(p);
    const std::uint32_t n = static_cast<std::uint32_t>(f.size());
    for (std::uint32_t a = 0; a < n; ++a) {
      if (f.neg(f.at(a)).index() != mask_neg(f, a)) out.fail("negation at " + f.render(f.at(a)));
      for (std::uint32_t b = 0; b < n; ++b) {
        const std::uint32_t imp = f.implies(f.at(a), f.at(b)).index();
        if (f.meet(f.at(a), f.at(b)).index() != mask_meet(f, a, b)) out.fail("meet");
        if (f.join(f.at(a), f.at(b)).index() != mask_join(f, a, b)) out.fail("join");
        if (imp != scan_implies(f, a, b)) out.fail("implication");
        for (std::uint32_t c = 0; c < n; ++c) {
          ++triples;
          // residuation: c /\ a <= b  iff  c <= (a => b)
          const bool lhs = f.leq(f.meet(f.at(c), f.at(a)), f.at(b));
          if (lhs != f.leq(f.at(c), f.at(imp))) out.fail("residuation on " + f.render(f.at(a)));
          const auto dl = f.meet(f.at(a), f.join(f.at(b), f.at(c)));
          const auto dr = f.join(f.meet(f.at(a), f.at(b)), f.meet(f.at(a), f.at(c)));
          if (dl != dr) out.fail("distributivity on " + f.render(f.at(a)));
        }
      }
    }
    // Meets distribute over arbitrary joins: check every subset of the carrier.
    if (n <= 12) {
      for (std::uint32_t a = 0; a < n; ++a) {
        for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
          std::vector<Element> js;
          std::vector<Element> ms;
          for (std::uint32_t i = 0; i < n; ++i) {
            if ((s >> i) & 1U) {
              js.push_back(f.at(i));
              ms.push_back(f.meet(f.at(a), f.at(i)));
            }
          }
          if (f.meet(f.at(a), f.heyting(HeytingOp::Join, js)) != f.heyting(HeytingOp::Join, ms)) {
            out.fail("infinite distributivity");
          }
        }
      }
    }
  }
  out.detail = std::to_string(posets.size()) + " posets, " + std::to_string(triples) + " triples";
  return out;
}

Outcome nuclei_enumeration() {
  Outcome out;
  const auto o3 = enumerate_nuclei(omega3());
  if (o3.size() != 4) out.fail("Omega3 has " + std::to_string(o3.size()) + " nuclei");
  std::size_t frames = 0;
  std::size_t nuclei = 0;
  for (const auto& f : frames_up_to(8)) {
    ++frames;
    std::set<Table> got;
    for (const auto& j : enumerate_nuclei(f)) got.insert(tab(j));
    const auto want = brute_force_nuclei(f);
    nuclei += want.size();
    if (got != std::set<Table>(want.begin(), want.end())) {
      out.fail("carrier " + std::to_string(f.size()) + ": " + std::to_string(got.size()) + " vs " +
               std::to_string(want.size()));
    }
  }
  out.detail = "Omega3: " + std::to_string(o3.size()) + " nuclei; " + std::to_string(frames) + " frames, " +
               std::to_string(nuclei) + " nuclei matched";
  return out;
}

Outcome retraction() {
  Outcome out;
  std::size_t checked = 0;
  for (std::size_t n = 0; n <= 3; ++n) {
    for (const auto& p : labelled_posets(n)) {
      const Frame f = Frame::downsets(p);
      for (const auto& j : enumerate_nuclei(f)) {
        ++checked;
        const auto back = oracle_modality(pred_of_nucleus(j));
        if (back.table().size() != j.table().size() ||
            !std::equal(back.table().begin(), back.table().end(), j.table().begin())) {
          out.fail(show(f, tab(j)) + " came back as " + show(f, tab(back)));
        }
      }
    }
  }
  out.detail = std::to_string(checked) + " nuclei";
  return out;
}

Outcome two_implementations() {
  Outcome out;
  std::size_t exhaustive = 0;
  auto agree = [&](const IndexedPropContainer& c) {
    const auto a = oracle_modality(c);
    const auto b = oracle_modality_bruteforce(c);
    if (!(a == b)) out.fail(describe(c) + ": " + show(c.frame(), tab(a)) + " vs " + show(c.frame(), tab(b)));
  };
  for (const Frame& f : {omega2(), omega3()}) {
    const auto st = stages(f);
    for (const auto& [e, p] : st) {
      agree(IndexedPropContainer(f, {{"a", e, p}}));
      ++exhaustive;
      for (const auto& [e2, p2] : st) {
        agree(IndexedPropContainer(f, {{"a", e, p}, {"b", e2, p2}}));
        ++exhaustive;
      }
    }
  }
  const auto frames = frames_up_to(8);
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<std::size_t> pick(0, frames.size() - 1);
  for (int i = 0; i < 1000; ++i) agree(random_container(frames[pick(rng)], 3, rng));
  out.detail = std::to_string(exhaustive) + " exhaustive + 1000 random containers";
  return out;
}

Outcome example_theorems() {
  Outcome out;
  std::size_t frames = 0;
  for (const auto& p : posets_by_frame_size(16)) {
    const Frame f = Frame::downsets(p);
    ++frames;
    const auto lem = tab(oracle_modality(lem_container(f)));
    for (std::uint32_t a = 0; a < f.size(); ++a) {
      if (lem[a] != mask_neg(f, mask_neg(f, a))) {
        out.fail("LEM on carrier " + std::to_string(f.size()) + " at " + f.render(f.at(a)));
        break;
      }
    }
    const auto counter = tab(oracle_modality(IndexedPropContainer::global(f, {{"a", f.bot()}})));
    const auto realized = tab(oracle_modality(IndexedPropContainer::global(f, {{"a", f.top()}})));
    for (std::uint32_t a = 0; a < f.size(); ++a) {
      if (counter[a] != f.top_index()) out.fail("counterexample container is not constant top");
      if (realized[a] != a) out.fail("realized container is not the identity");
    }
  }
  out.detail = std::to_string(frames) + " frames with carrier <= 16";
  return out;
}

void order_theorems_case(const Frame& f, const std::vector<Table>& nuclei, const Table& j,
                         const IndexedPropContainer& c, const IndexedPropContainer& d, Outcome& out) {
  const auto oc = tab(oracle_modality(c));
  const auto od = tab(oracle_modality(d));
  if (forces_oracle(f, j, c) != table_leq(f, oc, j)) out.fail("forcing-iff: " + show(f, j) + " and " + describe(c));
  if (table_leq(f, oc, od) != forces_oracle(f, od, c)) out.fail("oracle-leq: " + describe(c) + " vs " + describe(d));
  const auto least = least_above(f, nuclei, {instance_map(c)});
  if (!least || *least != oc) out.fail("least-above-instance: " + describe(c));
}

Outcome order_theorems() {
  Outcome out;
  std::size_t exhaustive = 0;
  for (const Frame& f : {omega3(), omega4()}) {
    std::vector<Table> nuclei;
    for (const auto& j : enumerate_nuclei(f)) nuclei.push_back(tab(j));
    std::vector<IndexedPropContainer> singles;
    for (const auto& [e, p] : stages(f)) singles.emplace_back(f, std::vector<Query>{{"a", e, p}});
    for (const auto& j : nuclei) {
      for (const auto& c : singles) {
        for (const auto& d : singles) {
          order_theorems_case(f, nuclei, j, c, d, out);
          ++exhaustive;
        }
      }
    }
  }
  std::vector<Frame> larger;
  for (const auto& f : frames_up_to(8)) {
    if (f.size() > 4) larger.push_back(f);
  }
  std::map<std::size_t, std::vector<Table>> cache;
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<std::size_t> pick(0, larger.size() - 1);
  const std::size_t samples = 500;
  for (std::size_t i = 0; i < samples; ++i) {
    const std::size_t k = pick(rng);
    const Frame& f = larger[k];
    auto& nuclei = cache[k];
    if (nuclei.empty()) {
      for (const auto& j : enumerate_nuclei(f)) nuclei.push_back(tab(j));
    }
    std::uniform_int_distribution<std::size_t> pj(0, nuclei.size() - 1);
    order_theorems_case(f, nuclei, nuclei[pj(rng)], random_container(f, 1, rng), random_container(f, 1, rng), out);
  }
  out.detail = std::to_string(exhaustive) + " exhaustive cases on Omega3/Omega4, " + std::to_string(samples) +
               " sampled on " + std::to_string(larger.size()) + " larger frames";
  return out;
}

Outcome sup_theorem() {
  Outcome out;
  const auto frames = frames_up_to(8);
  std::vector<std::vector<Table>> cache(frames.size());
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> pick(0, frames.size() - 1);
  for (int i = 0; i < 500; ++i) {
    const std::size_t k = pick(rng);
    const Frame& f = frames[k];
    if (cache[k].empty()) {
      for (const auto& j : enumerate_nuclei(f)) cache[k].push_back(tab(j));
    }
    const std::vector<IndexedPropContainer> cs{random_container(f, 2, rng), random_container(f, 2, rng)};
    const auto sum = tab(oracle_modality(container_sum(f, cs)));
    const auto a = oracle_modality(cs[0]);
    const auto b = oracle_modality(cs[1]);
    const auto want = least_above(f, cache[k], {tab(a), tab(b)});
    const auto lib = tab(sup_nuclei(f, std::vector<Nucleus>{a, b}));
    if (!want || sum != *want || lib != *want) out.fail(describe(cs[0]) + " + " + describe(cs[1]));
  }
  out.detail = "500 pairs";
  return out;
}

Outcome surjection() {
  Outcome out;
  const auto frames = frames_up_to(8);
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<std::size_t> pick(0, frames.size() - 1);
  for (int i = 0; i < 200; ++i) {
    const auto c = random_container(frames[pick(rng)], 3, rng);
    std::uniform_int_distribution<std::size_t> extra(0, 2);
    std::uniform_int_distribution<std::size_t> shape(0, c.size() - 1);
    std::vector<std::size_t> q(c.size());
    std::iota(q.begin(), q.end(), 0);
    for (std::size_t e = extra(rng); e > 0; --e) q.push_back(shape(rng));
    std::shuffle(q.begin(), q.end(), rng);
    const auto lhs = oracle_modality(reindex_container(c, q));
    const auto rhs = oracle_modality(c);
    if (!(lhs == rhs)) out.fail(describe(c));
  }
  out.detail = "200 pairs";
  return out;
}

Outcome tree_suites() {
  Outcome out;
  const auto reports = run_tree_suites(2024, 1000, TreeSuiteLimits{3, 3, 4, 3});
  std::size_t cases = 0;
  for (const auto& r : reports) {
    cases += r.cases;
    if (r.cases != 1000) out.fail(r.suite + " ran " + std::to_string(r.cases) + " cases");
    if (!r.pass()) out.fail(r.suite + ": " + (r.failures.empty() ? "" : r.failures.front()));
  }
  out.detail = std::to_string(reports.size()) + " suites, " + std::to_string(cases) + " cases";
  return out;
}

Outcome sheaf_classifier() {
  Outcome out;
  std::size_t cases = 0;
  std::size_t closure = 0;
  for (const auto& p : predicates(3)) {
    for (std::size_t xsize = 0; xsize <= 2; ++xsize) {
      ++cases;
      const auto cands = candidates(p, xsize);
      std::vector<StructureMap> good;
      for (const auto& d : cands) {
        if (first_equality(d)) good.push_back(d);
      }
      const bool sheaf = !good.empty() && second_equality(p, xsize);
      std::optional<SheafCondition> violated;
      if (cands.empty()) violated = SheafCondition::StructureMapExists;
      else if (good.empty()) violated = SheafCondition::FirstEquality;
      else if (!sheaf) violated = SheafCondition::SecondEquality;
      const auto got = sheaf_classify(p, xsize);
      if (got.is_sheaf != sheaf || got.violated != violated || (sheaf && (good.size() != 1 || got.structure != good[0]))) {
        out.fail("classification differs for xsize " + std::to_string(xsize));
      }
    }
    for (std::size_t nx = 0; nx <= 2; ++nx) {
      for (std::size_t ny = 0; ny <= 2; ++ny) {
        const auto cx = sheaf_classify(p, nx);
        const auto cy = sheaf_classify(p, ny);
        if (!cx.is_sheaf || !cy.is_sheaf) continue;
        std::size_t maps = 1;
        for (std::size_t i = 0; i < nx; ++i) maps *= ny;
        for (std::size_t code = 0; code < maps; ++code) {
          std::vector<std::uint32_t> f;
          for (std::size_t i = 0, c = code; i < nx; ++i, c /= ny) f.push_back(static_cast<std::uint32_t>(c % ny));
          ++closure;
          if (!is_homomorphism(f, *cx.structure, *cy.structure)) out.fail("map between sheaves is not a homomorphism");
        }
        const auto prod = product_structure(*cx.structure, *cy.structure);
        const auto cp = sheaf_classify(p, nx * ny);
        ++closure;
        if (!cp.is_sheaf || *cp.structure != prod || !first_equality(prod)) out.fail("product is not the sheaf structure");
      }
    }
  }
  out.detail = std::to_string(cases) + " (predicate, size) pairs, " + std::to_string(closure) + " closure checks";
  return out;
}

Term random_sk(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> coin(0, 2);
  if (depth == 0 || coin(rng) == 0) return coin(rng) == 0 ? Term::s() : Term::k();
  return random_sk(rng, depth - 1)(random_sk(rng, depth - 1));
}

Term random_normal(const Pca& pca, std::mt19937_64& rng) {
  while (true) {
    const auto t = random_sk(rng, 3);
    if (pca.eval(t, 1000).value) return t;
  }
}

Outcome pca_suite() {
  Outcome out;
  constexpr std::uint64_t kFuel = 100000;
  Pca pca;
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const Term x = random_normal(pca, rng);
    const Term y = random_normal(pca, rng);
    const auto lhs = pca.eval(Term::k()(x)(y), kFuel);
    if (!lhs.value || !(*lhs.value == *pca.eval(x, kFuel).value)) out.fail("K axiom at " + x.str());
  }
  int s_tuples = 0;
  while (s_tuples < 100) {
    const Term x = random_normal(pca, rng);
    const Term y = random_normal(pca, rng);
    const Term z = random_normal(pca, rng);
    const auto rhs = pca.eval(x(z)(y(z)), kFuel - 1);
    if (!rhs.value) continue;
    ++s_tuples;
    const auto lhs = pca.eval(Term::s()(x)(y)(z), kFuel);
    if (!lhs.value || !(*lhs.value == *rhs.value)) out.fail("S axiom at " + x.str() + ", " + y.str() + ", " + z.str());
  }
  for (int i = 0; i < 100; ++i) {
    const Term a = *pca.eval(random_normal(pca, rng)).value;
    const Term b = *pca.eval(random_normal(pca, rng)).value;
    const auto p = encode_pair(a, b);
    const auto fst = pca.eval(encode_fst()(p), kFuel);
    const auto snd = pca.eval(encode_snd()(p), kFuel);
    if (!fst.value || !(*fst.value == a) || !snd.value || !(*snd.value == b)) out.fail("pairing at " + a.str());
  }
  const Term w = omega();
  for (std::uint64_t fuel : {0ULL, 1ULL, 2ULL, 10ULL, 100ULL, 1000ULL, 10000ULL, 100000ULL}) {
    const auto r = pca.eval(w(w), fuel);
    if (r.value || r.steps != fuel) out.fail("omega omega stopped at fuel " + std::to_string(fuel));
  }

  // Reductions.
  ToyWorld world = toy_world();
  Chain ch = chain_predicates();
  const auto [i1, i2] = identity_reducers();
  std::size_t identities = 0;
  for (const auto& f : world.weihrauch) {
    ++identities;
    if (check_weihrauch(world.pca, f, f, i1, i2, kFuel).verdict != Verdict::Accepted) out.fail("identity on toy predicate");
  }
  for (const auto* f : {&ch.f, &ch.g, &ch.h}) {
    ++identities;
    if (check_weihrauch(ch.pca, *f, *f, i1, i2, kFuel).verdict != Verdict::Accepted) out.fail("identity on chain predicate");
  }
  const Term l1 = ch.pca.parse("K (S K)");
  const Term l2 = ch.pca.parse("K (K K)");
  const Term m1 = ch.pca.parse("K (K K)");
  const Term m2 = ch.pca.parse("K (K (S K))");
  const auto [n1, n2] = composite_reducers(l1, l2, m1, m2);
  if (check_weihrauch(ch.pca, ch.f, ch.g, l1, l2, kFuel).verdict != Verdict::Accepted ||
      check_weihrauch(ch.pca, ch.g, ch.h, m1, m2, kFuel).verdict != Verdict::Accepted ||
      check_weihrauch(ch.pca, ch.f, ch.h, n1, n2, kFuel).verdict != Verdict::Accepted) {
    out.fail("composed reduction");
  }

  // Oracle trees.
  std::mt19937_64 trng(12);
  std::size_t mutants = 0;
  const MembershipBudget budget{8, kFuel};
  for (int i = 0; i < 50; ++i) {
    const bool asm_pred = i % 2 == 1;
    const auto nodes = asm_pred ? choices(world.assemblies[static_cast<std::size_t>(i / 2) % world.assemblies.size()])
                                : choices(world.weihrauch[static_cast<std::size_t>(i / 2) % world.weihrauch.size()]);
    const auto spec = random_member_spec(world.s, nodes, 3, trng);
    const Term t = encode_oracle_tree(world.pca, spec, kFuel);
    auto check = [&](const Term& term) {
      if (asm_pred) {
        return check_oracle_membership_asm(world.pca, world.assemblies[static_cast<std::size_t>(i / 2) % world.assemblies.size()],
                                           world.s, term, budget);
      }
      return check_oracle_membership_w(world.pca, world.weihrauch[static_cast<std::size_t>(i / 2) % world.weihrauch.size()],
                                       world.s, term, budget);
    };
    const auto v = check(t);
    if (v.kind != MembershipKind::Member) out.fail("tree " + std::to_string(i) + " is " + std::string(to_string(v.kind)));
    for (std::size_t target = 0; target < spec_nodes(spec); ++target) {
      for (auto m : all_mutations()) {
        const auto mutated = encode_mutated(world.pca, spec, target, m, world.outsider);
        if (!mutated) continue;
        ++mutants;
        if (check(*mutated).kind == MembershipKind::Member) {
          out.fail(std::string(mutation_name(m)) + " at node " + std::to_string(target) + " of tree " + std::to_string(i));
        }
      }
    }
  }
  out.detail = "100 K + 100 S tuples, 100 pairs, " + std::to_string(identities) + " identity reductions, 50 trees, " +
               std::to_string(mutants) + " mutants";
  return out;
}

std::string data(const std::string& name) { return std::string(ORAMOD_DATA_DIR) + "/" + name; }

Outcome cli_contract() {
  Outcome out;
  const std::string node = "S (S (S K K) (K (S (S (S K K) (K K)) (K (S K K))))) (K (S (S (S K K) (K K)) (K c)))";
  const std::string omega_omega = "S (S K K) (S K K) (S (S K K) (S K K))";
  struct Case {
    std::vector<std::string> args;
    int want;
  };
  const std::vector<Case> cases{
      {{"frame", "build", "--poset", data("diamond.json")}, 0},
      {{"frame", "build", "--poset", data("missing.json")}, 2},
      {{"nuclei", "enumerate", "--poset", data("chain2.json")}, 0},
      {{"nuclei", "validate", "--nucleus", data("closed_p.json")}, 0},
      {{"nuclei", "validate", "--nucleus", data("bad_nucleus.json")}, 1},
      {{"nuclei", "sup", "--nucleus", data("closed_p.json"), "--nucleus", data("double_negation.json")}, 0},
      {{"nuclei", "sup", "--nucleus", data("bad_nucleus.json")}, 2},
      {{"oracle", "compute", "--container", data("lem_like.json")}, 0},
      {{"oracle", "compare", "--container", data("query_p.json")}, 0},
      {{"verify", "retraction", "--poset", data("chain2.json")}, 0},
      {{"verify", "retraction", "--poset", data("chain2.json"), "--nucleus", data("bad_nucleus.json")}, 1},
      {{"verify", "all", "--poset", data("diamond.json"), "--seed", "3"}, 0},
      {{"verify", "all", "--poset", data("chain2.json"), "--budget", "1"}, 3},
      {{"verify", "nonsense", "--poset", data("chain2.json")}, 2},
      {{"trees", "suite", "--seed", "9", "--cases", "100"}, 0},
      {{"trees", "suite", "--cases", "0"}, 0},
      {{"trees", "check", "--container", data("set_container.json"), "--tree", data("tree.json")}, 0},
      {{"pca", "eval", "--term", "S K K S"}, 0},
      {{"pca", "eval", "--term", omega_omega, "--fuel", "1000"}, 3},
      {{"pca", "eval", "--term", "(S"}, 2},
      {{"weihrauch", "check", "--f", data("f.json"), "--g", data("g.json"), "--l1", "K (S K)", "--l2", "K (K K)"}, 0},
      {{"weihrauch", "check", "--f", data("f.json"), "--g", data("g.json"), "--l1", "S K K", "--l2", "K (S K K)"}, 1},
      {{"weihrauch", "check", "--f", data("f.json"), "--g", data("g.json"), "--l1", "K (" + omega_omega + ")", "--l2",
        "K", "--fuel", "500"},
       3},
      {{"oracle-tree", "check", "--pred", data("w_pred.json"), "--s", data("s_set.json"), "--term", node}, 0},
      {{"oracle-tree", "check", "--pred", data("w_pred.json"), "--s", data("s_set.json"), "--term", "K"}, 1},
      {{"oracle-tree", "check", "--pred", data("w_pred.json"), "--s", data("s_set.json"), "--term", node, "--depth",
        "1"},
       3},
      {{"oracle-tree", "check", "--pred", data("assembly.json"), "--s", data("s_set.json"), "--term", node}, 0},
      {{"oracle-tree", "check", "--pred", data("assembly.json"), "--s", data("s_set.json"), "--term",
        "S (S (S K K) (K (S K K))) (K a2)"},
       1},
      {{"verify", "retraction", "--poset", data("chain2.json"), "--unknown-flag"}, 2},
      {{"selftest", "invariant"}, 4},
  };
  std::size_t identical = 0;
  for (auto c : cases) {
    c.args.insert(c.args.end(), {"--format", "json"});
    const auto a = cli::run(c.args);
    const auto b = cli::run(c.args);
    std::string line;
    for (const auto& s : c.args) line += s + " ";
    if (a.exit_code != c.want) out.fail(line + "exited " + std::to_string(a.exit_code));
    if (a.output != b.output || a.exit_code != b.exit_code) out.fail(line + "is not byte-identical");
    if (!a.output.empty()) {
      ++identical;
      const auto j = nlohmann::json::parse(a.output);
      if (!j["header"].contains("seed") || !j["header"].contains("version")) out.fail(line + "lacks seed or version");
    }
  }
  out.detail = std::to_string(cases.size()) + " invocations, " + std::to_string(identical) + " json reports compared";
  return out;
}

struct Criterion {
  int id;
  std::string name;
  std::function<Outcome()> run;
  double limit_s;  // 0 for no limit
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "frame laws on small posets, the 4-chain and the diamond", frame_laws, 5},
      {2, "nuclei enumeration against brute force", nuclei_enumeration, 60},
      {3, "retraction oracle(pred(j)) = j", retraction, 60},
      {4, "Kleene iteration agrees with the prefixed-point meet", two_implementations, 0},
      {5, "LEM, counterexample and realized containers", example_theorems, 0},
      {6, "forcing-iff, oracle-leq, least-above-instance", order_theorems, 0},
      {7, "oracle of a sum is the sup", sup_theorem, 0},
      {8, "surjective relabelling leaves the oracle unchanged", surjection, 0},
      {9, "tree property suites", tree_suites, 30},
      {10, "sheaf classifier against direct checking", sheaf_classifier, 0},
      {11, "combinatory algebra, reductions and oracle trees", pca_suite, 10},
      {12, "CLI byte-identical reports and exit statuses", cli_contract, 0},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("threw: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_s > 0 && secs >= c.limit_s) o.fail("took longer than " + std::to_string(c.limit_s) + " s");
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << (o.pass ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.name << "  (" << o.detail << "; " << secs << " s";
    if (c.limit_s > 0) line << " of " << c.limit_s << " s";
    line << ")";
    std::cout << line.str() << "\n";
    for (const auto& p : o.problems) std::cout << "        " << p << "\n";
    if (!o.pass) ++failed;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed ? 1 : 0;
}
