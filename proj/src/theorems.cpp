#include "oramod/theorems.hpp"

#include <algorithm>
#include <functional>
#include <random>

namespace oramod {

namespace {

struct TheoremName {
  Theorem theorem;
  std::string_view id;
};

constexpr TheoremName kNames[] = {
    {Theorem::Retraction, "retraction"},
    {Theorem::ForcingIff, "forcing-iff"},
    {Theorem::OracleLeq, "oracle-leq"},
    {Theorem::LeastAboveInstance, "least-above-instance"},
    {Theorem::Sup, "sup"},
    {Theorem::Surjection, "surjection"},
    {Theorem::InstanceVsForcing, "instance-vs-forcing"},
};

using Clock = std::chrono::steady_clock;

class Runner {
 public:
  Runner(const Frame& frame, const VerifyBudget& budget) : frame_(frame), budget_(budget) {
    for (const auto& e : frame_.elements()) {
      for (const auto& p : frame_.elements()) {
        if (frame_.leq(p, e)) stages_.emplace_back(e, p);
      }
    }
  }

  TheoremReport run(Theorem theorem) {
    report_ = TheoremReport{};
    report_.theorem = std::string(theorem_id(theorem));
    report_.seed = budget_.seed;
    std::seed_seq seq{budget_.seed, static_cast<std::uint64_t>(theorem)};
    rng_.seed(seq);
    start_ = Clock::now();
    switch (theorem) {
      case Theorem::Retraction: retraction(); break;
      case Theorem::ForcingIff: forcing_iff(); break;
      case Theorem::OracleLeq: oracle_leq(); break;
      case Theorem::LeastAboveInstance: least_above_instance(); break;
      case Theorem::Sup: sup(); break;
      case Theorem::Surjection: surjection(); break;
      case Theorem::InstanceVsForcing: instance_vs_forcing(); break;
    }
    report_.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
    return report_;
  }

 private:
  const std::vector<Nucleus>& nuclei() {
    if (!nuclei_) nuclei_ = enumerate_nuclei(frame_);
    return *nuclei_;
  }

  // Number of containers with at most max_shapes queries, saturating.
  std::size_t family_size() const {
    std::size_t total = 0;
    std::size_t power = 1;
    for (std::size_t k = 0; k <= budget_.max_shapes; ++k) {
      total += power;
      if (total > budget_.exhaustive_limit) return budget_.exhaustive_limit + 1;
      power *= stages_.size();
      if (power > budget_.exhaustive_limit) power = budget_.exhaustive_limit + 1;
    }
    return total;
  }

  const std::vector<IndexedPropContainer>& family() {
    if (family_) return *family_;
    family_.emplace();
    for (std::size_t k = 0; k <= budget_.max_shapes; ++k) {
      std::vector<std::size_t> digits(k, 0);
      for (;;) {
        std::vector<Query> qs;
        for (std::size_t i = 0; i < k; ++i) {
          qs.push_back({"a" + std::to_string(i), stages_[digits[i]].first, stages_[digits[i]].second});
        }
        family_->emplace_back(frame_, std::move(qs));
        std::size_t pos = 0;
        while (pos < k && ++digits[pos] == stages_.size()) digits[pos++] = 0;
        if (pos == k) break;
      }
    }
    return *family_;
  }

  IndexedPropContainer random_container(std::size_t min_shapes = 1, std::size_t max_shapes = 3) {
    std::uniform_int_distribution<std::size_t> count(min_shapes, max_shapes);
    std::uniform_int_distribution<std::size_t> stage(0, stages_.size() - 1);
    const std::size_t k = count(rng_);
    std::vector<Query> qs;
    for (std::size_t i = 0; i < k; ++i) {
      const auto& [e, p] = stages_[stage(rng_)];
      qs.push_back({"a" + std::to_string(i), e, p});
    }
    return IndexedPropContainer(frame_, std::move(qs));
  }

  const Nucleus& random_nucleus() {
    std::uniform_int_distribution<std::size_t> pick(0, nuclei().size() - 1);
    return nuclei()[pick(rng_)];
  }

  // Accounts for one instance; false once the budget is spent.
  bool tick() {
    if (report_.checked >= budget_.max_instances) {
      report_.complete = false;
      return false;
    }
    if (budget_.time_limit && Clock::now() - start_ > *budget_.time_limit) {
      report_.complete = false;
      return false;
    }
    ++report_.checked;
    return true;
  }

  void fail(std::string what) {
    ++report_.failed;
    if (report_.failures.size() < TheoremReport::kMaxRecordedFailures) report_.failures.push_back(std::move(what));
  }

  // Runs `exhaustive(i)` for every index below `count` if that fits the
  // budget, otherwise `sampled()` budget_.samples times.
  void over_family(std::size_t count, const std::function<void(std::size_t)>& exhaustive,
                   const std::function<void()>& sampled) {
    if (count <= budget_.exhaustive_limit) {
      report_.mode = "exhaustive";
      for (std::size_t i = 0; i < count; ++i) {
        if (!tick()) return;
        exhaustive(i);
      }
    } else {
      report_.mode = "sampled";
      for (std::size_t i = 0; i < budget_.samples; ++i) {
        if (!tick()) return;
        sampled();
      }
    }
  }

  std::string table(const Nucleus& j) const { return describe_table(frame_, j.table()); }

  void retraction() {
    report_.mode = "exhaustive";
    auto check = [&](std::span<const std::uint32_t> t, const std::string& origin) {
      const auto back = oracle_modality(pred_of_table(frame_, t));
      if (!std::equal(t.begin(), t.end(), back.table().begin(), back.table().end())) {
        std::string msg = origin + " " + describe_table(frame_, t) + " but oracle(pred(j)) = " + table(back);
        std::vector<Element> elems;
        for (auto i : t) elems.push_back(frame_.at(i));
        const auto laws = validate_nucleus(frame_, elems);
        for (const auto& v : laws.violations) msg += "; violates " + std::string(to_string(v.law));
        fail(std::move(msg));
      }
    };
    for (std::size_t i = 0; i < nuclei().size(); ++i) {
      if (!tick()) return;
      check(nuclei()[i].table(), "nucleus #" + std::to_string(i));
    }
    for (std::size_t i = 0; i < budget_.extra_tables.size(); ++i) {
      if (!tick()) return;
      if (budget_.extra_tables[i].size() != frame_.size()) {
        fail("supplied table #" + std::to_string(i) + " does not cover the carrier");
        continue;
      }
      check(budget_.extra_tables[i], "supplied table #" + std::to_string(i) + " j =");
    }
  }

  void forcing_iff_case(const Nucleus& j, const IndexedPropContainer& c) {
    const bool lhs = forces(j, c);
    const bool rhs = nucleus_leq(oracle_modality(c), j);
    if (lhs != rhs) {
      fail("j = " + table(j) + ", c = " + describe(c) + ": forces=" + (lhs ? "true" : "false") +
           " but oracle(c) <= j is " + (rhs ? "true" : "false"));
    }
  }

  void forcing_iff() {
    const std::size_t fam = family_size();
    const std::size_t count = fam > budget_.exhaustive_limit ? fam : fam * nuclei().size();
    over_family(
        count,
        [&](std::size_t i) {
          forcing_iff_case(nuclei()[i % nuclei().size()], family()[i / nuclei().size()]);
        },
        [&] {
          const auto& j = random_nucleus();
          forcing_iff_case(j, random_container());
        });
  }

  void oracle_leq_case(const IndexedPropContainer& c, const IndexedPropContainer& d) {
    const auto oc = oracle_modality(c);
    const auto od = oracle_modality(d);
    const bool lhs = nucleus_leq(oc, od);
    const bool rhs = std::all_of(c.queries().begin(), c.queries().end(), [&](const Query& q) {
      return frame_.leq(q.extent, od(q.pred));
    });
    if (lhs != rhs) {
      fail("c = " + describe(c) + ", d = " + describe(d) + ": oracle(c) <= oracle(d) is " +
           (lhs ? "true" : "false") + " but the query condition is " + (rhs ? "true" : "false"));
    }
  }

  std::size_t pair_count() const {
    const std::size_t fam = family_size();
    return fam > budget_.exhaustive_limit ? fam : fam * fam;
  }

  void over_pairs(const std::function<void(const IndexedPropContainer&, const IndexedPropContainer&)>& body) {
    over_family(
        pair_count(),
        [&](std::size_t i) {
          const auto& fam = family();
          body(fam[i / fam.size()], fam[i % fam.size()]);
        },
        [&] {
          auto c = random_container();
          auto d = random_container();
          body(c, d);
        });
  }

  void oracle_leq() {
    over_pairs([&](const auto& c, const auto& d) { oracle_leq_case(c, d); });
  }

  void least_above_instance_case(const IndexedPropContainer& c) {
    const auto oc = oracle_modality(c);
    const auto inst = instance_prenucleus(c);
    auto above_instance = [&](std::span<const std::uint32_t> t) {
      for (std::size_t x = 0; x < t.size(); ++x) {
        if (!frame_.leq_index(inst.table[x], t[x])) return false;
      }
      return true;
    };
    if (!above_instance(oc.table())) {
      fail("c = " + describe(c) + ": oracle(c) = " + table(oc) + " is not above the single-query map " +
           describe_table(frame_, inst.table));
      return;
    }
    for (const auto& k : nuclei()) {
      if (above_instance(k.table()) && !nucleus_leq(oc, k)) {
        fail("c = " + describe(c) + ": nucleus " + table(k) + " lies above the single-query map but not above " +
             "oracle(c) = " + table(oc));
        return;
      }
    }
  }

  void least_above_instance() {
    const std::size_t fam = family_size();
    over_family(
        fam, [&](std::size_t i) { least_above_instance_case(family()[i]); },
        [&] { least_above_instance_case(random_container()); });
  }

  void sup_case(const IndexedPropContainer& c, const IndexedPropContainer& d) {
    const std::vector<IndexedPropContainer> parts{c, d};
    const auto lhs = oracle_modality(container_sum(frame_, parts));
    const std::vector<Nucleus> js{oracle_modality(c), oracle_modality(d)};
    const auto rhs = sup_nuclei(nuclei(), js);
    if (!(lhs == rhs)) {
      fail("c = " + describe(c) + ", d = " + describe(d) + ": oracle(c + d) = " + table(lhs) +
           " but the supremum is " + table(rhs));
    }
  }

  void sup() {
    over_pairs([&](const auto& c, const auto& d) { sup_case(c, d); });
  }

  void surjection() {
    report_.mode = "sampled";
    for (std::size_t i = 0; i < budget_.samples; ++i) {
      if (!tick()) return;
      const auto c = random_container();
      std::uniform_int_distribution<std::size_t> extra(0, 2);
      std::uniform_int_distribution<std::size_t> pick(0, c.size() - 1);
      std::vector<std::size_t> q(c.size());
      for (std::size_t a = 0; a < c.size(); ++a) q[a] = a;
      for (std::size_t e = extra(rng_); e > 0; --e) q.push_back(pick(rng_));
      std::shuffle(q.begin(), q.end(), rng_);
      const auto lhs = oracle_modality(reindex_container(c, q));
      const auto rhs = oracle_modality(c);
      if (!(lhs == rhs)) {
        std::string shown;
        for (auto v : q) shown += (shown.empty() ? "" : ",") + std::to_string(v);
        fail("c = " + describe(c) + ", q = [" + shown + "]: oracle(c.q) = " + table(lhs) + " but oracle(c) = " +
             table(rhs));
      }
    }
  }

  void instance_vs_forcing_case(const IndexedPropContainer& c, const IndexedPropContainer& d) {
    const bool reducible = instance_reducible(c, d);
    const auto inst = instance_prenucleus(d);
    const bool single_forces = std::all_of(c.queries().begin(), c.queries().end(), [&](const Query& q) {
      return frame_.leq_index(q.extent.index(), inst.table[q.pred.index()]);
    });
    const std::string where = "c = " + describe(c) + ", d = " + describe(d) + ": ";
    if (reducible != single_forces) {
      fail(where + "instance reducibility disagrees with the single-query map of d forcing c");
      return;
    }
    if (reducible) {
      const auto od = oracle_modality(d);
      if (!forces(od, c)) fail(where + "reducible but oracle(d) does not force c");
      else if (!nucleus_leq(oracle_modality(c), od)) fail(where + "reducible but oracle(c) is not below oracle(d)");
    }
  }

  void instance_vs_forcing() {
    over_pairs([&](const auto& c, const auto& d) { instance_vs_forcing_case(c, d); });
  }

  Frame frame_;
  const VerifyBudget& budget_;
  std::vector<std::pair<Element, Element>> stages_;  // (extent, pred) with pred <= extent
  std::optional<std::vector<Nucleus>> nuclei_;
  std::optional<std::vector<IndexedPropContainer>> family_;
  std::mt19937_64 rng_;
  TheoremReport report_;
  Clock::time_point start_;
};

}  // namespace

std::string_view theorem_id(Theorem t) {
  for (const auto& n : kNames) {
    if (n.theorem == t) return n.id;
  }
  return "?";
}

std::optional<Theorem> parse_theorem(std::string_view id) {
  for (const auto& n : kNames) {
    if (n.id == id) return n.theorem;
  }
  // Short forms accepted on the command line.
  if (id == "forcing") return Theorem::ForcingIff;
  if (id == "least-above") return Theorem::LeastAboveInstance;
  return std::nullopt;
}

const std::vector<Theorem>& all_theorems() {
  static const std::vector<Theorem> all = [] {
    std::vector<Theorem> v;
    for (const auto& n : kNames) v.push_back(n.theorem);
    return v;
  }();
  return all;
}

std::vector<TheoremReport> verify_theorems(const Frame& frame, std::span<const Theorem> suite,
                                           const VerifyBudget& budget) {
  Runner runner(frame, budget);
  std::vector<TheoremReport> out;
  for (auto t : suite) out.push_back(runner.run(t));
  return out;
}

std::string describe(const IndexedPropContainer& c) {
  const Frame& frame = c.frame();
  std::string out = "{";
  bool first = true;
  for (const auto& q : c.queries()) {
    if (!first) out += ", ";
    first = false;
    out += q.label + ": E=" + frame.render(q.extent) + " P=" + frame.render(q.pred);
  }
  return out + "}";
}

std::string describe_table(const Frame& frame, std::span<const std::uint32_t> table) {
  std::string out = "{";
  for (std::uint32_t s = 0; s < table.size(); ++s) {
    if (s) out += ", ";
    out += frame.render(frame.at(s)) + "->" + frame.render(frame.at(table[s]));
  }
  return out + "}";
}

}  // namespace oramod
