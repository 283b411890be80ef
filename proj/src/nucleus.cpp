#include "oramod/nucleus.hpp"

#include <algorithm>
#include <set>

namespace oramod {

std::string_view to_string(NucleusLaw law) {
  switch (law) {
    case NucleusLaw::Inflationary: return "inflationary";
    case NucleusLaw::Idempotent: return "idempotent";
    case NucleusLaw::MeetPreserving: return "meet-preserving";
    case NucleusLaw::Monotone: return "monotone";
  }
  return "?";
}

std::string_view to_string(NucleusKind kind) {
  switch (kind) {
    case NucleusKind::Identity: return "identity";
    case NucleusKind::Top: return "top";
    case NucleusKind::Open: return "open";
    case NucleusKind::Closed: return "closed";
    case NucleusKind::DoubleNegation: return "double_negation";
  }
  return "?";
}

namespace {

std::vector<std::uint32_t> indices_of(const Frame& frame, std::span<const Element> table) {
  if (table.size() != frame.size()) {
    throw Error(ErrorCode::InvalidInput, "table has " + std::to_string(table.size()) +
                                             " entries, frame has " + std::to_string(frame.size()));
  }
  std::vector<std::uint32_t> out;
  out.reserve(table.size());
  for (const auto& e : table) {
    frame.require(e);
    out.push_back(e.index());
  }
  return out;
}

NucleusReport check_laws(const Frame& frame, const std::vector<std::uint32_t>& t) {
  NucleusReport report;
  const auto n = static_cast<std::uint32_t>(frame.size());
  auto violate = [&](NucleusLaw law, std::vector<std::uint32_t> witness) {
    std::vector<Element> w;
    for (auto i : witness) w.push_back(frame.at(i));
    report.violations.push_back({law, std::move(w)});
  };

  for (std::uint32_t x = 0; x < n; ++x) {
    if (!frame.leq_index(x, t[x])) {
      violate(NucleusLaw::Inflationary, {x});
      break;
    }
  }
  for (std::uint32_t x = 0; x < n; ++x) {
    if (t[t[x]] != t[x]) {
      violate(NucleusLaw::Idempotent, {x});
      break;
    }
  }
  [&] {
    if (t[frame.top_index()] != frame.top_index()) {
      violate(NucleusLaw::MeetPreserving, {frame.top_index()});
      return;
    }
    for (std::uint32_t x = 0; x < n; ++x) {
      for (std::uint32_t y = x + 1; y < n; ++y) {
        if (t[frame.meet_index(x, y)] != frame.meet_index(t[x], t[y])) {
          violate(NucleusLaw::MeetPreserving, {x, y});
          return;
        }
      }
    }
  }();
  [&] {
    for (std::uint32_t x = 0; x < n; ++x) {
      for (std::uint32_t y = 0; y < n; ++y) {
        if (x != y && frame.leq_index(x, y) && !frame.leq_index(t[x], t[y])) {
          violate(NucleusLaw::Monotone, {x, y});
          return;
        }
      }
    }
  }();
  report.valid = report.violations.empty();
  return report;
}

// Smallest superset of `seed` containing top that is closed under binary
// meets and under x => (-) for every x. These are exactly the fixed-point
// sets of nuclei.
std::uint64_t nuclear_closure(const Frame& frame, std::uint64_t seed) {
  const auto n = static_cast<std::uint32_t>(frame.size());
  std::uint64_t s = seed | (std::uint64_t{1} << frame.top_index());
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::uint32_t y = 0; y < n; ++y) {
      if (!((s >> y) & 1U)) continue;
      for (std::uint32_t x = 0; x < n; ++x) {
        std::uint64_t add = std::uint64_t{1} << frame.implies_index(x, y);
        if ((s >> x) & 1U) add |= std::uint64_t{1} << frame.meet_index(x, y);
        if ((s | add) != s) {
          s |= add;
          changed = true;
        }
      }
    }
  }
  return s;
}

std::vector<std::uint32_t> table_from_fixed(const Frame& frame, std::uint64_t fixed) {
  const auto n = static_cast<std::uint32_t>(frame.size());
  std::vector<std::uint32_t> t(n);
  for (std::uint32_t x = 0; x < n; ++x) {
    std::uint32_t acc = frame.top_index();
    for (std::uint32_t f = 0; f < n; ++f) {
      if (((fixed >> f) & 1U) && frame.leq_index(x, f)) acc = frame.meet_index(acc, f);
    }
    t[x] = acc;
  }
  return t;
}

std::uint64_t low_bits(std::uint32_t i) {
  return i >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << i) - 1;
}

}  // namespace

NucleusReport validate_nucleus(const Frame& frame, std::span<const Element> table) {
  return check_laws(frame, indices_of(frame, table));
}

Nucleus trusted_nucleus(const Frame& frame, std::vector<std::uint32_t> table) {
  return Nucleus(frame, std::move(table));
}

Nucleus Nucleus::from_table(const Frame& frame, std::span<const Element> table) {
  auto t = indices_of(frame, table);
  auto report = check_laws(frame, t);
  if (!report.valid) {
    throw Error(ErrorCode::InvalidNucleus,
                "table violates the " + std::string(to_string(report.violations.front().law)) + " law");
  }
  return Nucleus(frame, std::move(t));
}

Element Nucleus::operator()(Element x) const {
  frame_.require(x);
  return frame_.at(table_[x.index()]);
}

std::vector<Element> Nucleus::elements() const {
  std::vector<Element> out;
  out.reserve(table_.size());
  for (auto i : table_) out.push_back(frame_.at(i));
  return out;
}

std::vector<Nucleus> enumerate_nuclei(const Frame& frame, EnumerationLimits limits) {
  const auto n = static_cast<std::uint32_t>(frame.size());
  if (n > limits.max_carrier || n > 64) {
    throw Error(ErrorCode::SizeLimitExceeded, "carrier of " + std::to_string(n) +
                                                  " elements exceeds the enumeration bound of " +
                                                  std::to_string(std::min<std::size_t>(limits.max_carrier, 64)));
  }

  // Ganter's NextClosure over the nuclear closure system, bit i = element i.
  std::vector<std::vector<std::uint32_t>> tables;
  std::uint64_t current = nuclear_closure(frame, 0);
  auto emit = [&](std::uint64_t fixed) {
    if (tables.size() >= limits.max_count) {
      throw Error(ErrorCode::SizeLimitExceeded,
                  "frame has more than " + std::to_string(limits.max_count) + " nuclei");
    }
    tables.push_back(table_from_fixed(frame, fixed));
  };
  emit(current);
  for (;;) {
    bool advanced = false;
    for (std::uint32_t i = n; i-- > 0;) {
      const std::uint64_t bit = std::uint64_t{1} << i;
      if (current & bit) continue;
      const std::uint64_t prefix = current & low_bits(i);
      const std::uint64_t next = nuclear_closure(frame, prefix | bit);
      if ((next & low_bits(i)) == prefix) {
        current = next;
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
    emit(current);
  }

  std::sort(tables.begin(), tables.end());
  std::vector<Nucleus> out;
  out.reserve(tables.size());
  for (auto& t : tables) {
    if (!check_laws(frame, t).valid) {
      throw Error(ErrorCode::InternalInvariantViolation, "enumerated table is not a nucleus");
    }
    out.push_back(trusted_nucleus(frame, std::move(t)));
  }
  return out;
}

bool nucleus_leq(const Nucleus& j, const Nucleus& k) {
  if (!(j.frame() == k.frame())) {
    throw Error(ErrorCode::FrameMismatch, "nuclei live on different frames");
  }
  const auto& frame = j.frame();
  for (std::size_t x = 0; x < j.table().size(); ++x) {
    if (!frame.leq_index(j.table()[x], k.table()[x])) return false;
  }
  return true;
}

Nucleus sup_nuclei(std::span<const Nucleus> all_nuclei, std::span<const Nucleus> js) {
  std::vector<const Nucleus*> upper;
  for (const auto& k : all_nuclei) {
    if (std::all_of(js.begin(), js.end(), [&](const Nucleus& j) { return nucleus_leq(j, k); })) {
      upper.push_back(&k);
    }
  }
  for (const auto* k : upper) {
    if (std::all_of(upper.begin(), upper.end(), [&](const Nucleus* m) { return nucleus_leq(*k, *m); })) {
      return *k;
    }
  }
  throw Error(ErrorCode::InternalInvariantViolation, "no least upper bound among enumerated nuclei");
}

Nucleus sup_nuclei(const Frame& frame, std::span<const Nucleus> js, EnumerationLimits limits) {
  for (const auto& j : js) {
    if (!(j.frame() == frame)) throw Error(ErrorCode::FrameMismatch, "nucleus from another frame");
  }
  const auto all = enumerate_nuclei(frame, limits);
  return sup_nuclei(all, js);
}

Nucleus canonical_nucleus(const Frame& frame, NucleusKind kind, std::optional<Element> p) {
  const auto n = static_cast<std::uint32_t>(frame.size());
  if ((kind == NucleusKind::Open || kind == NucleusKind::Closed)) {
    if (!p) throw Error(ErrorCode::ArityError, std::string(to_string(kind)) + " nucleus needs a parameter");
    frame.require(*p);
  }
  std::vector<std::uint32_t> t(n);
  const std::uint32_t bot = 0;
  for (std::uint32_t s = 0; s < n; ++s) {
    switch (kind) {
      case NucleusKind::Identity: t[s] = s; break;
      case NucleusKind::Top: t[s] = frame.top_index(); break;
      case NucleusKind::Open: t[s] = frame.implies_index(p->index(), s); break;
      case NucleusKind::Closed: t[s] = frame.join_index(p->index(), s); break;
      case NucleusKind::DoubleNegation:
        t[s] = frame.implies_index(frame.implies_index(s, bot), bot);
        break;
    }
  }
  return trusted_nucleus(frame, std::move(t));
}

std::vector<Element> dense_elements(const Nucleus& j) {
  std::vector<Element> out;
  const auto& frame = j.frame();
  for (std::uint32_t s = 0; s < j.table().size(); ++s) {
    if (j.table()[s] == frame.top_index()) out.push_back(frame.at(s));
  }
  return out;
}

FixedPointFrame fixed_points_frame(const Nucleus& j) {
  const Frame& frame = j.frame();
  const auto t = j.table();
  std::vector<std::uint32_t> fixed;
  for (std::uint32_t s = 0; s < t.size(); ++s) {
    if (t[s] == s) fixed.push_back(s);
  }
  const std::uint32_t fixed_bot = t[0];
  auto fixed_join = [&](std::uint32_t a, std::uint32_t b) { return t[frame.join_index(a, b)]; };

  // Join-irreducibles of the fixed-point lattice generate it (Birkhoff).
  std::vector<std::uint32_t> irreducible;
  for (auto f : fixed) {
    if (f == fixed_bot) continue;
    std::uint32_t below = fixed_bot;
    for (auto g : fixed) {
      if (g != f && frame.leq_index(g, f)) below = fixed_join(below, g);
    }
    if (below != f) irreducible.push_back(f);
  }

  std::vector<std::string> labels;
  for (auto f : irreducible) labels.push_back(frame.render(frame.at(f)));
  std::vector<LabelPair> pairs;
  for (auto a : irreducible) {
    for (auto b : irreducible) {
      if (a != b && frame.leq_index(a, b)) pairs.emplace_back(frame.render(frame.at(a)), frame.render(frame.at(b)));
    }
  }
  Poset poset = Poset::from_relation(labels, pairs);
  Frame sub = Frame::downsets(poset);

  FixedPointFrame out{sub, {}};
  std::set<std::uint32_t> hit;
  for (const auto& e : sub.elements()) {
    const auto m = sub.mask(e);
    std::uint32_t acc = fixed_bot;
    for (std::size_t i = 0; i < irreducible.size(); ++i) {
      if ((m >> i) & 1U) acc = fixed_join(acc, irreducible[i]);
    }
    out.embedding.push_back(frame.at(acc));
    hit.insert(acc);
  }
  if (hit.size() != fixed.size()) {
    throw Error(ErrorCode::InternalInvariantViolation, "fixed points are not generated by join-irreducibles");
  }
  return out;
}

}  // namespace oramod
