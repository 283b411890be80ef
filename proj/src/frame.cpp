#include "oramod/frame.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <unordered_map>
#include <unordered_set>

namespace oramod {

std::string_view to_string(HeytingOp op) {
  switch (op) {
    case HeytingOp::Meet: return "meet";
    case HeytingOp::Join: return "join";
    case HeytingOp::Implies: return "implies";
    case HeytingOp::Neg: return "neg";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Poset

Poset Poset::from_relation(std::vector<std::string> labels, std::span<const LabelPair> pairs) {
  if (labels.size() > kMaxElements) {
    throw Error(ErrorCode::SizeLimitExceeded,
                "poset has " + std::to_string(labels.size()) + " elements, limit is 64");
  }
  Poset p;
  p.labels_ = std::move(labels);
  const std::size_t n = p.labels_.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (p.labels_[i] == p.labels_[j]) {
        throw Error(ErrorCode::DuplicateLabel, "label '" + p.labels_[i] + "' occurs twice");
      }
    }
  }

  // le[i][j] as bit i of down_[j]
  p.down_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) p.down_[i] = std::uint64_t{1} << i;
  for (const auto& [lo, hi] : pairs) {
    auto i = p.index_of(lo);
    auto j = p.index_of(hi);
    if (!i) throw Error(ErrorCode::UnknownLabel, "'" + lo + "' is not an element");
    if (!j) throw Error(ErrorCode::UnknownLabel, "'" + hi + "' is not an element");
    p.down_[*j] |= std::uint64_t{1} << *i;
  }

  // Warshall: if k <= j then everything below k is below j.
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      if ((p.down_[j] >> k) & 1U) p.down_[j] |= p.down_[k];
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (p.le(i, j) && p.le(j, i)) {
        throw Error(ErrorCode::AntisymmetryViolation,
                    "'" + p.labels_[i] + "' and '" + p.labels_[j] + "' lie on a cycle");
      }
    }
  }
  return p;
}

std::optional<std::size_t> Poset::index_of(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

std::vector<LabelPair> Poset::strict_pairs() const {
  std::vector<LabelPair> out;
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = 0; j < size(); ++j) {
      if (i != j && le(i, j)) out.emplace_back(labels_[i], labels_[j]);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Frame

struct Frame::Impl {
  std::uint64_t id = 0;
  Poset poset;
  std::vector<std::uint64_t> masks;
  std::unordered_map<std::uint64_t, std::uint32_t> index_of_mask;
  bool tabulated = false;
  std::vector<std::uint32_t> meet, join, implies;

  std::uint64_t implies_mask(std::uint64_t b, std::uint64_t c) const {
    // b => c is the set of x whose whole downset avoids b \ c.
    std::uint64_t out = 0;
    const std::uint64_t bad = b & ~c;
    for (std::size_t x = 0; x < poset.size(); ++x) {
      if ((poset.down_mask(x) & bad) == 0) out |= std::uint64_t{1} << x;
    }
    return out;
  }
};

namespace {

std::atomic<std::uint64_t> next_frame_id{1};

std::vector<std::string> sorted_labels(const Poset& poset, std::uint64_t mask) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < poset.size(); ++i) {
    if ((mask >> i) & 1U) out.push_back(poset.label(i));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Frame Frame::downsets(const Poset& poset, FrameLimits limits) {
  auto impl = std::make_shared<Impl>();
  impl->id = next_frame_id.fetch_add(1);
  impl->poset = poset;
  const std::size_t n = poset.size();

  // An element can be added to a downset once all of its strict
  // predecessors are present.
  std::unordered_set<std::uint64_t> seen{0};
  std::vector<std::uint64_t> stack{0};
  while (!stack.empty()) {
    const std::uint64_t cur = stack.back();
    stack.pop_back();
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t bit = std::uint64_t{1} << i;
      if (cur & bit) continue;
      if ((poset.down_mask(i) & ~bit & ~cur) != 0) continue;
      const std::uint64_t next = cur | bit;
      if (seen.insert(next).second) {
        if (seen.size() > limits.max_carrier) {
          throw Error(ErrorCode::SizeLimitExceeded,
                      "downset frame exceeds " + std::to_string(limits.max_carrier) + " elements");
        }
        stack.push_back(next);
      }
    }
  }

  std::vector<std::pair<std::vector<std::string>, std::uint64_t>> keyed;
  keyed.reserve(seen.size());
  for (std::uint64_t m : seen) keyed.emplace_back(sorted_labels(poset, m), m);
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    return a.first < b.first;
  });
  impl->masks.reserve(keyed.size());
  for (std::uint32_t i = 0; i < keyed.size(); ++i) {
    impl->masks.push_back(keyed[i].second);
    impl->index_of_mask.emplace(keyed[i].second, i);
  }

  const std::size_t size = impl->masks.size();
  if (size <= limits.max_tabulated) {
    impl->tabulated = true;
    impl->meet.resize(size * size);
    impl->join.resize(size * size);
    impl->implies.resize(size * size);
    for (std::size_t a = 0; a < size; ++a) {
      for (std::size_t b = 0; b < size; ++b) {
        const auto ma = impl->masks[a];
        const auto mb = impl->masks[b];
        impl->meet[a * size + b] = impl->index_of_mask.at(ma & mb);
        impl->join[a * size + b] = impl->index_of_mask.at(ma | mb);
        impl->implies[a * size + b] = impl->index_of_mask.at(impl->implies_mask(ma, mb));
      }
    }
  }
  return Frame(std::move(impl));
}

std::uint64_t Frame::id() const { return impl_->id; }
std::size_t Frame::size() const { return impl_->masks.size(); }
const Poset& Frame::poset() const { return impl_->poset; }

Element Frame::bot() const { return Element(id(), 0); }
Element Frame::top() const { return Element(id(), top_index()); }

Element Frame::at(std::size_t index) const {
  if (index >= size()) {
    throw Error(ErrorCode::InvalidInput, "element index " + std::to_string(index) + " out of range");
  }
  return Element(id(), static_cast<std::uint32_t>(index));
}

std::vector<Element> Frame::elements() const {
  std::vector<Element> out;
  out.reserve(size());
  for (std::uint32_t i = 0; i < size(); ++i) out.push_back(Element(id(), i));
  return out;
}

void Frame::require(Element e) const {
  if (!contains(e)) {
    throw Error(ErrorCode::FrameMismatch, "element belongs to frame #" + std::to_string(e.frame_id()) +
                                              ", expected frame #" + std::to_string(id()));
  }
}

bool Frame::leq_index(std::uint32_t a, std::uint32_t b) const {
  return (impl_->masks[a] & ~impl_->masks[b]) == 0;
}

std::uint32_t Frame::meet_index(std::uint32_t a, std::uint32_t b) const {
  if (impl_->tabulated) return impl_->meet[a * size() + b];
  return impl_->index_of_mask.at(impl_->masks[a] & impl_->masks[b]);
}

std::uint32_t Frame::join_index(std::uint32_t a, std::uint32_t b) const {
  if (impl_->tabulated) return impl_->join[a * size() + b];
  return impl_->index_of_mask.at(impl_->masks[a] | impl_->masks[b]);
}

std::uint32_t Frame::implies_index(std::uint32_t a, std::uint32_t b) const {
  if (impl_->tabulated) return impl_->implies[a * size() + b];
  return impl_->index_of_mask.at(impl_->implies_mask(impl_->masks[a], impl_->masks[b]));
}

bool Frame::leq(Element a, Element b) const {
  require(a);
  require(b);
  return leq_index(a.index(), b.index());
}

Element Frame::meet(Element a, Element b) const {
  require(a);
  require(b);
  return Element(id(), meet_index(a.index(), b.index()));
}

Element Frame::join(Element a, Element b) const {
  require(a);
  require(b);
  return Element(id(), join_index(a.index(), b.index()));
}

Element Frame::implies(Element a, Element b) const {
  require(a);
  require(b);
  return Element(id(), implies_index(a.index(), b.index()));
}

Element Frame::neg(Element a) const { return implies(a, bot()); }

Element Frame::heyting(HeytingOp op, std::span<const Element> args) const {
  for (const auto& e : args) require(e);
  switch (op) {
    case HeytingOp::Meet: {
      Element acc = top();
      for (const auto& e : args) acc = meet(acc, e);
      return acc;
    }
    case HeytingOp::Join: {
      Element acc = bot();
      for (const auto& e : args) acc = join(acc, e);
      return acc;
    }
    case HeytingOp::Implies:
      if (args.size() != 2) {
        throw Error(ErrorCode::ArityError, "implies takes 2 arguments, got " + std::to_string(args.size()));
      }
      return implies(args[0], args[1]);
    case HeytingOp::Neg:
      if (args.size() != 1) {
        throw Error(ErrorCode::ArityError, "neg takes 1 argument, got " + std::to_string(args.size()));
      }
      return neg(args[0]);
  }
  throw Error(ErrorCode::InternalInvariantViolation, "unhandled Heyting operation");
}

std::uint64_t Frame::mask(Element e) const {
  require(e);
  return impl_->masks[e.index()];
}

std::optional<Element> Frame::from_mask(std::uint64_t mask) const {
  auto it = impl_->index_of_mask.find(mask);
  if (it == impl_->index_of_mask.end()) return std::nullopt;
  return Element(id(), it->second);
}

Element Frame::from_labels(std::span<const std::string> labels) const {
  std::uint64_t m = 0;
  for (const auto& l : labels) {
    auto i = impl_->poset.index_of(l);
    if (!i) throw Error(ErrorCode::UnknownLabel, "'" + l + "' is not a poset element");
    m |= std::uint64_t{1} << *i;
  }
  auto e = from_mask(m);
  if (!e) {
    std::string shown;
    for (const auto& l : labels) shown += (shown.empty() ? "" : ",") + l;
    throw Error(ErrorCode::NotDownset, "{" + shown + "} is not downward closed");
  }
  return *e;
}

std::vector<std::string> Frame::labels_of(Element e) const { return sorted_labels(poset(), mask(e)); }

std::string Frame::render(Element e) const {
  std::string out = "[";
  bool first = true;
  for (const auto& l : labels_of(e)) {
    if (!first) out += ',';
    out += l;
    first = false;
  }
  return out + "]";
}

}  // namespace oramod
