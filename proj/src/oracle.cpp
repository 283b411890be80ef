#include "oramod/oracle.hpp"

#include <algorithm>

namespace oramod {

IndexedPropContainer::IndexedPropContainer(Frame frame, std::vector<Query> queries)
    : frame_(std::move(frame)), queries_(std::move(queries)) {
  for (const auto& q : queries_) {
    frame_.require(q.extent);
    frame_.require(q.pred);
  }
  std::sort(queries_.begin(), queries_.end(),
            [](const Query& a, const Query& b) { return a.label < b.label; });
  for (std::size_t i = 1; i < queries_.size(); ++i) {
    if (queries_[i - 1].label == queries_[i].label) {
      throw Error(ErrorCode::DuplicateLabel, "shape '" + queries_[i].label + "' occurs twice");
    }
  }
}

IndexedPropContainer IndexedPropContainer::global(Frame frame,
                                                  std::vector<std::pair<std::string, Element>> preds) {
  std::vector<Query> qs;
  qs.reserve(preds.size());
  for (auto& [label, p] : preds) qs.push_back({std::move(label), frame.top(), p});
  return IndexedPropContainer(std::move(frame), std::move(qs));
}

Element PrenucleusMap::operator()(Element x) const {
  frame.require(x);
  return frame.at(table[x.index()]);
}

bool PrenucleusMap::monotone() const {
  const auto n = static_cast<std::uint32_t>(table.size());
  for (std::uint32_t x = 0; x < n; ++x) {
    for (std::uint32_t y = 0; y < n; ++y) {
      if (frame.leq_index(x, y) && !frame.leq_index(table[x], table[y])) return false;
    }
  }
  return true;
}

bool validate_container(const IndexedPropContainer& c) {
  const Frame& frame = c.frame();
  return std::all_of(c.queries().begin(), c.queries().end(),
                     [&](const Query& q) { return frame.leq_index(q.pred.index(), q.extent.index()); });
}

IndexedPropContainer container_sum(const Frame& frame, std::span<const IndexedPropContainer> cs) {
  std::vector<Query> qs;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (!(cs[i].frame() == frame)) {
      throw Error(ErrorCode::FrameMismatch, "summand " + std::to_string(i) + " lives on another frame");
    }
    for (const auto& q : cs[i].queries()) {
      qs.push_back({"(" + std::to_string(i) + "," + q.label + ")", q.extent, q.pred});
    }
  }
  return IndexedPropContainer(frame, std::move(qs));
}

namespace {

std::uint32_t single_query(const Frame& frame, std::span<const Query> qs, std::uint32_t t) {
  std::uint32_t acc = 0;
  for (const auto& q : qs) {
    acc = frame.join_index(acc, frame.meet_index(q.extent.index(), frame.implies_index(q.pred.index(), t)));
  }
  return acc;
}

void require_same_frame(const Frame& frame, const IndexedPropContainer& c) {
  if (!(c.frame() == frame)) throw Error(ErrorCode::FrameMismatch, "container lives on another frame");
}

}  // namespace

PrenucleusMap instance_prenucleus(const IndexedPropContainer& c) {
  const Frame& frame = c.frame();
  PrenucleusMap out{frame, std::vector<std::uint32_t>(frame.size())};
  for (std::uint32_t t = 0; t < frame.size(); ++t) out.table[t] = single_query(frame, c.queries(), t);
  return out;
}

Nucleus oracle_modality(const IndexedPropContainer& c) {
  const Frame& frame = c.frame();
  const auto instance = instance_prenucleus(c);
  std::vector<std::uint32_t> out(frame.size());
  for (std::uint32_t s = 0; s < frame.size(); ++s) {
    // The iterates increase from s, so this stops within |carrier| rounds.
    std::uint32_t t = s;
    for (;;) {
      const std::uint32_t next = frame.join_index(s, instance.table[t]);
      if (next == t) break;
      t = next;
    }
    out[s] = t;
  }
  return trusted_nucleus(frame, std::move(out));
}

Nucleus oracle_modality_bruteforce(const IndexedPropContainer& c) {
  const Frame& frame = c.frame();
  const auto n = static_cast<std::uint32_t>(frame.size());
  std::vector<bool> prefixed(n);
  for (std::uint32_t r = 0; r < n; ++r) {
    prefixed[r] = std::all_of(c.queries().begin(), c.queries().end(), [&](const Query& q) {
      const auto answered = frame.meet_index(q.extent.index(), frame.implies_index(q.pred.index(), r));
      return frame.leq_index(answered, r);
    });
  }
  std::vector<std::uint32_t> out(n);
  for (std::uint32_t s = 0; s < n; ++s) {
    std::uint32_t acc = frame.top_index();
    for (std::uint32_t r = 0; r < n; ++r) {
      if (prefixed[r] && frame.leq_index(s, r)) acc = frame.meet_index(acc, r);
    }
    out[s] = acc;
  }
  return trusted_nucleus(frame, std::move(out));
}

bool forces(const Nucleus& j, const IndexedPropContainer& c) {
  require_same_frame(j.frame(), c);
  const Frame& frame = j.frame();
  return std::all_of(c.queries().begin(), c.queries().end(), [&](const Query& q) {
    return frame.leq_index(q.extent.index(), j.table()[q.pred.index()]);
  });
}

IndexedPropContainer pred_of_table(const Frame& frame, std::span<const std::uint32_t> table) {
  if (table.size() != frame.size()) {
    throw Error(ErrorCode::InvalidInput, "table does not cover the carrier");
  }
  std::vector<Query> qs;
  qs.reserve(table.size());
  for (std::uint32_t s = 0; s < table.size(); ++s) {
    qs.push_back({frame.render(frame.at(s)), frame.at(table[s]), frame.at(frame.meet_index(s, table[s]))});
  }
  return IndexedPropContainer(frame, std::move(qs));
}

IndexedPropContainer pred_of_nucleus(const Nucleus& j) { return pred_of_table(j.frame(), j.table()); }

bool instance_reducible(const IndexedPropContainer& c, const IndexedPropContainer& d) {
  require_same_frame(c.frame(), d);
  const Frame& frame = c.frame();
  return std::all_of(c.queries().begin(), c.queries().end(), [&](const Query& q) {
    return frame.leq_index(q.extent.index(), single_query(frame, d.queries(), q.pred.index()));
  });
}

IndexedPropContainer lem_container(const Frame& frame) {
  std::vector<std::pair<std::string, Element>> preds;
  for (const auto& p : frame.elements()) preds.emplace_back(frame.render(p), frame.join(p, frame.neg(p)));
  return IndexedPropContainer::global(frame, std::move(preds));
}

IndexedPropContainer reindex_container(const IndexedPropContainer& c, std::span<const std::size_t> q) {
  std::vector<Query> qs;
  qs.reserve(q.size());
  for (std::size_t b = 0; b < q.size(); ++b) {
    if (q[b] >= c.size()) throw Error(ErrorCode::InvalidInput, "relabelling points outside the shapes");
    const auto& src = c.queries()[q[b]];
    qs.push_back({"b" + std::to_string(b), src.extent, src.pred});
  }
  return IndexedPropContainer(c.frame(), std::move(qs));
}

}  // namespace oramod
