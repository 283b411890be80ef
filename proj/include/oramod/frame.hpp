#pragma once

// Finite frames presented as the lattice of downward-closed subsets of a
// finite poset. Subsets are bit masks over the poset's elements, so posets
// are limited to 64 elements.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "oramod/error.hpp"

namespace oramod {

using LabelPair = std::pair<std::string, std::string>;

class Poset {
 public:
  static constexpr std::size_t kMaxElements = 64;

  Poset() = default;

  /// Reflexive-transitive closure of `pairs` over `labels`. A cycle between
  /// distinct labels is rejected rather than collapsed.
  static Poset from_relation(std::vector<std::string> labels,
                             std::span<const LabelPair> pairs);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  std::optional<std::size_t> index_of(std::string_view label) const;

  bool le(std::size_t i, std::size_t j) const { return (down_.at(j) >> i) & 1U; }
  /// Mask of every element below (or equal to) `i`.
  std::uint64_t down_mask(std::size_t i) const { return down_.at(i); }

  /// All pairs (x, y) with x < y, in label-index order.
  std::vector<LabelPair> strict_pairs() const;

 private:
  std::vector<std::string> labels_;
  std::vector<std::uint64_t> down_;
};

/// Handle to a member of a specific frame. Two elements compare equal only if
/// they come from the same frame instance.
class Element {
 public:
  Element() = default;

  std::uint32_t index() const { return index_; }
  std::uint64_t frame_id() const { return frame_id_; }

  friend bool operator==(const Element&, const Element&) = default;
  friend auto operator<=>(const Element&, const Element&) = default;

 private:
  friend class Frame;
  Element(std::uint64_t frame_id, std::uint32_t index) : frame_id_(frame_id), index_(index) {}

  std::uint64_t frame_id_ = 0;
  std::uint32_t index_ = 0;
};

enum class HeytingOp { Meet, Join, Implies, Neg };

struct FrameLimits {
  std::size_t max_carrier = std::size_t{1} << 16;
  /// Operation tables are materialised up to this carrier size; larger
  /// frames compute operations from the bit masks on demand.
  std::size_t max_tabulated = 1024;
};

class Frame {
 public:
  /// Downset lattice of `poset`, carrier sorted by (size, rendered labels).
  /// Index 0 is always bottom and the last index is top.
  static Frame downsets(const Poset& poset, FrameLimits limits = {});

  std::uint64_t id() const;
  std::size_t size() const;
  const Poset& poset() const;

  Element bot() const;
  Element top() const;
  Element at(std::size_t index) const;
  std::vector<Element> elements() const;
  bool contains(Element e) const { return e.frame_id() == id(); }

  bool leq(Element a, Element b) const;
  Element meet(Element a, Element b) const;
  Element join(Element a, Element b) const;
  Element implies(Element a, Element b) const;
  Element neg(Element a) const;
  /// n-ary dispatch. Meet and join of an empty list are top and bottom.
  Element heyting(HeytingOp op, std::span<const Element> args) const;

  std::uint64_t mask(Element e) const;
  std::optional<Element> from_mask(std::uint64_t mask) const;
  /// Element whose downset consists of exactly `labels`; throws if a label is
  /// unknown or the set is not downward closed.
  Element from_labels(std::span<const std::string> labels) const;
  /// Sorted labels of the downset.
  std::vector<std::string> labels_of(Element e) const;
  /// Compact rendering such as "[p,q]"; used for shape labels derived from
  /// elements.
  std::string render(Element e) const;

  /// Throws FrameMismatch unless `e` belongs to this frame.
  void require(Element e) const;

  friend bool operator==(const Frame& a, const Frame& b) { return a.id() == b.id(); }

  // Unchecked index-level operations for fixed-point loops.
  bool leq_index(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t meet_index(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t join_index(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t implies_index(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t top_index() const { return static_cast<std::uint32_t>(size() - 1); }

 private:
  struct Impl;
  explicit Frame(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

std::string_view to_string(HeytingOp op);

}  // namespace oramod
