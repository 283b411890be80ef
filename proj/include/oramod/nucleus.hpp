#pragma once

// Nuclei (Lawvere-Tierney topologies) on finite frames: validation,
// enumeration, the pointwise order, suprema and the standard examples.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oramod/frame.hpp"

namespace oramod {

enum class NucleusLaw { Inflationary, Idempotent, MeetPreserving, Monotone };

std::string_view to_string(NucleusLaw law);

struct LawViolation {
  NucleusLaw law;
  std::vector<Element> witness;
};

struct NucleusReport {
  bool valid = true;
  std::vector<LawViolation> violations;
};

/// Checks every law exhaustively and records the first witness of each
/// violated law. `table[i]` is the image of the element with index i.
NucleusReport validate_nucleus(const Frame& frame, std::span<const Element> table);

class Nucleus {
 public:
  /// Validates `table` and throws InvalidNucleus if any law fails.
  static Nucleus from_table(const Frame& frame, std::span<const Element> table);

  const Frame& frame() const { return frame_; }
  Element operator()(Element x) const;
  std::span<const std::uint32_t> table() const { return table_; }
  std::vector<Element> elements() const;

  friend bool operator==(const Nucleus& a, const Nucleus& b) {
    return a.frame_ == b.frame_ && a.table_ == b.table_;
  }

 private:
  friend Nucleus trusted_nucleus(const Frame&, std::vector<std::uint32_t>);
  Nucleus(Frame frame, std::vector<std::uint32_t> table)
      : frame_(std::move(frame)), table_(std::move(table)) {}

  Frame frame_;
  std::vector<std::uint32_t> table_;
};

/// Wraps a table the caller has already proven to be a nucleus.
Nucleus trusted_nucleus(const Frame& frame, std::vector<std::uint32_t> table);

struct EnumerationLimits {
  std::size_t max_carrier = 64;
  std::size_t max_count = std::size_t{1} << 20;
};

/// Every nucleus on `frame`, each once, ordered lexicographically by table.
std::vector<Nucleus> enumerate_nuclei(const Frame& frame, EnumerationLimits limits = {});

bool nucleus_leq(const Nucleus& j, const Nucleus& k);

/// Least nucleus above every member of `js`, found by scanning the
/// enumeration. The empty supremum is the identity.
Nucleus sup_nuclei(const Frame& frame, std::span<const Nucleus> js, EnumerationLimits limits = {});
/// Same, against a precomputed enumeration of `frame`.
Nucleus sup_nuclei(std::span<const Nucleus> all_nuclei, std::span<const Nucleus> js);

enum class NucleusKind { Identity, Top, Open, Closed, DoubleNegation };

std::string_view to_string(NucleusKind kind);

/// Open and Closed need the parameter `p`; the other kinds ignore it.
Nucleus canonical_nucleus(const Frame& frame, NucleusKind kind, std::optional<Element> p = std::nullopt);

/// {s : j(s) = top}, in carrier order.
std::vector<Element> dense_elements(const Nucleus& j);

/// The frame of j-fixed points, rebuilt as a downset frame over its
/// join-irreducibles. `embedding[i]` is the fixed point in j's frame that
/// element i of the new frame stands for.
struct FixedPointFrame {
  Frame frame;
  std::vector<Element> embedding;
};

FixedPointFrame fixed_points_frame(const Nucleus& j);

}  // namespace oramod
