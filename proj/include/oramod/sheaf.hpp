#pragma once

// Sheaves for the oracle modality of a Boolean predicate p on finitely many
// shapes, with a finite carrier X = {0, ..., xsize-1}.
//
// A structure map d takes a shape a and h : p(a) -> X. When p(a) holds, h is
// determined by h(*); otherwise h is the empty function.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace oramod {

struct StructureMap {
  std::vector<bool> pred;
  std::size_t xsize = 0;
  /// table[a][x] = d(a, * -> x) when pred[a]; table[a][0] = d(a, empty) otherwise.
  std::vector<std::vector<std::uint32_t>> table;

  /// `h` is h(*) for answered shapes and nullopt for unanswered ones.
  std::uint32_t apply(std::size_t a, std::optional<std::uint32_t> h) const;
  friend bool operator==(const StructureMap&, const StructureMap&) = default;
};

enum class SheafKind { AllTypes, SingletonsOnly };

/// (i) some structure map exists, (ii) d a h = h u, (iii) p(a) -> x = y gives x = y.
enum class SheafCondition { StructureMapExists = 1, FirstEquality = 2, SecondEquality = 3 };

std::string_view to_string(SheafKind k);
std::string_view to_string(SheafCondition c);

struct SheafClassification {
  SheafKind kind = SheafKind::AllTypes;
  bool is_sheaf = false;
  std::optional<StructureMap> structure;
  std::optional<SheafCondition> violated;
};

SheafClassification sheaf_classify(const std::vector<bool>& p, std::size_t xsize);

/// f : X -> Y commutes with the structure maps.
bool is_homomorphism(std::span<const std::uint32_t> f, const StructureMap& dx, const StructureMap& dy);

/// Structure map on X x Y, pairs encoded as x * |Y| + y.
StructureMap product_structure(const StructureMap& dx, const StructureMap& dy);

}  // namespace oramod
