#include "oramod/sheaf.hpp"

#include <algorithm>

#include "oramod/error.hpp"

namespace oramod {

std::string_view to_string(SheafKind k) {
  return k == SheafKind::AllTypes ? "all_types" : "singletons_only";
}

std::string_view to_string(SheafCondition c) {
  switch (c) {
    case SheafCondition::StructureMapExists: return "i";
    case SheafCondition::FirstEquality: return "ii";
    case SheafCondition::SecondEquality: return "iii";
  }
  return "?";
}

std::uint32_t StructureMap::apply(std::size_t a, std::optional<std::uint32_t> h) const {
  if (a >= pred.size()) throw Error(ErrorCode::InvalidInput, "structure map applied to an unknown shape");
  if (pred[a] != h.has_value()) throw Error(ErrorCode::InvalidInput, "argument does not match the predicate");
  return table[a][h.value_or(0)];
}

SheafClassification sheaf_classify(const std::vector<bool>& p, std::size_t xsize) {
  SheafClassification out;
  const bool all = std::all_of(p.begin(), p.end(), [](bool b) { return b; });
  out.kind = all ? SheafKind::AllTypes : SheafKind::SingletonsOnly;
  if (!all && xsize == 0) {
    // an unanswered shape needs d(a, empty) in X
    out.violated = SheafCondition::StructureMapExists;
    return out;
  }
  if (!all && xsize > 1) {
    // p(a) false makes "p(a) -> x = y" vacuous
    out.violated = SheafCondition::SecondEquality;
    return out;
  }
  StructureMap d{p, xsize, {}};
  for (bool answered : p) {
    std::vector<std::uint32_t> row;
    if (answered) {
      for (std::uint32_t x = 0; x < xsize; ++x) row.push_back(x);
    } else {
      row.push_back(0);
    }
    d.table.push_back(std::move(row));
  }
  out.is_sheaf = true;
  out.structure = std::move(d);
  return out;
}

bool is_homomorphism(std::span<const std::uint32_t> f, const StructureMap& dx, const StructureMap& dy) {
  if (dx.pred != dy.pred || f.size() != dx.xsize) {
    throw Error(ErrorCode::InvalidInput, "homomorphism check between mismatched structure maps");
  }
  for (std::size_t a = 0; a < dx.pred.size(); ++a) {
    if (dx.pred[a]) {
      for (std::uint32_t x = 0; x < dx.xsize; ++x) {
        if (f[dx.apply(a, x)] != dy.apply(a, f[x])) return false;
      }
    } else if (f[dx.apply(a, std::nullopt)] != dy.apply(a, std::nullopt)) {
      return false;
    }
  }
  return true;
}

StructureMap product_structure(const StructureMap& dx, const StructureMap& dy) {
  if (dx.pred != dy.pred) throw Error(ErrorCode::InvalidInput, "product of structure maps over different predicates");
  const auto ny = static_cast<std::uint32_t>(dy.xsize);
  StructureMap d{dx.pred, dx.xsize * dy.xsize, {}};
  for (std::size_t a = 0; a < dx.pred.size(); ++a) {
    std::vector<std::uint32_t> row;
    if (dx.pred[a]) {
      for (std::uint32_t z = 0; z < d.xsize; ++z) row.push_back(dx.apply(a, z / ny) * ny + dy.apply(a, z % ny));
    } else {
      row.push_back(dx.apply(a, std::nullopt) * ny + dy.apply(a, std::nullopt));
    }
    d.table.push_back(std::move(row));
  }
  return d;
}

}  // namespace oramod
