#pragma once

// Shared fixtures for the test binaries: small posets and frames.

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "oramod/frame.hpp"

namespace oramod::testing {

inline std::vector<std::string> names(std::size_t n, const std::string& prefix = "p") {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

inline Poset chain(std::size_t n) {
  std::vector<LabelPair> pairs;
  auto labels = names(n);
  for (std::size_t i = 0; i + 1 < n; ++i) pairs.emplace_back(labels[i], labels[i + 1]);
  return Poset::from_relation(labels, pairs);
}

inline Poset antichain(std::size_t n) { return Poset::from_relation(names(n), {}); }

/// bottom < left, right < top
inline Poset diamond_poset() {
  std::vector<LabelPair> pairs{{"b", "l"}, {"b", "r"}, {"l", "t"}, {"r", "t"}};
  return Poset::from_relation({"b", "l", "r", "t"}, pairs);
}

/// Two-element Boolean frame {bot, top}.
inline Frame omega2() { return Frame::downsets(Poset::from_relation({"p"}, {})); }
/// Three-element chain bot < m < top, from p <= q.
inline Frame omega3() {
  std::vector<LabelPair> pairs{{"p", "q"}};
  return Frame::downsets(Poset::from_relation({"p", "q"}, pairs));
}
/// Four-element diamond {bot, a, b, top} from the antichain {p, q}; a = [p], b = [q].
inline Frame omega4() { return Frame::downsets(Poset::from_relation({"p", "q"}, {})); }

/// Every partial order on {x0, ..., x(n-1)} (labelled, not up to isomorphism).
inline std::vector<Poset> labelled_posets(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) slots.emplace_back(i, j);
    }
  }
  std::vector<Poset> out;
  const auto labels = names(n, "x");
  for (std::size_t m = 0; m < (std::size_t{1} << slots.size()); ++m) {
    auto rel = [&](std::size_t i, std::size_t j) {
      if (i == j) return true;
      auto it = std::find(slots.begin(), slots.end(), std::make_pair(i, j));
      return ((m >> (it - slots.begin())) & 1U) != 0;
    };
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      for (std::size_t j = 0; j < n && ok; ++j) {
        if (i != j && rel(i, j) && rel(j, i)) ok = false;
        for (std::size_t k = 0; k < n && ok; ++k) {
          if (rel(i, j) && rel(j, k) && !rel(i, k)) ok = false;
        }
      }
    }
    if (!ok) continue;
    std::vector<LabelPair> pairs;
    for (auto [i, j] : slots) {
      if (rel(i, j)) pairs.emplace_back(labels[i], labels[j]);
    }
    out.push_back(Poset::from_relation(labels, pairs));
  }
  return out;
}

/// One poset per isomorphism class whose downset frame has at most
/// `max_carrier` elements. Posets are grown one maximal element at a time,
/// which reaches every class because every finite poset has a linear
/// extension; duplicates are removed by a brute-force canonical form.
inline std::vector<Poset> posets_by_frame_size(std::size_t max_carrier) {
  struct Raw {
    std::size_t n;
    std::vector<std::uint64_t> down;  // strict predecessors
  };
  // Minimum adjacency key over the orderings that list elements by
  // (|down|, |up|); isomorphisms preserve that invariant, so only ties need
  // permuting.
  auto canonical = [](const Raw& r) {
    std::vector<std::pair<int, int>> inv(r.n);
    for (std::size_t i = 0; i < r.n; ++i) {
      inv[i].first = std::popcount(r.down[i]);
      for (std::size_t j = 0; j < r.n; ++j) inv[i].second += (r.down[j] >> i) & 1U;
    }
    std::vector<std::size_t> perm(r.n);
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return inv[a] < inv[b]; });
    std::vector<std::pair<std::size_t, std::size_t>> groups;  // [begin, end) of equal invariants
    for (std::size_t b = 0; b < r.n;) {
      std::size_t e = b;
      while (e < r.n && inv[perm[e]] == inv[perm[b]]) ++e;
      groups.emplace_back(b, e);
      b = e;
    }
    for (auto [b, e] : groups) std::sort(perm.begin() + b, perm.begin() + e);
    std::vector<bool> best;
    bool have = false;
    while (true) {
      std::vector<bool> key;
      for (std::size_t i = 0; i < r.n; ++i) {
        for (std::size_t j = 0; j < r.n; ++j) key.push_back((r.down[perm[j]] >> perm[i]) & 1U);
      }
      if (!have || key < best) {
        best = key;
        have = true;
      }
      // odometer over the groups
      std::size_t g = 0;
      for (; g < groups.size(); ++g) {
        auto [b, e] = groups[g];
        if (std::next_permutation(perm.begin() + b, perm.begin() + e)) break;
      }
      if (g == groups.size()) break;
    }
    return best;
  };
  auto downset_count = [](const Raw& r) {
    std::size_t count = 0;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << r.n); ++m) {
      bool closed = true;
      for (std::size_t i = 0; i < r.n && closed; ++i) {
        if (((m >> i) & 1U) && (r.down[i] & ~m)) closed = false;
      }
      count += closed;
    }
    return count;
  };

  std::vector<Raw> level{Raw{0, {}}};
  std::vector<Raw> all = level;
  while (!level.empty()) {
    std::vector<Raw> next;
    std::set<std::vector<bool>> seen;
    for (const auto& r : level) {
      // new maximal element whose strict predecessors form a downset
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << r.n); ++m) {
        bool closed = true;
        for (std::size_t i = 0; i < r.n && closed; ++i) {
          if (((m >> i) & 1U) && (r.down[i] & ~m)) closed = false;
        }
        if (!closed) continue;
        Raw grown{r.n + 1, r.down};
        grown.down.push_back(m);
        if (downset_count(grown) > max_carrier) continue;
        if (seen.insert(canonical(grown)).second) next.push_back(grown);
      }
    }
    all.insert(all.end(), next.begin(), next.end());
    level = std::move(next);
  }

  std::vector<Poset> out;
  for (const auto& r : all) {
    auto labels = names(r.n, "x");
    std::vector<LabelPair> pairs;
    for (std::size_t j = 0; j < r.n; ++j) {
      for (std::size_t i = 0; i < r.n; ++i) {
        if ((r.down[j] >> i) & 1U) pairs.emplace_back(labels[i], labels[j]);
      }
    }
    out.push_back(Poset::from_relation(labels, pairs));
  }
  return out;
}

inline std::vector<Frame> frames_up_to(std::size_t max_carrier) {
  std::vector<Frame> out;
  for (const auto& p : posets_by_frame_size(max_carrier)) out.push_back(Frame::downsets(p));
  return out;
}

}  // namespace oramod::testing
