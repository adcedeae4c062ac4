#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "mpmdl/codec.hpp"
#include "mpmdl/evaluator.hpp"
#include "mpmdl/pareto.hpp"

namespace mpmdl {

struct ArchiveEntry {
  ObjectiveVector objectives;
  Chromosome chromosome;
  Schedule schedule;
};

struct Provenance {
  std::string algorithm;
  std::uint64_t seed = 0;
  std::uint64_t instance_hash = 0;
};

/// Mutually non-dominated entries with distinct objective vectors, kept
/// sorted by (f1, f2, f3).
class ParetoArchive {
 public:
  ParetoArchive() = default;
  explicit ParetoArchive(Provenance p) : provenance_(std::move(p)) {}

  /// Adds the entry unless an equal or dominating vector is present; evicts
  /// whatever the new entry dominates. Returns whether it was added.
  bool insert(ArchiveEntry e) {
    const auto p = e.objectives.as_point();
    for (const auto& kept : entries_) {
      const auto q = kept.objectives.as_point();
      if (points_equal(q, p) || dominates(q, p)) return false;
    }
    std::erase_if(entries_, [&](const ArchiveEntry& kept) { return dominates(p, kept.objectives.as_point()); });
    auto pos = std::lower_bound(entries_.begin(), entries_.end(), p, [](const ArchiveEntry& a, const auto& key) {
      return a.objectives.as_point() < key;
    });
    entries_.insert(pos, std::move(e));
    return true;
  }

  const std::vector<ArchiveEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  std::vector<std::array<double, 3>> points() const {
    std::vector<std::array<double, 3>> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.objectives.as_point());
    return out;
  }

  const Provenance& provenance() const noexcept { return provenance_; }
  Provenance& provenance() noexcept { return provenance_; }

 private:
  std::vector<ArchiveEntry> entries_;
  Provenance provenance_;
};

/// Builds an archive from arbitrary entries (dominated and duplicate vectors dropped).
inline ParetoArchive pareto_filter(std::vector<ArchiveEntry> entries, Provenance p = {}) {
  ParetoArchive a(std::move(p));
  for (auto& e : entries) a.insert(std::move(e));
  return a;
}

inline ParetoArchive pareto_filter(const std::vector<ObjectiveVector>& points, Provenance p = {}) {
  ParetoArchive a(std::move(p));
  for (const auto& v : points) a.insert({v, {}, {}});
  return a;
}

}  // namespace mpmdl
