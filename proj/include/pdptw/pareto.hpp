#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "pdptw/schedule.hpp"

namespace pdptw {

/// Minimization dominance: a is no worse in both objectives and strictly better in one.
inline bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
    return a.f1 <= b.f1 && a.f2 <= b.f2 && (a.f1 < b.f1 || a.f2 < b.f2);
}

/// Points not dominated by any other point, duplicates collapsed to their first occurrence.
/// Output keeps input order.
inline std::vector<ObjectiveVector> extract_front(const std::vector<ObjectiveVector>& points) {
    std::vector<ObjectiveVector> out;
    for (std::size_t i = 0; i < points.size(); ++i) {
        bool keep = true;
        for (std::size_t j = 0; j < points.size() && keep; ++j) {
            if (dominates(points[j], points[i])) keep = false;
            else if (j < i && points[j] == points[i]) keep = false;
        }
        if (keep) out.push_back(points[i]);
    }
    return out;
}

struct ArchiveEntry {
    ObjectiveVector obj;
    Solution solution;
};

/// Mutually non-dominated set of solutions. Single-owner; callers serialize insertion.
class ParetoArchive {
public:
    static constexpr std::size_t kDefaultCapacity = 256;

    explicit ParetoArchive(std::optional<std::size_t> capacity = kDefaultCapacity) : capacity_(capacity) {}

    /// Returns true when the candidate was accepted.
    bool insert(ObjectiveVector obj, Solution sol) {
        for (const auto& e : entries_) {
            if (e.obj == obj || dominates(e.obj, obj)) return false;
        }
        std::erase_if(entries_, [&](const ArchiveEntry& e) { return dominates(obj, e.obj); });
        entries_.push_back({obj, std::move(sol)});
        if (capacity_ && entries_.size() > *capacity_) evict_most_crowded();
        return true;
    }

    const std::vector<ArchiveEntry>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    std::optional<std::size_t> capacity() const noexcept { return capacity_; }

    std::vector<ObjectiveVector> objectives() const {
        std::vector<ObjectiveVector> out;
        out.reserve(entries_.size());
        for (const auto& e : entries_) out.push_back(e.obj);
        return out;
    }

    /// Index of the entry with minimum aggregate fitness; first wins on ties.
    std::optional<std::size_t> best_index(const Weights& w) const {
        std::optional<std::size_t> best;
        double best_f = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            const double f = aggregate_fitness(entries_[i].obj, w);
            if (!best || f < best_f) {
                best = i;
                best_f = f;
            }
        }
        return best;
    }

    /// Entries ordered by f1 ascending (f2 descending along a front).
    std::vector<ArchiveEntry> sorted() const {
        auto out = entries_;
        std::sort(out.begin(), out.end(), [](const ArchiveEntry& a, const ArchiveEntry& b) { return a.obj < b.obj; });
        return out;
    }

private:
    // Crowding distance over the two objectives; the two extreme points are never evicted.
    void evict_most_crowded() {
        const std::size_t n = entries_.size();
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return entries_[a].obj < entries_[b].obj; });

        const double inf = std::numeric_limits<double>::infinity();
        std::vector<double> crowd(n, 0.0);
        crowd[order.front()] = inf;
        crowd[order.back()] = inf;
        const double span1 = entries_[order.back()].obj.f1 - entries_[order.front()].obj.f1;
        const double span2 = entries_[order.front()].obj.f2 - entries_[order.back()].obj.f2;
        for (std::size_t r = 1; r + 1 < n; ++r) {
            const auto& lo = entries_[order[r - 1]].obj;
            const auto& hi = entries_[order[r + 1]].obj;
            double d = 0.0;
            if (span1 > 0) d += (hi.f1 - lo.f1) / span1;
            if (span2 > 0) d += (lo.f2 - hi.f2) / span2;
            crowd[order[r]] = d;
        }
        std::size_t victim = order[1];
        for (std::size_t r = 1; r + 1 < n; ++r) {
            if (crowd[order[r]] < crowd[victim]) victim = order[r];
        }
        entries_.erase(entries_.begin() + static_cast<std::ptrdiff_t>(victim));
    }

    std::optional<std::size_t> capacity_;
    std::vector<ArchiveEntry> entries_;
};

} // namespace pdptw
