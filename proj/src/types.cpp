#include "paradise/types.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>

namespace paradise {

std::size_t LabelVector::positives() const {
    std::size_t c = 0;
    for (int v : labels) c += (v != 0);
    return c;
}

double LabelVector::contamination() const {
    if (labels.empty()) return 0.0;
    return static_cast<double>(positives()) / static_cast<double>(labels.size());
}

Partition Partition::canonical() const {
    Partition out = *this;
    for (auto& part : out.parts) std::sort(part.begin(), part.end());
    std::sort(out.parts.begin(), out.parts.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return out;
}

Partition single_part_partition(std::size_t d) {
    Partition p;
    p.parts.emplace_back();
    p.parts.back().reserve(d);
    for (std::size_t j = 0; j < d; ++j) p.parts.back().push_back(j);
    return p;
}

Partition partition_from_assignment(const std::vector<int>& assignment) {
    Partition p;
    int max_label = -1;
    for (int a : assignment) max_label = std::max(max_label, a);
    p.parts.resize(static_cast<std::size_t>(max_label + 1));
    for (std::size_t i = 0; i < assignment.size(); ++i) {
        if (assignment[i] < 0) {
            p.parts.push_back({i}); // noise becomes a singleton part
        } else {
            p.parts[static_cast<std::size_t>(assignment[i])].push_back(i);
        }
    }
    p.parts.erase(std::remove_if(p.parts.begin(), p.parts.end(),
                                 [](const auto& part) { return part.empty(); }),
                  p.parts.end());
    return p.canonical();
}

std::vector<Violation> validate(const TimeSeries& series) {
    std::vector<Violation> out;
    const std::size_t n = series.n();
    const std::size_t d = series.d();
    if (n < 2) out.push_back({"need at least 2 observations, got " + std::to_string(n), -1, -1});
    if (d < 1) out.push_back({"need at least 1 variable, got " + std::to_string(d), -1, -1});
    if (series.names.size() != d) {
        out.push_back({"expected " + std::to_string(d) + " names, got " +
                           std::to_string(series.names.size()),
                       -1, -1});
    } else {
        std::unordered_set<std::string> seen;
        for (std::size_t j = 0; j < d; ++j) {
            if (!seen.insert(series.names[j]).second)
                out.push_back({"duplicate variable name '" + series.names[j] + "'", -1,
                               static_cast<long>(j)});
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            if (!std::isfinite(series.values(i, j))) {
                out.push_back({"non-finite value at row " + std::to_string(i) + ", column " +
                                   std::to_string(j),
                               static_cast<long>(i), static_cast<long>(j)});
            }
        }
    }
    return out;
}

bool is_valid_partition(const Partition& partition, std::size_t d) {
    if (partition.parts.empty()) return false;
    std::vector<char> seen(d, 0);
    std::size_t total = 0;
    for (const auto& part : partition.parts) {
        if (part.empty()) return false;
        for (std::size_t j : part) {
            if (j >= d || seen[j]) return false;
            seen[j] = 1;
            ++total;
        }
    }
    return total == d;
}

void apply_nan_policy(TimeSeries& series, NanPolicy policy) {
    const std::size_t n = series.n();
    const std::size_t d = series.d();
    for (std::size_t j = 0; j < d; ++j) {
        bool has_gap = false;
        for (std::size_t i = 0; i < n && !has_gap; ++i)
            has_gap = !std::isfinite(series.values(i, j));
        if (!has_gap) continue;
        if (policy == NanPolicy::Reject)
            throw DataError("non-finite value in column '" + series.names[j] +
                            "' (use interpolation to fill gaps)");

        std::vector<std::size_t> finite_idx;
        for (std::size_t i = 0; i < n; ++i)
            if (std::isfinite(series.values(i, j))) finite_idx.push_back(i);
        if (finite_idx.empty())
            throw DataError("column '" + series.names[j] + "' has no finite values");

        for (std::size_t i = 0; i < n; ++i) {
            if (std::isfinite(series.values(i, j))) continue;
            auto next = std::lower_bound(finite_idx.begin(), finite_idx.end(), i);
            if (next == finite_idx.begin()) {
                series.values(i, j) = series.values(finite_idx.front(), j); // leading edge
            } else if (next == finite_idx.end()) {
                series.values(i, j) = series.values(finite_idx.back(), j); // trailing edge
            } else {
                const std::size_t hi = *next;
                const std::size_t lo = *(next - 1);
                const double t = static_cast<double>(i - lo) / static_cast<double>(hi - lo);
                series.values(i, j) =
                    series.values(lo, j) + t * (series.values(hi, j) - series.values(lo, j));
            }
        }
    }
}

} // namespace paradise
