#include "paradise/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "paradise/parallel.hpp"
#include "paradise/rng.hpp"

namespace paradise {

namespace {

void require_pair(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw std::invalid_argument("correlation: length mismatch (" + std::to_string(x.size()) +
                                    " vs " + std::to_string(y.size()) + ")");
    if (x.size() < 2) throw std::invalid_argument("correlation: need at least 2 observations");
}

/// Counts inversions of v (strict: v[i] > v[j] for i < j) by merge sort.
long long count_inversions(std::vector<double>& v, std::vector<double>& scratch) {
    const std::size_t n = v.size();
    long long inversions = 0;
    for (std::size_t width = 1; width < n; width *= 2) {
        for (std::size_t lo = 0; lo + width < n; lo += 2 * width) {
            const std::size_t mid = lo + width;
            const std::size_t hi = std::min(lo + 2 * width, n);
            std::size_t a = lo, b = mid, out = lo;
            while (a < mid && b < hi) {
                if (v[b] < v[a]) {
                    inversions += static_cast<long long>(mid - a);
                    scratch[out++] = v[b++];
                } else {
                    scratch[out++] = v[a++];
                }
            }
            while (a < mid) scratch[out++] = v[a++];
            while (b < hi) scratch[out++] = v[b++];
            std::copy(scratch.begin() + static_cast<long>(lo), scratch.begin() + static_cast<long>(hi),
                      v.begin() + static_cast<long>(lo));
        }
    }
    return inversions;
}

/// Sum of t*(t-1)/2 over runs of equal consecutive keys.
template <typename It, typename Eq>
long long tie_pair_count(It begin, It end, Eq eq) {
    long long total = 0;
    for (It run = begin; run != end;) {
        It next = run + 1;
        while (next != end && eq(*run, *next)) ++next;
        const long long t = next - run;
        total += t * (t - 1) / 2;
        run = next;
    }
    return total;
}

std::vector<std::size_t> strided_subsample(std::size_t n, std::size_t cap) {
    std::vector<std::size_t> idx;
    if (cap == 0 || n <= cap) {
        idx.resize(n);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        return idx;
    }
    const std::size_t stride = (n + cap - 1) / cap;
    for (std::size_t i = 0; i < n; i += stride) idx.push_back(i);
    return idx;
}

double column_variance(std::span<const double> x) {
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
    double acc = 0.0;
    for (double v : x) acc += (v - mean) * (v - mean);
    return acc;
}

} // namespace

std::string coefficient_name(Coefficient c) {
    switch (c) {
    case Coefficient::Pearson: return "pearson";
    case Coefficient::Spearman: return "spearman";
    case Coefficient::Kendall: return "kendall";
    case Coefficient::DistanceCorrelation: return "dcor";
    case Coefficient::Xi: return "xi";
    case Coefficient::Self: return "self";
    case Coefficient::None: return "none";
    }
    return "none";
}

double pearson(std::span<const double> x, std::span<const double> y) {
    require_pair(x, y);
    const std::size_t n = x.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx <= 0.0 || syy <= 0.0) return 0.0;
    const double r = sxy / std::sqrt(sxx * syy);
    return std::clamp(r, -1.0, 1.0);
}

std::vector<double> average_ranks(std::span<const double> x) {
    const std::size_t n = x.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i + 1;
        while (j < n && x[order[j]] == x[order[i]]) ++j;
        const double mean_rank = (static_cast<double>(i) + static_cast<double>(j - 1)) / 2.0 + 1.0;
        for (std::size_t k = i; k < j; ++k) ranks[order[k]] = mean_rank;
        i = j;
    }
    return ranks;
}

double spearman(std::span<const double> x, std::span<const double> y) {
    require_pair(x, y);
    const auto rx = average_ranks(x);
    const auto ry = average_ranks(y);
    return pearson(rx, ry);
}

double kendall(std::span<const double> x, std::span<const double> y) {
    require_pair(x, y);
    const std::size_t n = x.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (x[a] != x[b]) return x[a] < x[b];
        return y[a] < y[b];
    });

    std::vector<std::pair<double, double>> sorted(n);
    for (std::size_t i = 0; i < n; ++i) sorted[i] = {x[order[i]], y[order[i]]};

    const long long n0 = static_cast<long long>(n) * static_cast<long long>(n - 1) / 2;
    const long long n1 = tie_pair_count(sorted.begin(), sorted.end(),
                                        [](const auto& a, const auto& b) { return a.first == b.first; });
    const long long n3 = tie_pair_count(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        return a.first == b.first && a.second == b.second;
    });

    std::vector<double> ys(n);
    for (std::size_t i = 0; i < n; ++i) ys[i] = sorted[i].second;
    std::vector<double> scratch(n);
    const long long swaps = count_inversions(ys, scratch); // ys is sorted afterwards
    const long long n2 = tie_pair_count(ys.begin(), ys.end(),
                                        [](double a, double b) { return a == b; });

    const double num = static_cast<double>(n0 - n1 - n2 + n3) - 2.0 * static_cast<double>(swaps);
    const double den1 = static_cast<double>(n0 - n1);
    const double den2 = static_cast<double>(n0 - n2);
    if (den1 <= 0.0 || den2 <= 0.0) return 0.0;
    return std::clamp(num / std::sqrt(den1 * den2), -1.0, 1.0);
}

double distance_correlation(std::span<const double> x, std::span<const double> y) {
    require_pair(x, y);
    const std::size_t n = x.size();
    const double dn = static_cast<double>(n);

    std::vector<double> arow(n, 0.0), brow(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double sa = 0.0, sb = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            sa += std::abs(x[i] - x[k]);
            sb += std::abs(y[i] - y[k]);
        }
        arow[i] = sa / dn;
        brow[i] = sb / dn;
    }
    const double agrand = std::accumulate(arow.begin(), arow.end(), 0.0) / dn;
    const double bgrand = std::accumulate(brow.begin(), brow.end(), 0.0) / dn;

    double dcov2 = 0.0, dvarx = 0.0, dvary = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const double A = std::abs(x[i] - x[k]) - arow[i] - arow[k] + agrand;
            const double B = std::abs(y[i] - y[k]) - brow[i] - brow[k] + bgrand;
            dcov2 += A * B;
            dvarx += A * A;
            dvary += B * B;
        }
    }
    dcov2 /= dn * dn;
    dvarx /= dn * dn;
    dvary /= dn * dn;
    if (dvarx <= 0.0 || dvary <= 0.0) return 0.0;
    const double r2 = std::max(0.0, dcov2) / std::sqrt(dvarx * dvary);
    return std::clamp(std::sqrt(r2), 0.0, 1.0);
}

double xi_coefficient(std::span<const double> x, std::span<const double> y, std::uint64_t rng_seed) {
    require_pair(x, y);
    const std::size_t n = x.size();

    // Sort by x with ties broken uniformly at random: shuffle, stable sort.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(rng_seed);
    std::shuffle(order.begin(), order.end(), rng);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });

    // r[i] = #{j : y_j <= y_i}, l[i] = #{j : y_j >= y_i}, over all j.
    std::vector<double> ysorted(y.begin(), y.end());
    std::sort(ysorted.begin(), ysorted.end());
    std::vector<double> r(n), l(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto lo = std::lower_bound(ysorted.begin(), ysorted.end(), y[i]);
        const auto hi = std::upper_bound(ysorted.begin(), ysorted.end(), y[i]);
        r[i] = static_cast<double>(hi - ysorted.begin());
        l[i] = static_cast<double>(ysorted.end() - lo);
    }

    double num = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i)
        num += std::abs(r[order[i + 1]] - r[order[i]]);
    num *= static_cast<double>(n);

    double den = 0.0;
    for (std::size_t i = 0; i < n; ++i) den += l[i] * (static_cast<double>(n) - l[i]);
    den *= 2.0;

    if (den <= 0.0) return 0.0; // y constant
    return 1.0 - num / den;
}

CorrelationMatrix combined_matrix(const TimeSeries& series, const CorrelationConfig& config) {
    const auto violations = validate(series);
    if (!violations.empty()) throw DataError("combined_matrix: invalid series: " + violations.front().message);

    const std::size_t d = series.d();
    const std::size_t n = series.n();
    CorrelationMatrix out;
    out.values = Matrix(d, d, 0.0);
    out.method_argmax.assign(d, std::vector<Coefficient>(d, Coefficient::None));
    for (std::size_t j = 0; j < d; ++j) {
        out.values(j, j) = 1.0;
        out.method_argmax[j][j] = Coefficient::Self;
    }
    if (d == 1) return out;

    std::vector<std::vector<double>> cols(d);
    std::vector<char> degenerate(d, 0);
    for (std::size_t j = 0; j < d; ++j) {
        cols[j] = series.values.column(j);
        degenerate[j] = column_variance(cols[j]) <= 0.0;
    }

    const auto sub_idx = strided_subsample(n, config.heavy_subsample_cap);
    std::vector<std::vector<double>> sub_cols(d);
    for (std::size_t j = 0; j < d; ++j) {
        sub_cols[j].reserve(sub_idx.size());
        for (std::size_t i : sub_idx) sub_cols[j].push_back(cols[j][i]);
    }

    struct PairResult {
        double v12 = 0.0, v21 = 0.0;
        Coefficient m12 = Coefficient::None, m21 = Coefficient::None;
    };
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(d * (d - 1) / 2);
    for (std::size_t j1 = 0; j1 < d; ++j1)
        for (std::size_t j2 = j1 + 1; j2 < d; ++j2) pairs.emplace_back(j1, j2);
    std::vector<PairResult> results(pairs.size());

    parallel_for(pairs.size(), config.threads, [&](std::size_t pi) {
        const auto [j1, j2] = pairs[pi];
        PairResult& res = results[pi];
        if (degenerate[j1] || degenerate[j2]) return; // zero-variance rule: stays 0/None

        const auto& a = cols[j1];
        const auto& b = cols[j2];
        struct Entry {
            double value;
            Coefficient tag;
        };
        const Entry shared[] = {
            {std::abs(pearson(a, b)), Coefficient::Pearson},
            {std::abs(spearman(a, b)), Coefficient::Spearman},
            {std::abs(kendall(a, b)), Coefficient::Kendall},
            {distance_correlation(sub_cols[j1], sub_cols[j2]), Coefficient::DistanceCorrelation},
        };
        const double xi12 = std::abs(xi_coefficient(sub_cols[j1], sub_cols[j2],
                                                    derive_seed(config.seed, "xi", pi * 2)));
        const double xi21 = std::abs(xi_coefficient(sub_cols[j2], sub_cols[j1],
                                                    derive_seed(config.seed, "xi", pi * 2 + 1)));

        res.v12 = xi12;
        res.m12 = Coefficient::Xi;
        res.v21 = xi21;
        res.m21 = Coefficient::Xi;
        for (const Entry& e : shared) {
            if (e.value > res.v12) {
                res.v12 = e.value;
                res.m12 = e.tag;
            }
            if (e.value > res.v21) {
                res.v21 = e.value;
                res.m21 = e.tag;
            }
        }
    });

    for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
        const auto [j1, j2] = pairs[pi];
        const PairResult& res = results[pi];
        // Symmetrize by cellwise max with the transpose (xi is asymmetric).
        double v = res.v12;
        Coefficient m = res.m12;
        if (res.v21 > v) {
            v = res.v21;
            m = res.m21;
        }
        v = std::clamp(v, 0.0, 1.0);
        out.values(j1, j2) = v;
        out.values(j2, j1) = v;
        out.method_argmax[j1][j2] = m;
        out.method_argmax[j2][j1] = m;
    }
    return out;
}

} // namespace paradise
