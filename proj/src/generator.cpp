#include "paradise/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "paradise/rng.hpp"

namespace paradise {

namespace {

constexpr double kTwoPi = 6.283185307179586;

int sgn(double x) { return (x > 0.0) - (x < 0.0); }

std::vector<double> resolve_phases(const SupportSpec& spec, std::uint64_t seed) {
    std::vector<double> phases(spec.terms.size());
    std::mt19937_64 rng(derive_seed(seed, "phases"));
    std::uniform_real_distribution<double> u(0.0, kTwoPi);
    for (std::size_t i = 0; i < spec.terms.size(); ++i) {
        const double p = spec.terms[i].phase;
        phases[i] = std::isnan(p) ? u(rng) : p;
    }
    return phases;
}

double effective_frequency(const SupportTerm& term, double freq_factor, double x) {
    const double alpha = term.frequency * freq_factor;
    if (!term.variable_frequency) return alpha;
    return alpha * (1.0 + 0.5 * std::sin(alpha * x / 50.0));
}

double eval_support_at(const SupportSpec& spec, const std::vector<double>& phases,
                       double freq_factor, const std::vector<double>& phase_offsets, double x) {
    double v = 0.0;
    for (std::size_t i = 0; i < spec.terms.size(); ++i) {
        const double alpha = effective_frequency(spec.terms[i], freq_factor, x);
        v += spec.terms[i].amplitude * std::sin(alpha * x + phases[i] + phase_offsets[i]);
    }
    return v;
}

double column_stddev(const std::vector<double>& col) {
    const double mean = std::accumulate(col.begin(), col.end(), 0.0) / static_cast<double>(col.size());
    double var = 0.0;
    for (double v : col) var += (v - mean) * (v - mean);
    return std::sqrt(var / static_cast<double>(col.size()));
}

void validate_spec(const GeneratorSpec& spec) {
    if (spec.n < 100) throw std::invalid_argument("generator: n >= 100 required");
    if (spec.subsets.empty()) throw std::invalid_argument("generator: at least one subset");
    if (spec.contamination < 0.0 || spec.contamination >= 0.5)
        throw std::invalid_argument("generator: contamination must be in [0, 0.5)");
    for (std::size_t s = 0; s < spec.subsets.size(); ++s) {
        const auto& sub = spec.subsets[s];
        if (sub.support.terms.empty())
            throw std::invalid_argument("generator: subset " + std::to_string(s + 1) +
                                        " has no support terms");
        for (const auto& term : sub.support.terms)
            if (term.amplitude == 0.0)
                throw std::invalid_argument("generator: zero amplitude in subset " +
                                            std::to_string(s + 1));
        for (const auto& trk : sub.trackers) {
            if (trk.step <= 0.0)
                throw std::invalid_argument("generator: tracking step must be positive");
            if (trk.support_index != 0)
                throw std::invalid_argument("generator: subsets have a single support variable");
            if (trk.mode == TrackingMode::Exponential && !std::isnan(trk.u0) && trk.u0 <= 0.0)
                throw std::invalid_argument("generator: exponential tracking needs u0 > 0");
        }
    }
}

} // namespace

std::string anomaly_kind_name(AnomalyKind k) {
    switch (k) {
    case AnomalyKind::Noise: return "noise";
    case AnomalyKind::Frequency: return "frequency";
    case AnomalyKind::Correlation: return "correlation";
    }
    return "?";
}

std::vector<double> gen_support(const SupportSpec& spec, std::size_t n, std::uint64_t seed) {
    if (spec.terms.empty()) throw std::invalid_argument("gen_support: no terms");
    const auto phases = resolve_phases(spec, seed);
    const std::vector<double> no_offset(spec.terms.size(), 0.0);
    std::vector<double> out(n);
    for (std::size_t x = 0; x < n; ++x)
        out[x] = eval_support_at(spec, phases, 1.0, no_offset, static_cast<double>(x));
    return out;
}

std::vector<double> gen_tracking(const TrackingSpec& spec, const std::vector<double>& support) {
    if (spec.step <= 0.0) throw std::invalid_argument("gen_tracking: step must be positive");
    const std::size_t n = support.size();
    std::vector<double> u(n);
    double u0 = spec.u0;
    if (std::isnan(u0)) u0 = spec.mode == TrackingMode::Exponential ? 1.0 : 0.0;
    if (spec.mode == TrackingMode::Exponential && u0 <= 0.0)
        throw std::invalid_argument("gen_tracking: exponential mode needs u0 > 0");
    if (n == 0) return u;
    u[0] = u0;
    for (std::size_t m = 0; m + 1 < n; ++m) {
        const int s = sgn(support[m + 1] - support[m]);
        switch (spec.mode) {
        case TrackingMode::Linear:
            u[m + 1] = u[m] + s * spec.step;
            break;
        case TrackingMode::Exponential:
            u[m + 1] = u[m] * std::pow(1.0 + spec.step, s);
            break;
        case TrackingMode::Logarithmic:
            u[m + 1] = u[m] + s * spec.step / (1.0 + static_cast<double>(m) * spec.step);
            break;
        }
    }
    return u;
}

SyntheticGenerator::SyntheticGenerator(const GeneratorSpec& spec) : spec_(spec) {
    validate_spec(spec_);
    const std::size_t n = spec_.n;
    for (std::size_t s = 0; s < spec_.subsets.size(); ++s) {
        const auto& sub = spec_.subsets[s];
        resolved_phases_.push_back(
            resolve_phases(sub.support, derive_seed(spec_.seed, "support", s)));

        const std::vector<double> no_offset(sub.support.terms.size(), 0.0);
        std::vector<double> support(n);
        for (std::size_t x = 0; x < n; ++x)
            support[x] = eval_support_at(sub.support, resolved_phases_[s], 1.0, no_offset,
                                         static_cast<double>(x));
        roles_.push_back({s, true, 0});
        names_.push_back("s" + std::to_string(s + 1) + "_sup");
        clean_columns_.push_back(support);

        for (std::size_t t = 0; t < sub.trackers.size(); ++t) {
            roles_.push_back({s, false, t});
            names_.push_back("s" + std::to_string(s + 1) + "_trk" + std::to_string(t + 1));
            clean_columns_.push_back(gen_tracking(sub.trackers[t], support));
        }
    }
}

bool SyntheticGenerator::is_support_column(std::size_t col) const {
    return roles_.at(col).is_support;
}

std::size_t SyntheticGenerator::subset_of_column(std::size_t col) const {
    return roles_.at(col).subset;
}

SyntheticDataset SyntheticGenerator::build_clean() const {
    SyntheticDataset ds;
    const std::size_t d = clean_columns_.size();
    ds.series.names = names_;
    ds.series.values = Matrix(spec_.n, d);
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t i = 0; i < spec_.n; ++i) ds.series.values(i, j) = clean_columns_[j][i];
    ds.labels.labels.assign(spec_.n, 0);
    std::size_t col = 0;
    for (const auto& sub : spec_.subsets) {
        std::vector<std::size_t> part;
        for (std::size_t j = 0; j < 1 + sub.trackers.size(); ++j) part.push_back(col++);
        ds.ground_truth.parts.push_back(std::move(part));
    }
    return ds;
}

std::vector<double> SyntheticGenerator::support_segment(std::size_t subset, double freq_factor,
                                                        std::size_t start, std::size_t end,
                                                        std::size_t /*n*/) const {
    const auto& sup = spec_.subsets[subset].support;
    const auto& phases = resolved_phases_[subset];
    // Per-term phase offsets keep each sine continuous at the interval start.
    std::vector<double> offsets(sup.terms.size());
    const double x0 = static_cast<double>(start);
    for (std::size_t i = 0; i < sup.terms.size(); ++i) {
        const double theta_orig = effective_frequency(sup.terms[i], 1.0, x0) * x0 + phases[i];
        const double theta_new = effective_frequency(sup.terms[i], freq_factor, x0) * x0 + phases[i];
        offsets[i] = theta_orig - theta_new;
    }
    std::vector<double> seg(end - start);
    for (std::size_t x = start; x < end; ++x)
        seg[x - start] = eval_support_at(sup, phases, freq_factor, offsets, static_cast<double>(x));
    return seg;
}

void SyntheticGenerator::inject_anomaly(TimeSeries& series, LabelVector& labels,
                                        const AnomalySpec& anomaly, std::uint64_t seed) const {
    const std::size_t n = spec_.n;
    if (anomaly.target >= clean_columns_.size())
        throw std::invalid_argument("inject_anomaly: target column out of range");
    if (anomaly.end <= anomaly.start || anomaly.end > n)
        throw std::invalid_argument("inject_anomaly: bad interval");
    const ColumnRole& role = roles_[anomaly.target];

    switch (anomaly.kind) {
    case AnomalyKind::Noise: {
        if (anomaly.magnitude > 0.0) {
            std::mt19937_64 rng(seed);
            std::normal_distribution<double> noise(0.0, anomaly.magnitude);
            for (std::size_t i = anomaly.start; i < anomaly.end; ++i)
                series.values(i, anomaly.target) += noise(rng);
        }
        break;
    }
    case AnomalyKind::Frequency: {
        if (!role.is_support)
            throw std::invalid_argument("frequency anomaly targets a support variable");
        const auto seg =
            support_segment(role.subset, anomaly.magnitude, anomaly.start, anomaly.end, n);
        for (std::size_t i = anomaly.start; i < anomaly.end; ++i)
            series.values(i, anomaly.target) = seg[i - anomaly.start];
        break;
    }
    case AnomalyKind::Correlation: {
        if (role.is_support)
            throw std::invalid_argument("correlation anomaly cannot target a support variable");
        const auto& trk = spec_.subsets[role.subset].trackers[role.tracker_index];
        const std::size_t support_col = [&] {
            for (std::size_t c = 0; c < roles_.size(); ++c)
                if (roles_[c].subset == role.subset && roles_[c].is_support) return c;
            throw std::logic_error("subset without support");
        }();
        const auto& f = clean_columns_[support_col];
        // Anti-tracking: rerun the recurrence from the value at `start` with
        // the sign flipped; indices in (start, end) change.
        double u = series.values(anomaly.start, anomaly.target);
        for (std::size_t m = anomaly.start; m + 1 < anomaly.end; ++m) {
            const int s = -sgn(f[m + 1] - f[m]);
            switch (trk.mode) {
            case TrackingMode::Linear:
                u += s * trk.step;
                break;
            case TrackingMode::Exponential:
                u *= std::pow(1.0 + trk.step, s);
                break;
            case TrackingMode::Logarithmic:
                u += s * trk.step / (1.0 + static_cast<double>(m) * trk.step);
                break;
            }
            series.values(m + 1, anomaly.target) = u;
        }
        break;
    }
    }
    for (std::size_t i = anomaly.start; i < anomaly.end; ++i) labels.labels[i] = 1;
}

std::vector<AnomalySpec> SyntheticGenerator::plan_anomalies() const {
    const std::size_t n = spec_.n;
    std::vector<AnomalySpec> plan;
    const auto target_points =
        static_cast<std::size_t>(std::llround(spec_.contamination * static_cast<double>(n)));
    if (spec_.contamination <= 0.0 || target_points == 0) return plan;

    const std::size_t len_min = std::max<std::size_t>(1, n / 200); // 0.5% of n
    const std::size_t len_max = std::max<std::size_t>(len_min, n / 50); // 2% of n
    if (target_points < len_min)
        throw DataError("contamination " + std::to_string(spec_.contamination) + " with n=" +
                        std::to_string(n) + " is below the shortest anomaly interval (" +
                        std::to_string(len_min) + " points); raise contamination or n");

    std::mt19937_64 rng(derive_seed(spec_.seed, "plan"));

    // Interval lengths summing exactly to the target.
    std::vector<std::size_t> lengths;
    std::size_t remaining = target_points;
    while (remaining >= len_min) {
        std::uniform_int_distribution<std::size_t> ulen(len_min, std::min(len_max, remaining));
        const std::size_t len = ulen(rng);
        lengths.push_back(len);
        remaining -= len;
    }
    if (remaining > 0) lengths.back() += remaining;

    // Non-overlapping placement.
    std::vector<std::pair<std::size_t, std::size_t>> placed;
    for (std::size_t len : lengths) {
        bool ok = false;
        for (int attempt = 0; attempt < 1000 && !ok; ++attempt) {
            std::uniform_int_distribution<std::size_t> ustart(0, n - len);
            const std::size_t start = ustart(rng);
            const std::size_t end = start + len;
            ok = std::none_of(placed.begin(), placed.end(), [&](const auto& iv) {
                return start < iv.second && iv.first < end;
            });
            if (ok) placed.emplace_back(start, end);
        }
        if (!ok)
            throw DataError("could not place anomaly intervals; contamination too dense for n=" +
                            std::to_string(n));
    }

    // Spread across subsets round-robin, in a seeded subset order.
    std::vector<std::size_t> subset_order(spec_.subsets.size());
    std::iota(subset_order.begin(), subset_order.end(), std::size_t{0});
    std::shuffle(subset_order.begin(), subset_order.end(), rng);

    constexpr AnomalyKind kKindCycle[] = {AnomalyKind::Correlation, AnomalyKind::Noise,
                                          AnomalyKind::Frequency};
    for (std::size_t i = 0; i < placed.size(); ++i) {
        const std::size_t subset = subset_order[i % subset_order.size()];
        const auto& sub = spec_.subsets[subset];
        AnomalyKind kind = kKindCycle[i % 3];
        if (kind == AnomalyKind::Correlation && sub.trackers.empty()) kind = AnomalyKind::Noise;

        std::size_t first_col = 0;
        for (std::size_t c = 0; c < roles_.size(); ++c)
            if (roles_[c].subset == subset && roles_[c].is_support) {
                first_col = c;
                break;
            }

        AnomalySpec a;
        a.kind = kind;
        a.start = placed[i].first;
        a.end = placed[i].second;
        switch (kind) {
        case AnomalyKind::Frequency:
            a.target = first_col;
            a.magnitude = spec_.frequency_factor;
            break;
        case AnomalyKind::Correlation: {
            std::uniform_int_distribution<std::size_t> upick(0, sub.trackers.size() - 1);
            a.target = first_col + 1 + upick(rng);
            a.magnitude = 1.0;
            break;
        }
        case AnomalyKind::Noise: {
            std::uniform_int_distribution<std::size_t> upick(0, sub.trackers.size());
            a.target = first_col + upick(rng);
            a.magnitude = spec_.noise_sigma_scale * column_stddev(clean_columns_[a.target]);
            break;
        }
        }
        plan.push_back(a);
    }
    return plan;
}

SyntheticDataset SyntheticGenerator::generate() const {
    SyntheticDataset ds = build_clean();
    ds.injected = plan_anomalies();
    for (std::size_t i = 0; i < ds.injected.size(); ++i)
        inject_anomaly(ds.series, ds.labels, ds.injected[i], derive_seed(spec_.seed, "inject", i));
    return ds;
}

SyntheticDataset generate(const GeneratorSpec& spec) { return SyntheticGenerator(spec).generate(); }

GeneratorSpec make_random_spec(const RandomSpecParams& params, std::uint64_t seed) {
    GeneratorSpec spec;
    spec.n = params.n;
    spec.contamination = params.contamination;
    spec.seed = seed;
    spec.noise_sigma_scale = params.noise_sigma_scale;
    spec.frequency_factor = params.frequency_factor;

    std::mt19937_64 rng(derive_seed(seed, "random-spec"));
    std::uniform_real_distribution<double> uperiod(40.0, 200.0);
    std::uniform_real_distribution<double> uamp(0.8, 1.2);
    std::uniform_real_distribution<double> usmall(0.1, 0.25);
    std::uniform_real_distribution<double> uharm(2.0, 5.0);
    std::uniform_real_distribution<double> uprob(0.0, 1.0);

    for (std::size_t s = 0; s < params.num_subsets; ++s) {
        SubsetSpec sub;
        const double period = uperiod(rng);
        const double alpha = kTwoPi / period;
        const double beta = uamp(rng);
        sub.support.terms.push_back({beta, alpha, std::numeric_limits<double>::quiet_NaN(), false});
        std::uniform_int_distribution<std::size_t> uterms(0, 2);
        const std::size_t extras = uterms(rng);
        for (std::size_t t = 0; t < extras; ++t) {
            SupportTerm term;
            term.amplitude = usmall(rng);
            term.frequency = alpha * uharm(rng);
            term.variable_frequency = uprob(rng) < 0.15;
            sub.support.terms.push_back(term);
        }

        std::uniform_int_distribution<std::size_t> utrk(params.min_trackers, params.max_trackers);
        const std::size_t trackers = std::max<std::size_t>(1, utrk(rng));
        const double linear_step = 2.0 * beta * alpha / 3.141592653589793;
        for (std::size_t t = 0; t < trackers; ++t) {
            TrackingSpec trk;
            if (t == 0) {
                trk.mode = TrackingMode::Linear;
                trk.step = linear_step;
            } else {
                const double pick = uprob(rng);
                if (pick < 0.4) {
                    trk.mode = TrackingMode::Linear;
                    trk.step = linear_step * std::uniform_real_distribution<double>(0.5, 1.5)(rng);
                } else if (pick < 0.7) {
                    trk.mode = TrackingMode::Exponential;
                    trk.step = std::exp(std::log(3.0) * alpha / 3.141592653589793) - 1.0;
                    trk.u0 = 1.0;
                } else {
                    trk.mode = TrackingMode::Logarithmic;
                    trk.step = linear_step;
                }
            }
            sub.trackers.push_back(trk);
        }
        spec.subsets.push_back(std::move(sub));
    }
    return spec;
}

} // namespace paradise
