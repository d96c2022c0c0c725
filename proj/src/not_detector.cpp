#include "epfnot/not_detector.hpp"

#include "epfnot/common.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace epfnot {

void NotConfig::validate() const {
    if (n_intervals < 1) throw_config("BadNotConfig", "n_intervals must be >= 1");
    if (max_changepoints < 0) throw_config("BadNotConfig", "max_changepoints must be >= 0");
    if (min_seg_len < 2) throw_config("BadNotConfig", "min_seg_len must be >= 2");
    if (ssic_alpha < 1.0) throw_config("BadNotConfig", "ssic_alpha must be >= 1");
    if (!(var_floor > 0.0)) throw_config("BadNotConfig", "var_floor must be positive");
}

namespace {

// Prefix sums over the (globally centered) series; centering keeps the
// sum-of-squares variance formula well conditioned.
class PrefixStats {
public:
    explicit PrefixStats(std::span<const double> series) : sum1_(series.size() + 1, 0.0),
                                                           sum2_(series.size() + 1, 0.0) {
        double mean = 0.0;
        for (double x : series) mean += x;
        mean /= static_cast<double>(series.empty() ? 1 : series.size());
        for (std::size_t i = 0; i < series.size(); ++i) {
            const double c = series[i] - mean;
            sum1_[i + 1] = sum1_[i] + c;
            sum2_[i + 1] = sum2_[i] + c * c;
        }
    }

    // MLE variance of series[s..e], inclusive.
    double seg_var(int s, int e) const {
        const double n = static_cast<double>(e - s + 1);
        const double s1 = sum1_[e + 1] - sum1_[s];
        const double s2 = sum2_[e + 1] - sum2_[s];
        const double v = (s2 - s1 * s1 / n) / n;
        return v > 0.0 ? v : 0.0;
    }

private:
    std::vector<double> sum1_, sum2_;
};

struct SplitResult {
    int split = -1;
    double value = 0.0;
};

// Best split of [s, e]: argmax_b of the floored likelihood-ratio contrast,
// smallest b on ties.
SplitResult best_split(const PrefixStats& stats, int s, int e, double var_floor,
                       int min_seg_len) {
    SplitResult best;
    const int b_lo = s + min_seg_len - 1;
    const int b_hi = e - min_seg_len;
    if (b_lo > b_hi) return best;

    const double n_se = static_cast<double>(e - s + 1);
    const double whole = n_se * std::log(std::max(stats.seg_var(s, e), var_floor));
    for (int b = b_lo; b <= b_hi; ++b) {
        const double n_sb = static_cast<double>(b - s + 1);
        const double n_be = static_cast<double>(e - b);
        double r = whole - n_sb * std::log(std::max(stats.seg_var(s, b), var_floor)) -
                   n_be * std::log(std::max(stats.seg_var(b + 1, e), var_floor));
        if (r < 0.0) r = 0.0;
        if (best.split < 0 || r > best.value) {
            best.split = b;
            best.value = r;
        }
    }
    return best;
}

struct ScoredInterval {
    int start, end, split;
    double value;
    int width() const { return end - start + 1; }
};

// One step of the threshold recursion: within [lo, hi], the activation
// threshold is the largest contrast among contained intervals, capped at the
// enclosing segment's activation level; among intervals at or above it the
// narrowest wins (smallest start on ties).
struct SegmentCandidate {
    double threshold;
    int lo, hi;
    int pick;  // index into the scored-interval list

    bool operator<(const SegmentCandidate& other) const {
        // max-heap on threshold; deterministic tie order on (lo, hi)
        if (threshold != other.threshold) return threshold < other.threshold;
        if (lo != other.lo) return lo > other.lo;
        return hi > other.hi;
    }
};

class PathBuilder {
public:
    PathBuilder(std::vector<ScoredInterval> scored, int n_obs, int min_seg_len)
        : scored_(std::move(scored)), n_obs_(n_obs), min_seg_len_(min_seg_len) {}

    // Candidate sets grow one activation at a time; generation stops once the
    // cumulative set would exceed max_points (the sSIC search never looks
    // further along the path).
    std::vector<PathEntry> build(int max_points) {
        std::priority_queue<SegmentCandidate> queue;
        enqueue_segment(queue, 0, n_obs_ - 1, std::numeric_limits<double>::infinity());

        std::vector<PathEntry> path;
        std::vector<int> active;
        while (!queue.empty() && static_cast<int>(active.size()) < max_points) {
            const SegmentCandidate top = queue.top();
            queue.pop();
            const ScoredInterval& iv = scored_[static_cast<std::size_t>(top.pick)];

            active.insert(std::upper_bound(active.begin(), active.end(), iv.split), iv.split);
            if (!path.empty() && path.back().threshold == top.threshold) {
                path.back().points = active;  // simultaneous activation, same entry
            } else {
                path.push_back(PathEntry{top.threshold, active});
            }

            enqueue_segment(queue, top.lo, iv.split, top.threshold);
            enqueue_segment(queue, iv.split + 1, top.hi, top.threshold);
        }
        return path;
    }

private:
    void enqueue_segment(std::priority_queue<SegmentCandidate>& queue, int lo, int hi,
                         double cap) {
        if (hi - lo + 1 < 2 * min_seg_len_) return;
        double max_value = 0.0;
        for (const ScoredInterval& iv : scored_) {
            if (iv.start >= lo && iv.end <= hi && iv.split >= 0 && iv.value > max_value)
                max_value = iv.value;
        }
        if (max_value <= 0.0) return;

        const double threshold = std::min(max_value, cap);
        int pick = -1;
        for (std::size_t i = 0; i < scored_.size(); ++i) {
            const ScoredInterval& iv = scored_[i];
            if (iv.start < lo || iv.end > hi || iv.split < 0 || iv.value < threshold) continue;
            if (pick < 0) {
                pick = static_cast<int>(i);
                continue;
            }
            const ScoredInterval& cur = scored_[static_cast<std::size_t>(pick)];
            if (iv.width() < cur.width() ||
                (iv.width() == cur.width() && iv.start < cur.start)) {
                pick = static_cast<int>(i);
            }
        }
        if (pick >= 0) queue.push(SegmentCandidate{threshold, lo, hi, pick});
    }

    std::vector<ScoredInterval> scored_;
    int n_obs_;
    int min_seg_len_;
};

// Strengthened Schwarz criterion for a candidate set: sum of n_j log(v_j)
// over the induced segments plus (3k+2) (log n)^alpha.
double ssic(const PrefixStats& stats, std::span<const int> points, int n_obs,
            double var_floor, double alpha) {
    double fit = 0.0;
    int start = 0;
    auto add_segment = [&](int s, int e) {
        fit += static_cast<double>(e - s + 1) *
               std::log(std::max(stats.seg_var(s, e), var_floor));
    };
    for (int cp : points) {
        add_segment(start, cp);
        start = cp + 1;
    }
    add_segment(start, n_obs - 1);

    const double k = static_cast<double>(points.size());
    return fit + (3.0 * k + 2.0) * std::pow(std::log(static_cast<double>(n_obs)), alpha);
}

}  // namespace

double contrast(std::span<const double> series, int s, int e, int b, double var_floor,
                int min_seg_len) {
    const int n = static_cast<int>(series.size());
    if (s < 0 || e >= n || s > b || b >= e) {
        throw_runtime("SegmentTooShort", "contrast indices out of range");
    }
    if (b - s + 1 < min_seg_len || e - b < min_seg_len) {
        throw_runtime("SegmentTooShort", "candidate split leaves a segment shorter than min_seg_len");
    }
    PrefixStats stats(series.subspan(static_cast<std::size_t>(s),
                                     static_cast<std::size_t>(e - s + 1)));
    const int len = e - s + 1;
    const double n_se = static_cast<double>(len);
    const double n_sb = static_cast<double>(b - s + 1);
    const double n_be = static_cast<double>(e - b);
    double r = n_se * std::log(std::max(stats.seg_var(0, len - 1), var_floor)) -
               n_sb * std::log(std::max(stats.seg_var(0, b - s), var_floor)) -
               n_be * std::log(std::max(stats.seg_var(b - s + 1, len - 1), var_floor));
    return r > 0.0 ? r : 0.0;
}

std::vector<Interval> draw_intervals(int n_obs, const NotConfig& config) {
    config.validate();
    const int min_len = 2 * config.min_seg_len;
    if (n_obs < min_len) {
        throw_data("SeriesTooShort", "need at least " + std::to_string(min_len) +
                                         " observations to draw intervals");
    }

    std::mt19937_64 rng(config.seed);
    std::vector<Interval> intervals;
    intervals.reserve(static_cast<std::size_t>(config.n_intervals));
    const auto bound = static_cast<std::uint64_t>(n_obs);
    while (intervals.size() < static_cast<std::size_t>(config.n_intervals)) {
        const int s = static_cast<int>(uniform_below(rng, bound));
        const int e = static_cast<int>(uniform_below(rng, bound));
        if (e - s + 1 >= min_len) intervals.push_back(Interval{s, e});
    }
    return intervals;
}

std::vector<IntervalContrast> score_intervals(std::span<const double> series,
                                              std::span<const Interval> intervals,
                                              const NotConfig& config) {
    PrefixStats stats(series);
    std::vector<IntervalContrast> out;
    out.reserve(intervals.size());
    for (const Interval& iv : intervals) {
        const SplitResult r =
            best_split(stats, iv.start, iv.end, config.var_floor, config.min_seg_len);
        out.push_back(IntervalContrast{iv, r.split, r.value});
    }
    return out;
}

ChangePointSet detect(std::span<const double> series, const NotConfig& config) {
    config.validate();
    const int n = static_cast<int>(series.size());
    if (n < 2 * config.min_seg_len) {
        throw_data("SeriesTooShort", "series of length " + std::to_string(n) +
                                         " cannot hold two segments of min_seg_len");
    }
    for (double x : series) {
        if (!std::isfinite(x)) throw_data("NonFiniteInput", "series contains a non-finite value");
    }

    const std::vector<Interval> intervals = draw_intervals(n, config);
    PrefixStats stats(series);

    std::vector<ScoredInterval> scored;
    scored.reserve(intervals.size());
    for (const Interval& iv : intervals) {
        const SplitResult r =
            best_split(stats, iv.start, iv.end, config.var_floor, config.min_seg_len);
        if (r.split >= 0 && r.value > 0.0)
            scored.push_back(ScoredInterval{iv.start, iv.end, r.split, r.value});
    }

    ChangePointSet result;
    result.n_obs = n;
    result.solution_path =
        PathBuilder(std::move(scored), n, config.min_seg_len).build(config.max_changepoints);

    // Select along the path by minimising the strengthened Schwarz criterion;
    // the empty set is always a candidate, ties favour fewer change-points.
    double best_crit = ssic(stats, {}, n, config.var_floor, config.ssic_alpha);
    const std::vector<int>* best_set = nullptr;
    for (const PathEntry& entry : result.solution_path) {
        if (static_cast<int>(entry.points.size()) > config.max_changepoints) break;
        const double crit = ssic(stats, entry.points, n, config.var_floor, config.ssic_alpha);
        if (crit < best_crit) {
            best_crit = crit;
            best_set = &entry.points;
        }
    }
    if (best_set != nullptr) result.points = *best_set;
    return result;
}

}  // namespace epfnot
