#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace epfnot {

// Narrowest-Over-Threshold detection of an unknown number of change-points
// under a piecewise-constant Gaussian mean-and-variance model.
struct NotConfig {
    int n_intervals = 10000;    // M, random subintervals drawn
    int max_changepoints = 12;  // cap on the selected set
    int min_seg_len = 2;        // minimum observations per segment
    double ssic_alpha = 1.0;    // penalty exponent in (log n)^alpha
    double var_floor = 1e-8;    // floor inside log(sigma^2)
    std::uint64_t seed = 0;

    void validate() const;
};

struct Interval {
    int start = 0;  // inclusive
    int end = 0;    // inclusive

    friend bool operator==(const Interval&, const Interval&) = default;
};

struct PathEntry {
    double threshold = 0.0;   // contrast level at which `points` becomes active
    std::vector<int> points;  // cumulative candidate set, sorted ascending
};

struct ChangePointSet {
    // Selected change-points; each value is the last index of its left segment.
    std::vector<int> points;
    // Candidate sets at decreasing thresholds; sets are nested supersets.
    std::vector<PathEntry> solution_path;
    int n_obs = 0;
};

// Gaussian likelihood-ratio contrast for a simultaneous mean+variance change
// at b within [s, e]:
//   R(s,e,b) = n_se log(v_se) - n_sb log(v_sb) - n_be log(v_be),
// with maximum-likelihood segment variances floored at var_floor and the
// result clamped at zero.  Both sub-segments must hold at least min_seg_len
// observations.
double contrast(std::span<const double> series, int s, int e, int b, double var_floor,
                int min_seg_len = 2);

// M interval draws, uniform over pairs s < e with e-s+1 >= 2*min_seg_len.
std::vector<Interval> draw_intervals(int n_obs, const NotConfig& config);

ChangePointSet detect(std::span<const double> series, const NotConfig& config);

// Per-interval diagnostics (best split and its contrast), flag-gated CSV dump
// support for debugging.
struct IntervalContrast {
    Interval interval;
    int best_split = -1;       // -1 when the interval admits no split
    double max_contrast = 0.0;
};

std::vector<IntervalContrast> score_intervals(std::span<const double> series,
                                              std::span<const Interval> intervals,
                                              const NotConfig& config);

}  // namespace epfnot
