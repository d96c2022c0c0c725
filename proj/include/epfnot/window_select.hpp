#pragma once

#include "epfnot/not_detector.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace epfnot {

struct DayInterval {
    int first = 0;  // inclusive, window-local offset
    int last = 0;   // inclusive

    int length() const { return last - first + 1; }
    friend bool operator==(const DayInterval&, const DayInterval&) = default;
};

// Day offsets within the initial window retained for model estimation.  The
// final segment (most recent change-point to the window end) is always kept.
struct CalibrationMask {
    std::vector<DayInterval> intervals;  // sorted, disjoint
    int n_selected = 0;
    int window_length = 0;
    double q_low = 0.0;
    double q_high = 0.0;
    std::vector<double> segment_medians;  // m_i of the pre-reference segments
    bool ref_quantiles_degenerate = false;

    static CalibrationMask full(int window_length);

    bool contains(int day_offset) const;
    std::vector<std::uint8_t> to_flags() const;     // window_length entries of 0/1
    std::vector<int> selected_offsets() const;      // ascending
};

struct SelectionConfig {
    double q_low_order = 0.025;
    double q_high_order = 0.975;
};

// Type-7 empirical quantile (linear interpolation of order statistics).
double empirical_quantile(std::span<const double> values, double order);

// Quantile-gated selection: segments between consecutive change-points are
// kept iff their median lies strictly inside the (q_low, q_high) band of the
// reference segment (most recent change-point to the window end).  With no
// change-points the whole window is returned.
CalibrationMask select_calibration(std::span<const double> series, const ChangePointSet& cps,
                                   const SelectionConfig& config = {});

struct MaskRecord {
    std::string target_date;  // ISO-8601
    int hour = 1;
    CalibrationMask mask;
};

// Long-format export: target_date,hour,window_day_offset,selected
void write_mask_report(std::ostream& out, std::span<const MaskRecord> records);

}  // namespace epfnot
