#pragma once

#include <span>
#include <vector>

namespace epfnot {

enum class TransformKind { Asinh, ZScore, Identity };

// Variance-stabilizing price transform fitted per calibration sample.
// Asinh:  y = asinh((x - a) / b),  a = median, b = median absolute deviation.
// ZScore: y = (x - a) / b,         a = mean,   b = sample standard deviation.
struct TransformParams {
    TransformKind kind = TransformKind::Identity;
    double location = 0.0;  // a
    double scale = 1.0;     // b, always > 0 after the floor
    bool degenerate_scale = false;
};

struct TransformOptions {
    // Consistency factor applied to the MAD (1.4826 makes it estimate the
    // normal standard deviation; the default leaves it unscaled).
    double mad_factor = 1.0;
    double scale_floor = 1e-8;
};

double median(std::span<const double> values);

TransformParams fit_transform(TransformKind kind, std::span<const double> values,
                              const TransformOptions& opts = {});

double apply_transform(const TransformParams& params, double x);
double invert_transform(const TransformParams& params, double y);

std::vector<double> apply_transform(const TransformParams& params, std::span<const double> xs);

const char* transform_kind_name(TransformKind kind);

}  // namespace epfnot
