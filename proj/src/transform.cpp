#include "epfnot/transform.hpp"

#include "epfnot/common.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace epfnot {

double median(std::span<const double> values) {
    if (values.empty()) throw_data("EmptySample", "median of empty sample");
    std::vector<double> v(values.begin(), values.end());
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + mid, v.end());
    double hi = v[mid];
    if (v.size() % 2 == 1) return hi;
    double lo = *std::max_element(v.begin(), v.begin() + mid);
    return 0.5 * (lo + hi);
}

TransformParams fit_transform(TransformKind kind, std::span<const double> values,
                              const TransformOptions& opts) {
    if (values.empty()) throw_data("EmptySample", "cannot fit transform on empty sample");

    TransformParams p;
    p.kind = kind;
    switch (kind) {
        case TransformKind::Identity:
            return p;  // a=0, b=1
        case TransformKind::Asinh: {
            p.location = median(values);
            std::vector<double> dev(values.size());
            for (std::size_t i = 0; i < values.size(); ++i)
                dev[i] = std::abs(values[i] - p.location);
            p.scale = median(dev) * opts.mad_factor;
            break;
        }
        case TransformKind::ZScore: {
            const double n = static_cast<double>(values.size());
            const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
            p.location = mean;
            double ss = 0.0;
            for (double x : values) ss += (x - mean) * (x - mean);
            p.scale = values.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
            break;
        }
    }
    if (!(p.scale > opts.scale_floor)) {
        p.scale = opts.scale_floor;
        p.degenerate_scale = true;
    }
    return p;
}

double apply_transform(const TransformParams& params, double x) {
    const double z = (x - params.location) / params.scale;
    switch (params.kind) {
        case TransformKind::Asinh: return std::asinh(z);
        case TransformKind::ZScore: return z;
        case TransformKind::Identity: return x;
    }
    return x;
}

double invert_transform(const TransformParams& params, double y) {
    switch (params.kind) {
        case TransformKind::Asinh: return params.scale * std::sinh(y) + params.location;
        case TransformKind::ZScore: return params.scale * y + params.location;
        case TransformKind::Identity: return y;
    }
    return y;
}

std::vector<double> apply_transform(const TransformParams& params, std::span<const double> xs) {
    std::vector<double> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = apply_transform(params, xs[i]);
    return out;
}

const char* transform_kind_name(TransformKind kind) {
    switch (kind) {
        case TransformKind::Asinh: return "asinh";
        case TransformKind::ZScore: return "zscore";
        case TransformKind::Identity: return "identity";
    }
    return "?";
}

}  // namespace epfnot
