#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace fracline {

/// Fractional order alpha in (0, 1].  alpha = 1 is allowed; the operators
/// degenerate to their classical counterparts there.
class FractionalOrder {
public:
    explicit FractionalOrder(double alpha) : alpha_(alpha) {
        if (!(alpha > 0.0) || !(alpha <= 1.0))
            throw std::domain_error("FractionalOrder: alpha must be in (0, 1]");
    }
    double value() const { return alpha_; }
    bool is_classical() const { return alpha_ == 1.0; }

private:
    double alpha_;
};

/// Samples of a function on a uniform grid starting at x = 0.
/// support_end, when set, is the index past which the values are
/// identically zero.
struct GridFunction {
    double h = 1.0;
    std::vector<double> values;
    std::optional<std::size_t> support_end;

    GridFunction() = default;
    GridFunction(double spacing, std::vector<double> vals,
                 std::optional<std::size_t> support = std::nullopt)
        : h(spacing), values(std::move(vals)), support_end(support) {
        if (!(h > 0.0)) throw std::invalid_argument("GridFunction: h must be positive");
        if (values.empty()) throw std::invalid_argument("GridFunction: empty samples");
        if (support_end && *support_end >= values.size())
            throw std::invalid_argument("GridFunction: support_end out of range");
    }

    std::size_t size() const { return values.size(); }
    double x(std::size_t i) const { return static_cast<double>(i) * h; }
    double back_x() const { return x(values.size() - 1); }

    /// Last index with |value| > 0, or 0 if identically zero.
    std::size_t detect_support() const {
        std::size_t past = 0;
        for (std::size_t i = 0; i < values.size(); ++i)
            if (values[i] != 0.0) past = i + 1;
        return past;
    }
};

}  // namespace fracline
