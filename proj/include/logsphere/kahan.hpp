#pragma once

namespace logsphere {

/// Kahan (compensated) accumulator. Used wherever a deterministic,
/// order-fixed sum feeds a reproducibility contract.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double value) {
        const double y = value - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }

    double value() const { return sum; }
};

} // namespace logsphere
