#pragma once

#include <vector>

#include "sop/types.hpp"

namespace sop::detail {

// Natural cubic spline on uniformly spaced nodes; evaluates to zero outside
// the node range (symbols are Schwartz-profile and decayed there).
class CubicSpline {
public:
    CubicSpline(double x0, double dx, const ComplexVector& y) : x0_(x0), dx_(dx), y_(y) {
        const long n = y.size();
        m_ = ComplexVector::Zero(n);
        if (n < 3) return;
        // Second derivatives from the tridiagonal system [1, 4, 1] with
        // natural end conditions; Thomas algorithm on indices 1..n-2.
        std::vector<double> cp(n, 0.0);
        std::vector<cxd> dp(n, cxd(0));
        auto rhs = [&](long i) { return 6.0 * (y[i + 1] - 2.0 * y[i] + y[i - 1]) / (dx * dx); };
        cp[1] = 0.25;
        dp[1] = rhs(1) / 4.0;
        for (long i = 2; i + 1 < n; ++i) {
            double denom = 4.0 - cp[i - 1];
            cp[i] = 1.0 / denom;
            dp[i] = (rhs(i) - dp[i - 1]) / denom;
        }
        for (long i = n - 2; i >= 1; --i) m_[i] = dp[i] - cp[i] * m_[i + 1];
    }

    cxd operator()(double x) const {
        const long n = y_.size();
        double u = (x - x0_) / dx_;
        if (u < 0.0 || u > double(n - 1)) return cxd(0);
        long i = std::min<long>(static_cast<long>(u), n - 2);
        double t = u - double(i);
        double a = 1.0 - t, b = t;
        return a * y_[i] + b * y_[i + 1] +
               ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * (dx_ * dx_) / 6.0;
    }

private:
    double x0_, dx_;
    ComplexVector y_;
    ComplexVector m_;
};

}  // namespace sop::detail
