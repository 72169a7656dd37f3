// SPDX-License-Identifier: Apache-2.0
#include "quad.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace risfso::detail {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

namespace {

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk_panel(const std::function<double(double)>& f, double a, double b)
{
    double err = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 0, 0.0, &err);
    return Panel{a, b, v, err};
}

// Globally adaptive bisection: always split the panel with the largest error
// estimate until the summed estimate meets the relative tolerance.
double adaptive(const std::function<double(double)>& f, const std::vector<double>& breaks, double rel_tol)
{
    std::priority_queue<Panel> q;
    double total = 0.0;
    double error = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (breaks[i + 1] > breaks[i]) {
            const Panel p = gk_panel(f, breaks[i], breaks[i + 1]);
            total += p.value;
            error += p.error;
            q.push(p);
        }
    }
    for (int it = 0; it < 4000; ++it) {
        if (error <= rel_tol * std::fabs(total) || error < 1e-300) {
            break;
        }
        const Panel p = q.top();
        q.pop();
        const double mid = 0.5 * (p.a + p.b);
        if (!(mid > p.a && mid < p.b)) {
            q.push(p);
            break;
        }
        const Panel l = gk_panel(f, p.a, mid);
        const Panel r = gk_panel(f, mid, p.b);
        total += l.value + r.value - p.value;
        error += l.error + r.error - p.error;
        q.push(l);
        q.push(r);
    }
    // Re-sum to drop accumulated cancellation in the running totals.
    double sum = 0.0;
    while (!q.empty()) {
        sum += q.top().value;
        q.pop();
    }
    return sum;
}

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol)
{
    if (!(b > a)) {
        return 0.0;
    }
    return adaptive(f, {a, b}, rel_tol);
}

double log_integrate(const std::function<double(double)>& logf, double a, double b, double rel_tol)
{
    if (!(b > a)) {
        return kNegInf;
    }
    // Locate the peak on a coarse grid, then refine by golden section.
    constexpr int n = 256;
    std::vector<double> xs(n + 1);
    double best = kNegInf;
    int ib = 0;
    for (int i = 0; i <= n; ++i) {
        xs[i] = a + (b - a) * i / n;
        const double v = logf(xs[i]);
        if (v > best) {
            best = v;
            ib = i;
        }
    }
    if (best == kNegInf) {
        return kNegInf;
    }
    double lo = xs[std::max(0, ib - 1)];
    double hi = xs[std::min(n, ib + 1)];
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - g * (hi - lo);
    double x2 = lo + g * (hi - lo);
    double f1 = logf(x1);
    double f2 = logf(x2);
    for (int it = 0; it < 60; ++it) {
        if (f1 > f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = logf(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = logf(x2);
        }
    }
    const double xp = (f1 > f2) ? x1 : x2;
    const double peak = std::max({best, f1, f2});
    auto f = [&](double x) {
        const double v = logf(x) - peak;
        return v < -745.0 ? 0.0 : std::exp(v);
    };
    const double total = adaptive(f, {a, xp, b}, rel_tol);
    if (!(total > 0.0)) {
        return kNegInf;
    }
    return peak + std::log(total);
}

double log_add(double a, double b)
{
    if (a < b) {
        std::swap(a, b);
    }
    if (b == kNegInf) {
        return a;
    }
    return a + std::log1p(std::exp(b - a));
}

double log_sub(double a, double b)
{
    if (b == kNegInf) {
        return a;
    }
    if (!(a > b)) {
        return kNegInf;
    }
    return a + std::log1p(-std::exp(b - a));
}

} // namespace risfso::detail
