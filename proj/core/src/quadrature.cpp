#include "wittenlab/quadrature.hpp"

#include "wittenlab/errors.hpp"

#include <boost/math/special_functions/legendre.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace wittenlab {

namespace {

// Reference rule on [-1, 1]; cached because the Newton solve for the zeros
// dominates small repeated builds.
const QuadratureRule& reference_rule(std::size_t n) {
    static std::mutex mutex;
    static std::map<std::size_t, QuadratureRule> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    const int order = static_cast<int>(n);
    // Non-negative zeros, ascending; the zero at 0 is included for odd n.
    std::vector<double> positive = boost::math::legendre_p_zeros<double>(order);
    QuadratureRule rule;
    rule.nodes.reserve(n);
    rule.weights.reserve(n);
    auto weight = [order](double x) {
        double dp = boost::math::legendre_p_prime(order, x);
        return 2.0 / ((1.0 - x * x) * dp * dp);
    };
    for (auto x = positive.rbegin(); x != positive.rend(); ++x) {
        if (*x == 0.0) continue;
        rule.nodes.push_back(-*x);
        rule.weights.push_back(weight(*x));
    }
    for (double x : positive) {
        rule.nodes.push_back(x);
        rule.weights.push_back(weight(x));
    }
    return cache.emplace(n, std::move(rule)).first->second;
}

}  // namespace

QuadratureRule gauss_legendre(std::size_t n, double a, double b) {
    if (n == 0) {
        throw InvalidArgument("Gauss-Legendre rule needs at least one node");
    }
    if (!(b > a)) {
        throw InvalidArgument("Gauss-Legendre interval must satisfy a < b");
    }
    const QuadratureRule& ref = reference_rule(n);
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        rule.nodes[i] = mid + half * ref.nodes[i];
        rule.weights[i] = half * ref.weights[i];
    }
    return rule;
}

QuadratureRule composite_gauss_legendre(const std::vector<double>& breakpoints,
                                        std::size_t per_panel) {
    if (breakpoints.size() < 2) {
        throw InvalidArgument("composite rule needs at least two breakpoints");
    }
    QuadratureRule rule;
    rule.nodes.reserve((breakpoints.size() - 1) * per_panel);
    rule.weights.reserve((breakpoints.size() - 1) * per_panel);
    for (std::size_t p = 0; p + 1 < breakpoints.size(); ++p) {
        QuadratureRule panel = gauss_legendre(per_panel, breakpoints[p], breakpoints[p + 1]);
        rule.nodes.insert(rule.nodes.end(), panel.nodes.begin(), panel.nodes.end());
        rule.weights.insert(rule.weights.end(), panel.weights.begin(), panel.weights.end());
    }
    return rule;
}

}  // namespace wittenlab
