#include "triscale/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "triscale/error.hpp"

namespace triscale {

QuadratureRule gauss_legendre_unit(std::size_t points) {
    if (points == 0) throw InputError("quadrature needs at least one node");
    const std::size_t n = points;
    QuadratureRule rule{std::vector<double>(n), std::vector<double>(n)};
    const double nd = static_cast<double>(n);

    for (std::size_t k = 0; k < (n + 1) / 2; ++k) {
        double x = std::cos(std::numbers::pi * (static_cast<double>(k) + 0.75) / (nd + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // Three-term recurrence for P_n(x) and its derivative.
            double p0 = 1.0;
            double p1 = x;
            for (std::size_t j = 2; j <= n; ++j) {
                const double jd = static_cast<double>(j);
                const double p2 = ((2.0 * jd - 1.0) * x * p1 - (jd - 1.0) * p0) / jd;
                p0 = p1;
                p1 = p2;
            }
            const double pn = n == 1 ? x : p1;
            const double pnm1 = n == 1 ? 1.0 : p0;
            dp = nd * (x * pn - pnm1) / (x * x - 1.0);
            const double step = pn / dp;
            x -= step;
            if (std::abs(step) <= 1e-16 * std::abs(x) + 1e-300) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        // x is the k-th largest root; mirror it for the symmetric partner.
        rule.nodes[k] = 0.5 * (1.0 - x);
        rule.nodes[n - 1 - k] = 0.5 * (1.0 + x);
        rule.weights[k] = 0.5 * w;
        rule.weights[n - 1 - k] = 0.5 * w;
    }
    return rule;
}

}  // namespace triscale
