#pragma once

#include <cmath>
#include <cstddef>

namespace hawkes {

namespace detail {

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1].
inline constexpr double kKronrodNodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0,
};
inline constexpr double kKronrodWeights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728,
};
// Weights of the embedded 7-point Gauss rule (nodes 1, 3, 5, 7 above).
inline constexpr double kGaussWeights[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469,
};

template <typename F>
void gk15(F&& f, double a, double b, double& kronrod, double& gauss) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double k = 0.0, g = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double dx = half * kKronrodNodes[i];
        const double fsum = (i == 7) ? f(mid) : f(mid - dx) + f(mid + dx);
        k += kKronrodWeights[i] * fsum;
        if (i % 2 == 1) g += kGaussWeights[i / 2] * fsum;  // embedded Gauss nodes
    }
    kronrod = k * half;
    gauss = g * half;
}

}  // namespace detail

// Adaptive Gauss-Kronrod integration with bisection. The error estimate per
// panel is |K15 - G7|; panels split until the estimate meets their share of
// the tolerance or the depth cap is reached.
template <typename F>
double integrate_adaptive(F&& f, double a, double b, double abs_tol) {
    if (!(b > a)) return 0.0;
    struct Panel {
        double a, b, tol;
        int depth;
    };
    Panel stack[64];
    int top = 0;
    stack[top++] = {a, b, abs_tol, 0};
    double total = 0.0;
    while (top > 0) {
        const Panel p = stack[--top];
        double k = 0.0, g = 0.0;
        detail::gk15(f, p.a, p.b, k, g);
        const double err = std::abs(k - g);
        if (err <= p.tol || p.depth >= 48 || (p.b - p.a) < 1e-14 * (b - a)) {
            total += k;
            continue;
        }
        const double mid = 0.5 * (p.a + p.b);
        stack[top++] = {p.a, mid, 0.5 * p.tol, p.depth + 1};
        stack[top++] = {mid, p.b, 0.5 * p.tol, p.depth + 1};
    }
    return total;
}

}  // namespace hawkes
