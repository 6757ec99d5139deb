#include "voltail/quadrature.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace voltail {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK dqk15).
const double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000,
};
const double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728,
};
const double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469,
};

struct PanelEval {
    double kronrod;
    double err;
};

PanelEval eval_panel(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fc = f(c);
    double result_g = fc * kWg[3];
    double result_k = fc * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        double x = h * kXgk[j];
        double f1 = f(c - x);
        double f2 = f(c + x);
        result_k += kWgk[j] * (f1 + f2);
        if (j % 2 == 1)
            result_g += kWg[j / 2] * (f1 + f2);
    }
    result_k *= h;
    result_g *= h;
    return {result_k, std::abs(result_k - result_g)};
}

} // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol, int max_depth) {
    QuadratureResult out;
    if (a == b) {
        out.converged = true;
        return out;
    }
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }

    struct Panel {
        double a, b;
        int depth;
    };
    std::vector<Panel> stack{{a, b, 0}};
    bool depth_exceeded = false;
    while (!stack.empty()) {
        Panel p = stack.back();
        stack.pop_back();
        PanelEval e = eval_panel(f, p.a, p.b);
        out.evaluations += 15;
        double local_tol = abs_tol * (p.b - p.a) / (b - a);
        if (e.err <= local_tol || p.depth >= max_depth) {
            out.value += e.kronrod;
            out.error_estimate += e.err;
            if (e.err > local_tol)
                depth_exceeded = true;
        } else {
            double m = 0.5 * (p.a + p.b);
            stack.push_back({p.a, m, p.depth + 1});
            stack.push_back({m, p.b, p.depth + 1});
        }
    }
    out.converged = !depth_exceeded && out.error_estimate <= 10.0 * abs_tol;
    out.value *= sign;
    return out;
}

double integrate_or_throw(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, int max_depth) {
    QuadratureResult r = integrate_adaptive(f, a, b, abs_tol, max_depth);
    if (!r.converged)
        throw QuadratureError("adaptive quadrature failed to converge (error estimate " +
                              std::to_string(r.error_estimate) + ")");
    return r.value;
}

} // namespace voltail
