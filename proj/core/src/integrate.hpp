#pragma once

#include <cmath>
#include <string>

#include "alkspec/errors.hpp"

namespace alkspec::detail {

/// Fixed-step classic RK4 over [0, tau] in `steps` steps.
template <class State, class Rhs>
State rk4(const State& y0, double tau, int steps, const Rhs& rhs) {
    State y = y0;
    const double h = tau / steps;
    for (int i = 0; i < steps; ++i) {
        const State k1 = rhs(y);
        const State k2 = rhs(State(y + (0.5 * h) * k1));
        const State k3 = rhs(State(y + (0.5 * h) * k2));
        const State k4 = rhs(State(y + h * k3));
        y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return y;
}

/// Repeats `step_fn(steps)` with doubled step counts until two consecutive
/// results differ by less than tol in every entry; returns the finer one.
template <class StepFn>
auto converge_by_halving(int steps, double tol, int max_refinements, const StepFn& step_fn) {
    auto coarse = step_fn(steps);
    for (int k = 0; k < max_refinements; ++k) {
        steps *= 2;
        auto fine = step_fn(steps);
        const double change = (fine - coarse).cwiseAbs().maxCoeff();
        if (change < tol) return fine;
        coarse = std::move(fine);
    }
    throw SolverError("integrator did not converge after " + std::to_string(max_refinements) +
                      " step halvings (tolerance " + std::to_string(tol) + ")");
}

}  // namespace alkspec::detail
