#pragma once

#include "cadlag/step_path.hpp"

namespace cadlag {

// t -> sum over jumps s <= t of X of H(s-) ⊙ dX(s), coordinatewise.
// Exact: step integrators make the left-limit Stieltjes integral a finite sum.
StepPath ito_integral(const StepPath& H, const StepPath& X);

// t -> sum over jumps s of g with a < s <= min(t, b) of f(s-) ⊙ dg(s).
// The restricted integral used by the window machinery; only left limits of f
// on [a, b) are ever read.
StepPath window_integral(const StepPath& f, const StepPath& g, double a, double b);

// sum over s <= t of dH(s) ⊙ dX(s).
Vec jump_product_sum(const StepPath& H, const StepPath& X, double t);
// The same sum as a path in t.
StepPath jump_product_path(const StepPath& H, const StepPath& X);

// One summand of a jump correction: weight xi in [0,1]^d applied to the
// product of the jumps of integrand and integrator at time sigma.
struct CorrectionEntry {
    double sigma;
    Vec xi;
    Vec dH;
    Vec dX;
};

struct CorrectionTerm {
    std::vector<CorrectionEntry> entries;
};

// Checks entry ordering, weight range and nonzero jumps against a path of the
// given dimension and horizon; throws std::invalid_argument on violation.
void validate(const CorrectionTerm& c, std::size_t dimension, double horizon);

// base + sum over entries of xi ⊙ dH ⊙ dX · 1_{[sigma, T]}.
StepPath apply_correction(const StepPath& base, const CorrectionTerm& c);

// |∫H_- dX (T) + ∫X_- dH (T) + Σ dH dX − (H_T X_T − H_0 X_0)| for scalar
// paths; an exact-arithmetic identity usable as an oracle.
double integration_by_parts_residual(const StepPath& H, const StepPath& X);

struct SemimartingaleDecomposition {
    StepPath M; // controlled-jump part
    StepPath A; // finite-variation part
    StepPath X; // M + A
};

SemimartingaleDecomposition make_decomposition(StepPath M, StepPath A);

struct GdStatistics {
    double tv;           // TV_{[0,t]}(A)
    double jump_at_stop; // |dM|_inf at min(t, stop_time)
    double stop_time;    // first time running_sup(|M|) >= c; T + 1 if never
};

GdStatistics gd_statistics(const SemimartingaleDecomposition& dec, double t, double c);

// True iff every jump of Z satisfies |dZ(s)| <= 2 · running_sup(H, s) · |dX(s)|
// in the max norm.
bool jump_domination_check(const StepPath& H, const StepPath& X, const StepPath& Z);

} // namespace cadlag
