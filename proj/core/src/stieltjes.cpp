#include "cadlag/stieltjes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cadlag {

namespace {

void check_pair(const StepPath& H, const StepPath& X) {
    if (H.dimension() != X.dimension())
        throw std::invalid_argument("stieltjes: dimension mismatch");
    if (H.horizon() != X.horizon())
        throw std::invalid_argument("stieltjes: horizon mismatch");
}

} // namespace

StepPath ito_integral(const StepPath& H, const StepPath& X) {
    check_pair(H, X);
    const std::size_t d = X.dimension();
    Vec acc(d, 0.0);
    std::vector<std::pair<double, Vec>> jumps;
    jumps.reserve(X.jump_count());
    for (std::size_t j = 0; j < X.jump_count(); ++j) {
        const double s = X.jump_time(j);
        const Vec h = H.left_limit(s);
        const Vec dx = X.jump_at(s);
        bool moved = false;
        for (std::size_t i = 0; i < d; ++i) {
            const double inc = h[i] * dx[i];
            if (inc != 0.0) moved = true;
            acc[i] += inc;
        }
        if (moved) jumps.emplace_back(s, acc);
    }
    return StepPath(d, X.horizon(), Vec(d, 0.0), jumps);
}

StepPath window_integral(const StepPath& f, const StepPath& g, double a, double b) {
    check_pair(f, g);
    if (a > b)
        throw std::invalid_argument("window_integral: window start exceeds end");
    if (a < 0.0 || b > g.horizon())
        throw std::domain_error("window_integral: window outside [0, T]");
    const std::size_t d = g.dimension();
    Vec acc(d, 0.0);
    std::vector<std::pair<double, Vec>> jumps;
    for (std::size_t j = 0; j < g.jump_count(); ++j) {
        const double s = g.jump_time(j);
        if (s <= a || s > b) continue;
        const Vec fv = f.left_limit(s);
        const Vec dg = g.jump_at(s);
        bool moved = false;
        for (std::size_t i = 0; i < d; ++i) {
            const double inc = fv[i] * dg[i];
            if (inc != 0.0) moved = true;
            acc[i] += inc;
        }
        if (moved) jumps.emplace_back(s, acc);
    }
    return StepPath(d, g.horizon(), Vec(d, 0.0), jumps);
}

Vec jump_product_sum(const StepPath& H, const StepPath& X, double t) {
    check_pair(H, X);
    if (t < 0.0 || t > X.horizon())
        throw std::domain_error("jump_product_sum: time outside [0, T]");
    const std::size_t d = X.dimension();
    Vec acc(d, 0.0);
    for (std::size_t j = 0; j < X.jump_count(); ++j) {
        const double s = X.jump_time(j);
        if (s > t) break;
        const Vec dh = H.jump_at(s);
        const Vec dx = X.jump_at(s);
        for (std::size_t i = 0; i < d; ++i) acc[i] += dh[i] * dx[i];
    }
    return acc;
}

StepPath jump_product_path(const StepPath& H, const StepPath& X) {
    check_pair(H, X);
    const std::size_t d = X.dimension();
    Vec acc(d, 0.0);
    std::vector<std::pair<double, Vec>> jumps;
    for (std::size_t j = 0; j < X.jump_count(); ++j) {
        const double s = X.jump_time(j);
        const Vec dh = H.jump_at(s);
        const Vec dx = X.jump_at(s);
        bool moved = false;
        for (std::size_t i = 0; i < d; ++i) {
            const double inc = dh[i] * dx[i];
            if (inc != 0.0) moved = true;
            acc[i] += inc;
        }
        if (moved) jumps.emplace_back(s, acc);
    }
    return StepPath(d, X.horizon(), Vec(d, 0.0), jumps);
}

void validate(const CorrectionTerm& c, std::size_t dimension, double horizon) {
    double prev = 0.0;
    for (const CorrectionEntry& e : c.entries) {
        if (!(e.sigma > prev))
            throw std::invalid_argument("correction: entry times must be strictly increasing and positive");
        if (e.sigma > horizon)
            throw std::invalid_argument("correction: entry time beyond horizon");
        if (e.xi.size() != dimension || e.dH.size() != dimension || e.dX.size() != dimension)
            throw std::invalid_argument("correction: entry dimension mismatch");
        for (double w : e.xi)
            if (!(w >= 0.0 && w <= 1.0))
                throw std::invalid_argument("correction: weight outside [0, 1]");
        bool nonzero = false;
        for (std::size_t i = 0; i < dimension; ++i)
            if (e.dH[i] != 0.0 && e.dX[i] != 0.0) nonzero = true;
        if (!nonzero)
            throw std::invalid_argument("correction: entry contributes no jump product");
        prev = e.sigma;
    }
}

StepPath apply_correction(const StepPath& base, const CorrectionTerm& c) {
    validate(c, base.dimension(), base.horizon());
    StepPath out = base;
    for (const CorrectionEntry& e : c.entries) {
        Vec amount(base.dimension(), 0.0);
        for (std::size_t i = 0; i < base.dimension(); ++i)
            amount[i] = e.xi[i] * e.dH[i] * e.dX[i];
        out = out + StepPath(base.dimension(), base.horizon(), Vec(base.dimension(), 0.0),
                             {{e.sigma, amount}});
    }
    return out;
}

double integration_by_parts_residual(const StepPath& H, const StepPath& X) {
    check_pair(H, X);
    if (H.dimension() != 1)
        throw std::invalid_argument("integration_by_parts_residual: scalar paths required");
    const double T = X.horizon();
    const double lhs = ito_integral(H, X).eval(T)[0] + ito_integral(X, H).eval(T)[0] +
                       jump_product_sum(H, X, T)[0];
    const double rhs = H.eval(T)[0] * X.eval(T)[0] - H.initial_value()[0] * X.initial_value()[0];
    return std::fabs(lhs - rhs);
}

SemimartingaleDecomposition make_decomposition(StepPath M, StepPath A) {
    check_pair(M, A);
    StepPath X = M + A;
    return SemimartingaleDecomposition{std::move(M), std::move(A), std::move(X)};
}

GdStatistics gd_statistics(const SemimartingaleDecomposition& dec, double t, double c) {
    if (t < 0.0 || t > dec.X.horizon())
        throw std::domain_error("gd_statistics: time outside [0, T]");
    if (!(c > 0.0)) throw std::invalid_argument("gd_statistics: threshold must be positive");
    const double T = dec.M.horizon();
    double stop = T + 1.0;
    if (sup_norm(dec.M.initial_value()) >= c) {
        stop = 0.0;
    } else {
        for (std::size_t j = 0; j < dec.M.jump_count(); ++j) {
            const double s = dec.M.jump_time(j);
            if (sup_norm(dec.M.eval(s)) >= c) {
                stop = s;
                break;
            }
        }
    }
    const double eval_at = std::min(t, stop);
    double jump_at_stop = 0.0;
    if (eval_at <= T) jump_at_stop = sup_norm(dec.M.jump_at(eval_at));
    return GdStatistics{dec.A.total_variation(t), jump_at_stop, stop};
}

bool jump_domination_check(const StepPath& H, const StepPath& X, const StepPath& Z) {
    check_pair(H, X);
    check_pair(H, Z);
    for (std::size_t j = 0; j < Z.jump_count(); ++j) {
        const double s = Z.jump_time(j);
        const double dz = sup_norm(Z.jump_at(s));
        const double dx = sup_norm(X.jump_at(s));
        const double hsup = H.running_sup(s);
        if (!(dz <= 2.0 * hsup * dx)) return false;
    }
    return true;
}

} // namespace cadlag
