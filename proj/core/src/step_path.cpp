#include "cadlag/step_path.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cadlag {

double sup_norm(const Vec& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

StepPath::StepPath(std::size_t dimension, double horizon, Vec initial_value,
                   std::vector<std::pair<double, Vec>> jumps)
    : dim_(dimension), horizon_(horizon), initial_(std::move(initial_value)) {
    if (dim_ == 0) throw std::invalid_argument("StepPath: dimension must be positive");
    if (!(horizon_ > 0.0) || !std::isfinite(horizon_))
        throw std::invalid_argument("StepPath: horizon must be positive and finite");
    if (initial_.size() != dim_)
        throw std::invalid_argument("StepPath: initial value has wrong dimension");

    times_.reserve(jumps.size());
    values_.reserve(jumps.size() * dim_);
    const double* prev = initial_.data();
    double last_time = 0.0;
    for (auto& [t, v] : jumps) {
        if (!(t > 0.0) || t > horizon_)
            throw std::invalid_argument("StepPath: jump time outside (0, T]");
        if (!(t > last_time))
            throw std::invalid_argument("StepPath: jump times must be strictly increasing");
        last_time = t;
        if (v.size() != dim_)
            throw std::invalid_argument("StepPath: jump value has wrong dimension");
        bool same = true;
        for (std::size_t i = 0; i < dim_; ++i)
            if (v[i] != prev[i]) { same = false; break; }
        if (same) continue; // zero-size jump, merged away
        times_.push_back(t);
        values_.insert(values_.end(), v.begin(), v.end());
        prev = value_ptr(times_.size() - 1);
    }
}

StepPath StepPath::scalar(double horizon, double initial_value,
                          std::vector<std::pair<double, double>> jumps) {
    std::vector<std::pair<double, Vec>> js;
    js.reserve(jumps.size());
    for (auto& [t, v] : jumps) js.emplace_back(t, Vec{v});
    return StepPath(1, horizon, Vec{initial_value}, std::move(js));
}

StepPath StepPath::constant(std::size_t dimension, double horizon, Vec value) {
    return StepPath(dimension, horizon, std::move(value));
}

StepPath StepPath::zero(std::size_t dimension, double horizon) {
    return StepPath(dimension, horizon, Vec(dimension, 0.0));
}

Vec StepPath::value_after_jump(std::size_t i) const {
    return Vec(value_ptr(i), value_ptr(i) + dim_);
}

Vec StepPath::plateau(std::size_t i) const {
    if (i == 0) return initial_;
    return value_after_jump(i - 1);
}

void StepPath::check_time(double t) const {
    if (t < 0.0 || t > horizon_)
        throw std::domain_error("StepPath: time " + std::to_string(t) + " outside [0, T]");
}

std::size_t StepPath::jumps_before_or_at(double t) const {
    return static_cast<std::size_t>(
        std::upper_bound(times_.begin(), times_.end(), t) - times_.begin());
}

std::size_t StepPath::jumps_strictly_before(double t) const {
    return static_cast<std::size_t>(
        std::lower_bound(times_.begin(), times_.end(), t) - times_.begin());
}

Vec StepPath::eval(double t) const {
    check_time(t);
    return plateau(jumps_before_or_at(t));
}

Vec StepPath::left_limit(double t) const {
    check_time(t);
    return plateau(jumps_strictly_before(t));
}

Vec StepPath::jump_at(double t) const {
    check_time(t);
    Vec d(dim_, 0.0);
    std::size_t k = jumps_strictly_before(t);
    if (k < times_.size() && times_[k] == t) {
        Vec before = plateau(k);
        const double* after = value_ptr(k);
        for (std::size_t i = 0; i < dim_; ++i) d[i] = after[i] - before[i];
    }
    return d;
}

std::vector<JumpDelta> StepPath::jumps_up_to(double t) const {
    check_time(t);
    std::vector<JumpDelta> out;
    std::size_t n = jumps_before_or_at(t);
    out.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        Vec before = plateau(k);
        const double* after = value_ptr(k);
        Vec d(dim_);
        for (std::size_t i = 0; i < dim_; ++i) d[i] = after[i] - before[i];
        out.push_back(JumpDelta{times_[k], std::move(d)});
    }
    return out;
}

double StepPath::total_variation(double t) const {
    check_time(t);
    double tv = 0.0;
    std::size_t n = jumps_before_or_at(t);
    for (std::size_t k = 0; k < n; ++k) {
        Vec before = plateau(k);
        const double* after = value_ptr(k);
        for (std::size_t i = 0; i < dim_; ++i) tv += std::abs(after[i] - before[i]);
    }
    return tv;
}

double StepPath::running_sup(double t) const {
    check_time(t);
    double m = sup_norm(initial_);
    std::size_t n = jumps_before_or_at(t);
    for (std::size_t k = 0; k < n; ++k) {
        const double* v = value_ptr(k);
        for (std::size_t i = 0; i < dim_; ++i) m = std::max(m, std::abs(v[i]));
    }
    return m;
}

CompletedGraph StepPath::completed_graph() const {
    CompletedGraph g;
    auto push = [&](double t, Vec z) {
        if (!g.times.empty() && g.times.back() == t && g.points.back() == z) return;
        g.times.push_back(t);
        g.points.push_back(std::move(z));
    };
    push(0.0, initial_);
    for (std::size_t k = 0; k < times_.size(); ++k) {
        push(times_[k], plateau(k));      // end of plateau before the jump
        push(times_[k], plateau(k + 1));  // connecting segment at the jump
    }
    push(horizon_, plateau(times_.size()));
    return g;
}

StepPath StepPath::truncate_after(double t) const {
    check_time(t);
    std::vector<std::pair<double, Vec>> js;
    std::size_t n = jumps_before_or_at(t);
    js.reserve(n);
    for (std::size_t k = 0; k < n; ++k) js.emplace_back(times_[k], value_after_jump(k));
    return StepPath(dim_, horizon_, initial_, std::move(js));
}

StepPath StepPath::coordinate(std::size_t i) const {
    if (i >= dim_) throw std::invalid_argument("StepPath: coordinate index out of range");
    std::vector<std::pair<double, Vec>> js;
    js.reserve(times_.size());
    for (std::size_t k = 0; k < times_.size(); ++k)
        js.emplace_back(times_[k], Vec{value_ptr(k)[i]});
    return StepPath(1, horizon_, Vec{initial_[i]}, std::move(js));
}

double StepPath::at(double t) const {
    if (dim_ != 1) throw std::invalid_argument("StepPath::at requires a scalar path");
    check_time(t);
    std::size_t k = jumps_before_or_at(t);
    return k == 0 ? initial_[0] : values_[k - 1];
}

double StepPath::left_at(double t) const {
    if (dim_ != 1) throw std::invalid_argument("StepPath::left_at requires a scalar path");
    check_time(t);
    std::size_t k = jumps_strictly_before(t);
    return k == 0 ? initial_[0] : values_[k - 1];
}

namespace {

StepPath combine(const StepPath& x, const StepPath& y, double cx, double cy) {
    if (x.dimension() != y.dimension())
        throw std::invalid_argument("StepPath: dimension mismatch in binary operation");
    if (x.horizon() != y.horizon())
        throw std::invalid_argument("StepPath: horizon mismatch in binary operation");
    const std::size_t d = x.dimension();
    Vec init(d);
    for (std::size_t i = 0; i < d; ++i)
        init[i] = cx * x.initial_value()[i] + cy * y.initial_value()[i];

    std::vector<std::pair<double, Vec>> js;
    std::size_t a = 0, b = 0;
    const auto& tx = x.jump_times();
    const auto& ty = y.jump_times();
    while (a < tx.size() || b < ty.size()) {
        double t;
        if (b == ty.size() || (a < tx.size() && tx[a] <= ty[b])) t = tx[a];
        else t = ty[b];
        while (a < tx.size() && tx[a] == t) ++a;
        while (b < ty.size() && ty[b] == t) ++b;
        Vec vx = a == 0 ? x.initial_value() : x.value_after_jump(a - 1);
        Vec vy = b == 0 ? y.initial_value() : y.value_after_jump(b - 1);
        Vec v(d);
        for (std::size_t i = 0; i < d; ++i) v[i] = cx * vx[i] + cy * vy[i];
        js.emplace_back(t, std::move(v));
    }
    return StepPath(d, x.horizon(), std::move(init), std::move(js));
}

} // namespace

StepPath StepPath::operator+(const StepPath& other) const { return combine(*this, other, 1.0, 1.0); }
StepPath StepPath::operator-(const StepPath& other) const { return combine(*this, other, 1.0, -1.0); }
StepPath StepPath::operator-() const { return scaled(-1.0); }

StepPath StepPath::scaled(double c) const {
    std::vector<std::pair<double, Vec>> js;
    js.reserve(times_.size());
    for (std::size_t k = 0; k < times_.size(); ++k) {
        Vec v = value_after_jump(k);
        for (double& e : v) e *= c;
        js.emplace_back(times_[k], std::move(v));
    }
    Vec init = initial_;
    for (double& e : init) e *= c;
    return StepPath(dim_, horizon_, std::move(init), std::move(js));
}

StepPath StepPath::scaled(const Vec& c) const {
    if (c.size() != dim_) throw std::invalid_argument("StepPath::scaled: wrong dimension");
    std::vector<std::pair<double, Vec>> js;
    js.reserve(times_.size());
    for (std::size_t k = 0; k < times_.size(); ++k) {
        Vec v = value_after_jump(k);
        for (std::size_t i = 0; i < dim_; ++i) v[i] *= c[i];
        js.emplace_back(times_[k], std::move(v));
    }
    Vec init = initial_;
    for (std::size_t i = 0; i < dim_; ++i) init[i] *= c[i];
    return StepPath(dim_, horizon_, std::move(init), std::move(js));
}

StepPath StepPath::shifted(const Vec& c) const {
    if (c.size() != dim_) throw std::invalid_argument("StepPath::shifted: wrong dimension");
    std::vector<std::pair<double, Vec>> js;
    js.reserve(times_.size());
    for (std::size_t k = 0; k < times_.size(); ++k) {
        Vec v = value_after_jump(k);
        for (std::size_t i = 0; i < dim_; ++i) v[i] += c[i];
        js.emplace_back(times_[k], std::move(v));
    }
    Vec init = initial_;
    for (std::size_t i = 0; i < dim_; ++i) init[i] += c[i];
    return StepPath(dim_, horizon_, std::move(init), std::move(js));
}

bool StepPath::operator==(const StepPath& other) const {
    return dim_ == other.dim_ && horizon_ == other.horizon_ && initial_ == other.initial_ &&
           times_ == other.times_ && values_ == other.values_;
}

std::vector<double> merged_breakpoints(const StepPath& x, const StepPath& y) {
    if (x.horizon() != y.horizon())
        throw std::invalid_argument("merged_breakpoints: horizon mismatch");
    std::vector<double> b;
    b.reserve(x.jump_count() + y.jump_count() + 2);
    b.push_back(0.0);
    b.insert(b.end(), x.jump_times().begin(), x.jump_times().end());
    b.insert(b.end(), y.jump_times().begin(), y.jump_times().end());
    b.push_back(x.horizon());
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    return b;
}

double sup_norm_distance(const StepPath& x, const StepPath& y) {
    if (x.dimension() != y.dimension())
        throw std::invalid_argument("sup_norm_distance: dimension mismatch");
    auto bp = merged_breakpoints(x, y);
    double m = 0.0;
    for (double t : bp) {
        Vec vx = x.eval(t), vy = y.eval(t);
        for (std::size_t i = 0; i < vx.size(); ++i)
            m = std::max(m, std::abs(vx[i] - vy[i]));
    }
    return m;
}

double window_sup_norm(const StepPath& x, double a, double b, bool include_right) {
    if (a > b) throw std::invalid_argument("window_sup_norm: empty window");
    double m = sup_norm(x.eval(a));
    for (double t : x.jump_times()) {
        if (t <= a) continue;
        if (t > b || (t == b && !include_right)) break;
        m = std::max(m, sup_norm(x.eval(t)));
    }
    if (include_right) m = std::max(m, sup_norm(x.eval(b)));
    return m;
}

} // namespace cadlag
