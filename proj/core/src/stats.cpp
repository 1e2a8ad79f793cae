#include "cadlag/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cadlag {

namespace {

double pairwise_range(const double* v, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_range(v, half) + pairwise_range(v + half, n - half);
}

} // namespace

double pairwise_sum(const std::vector<double>& values) {
    return pairwise_range(values.data(), values.size());
}

double ks_statistic(std::vector<double> samples, std::vector<Atom> atoms) {
    if (samples.empty()) throw std::invalid_argument("ks_statistic: no samples");
    if (atoms.empty()) throw std::invalid_argument("ks_statistic: no atoms");
    double mass = 0.0;
    for (const Atom& a : atoms) {
        if (a.second < 0.0) throw std::invalid_argument("ks_statistic: negative atom weight");
        mass += a.second;
    }
    if (std::fabs(mass - 1.0) > 1e-9)
        throw std::invalid_argument("ks_statistic: atom weights must sum to 1");

    std::sort(samples.begin(), samples.end());
    std::sort(atoms.begin(), atoms.end());

    std::vector<double> candidates;
    candidates.reserve(samples.size() + atoms.size());
    candidates.insert(candidates.end(), samples.begin(), samples.end());
    for (const Atom& a : atoms) candidates.push_back(a.first);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    const double n = static_cast<double>(samples.size());
    const auto emp_leq = [&](double x) {
        return static_cast<double>(std::upper_bound(samples.begin(), samples.end(), x) -
                                   samples.begin()) /
               n;
    };
    const auto emp_lt = [&](double x) {
        return static_cast<double>(std::lower_bound(samples.begin(), samples.end(), x) -
                                   samples.begin()) /
               n;
    };
    const auto atom_leq = [&](double x) {
        double f = 0.0;
        for (const Atom& a : atoms) {
            if (a.first > x) break;
            f += a.second;
        }
        return f;
    };
    const auto atom_lt = [&](double x) {
        double f = 0.0;
        for (const Atom& a : atoms) {
            if (a.first >= x) break;
            f += a.second;
        }
        return f;
    };

    double d = 0.0;
    for (double x : candidates) {
        d = std::max(d, std::fabs(emp_leq(x) - atom_leq(x)));
        d = std::max(d, std::fabs(emp_lt(x) - atom_lt(x)));
    }
    return d;
}

} // namespace cadlag
