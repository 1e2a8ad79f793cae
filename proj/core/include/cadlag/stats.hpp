#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace cadlag {

/// Deterministic pairwise (binary-tree) summation; independent of thread
/// count and schedule for a fixed element order.
double pairwise_sum(const std::vector<double>& values);

/// One atom of a finite discrete distribution: (location, probability mass).
using Atom = std::pair<double, double>;

/// Kolmogorov-Smirnov statistic between the empirical distribution of the
/// samples and the finite atomic distribution: sup over x of
/// |F_emp(x) - F_atoms(x)|, evaluated from both sides of every candidate
/// discontinuity. Atom weights must sum to 1 up to rounding.
double ks_statistic(std::vector<double> samples, std::vector<Atom> atoms);

} // namespace cadlag
