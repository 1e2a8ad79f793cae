#pragma once

#include <iosfwd>
#include <string>

#include "cadlag/step_path.hpp"

namespace cadlag {

/// CSV path format:
///   t,v1,...,vd
///   0,<initial value>
///   <jump time>,<post-jump value>   (strictly increasing times)
///   # T=<horizon>
/// The first data row must have t=0 and carries the initial value; the final
/// comment line fixes the horizon.
StepPath read_path_csv(std::istream& in);
StepPath read_path_csv_file(const std::string& filename);

void write_path_csv(std::ostream& out, const StepPath& path);
void write_path_csv_file(const std::string& filename, const StepPath& path);

/// Round-trip safe formatting of a double (shortest form that parses back
/// exactly); used everywhere CSV output must be byte-reproducible.
std::string format_double(double v);

} // namespace cadlag
