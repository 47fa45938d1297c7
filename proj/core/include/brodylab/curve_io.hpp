#pragma once

#include <iosfwd>
#include <string>

#include "brodylab/curve.hpp"

namespace brodylab {

/// Plain-text curve definition. Numbers are written with 17 significant
/// digits so read(write(f)) reproduces every coefficient bit for bit.
///
///   brodylab-curve 1
///   rational 1
///   poly 0 1 0
///   poly 1 0 0 1 0
///   end
///
/// `poly d` is followed by d+1 (re, im) pairs in ascending degree;
/// `elliptic N` takes `lattice re im re im` and one `component` line per
/// coordinate listing its terms as `i j re im`; `transformed` and `bubbled`
/// wrap a nested curve block. '#' starts a comment.
void write_curve(std::ostream& out, const HoloCurve& f);
std::string curve_to_string(const HoloCurve& f);

/// Throws std::runtime_error with a line number on malformed input.
HoloCurve read_curve(std::istream& in);
HoloCurve curve_from_string(const std::string& text);
HoloCurve load_curve(const std::string& path);
void save_curve(const std::string& path, const HoloCurve& f);

}  // namespace brodylab
