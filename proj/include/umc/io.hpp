#pragma once

#include "umc/types.hpp"

#include <string>

namespace umc::io {

/// Matrix file: first line "rows cols", then `rows` lines of `cols`
/// space-separated decimal reals. Written with 17 significant digits so a
/// save/load round trip is bit-exact.
DenseMatrix load_matrix(const std::string& path);
void save_matrix(const std::string& path, const DenseMatrix& m);

/// Edge-list file: first line "n1 n2 m", then m lines "i j", 1-based.
SampleSet load_edges(const std::string& path);
void save_edges(const std::string& path, const SampleSet& omega);

void save_text(const std::string& path, const std::string& text);

/// Formats one real with 17 significant digits ("%.17g").
std::string format_real(double v);

}  // namespace umc::io
