#pragma once

#include <string>
#include <vector>

#include "polyden/bernstein.hpp"
#include "polyden/entire.hpp"
#include "polyden/family.hpp"
#include "polyden/measure.hpp"
#include "polyden/weight.hpp"

namespace polyden::io {

// Measure file: {"atoms":[{"x":..., "mass":...}, ...]}, 17 significant digits.
discrete_measure load_measure(const std::string& path);
void save_measure(const discrete_measure& mu, const std::string& path);

// Weight file: {"xs":[...], "ws":[...]}.
grid_weight load_weight(const std::string& path);
void save_weight(const grid_weight& w, const std::string& path);

// Zero-set file: {"m":int, "c":num, "genus":0|1, "a":num,
//   "zeros":[{"x":num,"mult":int}], "tail":{"model":"power"|"none", ...}}.
entire_fn load_zeroset(const std::string& path);
void save_zeroset(const entire_fn& f, const std::string& path);

// Family file: JSON array of zero lists.
std::vector<star_poly> load_family(const std::string& path);

// Pair file: {"w":{...}, "nu":{...}, "p":num}.
representation_pair load_pair(const std::string& path);
void save_pair(const representation_pair& pair, const std::string& path);

// CSV: ',' separator, '.' decimal, header row; numbers at 17 digits.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/// FNV-1a content digest for report provenance
std::string digest(const std::string& content);

} // namespace polyden::io
