#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace polyden {

struct criterion_result {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string details;
    double seconds = 0.0;
};

/// Runs one acceptance criterion (1..11).  Reproducible for a fixed seed.
criterion_result run_criterion(int id, std::uint64_t seed);

/// Runs the whole corpus in order.
std::vector<criterion_result> run_corpus(std::uint64_t seed);

} // namespace polyden
