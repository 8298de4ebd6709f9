// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Seed fixed so reruns are identical.
#include <chrono>
#include <cstdio>

#include "polyden/corpus.hpp"

int main() {
    auto t0 = std::chrono::steady_clock::now();
    bool all = true;
    for (int id = 1; id <= 11; ++id) {
        auto r = polyden::run_criterion(id, 42);
        std::printf("criterion %2d [%s]: %s (%.2fs) %s\n", r.id, r.name.c_str(),
                    r.passed ? "PASS" : "FAIL", r.seconds, r.details.c_str());
        std::fflush(stdout);
        all = all && r.passed;
    }
    double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("total wall time %.1fs (budget 300s)\n", total);
    if (total >= 300.0) {
        std::printf("corpus exceeded the wall-clock budget\n");
        return 1;
    }
    return all ? 0 : 1;
}
