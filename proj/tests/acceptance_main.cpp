// Acceptance suite runner: one line per criterion, nonzero exit on failure.

#include <cstdio>

#include "mgl/selftest.hpp"

int main() {
    bool all = true;
    std::vector<mgl::CriterionResult> results = mgl::selftest_run_all();
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        all = all && r.pass;
        std::printf("%s criterion %zu (%s): %s [%.2fs]\n", r.pass ? "PASS" : "FAIL", i + 1,
                    r.name.c_str(), r.detail.c_str(), r.seconds);
    }
    for (const auto& r : mgl::selftest_corpus_entries()) {
        all = all && r.pass;
        std::printf("%s %s: %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
    }
    return all ? 0 : 1;
}
