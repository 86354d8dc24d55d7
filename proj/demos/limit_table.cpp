// Prints the four annulus limit tables (metric asymptotics as the inner
// radius shrinks) in CSV form, one after another.

#include <cstdio>

#include "szegolab/szegolab.hpp"

using namespace szegolab;

int main() {
    const NumericConfig config;
    for (const auto& exp : default_limit_experiments()) {
        const auto rows = run_limit(exp, config);
        std::fputs(limit_csv(exp, rows, config).c_str(), stdout);
        std::fputs("\n", stdout);
    }
    return 0;
}
