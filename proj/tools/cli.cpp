#include "cli.hpp"
#include <cstdio>

namespace barea::cli {
int run(int, char**) {
    std::puts("barea: not wired up yet");
    return 2;
}
}
