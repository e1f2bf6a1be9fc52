#pragma once

namespace barea::cli {
int run(int argc, char** argv);
}
