#include "cli.hpp"

int main(int argc, char** argv) {
    return barea::cli::run(argc, argv);
}
