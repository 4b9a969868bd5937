#include "kgring/cli.hpp"

int main(int argc, char** argv) {
    return kgring::cli::main_entry(argc, argv);
}
