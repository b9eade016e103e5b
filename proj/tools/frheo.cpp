#include "frheo/cli.h"

int main(int argc, char** argv) {
    return frheo::cli::run(argc, argv);
}
