#include "fakerev/cli.hpp"

int main(int argc, char** argv) { return fakerev::cli::run(argc, argv); }
