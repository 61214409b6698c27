#include "soliton/cli.hpp"

int main(int argc, char** argv) { return soliton::cli::run(argc, argv); }
