#include "journeynet/cli.hpp"

int main(int argc, char** argv) { return journeynet::cli::run(argc, argv); }
