#include "swarmqp/cli.hpp"

int main(int argc, char** argv) { return swarmqp::cli::run(argc, argv); }
