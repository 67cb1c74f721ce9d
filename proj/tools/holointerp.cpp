#include "holointerp/runner.hpp"

int main(int argc, char** argv) { return holointerp::cli_main(argc, argv); }
