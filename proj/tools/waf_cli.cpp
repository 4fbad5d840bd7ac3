#include "waf/cli.hpp"

int main(int argc, char** argv) { return waf::run_cli(argc, argv); }
