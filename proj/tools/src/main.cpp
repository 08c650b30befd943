#include "otcli/cli.hpp"

int main(int argc, char** argv) { return otcli::run(argc, argv); }
