#include "ovw/cli.hpp"

int main(int argc, char** argv) { return ovw::cli::main(argc, argv); }
