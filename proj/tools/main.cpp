#include "lrprop/run.hpp"

int main(int argc, char** argv) { return lrprop::cli::main_entry(argc, argv); }
