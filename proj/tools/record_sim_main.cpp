#include "record/experiments.hpp"

int main(int argc, char** argv) { return record::run_cli(argc, argv); }
