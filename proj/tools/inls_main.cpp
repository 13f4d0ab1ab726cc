#include "inls/cli.hpp"

int main(int argc, char** argv) { return inls::dispatch(argc, argv); }
