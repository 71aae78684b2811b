// Builds the amalgamated Catch2 translation unit once for all test binaries.
#include <catch2/catch_amalgamated.cpp>
