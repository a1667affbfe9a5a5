#include <catch2/catch_amalgamated.hpp>
#include "rsum/cli.hpp"
TEST_CASE("smoke") { REQUIRE(1 == 1); }
