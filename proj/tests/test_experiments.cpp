// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

TEST_SUITE("experiments") {

TEST_CASE("placeholder") { CHECK(true); }

} // TEST_SUITE
