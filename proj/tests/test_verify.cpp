#include <doctest.h>

#include "scc/errors.hpp"
#include "scc/verify.hpp"

TEST_CASE("every property suite passes at a moderate trial count") {
    const auto results = scc::verify::run("all", 1, 120);
    REQUIRE(results.size() == 8);
    for (const auto& r : results) {
        INFO(r.name, " worst=", r.worst_residual, " failures=", r.failures);
        CHECK(r.pass);
    }
    CHECK(scc::verify::all_pass(results));
}

TEST_CASE("unknown suite is refused") {
    CHECK_THROWS_AS(scc::verify::run("nope", 0, 10), scc::invalid_input);
}

TEST_CASE("single suite selection") {
    const auto results = scc::verify::run("bound", 3, 50);
    REQUIRE(results.size() == 1);
    CHECK(results[0].name == "bound");
    CHECK(results[0].pass);
}
