#include <doctest.h>

#include "bkw/report.hpp"

#include <sstream>

using namespace bkw;

TEST_CASE("arrow packing round trip") {
    const std::vector<std::uint8_t> arrows{1, 0, 1, 1, 0, 0, 0, 1, 1};
    const auto hex = pack_arrows(arrows);
    CHECK(hex == "514001");
    CHECK(unpack_arrows(hex, arrows.size()) == arrows);
    CHECK_THROWS_AS(unpack_arrows("11", arrows.size()), std::invalid_argument);
    CHECK_THROWS_AS(unpack_arrows("524001", arrows.size()), std::invalid_argument);
    CHECK_THROWS_AS(unpack_arrows("zz4001", arrows.size()), std::invalid_argument);
}

TEST_CASE("six-vertex dump round trip") {
    const Domain d = make_diamond_domain({0, 0}, 2);
    const auto configs = enumerate_6v_all(d);
    std::stringstream ss;
    write_6v_dump(ss, d, configs);
    const auto back = read_6v_dump(ss, d);
    REQUIRE(back.size() == configs.size());
    for (std::size_t k = 0; k < configs.size(); ++k) CHECK(back[k].arrow == configs[k].arrow);

    std::stringstream other;
    write_6v_dump(other, d, configs);
    const Domain d1 = make_diamond_domain({1, 0}, 1);
    CHECK_THROWS_AS(read_6v_dump(other, d1), std::invalid_argument);
}

TEST_CASE("loop dump lines") {
    const Domain d = make_diamond_domain({1, 0}, 1);
    std::stringstream ss;
    write_loops_jsonl(ss, d);
    std::string line;
    int n = 0;
    while (std::getline(ss, line)) {
        const auto j = json::parse(line);
        CHECK(j["bits"] == n);
        CHECK(j["loops"].size() == j["l"].get<std::size_t>());
        ++n;
    }
    CHECK(n == 16);
}

TEST_CASE("json reports") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CheckResult c{"x", true, "ok", "", 1.5};
    CHECK_FALSE(to_json(c, false).contains("seconds"));
    CHECK(to_json(c, true)["seconds"] == "1.5");
    const auto p = to_json(verify_coupled_params(9.0));
    CHECK(p["q"] == "9");
}
