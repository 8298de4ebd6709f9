#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "polyden/io.hpp"

using namespace polyden;

TEST_CASE("weight and zero-set files round trip") {
    grid_weight w({-1.0, 0.0, 1.0 / 3.0, 2.0}, {0.25, 1.0, 0.7071067811865476, 0.0});
    io::save_weight(w, "w_rt.json");
    auto wb = io::load_weight("w_rt.json");
    CHECK(wb.xs == w.xs);
    CHECK(wb.ws == w.ws);
    std::remove("w_rt.json");

    entire_fn f(1, -2.5, 1, 0.125, {{-2.0, 1}, {1.0 / 3.0, 2}},
                tail_model::power_law(-1.5, 2.0));
    io::save_zeroset(f, "f_rt.json");
    auto fb = io::load_zeroset("f_rt.json");
    CHECK(fb.order_at_origin() == 1);
    CHECK(fb.leading() == -2.5);
    CHECK(fb.genus() == 1);
    CHECK(fb.balance() == 0.125);
    REQUIRE(fb.zeros().size() == 2);
    CHECK(fb.zeros()[1].x == 1.0 / 3.0);
    CHECK(fb.zeros()[1].mult == 2);
    CHECK(fb.tail().k == tail_model::kind::power);
    CHECK(fb.tail().exponent == -1.5);
    std::remove("f_rt.json");
}

TEST_CASE("pair files and the family format") {
    discrete_measure nu({{0.5, 1.0}, {1.5, 0.25}});
    representation_pair pair{grid_weight({0.5, 1.5}, {1.0, 0.5}), nu, 3.0};
    io::save_pair(pair, "pair_rt.json");
    auto pb = io::load_pair("pair_rt.json");
    CHECK(pb.p == 3.0);
    CHECK(pb.nu.atoms()[1].mass == 0.25);
    CHECK(pb.w.ws[1] == 0.5);
    std::remove("pair_rt.json");

    io::write_file("fam.json", "[[1.0, -1.0], [0.5, 2.0, -3.0]]");
    auto fam = io::load_family("fam.json");
    REQUIRE(fam.size() == 2);
    CHECK(fam[1].degree() == 3);
    std::remove("fam.json");
}

TEST_CASE("csv format: comma separator, header, 17 digits") {
    io::write_csv("t.csv", {"n", "rho"}, {{0.0, 1.0}, {1.0, 1.0 / 3.0}});
    auto content = io::read_file("t.csv");
    CHECK(content == "n,rho\n0,1\n1,0.33333333333333331\n");
    std::remove("t.csv");
}

TEST_CASE("digest is stable") {
    CHECK(io::digest("polyden") == io::digest("polyden"));
    CHECK(io::digest("a") != io::digest("b"));
}

TEST_CASE("17 significant digit round trip") {
    rng g(1234);
    for (int t = 0; t < 1000; ++t) {
        double v = (g.u01() - 0.5) * std::pow(10.0, double(g.below(40)) - 20.0);
        CHECK(std::stod(format17(v)) == v);
    }
}
