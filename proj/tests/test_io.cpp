#include <catch2/catch_amalgamated.hpp>

#include "supvar/json_io.hpp"

using namespace supvar;

TEST_CASE("field descriptor round trip") {
    for (FieldDesc fd : {FieldDesc{3, 1, false}, FieldDesc{2, 2, false}, FieldDesc{5, 1, true}}) {
        auto j = io::to_json(fd);
        REQUIRE(io::field_from_json(j) == fd);
    }
    REQUIRE_THROWS_AS(io::field_from_json(json{{"p", 3}, {"kind", "weird"}}), ParseError);
    REQUIRE_THROWS_AS(io::field_from_json(json{{"p", 3}, {"kind", "ext"}, {"d", 1}}),
                      ParseError);
}

TEST_CASE("matrix round trips over each field kind") {
    Fq f9(3, 2);
    Rng rng(3);
    auto m = random_mat(f9, 3, 2, rng);
    REQUIRE(io::mat_from_json(f9, io::mat_to_json(m)) == m);

    RatFun rf(3);
    auto mr = random_mat(rf, 2, 2, rng);
    REQUIRE(io::mat_from_json(rf, io::mat_to_json(mr)) == mr);

    IMat im(2, 3);
    im.at(1, 2) = 4;
    REQUIRE(io::imat_from_json(io::imat_to_json(im)) == im);
}

TEST_CASE("tuple round trip validates membership") {
    Fq f9(3, 2);
    Rng rng(7);
    auto t = sample_C_r(f9, 3, 2, AlgTag::gl, rng);
    auto j = io::tuple_to_json(t, FieldDesc{3, 2, false});
    auto t2 = io::tuple_from_json(f9, j);
    REQUIRE(t2.b == t.b);

    // a non-commuting tuple is rejected
    auto bad = j;
    bad["B"][0]["entries"][1][0] = 1;
    bad["B"][0]["entries"][0][1] = 1;
    bool threw = false;
    try {
        io::tuple_from_json(f9, bad);
    } catch (const ValidationError&) {
        threw = true;
    }
    REQUIRE(threw);
}

TEST_CASE("module and rep expression round trips") {
    auto reg = data_regular(3, 2);
    REQUIRE(io::module_from_json(io::module_to_json(reg)).name == reg.name);
    auto back = io::module_from_json(io::module_to_json(reg));
    REQUIRE(std::get<UModuleData>(back.v).u == std::get<UModuleData>(reg.v).u);

    ModuleData st;
    st.name = "steinberg";
    st.v = RepModuleData{3, AlgTag::sl, 2,
                         RepExpr::twist(1, RepExpr::sym(2, RepExpr::std_rep(2)))};
    auto j = io::module_to_json(st);
    auto st2 = io::module_from_json(j);
    REQUIRE(io::module_to_json(st2) == j);

    ModuleData u3;
    u3.name = "induced";
    u3.v = U3InducedData{3, 9};
    REQUIRE(io::module_to_json(io::module_from_json(io::module_to_json(u3))) ==
            io::module_to_json(u3));
}

TEST_CASE("complex round trip") {
    auto ls = data_ls(3, {0}, 3);
    ComplexData c;
    c.name = "aug";
    c.bottom = -1;
    c.layers = {ls, data_trivial(3)};
    IMat d(1, 4);
    d.at(0, 3) = 1;  // dual of the top monomial: kills rad, hence equivariant
    c.diffs = {d};
    auto j = io::complex_to_json(c);
    auto c2 = io::complex_from_json(j);
    REQUIRE(c2.bottom == -1);
    REQUIRE(c2.layers.size() == 2);
    REQUIRE(io::complex_to_json(c2) == j);

    // a non-equivariant differential is rejected
    auto badj = j;
    badj["differentials"][0]["entries"][0][1] = 1;
    bool threw = false;
    try {
        io::complex_from_json(badj);
    } catch (const ValidationError&) {
        threw = true;
    }
    REQUIRE(threw);
}

TEST_CASE("content hashes are stable") {
    auto j = io::module_to_json(data_trivial(3));
    REQUIRE(io::content_hash(j) == io::content_hash(j));
    auto j2 = io::module_to_json(data_trivial(5));
    REQUIRE(io::content_hash(j) != io::content_hash(j2));
}
