#include <catch2/catch_amalgamated.hpp>

#include "supvar/fq.hpp"
#include "supvar/pi_op.hpp"
#include "supvar/ratfun.hpp"
#include "supvar/rep.hpp"
#include "supvar/umodule.hpp"

using namespace supvar;

namespace {

Mat<Fq> unit(const Fq& k, unsigned n, unsigned i, unsigned j) {
    Mat<Fq> m(k, n, n);
    m.at(i, j) = k.one();
    return m;
}

}  // namespace

TEST_CASE("truncated exponentials") {
    Fq f3(3);
    Mat<Fq> z(f3, 2, 2);
    REQUIRE(trunc_exp(z, 3) == Mat<Fq>::identity(f3, 2));
    auto b = unit(f3, 2, 0, 1);
    REQUIRE(trunc_exp(b, 3) == Mat<Fq>::identity(f3, 2).add(b));  // B^2 = 0
    Rng rng(3);
    for (int i = 0; i < 20; ++i) {
        auto t = sample_C_r(f3, 3, 1, AlgTag::gl, rng);
        auto e = trunc_exp(t.b[0], 3);
        REQUIRE(e.mul(trunc_exp(t.b[0].neg(), 3)) == Mat<Fq>::identity(f3, 3));
    }
    REQUIRE_THROWS_AS(trunc_exp(unit(f3, 2, 0, 1).add(unit(f3, 2, 1, 0)), 3), ValidationError);
}

TEST_CASE("one parameter subgroups are homomorphisms") {
    // eval(alpha + beta) = eval(alpha) eval(beta), over F_9 and over F_3(s)
    Fq f9(3, 2);
    Rng rng(5);
    for (int i = 0; i < 10; ++i) {
        auto t = sample_C_r(f9, 3, 2, AlgTag::gl, rng);
        auto a = f9.random(rng), b = f9.random(rng);
        REQUIRE(one_param_eval(t, f9.add(a, b)) ==
                one_param_eval(t, a).mul(one_param_eval(t, b)));
    }
    RatFun rf(3);
    Rng rng2(7);
    for (int i = 0; i < 4; ++i) {
        auto t = sample_C_r(rf, 2, 2, AlgTag::sl, rng2);
        auto a = rf.random(rng2), b = rf.random(rng2);
        REQUIRE(one_param_eval(t, rf.add(a, b)) ==
                one_param_eval(t, a).mul(one_param_eval(t, b)));
    }
    // alpha = 0 gives the identity
    Fq f3(3);
    Rng rng3(9);
    auto t = sample_C_r(f3, 3, 2, AlgTag::gl, rng3);
    REQUIRE(one_param_eval(t, f3.zero()) == Mat<Fq>::identity(f3, 3));
}

TEST_CASE("series coefficient extraction recovers the tuple") {
    Fq f3(3);
    PolyRing<Fq> ring9(f3, 9);
    Rng rng(11);
    for (int i = 0; i < 10; ++i) {
        auto t = sample_C_r(f3, 3, 2, AlgTag::gl, rng);
        auto g = one_param_poly(t, ring9);
        REQUIRE(coeff_mat(g, 0) == Mat<Fq>::identity(f3, 3));
        REQUIRE(coeff_mat(g, 1) == t.b[0]);
        REQUIRE(coeff_mat(g, 3) == t.b[1]);
        // the zero tuple gives the constant identity
        NilTuple<Fq> z = t;
        for (auto& m : z.b) m = Mat<Fq>(f3, 3, 3);
        auto gz = one_param_poly(z, ring9);
        REQUIRE(coeff_mat(gz, 0) == Mat<Fq>::identity(f3, 3));
        for (unsigned j = 1; j < 9; ++j) REQUIRE(coeff_mat(gz, j).is_zero());
    }
}

TEST_CASE("pi operator for the standard representation is B_0") {
    Fq f3(3);
    Rng rng(13);
    auto e = RepExpr::std_rep(3);
    for (unsigned r = 1; r <= 3; ++r) {
        auto t = sample_C_r(f3, 3, r, AlgTag::gl, rng);
        REQUIRE(pi_ur_rep(e, t) == t.b[0]);
    }
    // zero tuple gives theta = 0
    NilTuple<Fq> z;
    z.field = &f3;
    z.p = 3;
    z.N = 3;
    z.tag = AlgTag::gl;
    z.b = {Mat<Fq>(f3, 3, 3), Mat<Fq>(f3, 3, 3)};
    REQUIRE(pi_ur_rep(e, z).is_zero());
    REQUIRE(pi_sum_rep(e, z).is_zero());
}

TEST_CASE("sym^2 of the standard rep of SL_2 at p=3: Jordan type [3]") {
    // brute-force oracle: g = I + T e_12 acts on basis x^2, xy, y^2 by
    //   x -> x, y -> Tx + y, so the T-coefficient is
    //   [[0,1,0],[0,0,2],[0,0,0]] with rank sequence 3,2,1,0
    Fq f3(3);
    NilTuple<Fq> t;
    t.field = &f3;
    t.p = 3;
    t.N = 2;
    t.tag = AlgTag::sl;
    t.b = {unit(f3, 2, 0, 1)};
    auto theta = pi_ur_rep(RepExpr::sym(2, RepExpr::std_rep(2)), t);
    Mat<Fq> expect(f3, 3, 3);
    expect.at(0, 1) = 1;
    expect.at(1, 2) = 2;
    REQUIRE(theta == expect);
    REQUIRE(jordan_partition(theta, 3).str() == "[3]^1");
}

TEST_CASE("recipes agree for r = 1 and verdicts agree in general") {
    Fq f3(3);
    Rng rng(17);
    auto e = RepExpr::sym(2, RepExpr::std_rep(2));
    for (int i = 0; i < 10; ++i) {
        auto t = sample_C_r(f3, 2, 1, AlgTag::sl, rng);
        REQUIRE(pi_ur_rep(e, t) == pi_sum_rep(e, t));  // Lambda_1 = id
    }
    for (int i = 0; i < 10; ++i) {
        auto t = sample_C_r(f3, 2, 2, AlgTag::sl, rng);
        auto a = jordan_partition(pi_ur_rep(e, t), 3);
        auto b = jordan_partition(pi_sum_rep(e, t), 3);
        REQUIRE(a.stable_nonzero() == b.stable_nonzero());
    }
}

TEST_CASE("operator-level conjugation equivariance") {
    Fq f3(3);
    Rng rng(19);
    auto e = RepExpr::sym(2, RepExpr::std_rep(2));
    for (int i = 0; i < 10; ++i) {
        auto t = sample_C_r(f3, 2, 2, AlgTag::sl, rng);
        auto g = sample_group_element(f3, 2, AlgTag::sl, rng);
        auto lhs = pi_ur_rep(e, conjugate_tuple(g, t));
        auto rg = rep_eval(e, g);
        auto rhs = rg.mul(pi_ur_rep(e, t)).mul(inverse(rg));
        REQUIRE(lhs == rhs);
    }
}

TEST_CASE("stabilization across r: appending zeros does not change theta") {
    Fq f3(3);
    Rng rng(23);
    auto e = RepExpr::tensor(RepExpr::std_rep(2), RepExpr::dual(RepExpr::std_rep(2)));
    for (int i = 0; i < 8; ++i) {
        auto t = sample_C_r(f3, 2, 2, AlgTag::gl, rng);
        auto ext = t;
        ext.b.push_back(Mat<Fq>(f3, 2, 2));
        REQUIRE(pi_ur_rep(e, ext) == pi_ur_rep(e, t));
        ext.b.push_back(Mat<Fq>(f3, 2, 2));
        REQUIRE(pi_ur_rep(e, ext) == pi_ur_rep(e, t));
    }
}

TEST_CASE("direct sums and duals of representations") {
    Fq f3(3);
    Rng rng(29);
    auto s = RepExpr::std_rep(3);
    auto e = RepExpr::dsum(s, RepExpr::dual(s));
    for (int i = 0; i < 8; ++i) {
        auto t = sample_C_r(f3, 3, 2, AlgTag::gl, rng);
        auto theta = pi_ur_rep(e, t);
        auto a = pi_ur_rep(s, t);
        auto b = pi_ur_rep(RepExpr::dual(s), t);
        REQUIRE(theta == a.dsum(b));
        // dual of the standard rep has theta = -B_0^T
        REQUIRE(b == t.b[0].transpose().neg());
    }
}

TEST_CASE("sub and quotient representations") {
    Fq f3(3);
    // inside std(2) (x) std(2) the symmetric square sits as the span of
    // e00, e01 + e10, e11; the quotient is the wedge square
    auto t2 = RepExpr::tensor(RepExpr::std_rep(2), RepExpr::std_rep(2));
    std::vector<std::vector<long long>> symb{{1, 0, 0, 0}, {0, 1, 1, 0}, {0, 0, 0, 1}};
    auto sub = RepExpr::sub(t2, symb);
    auto quot = RepExpr::quot(t2, symb);
    REQUIRE(rep_dim(sub) == 3);
    REQUIRE(rep_dim(quot) == 1);
    Rng rng(31);
    for (int i = 0; i < 6; ++i) {
        auto t = sample_C_r(f3, 2, 1, AlgTag::sl, rng);
        auto th_sub = pi_ur_rep(sub, t);
        auto th_sym = pi_ur_rep(RepExpr::sym(2, RepExpr::std_rep(2)), t);
        REQUIRE(jordan_partition(th_sub, 3) == jordan_partition(th_sym, 3));
        auto th_q = pi_ur_rep(quot, t);
        REQUIRE(jordan_partition(th_q, 3) == jordan_partition(pi_ur_rep(RepExpr::wedge(2, RepExpr::std_rep(2)), t), 3));
    }
    // non-invariant basis is rejected
    std::vector<std::vector<long long>> bad{{1, 0, 0, 0}};
    Rng rng2(37);
    auto t = sample_C_r(f3, 2, 1, AlgTag::sl, rng2);
    bool nonzero = !t.b[0].is_zero();
    if (nonzero) REQUIRE_THROWS_AS(pi_ur_rep(RepExpr::sub(t2, bad), t), ValidationError);
}

TEST_CASE("theta is p-nilpotent for every rep and valid tuple") {
    Fq f4(2, 2);
    Rng rng(41);
    auto e = RepExpr::tensor(RepExpr::std_rep(2), RepExpr::sym(1, RepExpr::std_rep(2)));
    for (int i = 0; i < 10; ++i) {
        auto t = sample_C_r(f4, 2, 2, AlgTag::gl, rng);
        auto theta = pi_ur_rep(e, t);
        REQUIRE(theta.pow(2).is_zero());
    }
}

TEST_CASE("wedge powers") {
    Fq f3(3);
    // wedge^2 of std(3) at a 1-parameter subgroup: theta compatible with the
    // tensor construction through the sub expression
    auto w = RepExpr::wedge(2, RepExpr::std_rep(3));
    REQUIRE(rep_dim(w) == 3);
    Rng rng(43);
    auto t = sample_C_r(f3, 3, 1, AlgTag::gl, rng);
    auto theta = pi_ur_rep(w, t);
    REQUIRE(theta.pow(3).is_zero());
}
