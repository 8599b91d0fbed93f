#include <catch2/catch_amalgamated.hpp>

#include "supvar/carlson.hpp"
#include "supvar/fq.hpp"
#include "supvar/module_data.hpp"
#include "supvar/pi_op.hpp"
#include "supvar/u3module.hpp"
#include "supvar/umodule.hpp"

using namespace supvar;

TEST_CASE("regular module is free and detects its own rank") {
    Fq f3(3);
    auto reg = umodule_regular(f3, 2);
    REQUIRE(reg.dim == 9);
    REQUIRE(valid_umodule(reg));
    REQUIRE(umodule_is_free(reg));
    REQUIRE_FALSE(umodule_is_free(umodule_restrict(reg, 3)));  // 9 != b * 27
    REQUIRE(umodule_is_free(umodule_restrict(umodule_regular(f3, 2), 1)));
    // trivial module is never free
    REQUIRE_FALSE(umodule_is_free(umodule_trivial(f3)));
    // free rank-2 module over kG_a(1)
    auto f = umodule_dsum(umodule_regular(f3, 1), umodule_regular(f3, 1));
    REQUIRE(umodule_is_free(f));
}

TEST_CASE("regular module restricts freely along any nonzero pi-point") {
    Fq f9(3, 2);
    auto reg = umodule_regular(f9, 2);
    Rng rng(3);
    for (int i = 0; i < 10; ++i) {
        std::vector<Fq::Elem> b{f9.random(rng), f9.random(rng)};
        if (f9.is_zero(b[0]) && f9.is_zero(b[1])) b[0] = f9.one();
        auto theta = pi_ur_umodule(reg, b);
        auto jt = jordan_partition(theta, 3);
        REQUIRE_FALSE(jt.stable_nonzero());  // all blocks of size p
        REQUIRE(jt.m.back() == 3);
    }
}

TEST_CASE("L_S truncations") {
    Fq f3(3);
    // S = {}: every action is zero
    auto l0 = umodule_ls(f3, {}, 4);
    REQUIRE(l0.r == 1);
    REQUIRE(l0.u[0].is_zero());

    // S = {0}, D = p-1: u_0 = d/dT is a single Jordan block at b = 1
    auto l1 = umodule_ls(f3, {0}, 2);
    std::vector<Fq::Elem> b1{f3.one()};
    REQUIRE(jordan_partition(pi_ur_umodule(l1, b1), 3).str() == "[3]^1");

    // S = {1}, p = 3, D = 9: theta = 0 at b = (1,0), nonzero at b = (0,1)
    auto l2 = umodule_ls(f3, {1}, 9);
    REQUIRE(l2.r == 2);
    REQUIRE(valid_umodule(l2));
    std::vector<Fq::Elem> b10{f3.one(), f3.zero()};
    std::vector<Fq::Elem> b01{f3.zero(), f3.one()};
    REQUIRE(pi_ur_umodule(l2, b10).is_zero());
    REQUIRE_FALSE(pi_ur_umodule(l2, b01).is_zero());
}

TEST_CASE("u-module pi operators") {
    Fq f3(3);
    auto reg = umodule_regular(f3, 1);
    // r=1, b = 1: theta = U_0
    std::vector<Fq::Elem> one{f3.one()};
    REQUIRE(pi_ur_umodule(reg, one) == reg.u[0]);
    // all b = 0: theta = 0
    std::vector<Fq::Elem> zz{f3.zero(), f3.zero()};
    REQUIRE(pi_ur_umodule(reg, zz).is_zero());
    REQUIRE(pi_sum_umodule(reg, zz).is_zero());
    // trivial module: theta = 0 for every b
    auto k = umodule_trivial(f3);
    std::vector<Fq::Elem> b{f3.from_int(2), f3.one()};
    REQUIRE(pi_ur_umodule(k, b).is_zero());
    // r = 1: recipes identical
    Rng rng(5);
    auto ls = umodule_ls(f3, {0}, 5);
    for (int i = 0; i < 5; ++i) {
        std::vector<Fq::Elem> bb{f3.random(rng)};
        REQUIRE(pi_ur_umodule(ls, bb) == pi_sum_umodule(ls, bb));
    }
}

TEST_CASE("duals, sums, tensors of u-modules") {
    Fq f3(3);
    auto ls = umodule_ls(f3, {0}, 3);
    auto d = umodule_dual(ls);
    REQUIRE(valid_umodule(d));
    REQUIRE(d.u[0] == ls.u[0].transpose().neg());

    auto s = umodule_dsum(ls, d);
    REQUIRE(s.dim == ls.dim * 2);
    std::vector<Fq::Elem> b{f3.one()};
    auto jt = jordan_partition(pi_ur_umodule(s, b), 3);
    REQUIRE(jt == jordan_sum(jordan_partition(pi_ur_umodule(ls, b), 3),
                             jordan_partition(pi_ur_umodule(d, b), 3)));

    // tensor: the operator is the coefficient extraction of the Kronecker
    // product of the restricted series (definitional identity)
    auto a = umodule_ls(f3, {0}, 2);
    auto t = umodule_tensor(a, a);
    REQUIRE(valid_umodule(t));
    REQUIRE(t.dim == 9);
    Rng rng(7);
    for (int i = 0; i < 6; ++i) {
        std::vector<Fq::Elem> bb{f3.random(rng), f3.random(rng)};
        std::vector<Fq::Elem> rev(bb.rbegin(), bb.rend());
        PolyRing<Fq> ring9(f3, 9);
        auto sa = umodule_restricted_series(a, rev, ring9);
        Mat<Fq> expect(f3, 9, 9);
        for (unsigned e = 0; e <= 3; ++e) {
            auto c1 = coeff_mat(sa, e);
            auto c2 = coeff_mat(sa, 3 - e);
            if (!c1.is_zero() && !c2.is_zero()) expect = expect.add(c1.kron(c2));
        }
        REQUIRE(pi_ur_umodule(t, bb) == expect);
    }

    // tensor with a free module is free at every nonzero point
    auto reg = umodule_regular(f3, 1);
    auto tf = umodule_tensor(ls, reg);
    std::vector<Fq::Elem> nz{f3.from_int(2)};
    REQUIRE_FALSE(jordan_partition(pi_ur_umodule(tf, nz), 3).stable_nonzero());
}

TEST_CASE("twist shifts the action levels") {
    Fq f3(3);
    auto ls = umodule_ls(f3, {0}, 4);
    auto tw = umodule_twist(ls, 1);
    REQUIRE(tw.r == ls.r + 1);
    REQUIRE(tw.u[0].is_zero());
    REQUIRE(tw.u[1] == ls.u[0]);
    // support verdict moves with the shift: at (a, b) the twisted module sees b
    Rng rng(9);
    for (int i = 0; i < 6; ++i) {
        std::vector<Fq::Elem> ab{f3.random(rng), f3.random(rng)};
        std::vector<Fq::Elem> btail{ab[1]};
        auto v1 = jordan_partition(pi_ur_umodule(tw, ab), 3).stable_nonzero();
        auto v2 = jordan_partition(pi_ur_umodule(ls, btail), 3).stable_nonzero();
        REQUIRE(v1 == v2);
    }
}

TEST_CASE("sub and quotient u-modules, radical series") {
    Fq f3(3);
    auto reg = umodule_regular(f3, 1);
    auto radb = umodule_radical_basis(reg);
    REQUIRE(radb.cols() == 2);
    auto rad = umodule_sub(reg, radb);
    REQUIRE(rad.dim == 2);
    auto head = umodule_quot(reg, radb);
    REQUIRE(head.dim == 1);
    REQUIRE(head.u[0].is_zero());
    REQUIRE(valid_umodule(rad));
    // a non-invariant subspace is rejected
    Mat<Fq> bad(f3, 3, 1);
    bad.at(0, 0) = f3.one();  // span{1} is not stable under multiplication by u
    REQUIRE_THROWS_AS(umodule_sub(reg, bad), ValidationError);
}

TEST_CASE("carlson modules") {
    Fq f3(3);
    // r = 1, zeta = x_1: Omega^2 k = k and the cocycle is an isomorphism,
    // so L_zeta = 0 and theta is (trivially) free at every b != 0
    CohClass z1{1, {{{1}, 1}}};
    auto l = umodule_carlson(f3, 1, z1);
    REQUIRE(l.dim == 0);
    REQUIRE(omega_dim(3, 1, 2) == 1);

    // r = 2: dim L_zeta = dim Omega^2 k - 1
    CohClass zx{2, {{{1, 0}, 1}}};
    auto lx = umodule_carlson(f3, 2, zx);
    REQUIRE(valid_umodule(lx));
    REQUIRE((std::uint64_t)lx.dim == omega_dim(3, 2, 2) - 1);
    REQUIRE(lx.dim == 9);

    CohClass zsum{2, {{{1, 0}, 1}, {{0, 1}, 1}}};
    auto ls = umodule_carlson(f3, 2, zsum);
    REQUIRE((std::uint64_t)ls.dim == omega_dim(3, 2, 2) - 1);

    // degree-2 class: dim L = dim Omega^4 k - 1
    CohClass zq{2, {{{2, 0}, 1}}};
    auto lq = umodule_carlson(f3, 2, zq);
    REQUIRE(valid_umodule(lq));
    REQUIRE((std::uint64_t)lq.dim == omega_dim(3, 2, 4) - 1);

    REQUIRE_THROWS_AS(umodule_carlson(Fq(2), 1, z1), ValidationError);  // p = 2 unsupported
    CohClass zzero{2, {}};
    REQUIRE_THROWS_AS(umodule_carlson(f3, 2, zzero), ValidationError);
}

TEST_CASE("carlson support is the zero locus of the class") {
    // the identification: x_1 pairs with b_0, x_2 with b_1^p (one Frobenius
    // per level), so x_1 + x_2 cuts { b_0 + b_1^p = 0 }; the twist is
    // invisible over F_p and F_{p^2} but not over F_{p^3}
    Fq f27(3, 3);
    CohClass zx{2, {{{1, 0}, 1}}};
    CohClass zy{2, {{{0, 1}, 1}}};
    CohClass zsum{2, {{{1, 0}, 1}, {{0, 1}, 1}}};
    auto lx = bind_umodule(f27, std::get<UModuleData>(data_carlson(3, 2, zx).v));
    auto ly = bind_umodule(f27, std::get<UModuleData>(data_carlson(3, 2, zy).v));
    auto lsum = bind_umodule(f27, std::get<UModuleData>(data_carlson(3, 2, zsum).v));
    Rng rng(11);
    int on_locus = 0;
    for (int i = 0; i < 40; ++i) {
        std::vector<Fq::Elem> b{f27.random(rng), f27.random(rng)};
        if (i % 3 == 1) b[0] = f27.neg(f27.frobenius(b[1], 1));  // b_0 + b_1^p = 0
        if (f27.is_zero(b[0]) && f27.is_zero(b[1])) continue;
        bool vx = jordan_partition(pi_ur_umodule(lx, b), 3).stable_nonzero();
        bool vy = jordan_partition(pi_ur_umodule(ly, b), 3).stable_nonzero();
        bool vs = jordan_partition(pi_ur_umodule(lsum, b), 3).stable_nonzero();
        REQUIRE(vx == f27.is_zero(b[0]));
        REQUIRE(vy == f27.is_zero(b[1]));
        bool locus = f27.is_zero(f27.add(b[0], f27.frobenius(b[1], 1)));
        REQUIRE(vs == locus);
        if (locus) ++on_locus;
    }
    REQUIRE(on_locus > 3);  // both verdict directions were exercised
}

TEST_CASE("u3 induced module") {
    Fq f3(3);
    U3Induced m{3, 4};
    REQUIRE(u3_dim(m) == 15);
    Rng rng(13);
    // tuples through the center act trivially
    NilTuple<Fq> z;
    z.field = &f3;
    z.p = 3;
    z.N = 3;
    z.tag = AlgTag::u3;
    Mat<Fq> e13(f3, 3, 3);
    e13.at(0, 2) = f3.one();
    z.b = {e13, e13.scale(f3.from_int(2))};
    REQUIRE(in_C_r(z));
    REQUIRE(pi_ur_u3(m, z).is_zero());
    REQUIRE(pi_sum_u3(m, z).is_zero());

    // non-central tuples act nontrivially and the operator is p-nilpotent
    for (int i = 0; i < 8; ++i) {
        auto t = sample_C_r(f3, 3, 2, AlgTag::u3, rng);
        bool central = true;
        for (const auto& bm : t.b)
            if (!f3.is_zero(bm.at(0, 1)) || !f3.is_zero(bm.at(1, 2))) central = false;
        auto theta = pi_ur_u3(m, t);
        REQUIRE(theta.pow(3).is_zero());
        if (central) REQUIRE(theta.is_zero());
    }

    // D = 0: the one-dimensional module is fixed
    U3Induced m0{3, 0};
    auto t = sample_C_r(f3, 3, 1, AlgTag::u3, rng);
    REQUIRE(pi_ur_u3(m0, t).is_zero());
}

TEST_CASE("module data round trips and validation") {
    auto reg = data_regular(3, 2);
    REQUIRE(module_dim(reg) == 9);
    validate_module(reg);
    auto rad = data_radical(reg);
    REQUIRE(module_dim(rad) == 8);
    auto head = data_head(reg);
    REQUIRE(module_dim(head) == 1);
    auto rb = data_basis_change(reg, 123);
    REQUIRE(module_dim(rb) == 9);
    validate_module(rb);
    auto tw = data_twist(data_ls(3, {0}, 2), 1);
    REQUIRE(std::get<UModuleData>(tw.v).r == 2);
}
