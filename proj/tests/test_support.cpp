#include <catch2/catch_amalgamated.hpp>

#include "supvar/fq.hpp"
#include "supvar/support.hpp"

using namespace supvar;

TEST_CASE("verdicts for the basic modules") {
    Fq f3(3);
    auto k = data_trivial(3);
    auto reg = data_regular(3, 1);
    Rng rng(3);
    for (int i = 0; i < 10; ++i) {
        auto t = sample_C_r(f3, 2, 1, AlgTag::ga, rng);
        if (is_zero_tuple(t)) continue;
        // trivial module: [1]^1, in support everywhere
        auto vk = jordan_type_at(k, t, Recipe::ur);
        REQUIRE(vk.jt.str() == "[1]^1");
        REQUIRE(vk.stable);
        // regular module: free
        auto vr = jordan_type_at(reg, t, Recipe::ur);
        REQUIRE_FALSE(vr.stable);
        REQUIRE(vr.jt.str() == "[3]^1");
    }
    // zero tuple: in support for any nonzero module
    auto z = tuple_from_scalars(f3, 3, {f3.zero()});
    REQUIRE(in_support(k, z));
    REQUIRE(in_support(reg, z));
}

TEST_CASE("steinberg for SL_2 has trivial stable type") {
    // sym^(p-1)(std) restricted to the first Frobenius kernel is irreducible
    // and injective, so its support meets only the zero tuple
    for (std::uint64_t p : {3ull, 5ull}) {
        ModuleData st;
        st.name = "steinberg";
        st.v = RepModuleData{p, AlgTag::sl, 2, RepExpr::sym((unsigned)p - 1, RepExpr::std_rep(2))};
        Fq k(p, 1);
        Rng rng(5);
        for (int i = 0; i < 10; ++i) {
            auto t = sample_C_r(k, 2, 1, AlgTag::sl, rng);
            if (is_zero_tuple(t)) continue;
            auto v = jordan_type_at(st, t, Recipe::ur);
            REQUIRE_FALSE(v.stable);
        }
    }
}

TEST_CASE("fingerprints") {
    auto plan = SamplePlan::defaults(3);
    plan.samples = 16;
    auto k = data_trivial(3);
    auto fp = fingerprint(k, 2, plan);
    REQUIRE(fp.violations.empty());
    REQUIRE(fp.nonzero + fp.zero_tuples == fp.entries.size());
    REQUIRE(fp.supported == fp.nonzero);  // trivial module: fraction 1

    auto reg = data_regular(3, 2);
    auto fr = fingerprint(reg, 2, plan);
    REQUIRE(fr.violations.empty());
    REQUIRE(fr.supported == 0);  // free module: fraction 0 over nonzero tuples

    // the fingerprint of M + M^* covers both summands pointwise
    auto ls = data_ls(3, {1}, 9);
    auto both = data_dsum(ls, data_dual(ls));
    auto f1 = fingerprint(ls, 2, plan);
    auto f2 = fingerprint(both, 2, plan);
    REQUIRE(f1.violations.empty());
    REQUIRE(f2.violations.empty());
    for (std::size_t i = 0; i < f1.entries.size(); ++i) {
        // same plan, same tuples: the sum is supported wherever a summand is
        if (f1.entries[i].in_support) REQUIRE(f2.entries[i].in_support);
    }
}

TEST_CASE("axiom suite has no violations on a small corpus") {
    std::vector<ModuleData> corpus{data_trivial(3), data_regular(3, 1), data_ls(3, {0}, 3),
                                   data_ls(3, {1}, 9)};
    ModuleData st;
    st.name = "steinberg";
    st.v = RepModuleData{3, AlgTag::sl, 2, RepExpr::sym(2, RepExpr::std_rep(2))};
    corpus.push_back(st);
    auto plan = SamplePlan::defaults(3);
    plan.samples = 8;
    auto rep = axiom_suite(corpus, 2, plan);
    CAPTURE(rep.violations);
    REQUIRE(rep.violations.empty());
    REQUIRE(rep.checks > 0);
}

TEST_CASE("corpus {k}: everything passes trivially") {
    std::vector<ModuleData> corpus{data_trivial(5)};
    auto plan = SamplePlan::defaults(5);
    plan.samples = 4;
    auto rep = axiom_suite(corpus, 1, plan);
    REQUIRE(rep.violations.empty());
}

TEST_CASE("mock injectivity detection") {
    // the regular kG_a(r) module is free over levels <= r, not over r+1
    auto reg = std::get<UModuleData>(data_regular(3, 2).v);
    auto verdicts = mock_injective_up_to(reg, 3);
    REQUIRE(verdicts == std::vector<bool>{true, true, false});
    auto k = std::get<UModuleData>(data_trivial(3).v);
    REQUIRE(mock_injective_up_to(k, 3) == std::vector<bool>{false, false, false});
    auto free2 = std::get<UModuleData>(data_dsum(data_regular(3, 1), data_regular(3, 1)).v);
    REQUIRE(mock_injective_up_to(free2, 1) == std::vector<bool>{true});
}

TEST_CASE("exponential degree bounds") {
    RepModuleData triv{3, AlgTag::gl, 2, RepExpr::trivial_rep()};
    REQUIRE(exp_degree_bound(triv, 3, 5, 0) == 0u);
    RepModuleData std3{3, AlgTag::gl, 3, RepExpr::std_rep(3)};
    REQUIRE(exp_degree_bound(std3, 3, 8, 0) == 1u);
    RepModuleData sym2{3, AlgTag::sl, 2, RepExpr::sym(2, RepExpr::std_rep(2))};
    auto b = exp_degree_bound(sym2, 3, 8, 0);
    REQUIRE(b.has_value());
    REQUIRE(*b <= 2u);
    // tensor bound law: deg(M (x) N) <= deg M + deg N on samples
    RepModuleData tens{3, AlgTag::sl, 2,
                       RepExpr::tensor(RepExpr::sym(2, RepExpr::std_rep(2)), RepExpr::std_rep(2))};
    auto bt = exp_degree_bound(tens, 4, 8, 0);
    REQUIRE(bt.has_value());
    REQUIRE(*bt <= *b + 1u);
    // a window too small to certify
    RepModuleData tw{3, AlgTag::gl, 2, RepExpr::twist(4, RepExpr::std_rep(2))};
    REQUIRE_FALSE(exp_degree_bound(tw, 2, 3, 0).has_value());
}

TEST_CASE("support verdicts are stable under appending zero levels") {
    Fq f9(3, 2);
    auto ls = data_ls(3, {1}, 9);
    Rng rng(7);
    for (int i = 0; i < 10; ++i) {
        auto t = sample_C_r(f9, 2, 2, AlgTag::ga, rng);
        auto ext = t;
        ext.b.push_back(Mat<Fq>(f9, 2, 2));
        REQUIRE(pi_operator(ls, t, Recipe::ur) == pi_operator(ls, ext, Recipe::ur));
    }
}

TEST_CASE("membership equals the rank criterion") {
    // for a p-nilpotent theta on M: not free iff rank(theta^(p-1)) < dim/p,
    // iff rank(theta) < (p-1)/p dim
    Fq f3(3);
    auto ls = data_ls(3, {0}, 8);
    Rng rng(11);
    for (int i = 0; i < 12; ++i) {
        auto t = sample_C_r(f3, 2, 1, AlgTag::ga, rng);
        auto theta = pi_operator(ls, t, Recipe::ur);
        auto v = jordan_partition(theta, 3);
        std::size_t n = theta.rows();
        bool rank_crit = rank(theta.pow(2)) * 3 < n;
        bool rank_crit2 = rank(theta) * 3 < 2 * n;
        REQUIRE(v.stable_nonzero() == rank_crit);
        REQUIRE(v.stable_nonzero() == rank_crit2);
        REQUIRE(stable_jordan_nonzero(theta, 3) == v.stable_nonzero());
    }
}
