#include <catch2/catch_amalgamated.hpp>

#include "supvar/fq.hpp"
#include "supvar/matrix.hpp"
#include "supvar/polyring.hpp"
#include "supvar/ratfun.hpp"

using namespace supvar;

TEST_CASE("rref basics") {
    Fq f3(3);
    auto id = Mat<Fq>::identity(f3, 3);
    REQUIRE(rref(id).rank == 3);
    Mat<Fq> z(f3, 4, 4);
    REQUIRE(rref(z).rank == 0);
    // [[1,2],[2,1]] over F_3 has rank 1: 2*row1 = row2 mod 3
    Mat<Fq> m(f3, 2, 2);
    m.at(0, 0) = 1;
    m.at(0, 1) = 2;
    m.at(1, 0) = 2;
    m.at(1, 1) = 1;
    REQUIRE(rref(m).rank == 1);
    auto ker = kernel_basis(m);
    REQUIRE(ker.cols() == 1);
    REQUIRE(m.mul(ker).is_zero());
}

TEST_CASE("kernel dimensions") {
    Fq f3(3);
    REQUIRE(kernel_basis(Mat<Fq>::identity(f3, 3)).cols() == 0);
    Mat<Fq> z(f3, 4, 4);
    auto ker = kernel_basis(z);
    REQUIRE(ker.cols() == 4);
}

TEST_CASE("rank properties on random matrices") {
    Fq f4(2, 2);
    Rng rng(13);
    for (int i = 0; i < 40; ++i) {
        auto m = random_mat(f4, 4, 5, rng);
        auto r = rank(m);
        REQUIRE(r == rank(m.transpose()));
        auto ker = kernel_basis(m);
        REQUIRE(ker.cols() == m.cols() - r);
        REQUIRE(m.mul(ker).is_zero());
    }
}

TEST_CASE("solve and inverse over the rational function field") {
    RatFun k(3);
    Rng rng(17);
    for (int i = 0; i < 10; ++i) {
        auto g = random_invertible(k, 3, rng);
        auto gi = inverse(g);
        REQUIRE(g.mul(gi) == Mat<RatFun>::identity(k, 3));
        auto b = random_mat(k, 3, 2, rng);
        auto x = solve(g, b);
        REQUIRE(g.mul(x) == b);
    }
    Mat<RatFun> sing(k, 2, 2);
    sing.at(0, 0) = k.one();
    REQUIRE_THROWS_AS(inverse(sing), ValidationError);
}

TEST_CASE("poly ring matrices") {
    Fq f3(3);
    PolyRing<Fq> ring(f3, 9);

    // (I + TB)(I - TB) = I when B^2 = 0
    Mat<Fq> b(f3, 2, 2);
    b.at(0, 1) = 1;
    auto lift = [&](const Mat<Fq>& m, unsigned e) {
        PolyMat<Fq> r(ring, m.rows(), m.cols());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) r.at(i, j) = ring.monomial(e, m.at(i, j));
        return r;
    };
    auto id = Mat<PolyRing<Fq>>::identity(ring, 2);
    auto a1 = id.add(lift(b, 1));
    auto a2 = id.sub(lift(b, 1));
    REQUIRE(a1.mul(a2) == id);

    // coefficient extraction
    REQUIRE(coeff_mat(a1, 0) == Mat<Fq>::identity(f3, 2));
    REQUIRE(coeff_mat(a1, 1) == b);
    REQUIRE(coeff_mat(a1, 2).is_zero());
    REQUIRE_THROWS_AS(coeff_mat(a1, 9), ValidationError);

    // truncation kills T^2 when D = 2
    PolyRing<Fq> ring2(f3, 2);
    Mat<Fq> c(f3, 2, 2);
    c.at(1, 0) = 2;
    auto lift2 = [&](const Mat<Fq>& m) {
        PolyMat<Fq> r(ring2, m.rows(), m.cols());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) r.at(i, j) = ring2.monomial(1, m.at(i, j));
        return r;
    };
    auto id2 = Mat<PolyRing<Fq>>::identity(ring2, 2);
    auto prod = id2.add(lift2(b)).mul(id2.add(lift2(c)));
    REQUIRE(coeff_mat(prod, 1) == b.add(c));

    // associativity up to truncation on random triples
    Rng rng(19);
    for (int i = 0; i < 20; ++i) {
        PolyMat<Fq> x(ring, 2, 2), y(ring, 2, 2), z(ring, 2, 2);
        for (std::size_t r0 = 0; r0 < 2; ++r0)
            for (std::size_t c0 = 0; c0 < 2; ++c0) {
                x.at(r0, c0) = ring.random(rng);
                y.at(r0, c0) = ring.random(rng);
                z.at(r0, c0) = ring.random(rng);
            }
        REQUIRE(x.mul(y.mul(z)) == x.mul(y).mul(z));
    }
}

TEST_CASE("mixed truncation bounds are rejected") {
    Fq f3(3);
    PolyRing<Fq> r9(f3, 9), r3(f3, 3);
    auto a = Mat<PolyRing<Fq>>::identity(r9, 2);
    auto b = Mat<PolyRing<Fq>>::identity(r3, 2);
    REQUIRE_THROWS_AS(a.mul(b), ValidationError);
    REQUIRE_THROWS_AS(a.add(b), ValidationError);
}

TEST_CASE("poly matrix inverse by Neumann series") {
    Fq f3(3);
    PolyRing<Fq> ring(f3, 27);
    Rng rng(23);
    for (int i = 0; i < 10; ++i) {
        PolyMat<Fq> a(ring, 3, 3);
        auto c0 = random_invertible(f3, 3, rng);
        for (std::size_t r0 = 0; r0 < 3; ++r0)
            for (std::size_t c = 0; c < 3; ++c) {
                a.at(r0, c) = ring.monomial(0, c0.at(r0, c));
                ring.add_assign(a.at(r0, c), ring.monomial(1 + (unsigned)rng.below(3), f3.random(rng)));
            }
        auto ai = polymat_inverse(a);
        REQUIRE(a.mul(ai) == Mat<PolyRing<Fq>>::identity(ring, 3));
    }
}
