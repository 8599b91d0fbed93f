#pragma once

#include <vector>

#include "supvar/common.hpp"
#include "supvar/matrix.hpp"
#include "supvar/umodule.hpp"

namespace supvar {

// A homogeneous polynomial in the degree-2 generators x_1..x_r of the even
// cohomology of kG_{a(r)}: terms are (exponent vector, integer coefficient).
struct CohClass {
    unsigned r = 0;
    std::vector<std::pair<std::vector<unsigned>, long long>> terms;

    unsigned degree() const {
        unsigned d = 0;
        for (const auto& [beta, c] : terms) {
            (void)c;
            unsigned s = 0;
            for (auto b : beta) s += b;
            d = std::max(d, s);
        }
        return d;
    }
};

namespace detail {

inline void compositions(unsigned r, unsigned m, std::vector<std::vector<unsigned>>& out) {
    std::vector<unsigned> cur(r, 0);
    auto rec = [&](auto&& self, unsigned pos, unsigned left) -> void {
        if (pos + 1 == r) {
            cur[pos] = left;
            out.push_back(cur);
            return;
        }
        for (unsigned v = 0; v <= left; ++v) {
            cur[pos] = v;
            self(self, pos + 1, left - v);
        }
    };
    if (r == 0) return;
    rec(rec, 0, m);
}

}  // namespace detail

// Carlson module L_zeta over kG_{a(r)}, p odd: the kernel of the cocycle
// Omega^{2n} k -> k classified by zeta.
//
// The minimal free resolution of k is the tensor product of the r standard
// 2-periodic resolutions of k over k[u_i]/(u_i^p); its degree-m part is
// indexed by compositions |a| = m with differential u_i on odd a_i and
// u_i^(p-1) on even a_i, with Koszul signs.  Under this basis the monomial
// x^beta is dual to e_{2 beta}, which pins the cocycle zeta-hat explicitly;
// L_zeta is the image under d of its kernel.
template <class F>
UModule<F> umodule_carlson(const F& field, unsigned r, const CohClass& zeta) {
    std::uint64_t p = field.characteristic();
    if (p == 2) throw ValidationError("carlson: p = 2 is unsupported (generators sit in degree 1)");
    if (zeta.r != r) throw ValidationError("carlson: class has wrong number of variables");
    if (zeta.terms.empty()) throw ValidationError("carlson: zeta must be nonzero");
    unsigned n = 0;
    for (const auto& [beta, c] : zeta.terms) {
        (void)c;
        if (beta.size() != r) throw ValidationError("carlson: exponent vector has wrong length");
        unsigned s = 0;
        for (auto b : beta) s += b;
        if (n == 0) n = s;
        if (s != n || s == 0) throw ValidationError("carlson: zeta must be homogeneous of degree >= 1");
    }

    auto reg = umodule_regular(field, r);
    unsigned lam = reg.dim;  // p^r
    // multiplication operators on the regular module
    std::vector<Mat<F>> mul_u;     // by u_i
    std::vector<Mat<F>> mul_upm1;  // by u_i^(p-1)
    for (unsigned i = 0; i < r; ++i) {
        mul_u.push_back(reg.u[i]);
        mul_upm1.push_back(reg.u[i].pow(p - 1));
    }

    std::vector<std::vector<unsigned>> top, bot;
    detail::compositions(r, 2 * n, top);
    detail::compositions(r, 2 * n - 1, bot);
    auto bot_index = [&](const std::vector<unsigned>& a) {
        for (std::size_t i = 0; i < bot.size(); ++i)
            if (bot[i] == a) return i;
        throw CheckFailure("carlson: composition lookup failed");
    };

    // differential F_{2n} -> F_{2n-1}
    Mat<F> d(field, lam * bot.size(), lam * top.size());
    for (std::size_t ai = 0; ai < top.size(); ++ai) {
        const auto& a = top[ai];
        int sign = 1;
        for (unsigned i = 0; i < r; ++i) {
            if (a[i] > 0) {
                auto a2 = a;
                a2[i] -= 1;
                const auto& blk = (a[i] % 2 == 1) ? mul_u[i] : mul_upm1[i];
                auto signed_blk = sign == 1 ? blk : blk.neg();
                std::size_t bi = bot_index(a2);
                for (std::size_t row = 0; row < lam; ++row)
                    for (std::size_t col = 0; col < lam; ++col)
                        if (!field.is_zero(signed_blk.at(row, col)))
                            d.at(bi * lam + row, ai * lam + col) = signed_blk.at(row, col);
            }
            if (a[i] % 2 == 1) sign = -sign;
        }
    }

    // the cocycle as a functional on F_{2n}
    Mat<F> zrow(field, 1, lam * top.size());
    for (const auto& [beta, c] : zeta.terms) {
        std::vector<unsigned> a(r);
        for (unsigned i = 0; i < r; ++i) a[i] = 2 * beta[i];
        for (std::size_t ai = 0; ai < top.size(); ++ai)
            if (top[ai] == a) zrow.at(0, ai * lam) = field.from_int(c);
    }
    if (zrow.is_zero()) throw CheckFailure("carlson: cocycle row vanished");

    auto ker = kernel_basis(zrow);  // dim - 1 columns
    auto img = d.mul(ker);
    // independent columns of d(ker zeta-hat) span L_zeta
    IncrementalSpan<F> span(field, lam * bot.size());
    std::vector<std::size_t> keep;
    for (std::size_t c = 0; c < img.cols(); ++c)
        if (span.insert_col(img, c)) keep.push_back(c);
    Mat<F> basis(field, lam * bot.size(), keep.size());
    for (std::size_t j = 0; j < keep.size(); ++j)
        for (std::size_t i = 0; i < basis.rows(); ++i) basis.at(i, j) = img.at(i, keep[j]);

    // ambient module: b_{2n-1} copies of the regular module
    UModule<F> ambient = reg;
    for (std::size_t i = 1; i < bot.size(); ++i) ambient = umodule_dsum(ambient, reg);
    if (basis.cols() == 0) {
        UModule<F> zero;
        zero.field = &field;
        zero.p = p;
        zero.r = r;
        zero.dim = 0;
        for (unsigned i = 0; i < r; ++i) zero.u.emplace_back(field, 0, 0);
        return zero;
    }
    return umodule_sub(ambient, basis);
}

// dimension of the syzygy Omega^m(k) over kG_{a(r)}, by the rank recursion
// dim Omega^m = b_{m-1} p^r - dim Omega^{m-1}; used as a test oracle
inline std::uint64_t omega_dim(std::uint64_t p, unsigned r, unsigned m) {
    std::uint64_t dim = 1;  // Omega^0 = k
    for (unsigned j = 1; j <= m; ++j) {
        std::vector<std::vector<unsigned>> comp;
        detail::compositions(r, j - 1, comp);
        dim = comp.size() * ipow(p, r) - dim;
    }
    return dim;
}

}  // namespace supvar
