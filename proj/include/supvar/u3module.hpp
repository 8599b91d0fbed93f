#pragma once

#include <vector>

#include "supvar/common.hpp"
#include "supvar/matrix.hpp"
#include "supvar/polyring.hpp"

namespace supvar {

// Truncation of the U_3-module k[U_3/Z] = k[x,y] to total degree <= D.
// U_3 acts through the projection U_3/Z = G_a^2 by translation on
// polynomials; a group element with corner entries (a, b) sends a basis
// monomial to (x + a)^i (y + b)^j.  Translation never raises total degree,
// so the truncation is a module.
struct U3Induced {
    std::uint64_t p = 0;
    unsigned D = 0;
};

inline std::size_t u3_dim(const U3Induced& m) {
    return (std::size_t)(m.D + 1) * (m.D + 2) / 2;
}

// basis order: total degree ascending, then x-degree ascending
inline std::vector<std::pair<unsigned, unsigned>> u3_basis(const U3Induced& m) {
    std::vector<std::pair<unsigned, unsigned>> out;
    for (unsigned d = 0; d <= m.D; ++d)
        for (unsigned i = 0; i <= d; ++i) out.push_back({i, d - i});
    return out;
}

// coefficient of T^target in the translation operator by (a(T), b(T))
template <class F>
Mat<F> u3_translation_coeff(const F& field, const U3Induced& m,
                            const typename PolyRing<F>::Elem& a,
                            const typename PolyRing<F>::Elem& b, unsigned target) {
    std::uint64_t p = field.characteristic();
    PolyRing<F> ring(field, target + 1);
    auto clip = [&](const typename PolyRing<F>::Elem& q) {
        typename PolyRing<F>::Elem r;
        for (const auto& t : q)
            if (t.exp <= target) r.push_back(t);
        return r;
    };
    // powers a^m, b^l truncated past the target exponent
    std::vector<typename PolyRing<F>::Elem> apw(m.D + 1), bpw(m.D + 1);
    apw[0] = ring.one();
    bpw[0] = ring.one();
    for (unsigned k = 1; k <= m.D; ++k) {
        apw[k] = ring.mul(apw[k - 1], clip(a));
        bpw[k] = ring.mul(bpw[k - 1], clip(b));
    }
    // table of coeff_target(a^mm b^ll)
    std::vector<std::vector<typename F::Elem>> tab(m.D + 1,
                                                   std::vector<typename F::Elem>(m.D + 1, field.zero()));
    for (unsigned mm = 0; mm <= m.D; ++mm)
        for (unsigned ll = 0; ll + mm <= m.D; ++ll)
            tab[mm][ll] = ring.coeff(ring.mul(apw[mm], bpw[ll]), target);

    auto basis = u3_basis(m);
    std::vector<std::vector<std::size_t>> pos(m.D + 1, std::vector<std::size_t>(m.D + 1, 0));
    for (std::size_t k = 0; k < basis.size(); ++k) pos[basis[k].first][basis[k].second] = k;

    Mat<F> out(field, basis.size(), basis.size());
    for (std::size_t col = 0; col < basis.size(); ++col) {
        auto [i, j] = basis[col];
        for (unsigned u = 0; u <= i; ++u)
            for (unsigned v = 0; v <= j; ++v) {
                auto c = tab[i - u][j - v];
                if (field.is_zero(c)) continue;
                std::uint64_t bc = binom_mod_p(i, u, p) * binom_mod_p(j, v, p) % p;
                if (bc == 0) continue;
                auto w = field.mul(c, field.from_int((long long)bc));
                if (!field.is_zero(w)) field.add_assign(out.at(pos[u][v], col), w);
            }
    }
    return out;
}

}  // namespace supvar
