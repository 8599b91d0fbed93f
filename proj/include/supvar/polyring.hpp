#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "supvar/common.hpp"
#include "supvar/matrix.hpp"

namespace supvar {

// The truncated polynomial ring K[T]/(T^D) over a coefficient field F.
// Elements are sparse term lists sorted by exponent; multiplication discards
// every term of degree >= D.  Matrices over this ring (Mat<PolyRing<F>>)
// carry the group elements rep(E(T)) whose T^(p^s) coefficients realize the
// distribution operators.
template <class F>
class PolyRing {
public:
    using FElem = typename F::Elem;

    struct Term {
        unsigned exp;
        FElem c;
        bool operator==(const Term& o) const { return exp == o.exp && c == o.c; }
    };

    using Elem = std::vector<Term>;

    PolyRing(const F& base, unsigned trunc) : base_(&base), d_(trunc) {
        if (trunc == 0) throw ValidationError("PolyRing: truncation bound must be positive");
    }

    const F& base() const { return *base_; }
    unsigned trunc() const { return d_; }
    std::uint64_t characteristic() const { return base_->characteristic(); }

    Elem zero() const { return {}; }
    Elem one() const { return {{0u, base_->one()}}; }
    bool is_zero(const Elem& a) const { return a.empty(); }

    Elem from_int(long long v) const {
        auto c = base_->from_int(v);
        if (base_->is_zero(c)) return {};
        return {{0u, c}};
    }

    Elem monomial(unsigned e, FElem c) const {
        if (e >= d_ || base_->is_zero(c)) return {};
        return {{e, std::move(c)}};
    }

    FElem coeff(const Elem& a, unsigned j) const {
        for (const auto& t : a)
            if (t.exp == j) return t.c;
        return base_->zero();
    }

    Elem add(const Elem& a, const Elem& b) const {
        Elem r;
        r.reserve(a.size() + b.size());
        std::size_t i = 0, j = 0;
        while (i < a.size() && j < b.size()) {
            if (a[i].exp < b[j].exp)
                r.push_back(a[i++]);
            else if (a[i].exp > b[j].exp)
                r.push_back(b[j++]);
            else {
                auto s = base_->add(a[i].c, b[j].c);
                if (!base_->is_zero(s)) r.push_back({a[i].exp, std::move(s)});
                ++i;
                ++j;
            }
        }
        while (i < a.size()) r.push_back(a[i++]);
        while (j < b.size()) r.push_back(b[j++]);
        return r;
    }

    void add_assign(Elem& a, const Elem& b) const {
        if (b.empty()) return;
        a = add(a, b);
    }

    Elem neg(const Elem& a) const {
        Elem r = a;
        for (auto& t : r) t.c = base_->neg(t.c);
        return r;
    }

    Elem sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }

    Elem mul(const Elem& a, const Elem& b) const {
        if (a.empty() || b.empty()) return {};
        Elem acc;
        for (const auto& ta : a) {
            Elem part;
            part.reserve(b.size());
            for (const auto& tb : b) {
                unsigned e = ta.exp + tb.exp;
                if (e >= d_) break;  // b sorted, later terms only larger
                auto c = base_->mul(ta.c, tb.c);
                if (!base_->is_zero(c)) part.push_back({e, std::move(c)});
            }
            acc = add(acc, part);
        }
        return acc;
    }

    Elem scale(const Elem& a, const FElem& c) const {
        if (base_->is_zero(c)) return {};
        Elem r;
        r.reserve(a.size());
        for (const auto& t : a) {
            auto x = base_->mul(t.c, c);
            if (!base_->is_zero(x)) r.push_back({t.exp, std::move(x)});
        }
        return r;
    }

    // entrywise Frobenius: coefficients to the p^e, exponents multiplied by
    // p^e (terms pushed past the truncation vanish)
    Elem frobenius(const Elem& a, unsigned e) const {
        if (e == 0) return a;
        std::uint64_t q = 1;
        for (unsigned i = 0; i < e; ++i) q *= base_->characteristic();
        Elem r;
        for (const auto& t : a) {
            std::uint64_t ex = (std::uint64_t)t.exp * q;
            if (ex >= d_) break;
            r.push_back({(unsigned)ex, base_->frobenius(t.c, e)});
        }
        return r;
    }

    bool eq(const Elem& a, const Elem& b) const { return a == b; }

    Elem random(Rng& rng) const {
        Elem r;
        unsigned e = (unsigned)rng.below(std::min(d_, 4u));
        auto c = base_->random(rng);
        if (!base_->is_zero(c)) r.push_back({e, c});
        return r;
    }

private:
    const F* base_;
    unsigned d_;
};

template <class F>
bool rings_compatible(const PolyRing<F>& a, const PolyRing<F>& b) {
    return a.trunc() == b.trunc();
}

template <class F>
using PolyMat = Mat<PolyRing<F>>;

// ring traits: the scalar field living under a matrix ring
template <class R>
struct RingTraits {
    using Base = R;
    static constexpr bool trunc_poly = false;
    static const Base& base(const R& r) { return r; }
};

template <class F>
struct RingTraits<PolyRing<F>> {
    using Base = F;
    static constexpr bool trunc_poly = true;
    static const Base& base(const PolyRing<F>& r) { return r.base(); }
};

// lift a scalar-field matrix to constants of the ring R
template <class R, class F>
Mat<R> lift_const(const R& ring, const Mat<F>& m) {
    if constexpr (RingTraits<R>::trunc_poly) {
        Mat<R> r(ring, m.rows(), m.cols());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                r.at(i, j) = ring.monomial(0, m.at(i, j));
        return r;
    } else {
        return m;
    }
}

// extract the Mat of T^j coefficients
template <class F>
Mat<F> coeff_mat(const PolyMat<F>& m, unsigned j) {
    const auto& ring = m.ring();
    if (j >= ring.trunc()) throw ValidationError("coeff_mat: index beyond truncation");
    Mat<F> r(ring.base(), m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t k = 0; k < m.cols(); ++k) r.at(i, k) = ring.coeff(m.at(i, k), j);
    return r;
}

// inverse of a polynomial matrix whose constant term is invertible:
// A = C0 (I + N) with N of positive T-order, so the Neumann series is finite
template <class F>
PolyMat<F> polymat_inverse(const PolyMat<F>& a) {
    const auto& ring = a.ring();
    auto c0i = inverse(coeff_mat(a, 0));
    auto n = lift_const(ring, c0i).mul(a).sub(Mat<PolyRing<F>>::identity(ring, a.rows()));
    auto inv = Mat<PolyRing<F>>::identity(ring, a.rows());
    auto pw = n;
    bool negate = true;
    for (unsigned k = 1; k < ring.trunc() && !pw.is_zero(); ++k) {
        inv = negate ? inv.sub(pw) : inv.add(pw);
        negate = !negate;
        pw = pw.mul(n);
    }
    return inv.mul(lift_const(ring, c0i));
}

}  // namespace supvar
