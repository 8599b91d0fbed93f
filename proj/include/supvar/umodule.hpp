#pragma once

#include <vector>

#include "supvar/common.hpp"
#include "supvar/matrix.hpp"
#include "supvar/niltuple.hpp"
#include "supvar/polyring.hpp"

namespace supvar {

// A module over kG_{a(r)} = k[u_0,...,u_{r-1}]/(u_i^p), given by the action
// matrices of the generators: each U_i is p-nilpotent and they commute.
template <class F>
struct UModule {
    const F* field = nullptr;
    std::uint64_t p = 0;
    unsigned r = 1;
    unsigned dim = 0;
    std::vector<Mat<F>> u;  // size r

    const F& ring() const { return *field; }
};

template <class F>
bool valid_umodule(const UModule<F>& m) {
    if (m.u.size() != m.r || m.r == 0) return false;
    for (const auto& a : m.u) {
        if (a.rows() != m.dim || a.cols() != m.dim) return false;
        if (!is_p_nilpotent(a, m.p)) return false;
    }
    for (std::size_t i = 0; i < m.u.size(); ++i)
        for (std::size_t j = i + 1; j < m.u.size(); ++j)
            if (m.u[i].mul(m.u[j]) != m.u[j].mul(m.u[i])) return false;
    return true;
}

template <class F>
void validate_umodule(const UModule<F>& m) {
    if (!valid_umodule(m)) throw ValidationError("invalid u-module: actions must commute and be p-nilpotent");
}

// ---------------------------------------------------------------------------
// coaction series
// ---------------------------------------------------------------------------

// truncated exponential sum_{j<p} B^j / j!
template <class F>
Mat<F> trunc_exp(const Mat<F>& b, std::uint64_t p) {
    if (!is_p_nilpotent(b, p)) throw ValidationError("trunc_exp: matrix is not p-nilpotent");
    const F& K = b.ring();
    auto r = Mat<F>::identity(K, b.rows());
    auto pw = Mat<F>::identity(K, b.rows());
    long long fact = 1;
    for (std::uint64_t j = 1; j < p; ++j) {
        pw = pw.mul(b);
        fact = (long long)((fact * (long long)j) % (long long)p);
        r = r.add(pw.scale(K.inv(K.from_int(fact))));
    }
    return r;
}

// sum_{j<p} q(T)^j B^j / j! over K[T]/(T^D), for a scalar polynomial q
template <class F>
PolyMat<F> trunc_exp_poly(const PolyRing<F>& ring, const typename PolyRing<F>::Elem& q,
                          const Mat<F>& b) {
    const F& K = b.ring();
    std::uint64_t p = K.characteristic();
    if (!is_p_nilpotent(b, p)) throw ValidationError("trunc_exp_poly: matrix is not p-nilpotent");
    auto out = Mat<PolyRing<F>>::identity(ring, b.rows());
    auto bpow = Mat<F>::identity(K, b.rows());
    auto qpow = ring.one();
    long long fact = 1;
    for (std::uint64_t j = 1; j < p; ++j) {
        bpow = bpow.mul(b);
        qpow = ring.mul(qpow, q);
        if (bpow.is_zero() || ring.is_zero(qpow)) break;
        fact = (long long)((fact * (long long)j) % (long long)p);
        auto coef = K.inv(K.from_int(fact));
        for (std::size_t row = 0; row < b.rows(); ++row)
            for (std::size_t col = 0; col < b.cols(); ++col) {
                auto c = K.mul(bpow.at(row, col), coef);
                if (K.is_zero(c)) continue;
                ring.add_assign(out.at(row, col), ring.scale(qpow, c));
            }
    }
    return out;
}

// the group element E_B(T) = prod_s exp(T^(p^s) B_s) in GL_N(K[T]/(T^D));
// the ring is caller-owned and must outlive the returned matrix
template <class F>
PolyMat<F> one_param_poly(const NilTuple<F>& t, const PolyRing<F>& ring) {
    validate_tuple(t);
    const F& K = *t.field;
    auto out = Mat<PolyRing<F>>::identity(ring, t.N);
    std::uint64_t e = 1;
    for (unsigned s = 0; s < t.r(); ++s, e *= t.p) {
        if (e >= ring.trunc() || t.b[s].is_zero()) continue;
        out = out.mul(trunc_exp_poly(ring, ring.monomial((unsigned)e, K.one()), t.b[s]));
    }
    return out;
}

// evaluation at a scalar: prod_s exp(alpha^(p^s) B_s)
template <class F>
Mat<F> one_param_eval(const NilTuple<F>& t, const typename F::Elem& alpha) {
    validate_tuple(t);
    const F& K = *t.field;
    auto out = Mat<F>::identity(K, t.N);
    for (unsigned s = 0; s < t.r(); ++s)
        out = out.mul(trunc_exp(t.b[s].scale(K.frobenius(alpha, s)), t.p));
    return out;
}

// coaction of a u-module restricted to G_{a(r)}: prod_i exp(T^(p^i) U_i)
template <class F>
PolyMat<F> umodule_coaction(const UModule<F>& m, const PolyRing<F>& ring) {
    const F& K = m.ring();
    auto out = Mat<PolyRing<F>>::identity(ring, m.dim);
    std::uint64_t e = 1;
    for (unsigned i = 0; i < m.r; ++i, e *= m.p) {
        if (e >= ring.trunc() || m.u[i].is_zero()) continue;
        out = out.mul(trunc_exp_poly(ring, ring.monomial((unsigned)e, K.one()), m.u[i]));
    }
    return out;
}

// coaction pulled back along E_b, b = (b_0,...): the substitution
// T -> sum_j b_j T^(p^j) turns the factor for u_i into
// exp(q(T)^(p^i) U_i) with q(T)^(p^i) expanded by Frobenius
template <class F>
PolyMat<F> umodule_restricted_series(const UModule<F>& m,
                                     const std::vector<typename F::Elem>& b,
                                     const PolyRing<F>& ring) {
    const F& K = m.ring();
    auto out = Mat<PolyRing<F>>::identity(ring, m.dim);
    for (unsigned i = 0; i < m.r; ++i) {
        if (m.u[i].is_zero()) continue;
        typename PolyRing<F>::Elem q;  // (sum_j b_j T^(p^j))^(p^i)
        std::uint64_t e = ipow(m.p, i);
        for (std::size_t j = 0; j < b.size(); ++j) {
            std::uint64_t exp = e * ipow(m.p, (unsigned)j);
            if (exp >= ring.trunc()) continue;
            auto c = K.frobenius(b[j], i);
            if (!K.is_zero(c)) q.push_back({(unsigned)exp, c});
        }
        if (q.empty()) continue;
        out = out.mul(trunc_exp_poly(ring, q, m.u[i]));
    }
    return out;
}

// ---------------------------------------------------------------------------
// constructions
// ---------------------------------------------------------------------------

template <class F>
UModule<F> umodule_trivial(const F& field) {
    UModule<F> m;
    m.field = &field;
    m.p = field.characteristic();
    m.r = 1;
    m.dim = 1;
    m.u.emplace_back(field, 1, 1);
    return m;
}

// the regular module kG_{a(r)} on the monomial basis u^alpha
template <class F>
UModule<F> umodule_regular(const F& field, unsigned r) {
    std::uint64_t p = field.characteristic();
    UModule<F> m;
    m.field = &field;
    m.p = p;
    m.r = r;
    m.dim = (unsigned)ipow(p, r);
    for (unsigned i = 0; i < r; ++i) {
        Mat<F> ui(field, m.dim, m.dim);
        std::uint64_t step = ipow(p, i);
        for (unsigned a = 0; a < m.dim; ++a) {
            unsigned digit = (unsigned)((a / step) % p);
            if (digit + 1 < p) ui.at(a + step, a) = field.one();
        }
        m.u.push_back(std::move(ui));
    }
    return m;
}

// truncation of the G_a-module L_S to span{1, T, ..., T^D}: u_i acts as the
// derivation with u_i(T^(p^j)) = delta_{ij} for i in S and as 0 otherwise
template <class F>
UModule<F> umodule_ls(const F& field, const std::vector<unsigned>& S, unsigned D) {
    std::uint64_t p = field.characteristic();
    unsigned rmax = 0;
    for (auto s : S) rmax = std::max(rmax, s);
    UModule<F> m;
    m.field = &field;
    m.p = p;
    m.r = rmax + 1;
    m.dim = D + 1;
    for (unsigned i = 0; i < m.r; ++i) {
        Mat<F> ui(field, m.dim, m.dim);
        bool active = false;
        for (auto s : S)
            if (s == i) active = true;
        if (active) {
            std::uint64_t step = ipow(p, i);
            for (unsigned n = 0; n <= D; ++n) {
                std::uint64_t digit = (n / step) % p;
                if (digit > 0 && n >= step) ui.at(n - (unsigned)step, n) = field.from_int((long long)digit);
            }
        }
        m.u.push_back(std::move(ui));
    }
    return m;
}

template <class F>
UModule<F> umodule_dual(const UModule<F>& m) {
    UModule<F> d = m;
    for (auto& a : d.u) a = a.transpose().neg();
    return d;
}

template <class F>
UModule<F> umodule_dsum(const UModule<F>& a, const UModule<F>& b) {
    if (a.p != b.p) throw ValidationError("umodule_dsum: characteristic mismatch");
    UModule<F> m;
    m.field = a.field;
    m.p = a.p;
    m.r = std::max(a.r, b.r);
    m.dim = a.dim + b.dim;
    for (unsigned i = 0; i < m.r; ++i) {
        auto ai = i < a.r ? a.u[i] : Mat<F>(*a.field, a.dim, a.dim);
        auto bi = i < b.r ? b.u[i] : Mat<F>(*b.field, b.dim, b.dim);
        m.u.push_back(ai.dsum(bi));
    }
    return m;
}

// tensor product via the coaction series: the group element of the tensor is
// the Kronecker product of group elements, and u_i is its T^(p^i) coefficient.
// The exponential degree of a tensor can exceed both factors' degrees by one
// level, so coefficients up to p^(max r) are extracted.
template <class F>
UModule<F> umodule_tensor(const UModule<F>& a, const UModule<F>& b) {
    if (a.p != b.p) throw ValidationError("umodule_tensor: characteristic mismatch");
    const F& K = *a.field;
    unsigned rr = std::max(a.r, b.r) + 1;
    unsigned trunc = (unsigned)ipow(a.p, rr - 1) + 1;
    PolyRing<F> ring(K, trunc);
    auto ea = umodule_coaction(a, ring);
    auto eb = umodule_coaction(b, ring);
    UModule<F> m;
    m.field = a.field;
    m.p = a.p;
    m.dim = a.dim * b.dim;
    for (unsigned i = 0; i < rr; ++i) {
        std::uint64_t target = ipow(a.p, i);
        Mat<F> ui(K, m.dim, m.dim);
        // coefficient of T^target in ea ox eb
        for (std::uint64_t e1 = 0; e1 <= target; ++e1) {
            if (e1 >= trunc || target - e1 >= trunc) continue;
            auto ca = coeff_mat(ea, (unsigned)e1);
            if (ca.is_zero()) continue;
            auto cb = coeff_mat(eb, (unsigned)(target - e1));
            if (cb.is_zero()) continue;
            ui = ui.add(ca.kron(cb));
        }
        m.u.push_back(std::move(ui));
    }
    while (m.u.size() > 1 && m.u.back().is_zero()) m.u.pop_back();
    m.r = (unsigned)m.u.size();
    return m;
}

template <class F>
UModule<F> umodule_basis_change(const UModule<F>& m, const Mat<F>& g) {
    UModule<F> out = m;
    auto gi = inverse(g);
    for (auto& a : out.u) a = g.mul(a).mul(gi);
    return out;
}

// external Frobenius twist: u_i acts trivially for i < e, as U_{i-e} above
template <class F>
UModule<F> umodule_twist(const UModule<F>& m, unsigned e) {
    UModule<F> out;
    out.field = m.field;
    out.p = m.p;
    out.r = m.r + e;
    out.dim = m.dim;
    for (unsigned i = 0; i < e; ++i) out.u.emplace_back(*m.field, m.dim, m.dim);
    for (const auto& a : m.u) out.u.push_back(a);
    return out;
}

// restriction to G_{a(r')): keep the first r' generators
template <class F>
UModule<F> umodule_restrict(const UModule<F>& m, unsigned rr) {
    UModule<F> out = m;
    out.r = rr;
    out.u.resize(rr, Mat<F>(*m.field, m.dim, m.dim));
    return out;
}

// submodule on an invariant subspace given by basis columns
template <class F>
UModule<F> umodule_sub(const UModule<F>& m, const Mat<F>& c) {
    if (rank(c) != c.cols()) throw ValidationError("umodule_sub: basis not independent");
    UModule<F> out;
    out.field = m.field;
    out.p = m.p;
    out.r = m.r;
    out.dim = (unsigned)c.cols();
    for (const auto& a : m.u) {
        auto ac = a.mul(c);
        auto h = solve(c, ac);
        if (c.mul(h) != ac) throw ValidationError("umodule_sub: subspace is not invariant");
        out.u.push_back(std::move(h));
    }
    return out;
}

// quotient by an invariant subspace
template <class F>
UModule<F> umodule_quot(const UModule<F>& m, const Mat<F>& c) {
    const F& K = m.ring();
    std::size_t n = m.dim, k = c.cols();
    if (rank(c) != k) throw ValidationError("umodule_quot: basis not independent");
    auto piv = rref(c.transpose()).pivots;
    std::vector<bool> used(n, false);
    for (auto q : piv) used[q] = true;
    Mat<F> pmat(K, n, n);
    pmat.set_block(0, 0, c);
    std::size_t col = k;
    for (std::size_t i = 0; i < n; ++i)
        if (!used[i]) pmat.at(i, col++) = K.one();
    auto pinv = inverse(pmat);
    UModule<F> out;
    out.field = m.field;
    out.p = m.p;
    out.r = m.r;
    out.dim = (unsigned)(n - k);
    for (const auto& a : m.u) {
        auto conj = pinv.mul(a).mul(pmat);
        if (!conj.submat(k, 0, n - k, k).is_zero())
            throw ValidationError("umodule_quot: subspace is not invariant");
        out.u.push_back(conj.submat(k, k, n - k, n - k));
    }
    return out;
}

// basis of rad M = sum_i im U_i, as columns
template <class F>
Mat<F> umodule_radical_basis(const UModule<F>& m) {
    const F& K = m.ring();
    Mat<F> stacked(K, m.dim, 0);
    for (const auto& a : m.u) stacked = Mat<F>::hstack(stacked, a);
    IncrementalSpan<F> span(K, m.dim);
    std::vector<std::size_t> keep;
    for (std::size_t c = 0; c < stacked.cols(); ++c)
        if (span.insert_col(stacked, c)) keep.push_back(c);
    Mat<F> out(K, m.dim, keep.size());
    for (std::size_t j = 0; j < keep.size(); ++j)
        for (std::size_t i = 0; i < m.dim; ++i) out.at(i, j) = stacked.at(i, keep[j]);
    return out;
}

// freeness over kG_{a(r)} by the minimal-cover method: with b = dim(M/rad M),
// M is free iff dim M = b p^r and the induced cover Lambda^b -> M is bijective
template <class F>
bool umodule_is_free(const UModule<F>& m) {
    const F& K = m.ring();
    if (m.dim == 0) return true;
    auto radb = umodule_radical_basis(m);
    std::size_t b = m.dim - radb.cols();
    if ((std::uint64_t)m.dim != b * ipow(m.p, m.r)) return false;
    // generators: standard basis vectors extending rad M
    IncrementalSpan<F> span(K, m.dim);
    for (std::size_t c = 0; c < radb.cols(); ++c) span.insert_col(radb, c);
    std::vector<std::size_t> gens;
    auto id = Mat<F>::identity(K, m.dim);
    for (std::size_t i = 0; i < m.dim && gens.size() < b; ++i)
        if (span.insert_col(id, i)) gens.push_back(i);
    // cover matrix: columns U^alpha g_j over all alpha in [0,p)^r
    std::uint64_t pr = ipow(m.p, m.r);
    Mat<F> cover(K, m.dim, b * pr);
    for (std::size_t j = 0; j < gens.size(); ++j) {
        Mat<F> vec(K, m.dim, 1);
        vec.at(gens[j], 0) = K.one();
        for (std::uint64_t a = 0; a < pr; ++a) {
            auto w = vec;
            std::uint64_t rem = a;
            for (unsigned i = 0; i < m.r; ++i) {
                unsigned digit = (unsigned)(rem % m.p);
                rem /= m.p;
                for (unsigned d = 0; d < digit; ++d) w = m.u[i].mul(w);
            }
            for (std::size_t row = 0; row < m.dim; ++row) cover.at(row, j * pr + a) = w.at(row, 0);
        }
    }
    return rank(cover) == m.dim;
}

}  // namespace supvar
