#pragma once

#include <vector>

#include "supvar/common.hpp"
#include "supvar/matrix.hpp"
#include "supvar/niltuple.hpp"

namespace supvar {

// A module over Lambda = k[t]/t^p: the matrix of the t-action.
template <class F>
struct StModule {
    std::uint64_t p = 0;
    Mat<F> t;

    std::size_t dim() const { return t.rows(); }
};

template <class F>
StModule<F> st_module(const Mat<F>& theta, std::uint64_t p) {
    if (!is_p_nilpotent(theta, p)) throw ValidationError("st_module: t-action is not p-nilpotent");
    return StModule<F>{p, theta};
}

template <class F>
JordanType st_class(const StModule<F>& m) {
    return jordan_partition(m.t, m.p);
}

// canonical module of a given Jordan class: blocks in descending size, each
// block the shift matrix with ones on the superdiagonal
template <class F>
StModule<F> st_canonical(const F& field, const JordanType& jt) {
    std::size_t n = jt.dim();
    Mat<F> t(field, n, n);
    std::size_t pos = 0;
    for (std::size_t j = jt.m.size(); j-- > 0;) {
        for (std::size_t c = 0; c < jt.m[j]; ++c) {
            for (std::size_t i = 0; i + 1 <= j; ++i) t.at(pos + i, pos + i + 1) = field.one();
            pos += j + 1;
        }
    }
    return StModule<F>{jt.p, std::move(t)};
}

// discard all blocks of size p: the stable class
template <class F>
StModule<F> st_strip_free(const StModule<F>& m) {
    auto jt = st_class(m).stable_part();
    return st_canonical(m.t.ring(), jt);
}

// Heller shift on classes: both Omega and Omega^{-1} send [j] to [p-j] and
// kill free blocks, so one map serves for either direction
inline JordanType omega_class(const JordanType& jt) {
    JordanType out;
    out.p = jt.p;
    out.m.assign(jt.m.size(), 0);
    for (std::size_t j = 0; j + 1 < jt.m.size(); ++j) out.m[jt.p - (j + 1) - 1] += jt.m[j];
    return out;
}

// Omega^{-1}: split off free summands, embed what is left into its injective
// hull (one full block per socle generator) and return the cokernel
template <class F>
StModule<F> omega_inverse(const StModule<F>& m) {
    return st_canonical(m.t.ring(), omega_class(st_class(m)));
}

// ---------------------------------------------------------------------------
// free covers
// ---------------------------------------------------------------------------

template <class F>
struct FreeCover {
    std::size_t b = 0;   // rank of the cover Lambda^b
    Mat<F> map;          // dim x (b p) matrix, columns t^a g_j
    Mat<F> source_t;     // the t-action on Lambda^b
};

// minimal surjection Lambda^b -> M with b = dim(M / t M)
template <class F>
FreeCover<F> free_cover(const StModule<F>& m) {
    const F& K = m.t.ring();
    std::size_t n = m.dim();
    IncrementalSpan<F> span(K, n);
    for (std::size_t c = 0; c < n; ++c) span.insert_col(m.t, c);
    std::vector<std::size_t> gens;
    auto id = Mat<F>::identity(K, n);
    for (std::size_t i = 0; i < n; ++i)
        if (span.insert_col(id, i)) gens.push_back(i);
    FreeCover<F> cov;
    cov.b = gens.size();
    cov.map = Mat<F>(K, n, cov.b * m.p);
    cov.source_t = Mat<F>(K, cov.b * m.p, cov.b * m.p);
    for (std::size_t j = 0; j < cov.b; ++j) {
        Mat<F> w(K, n, 1);
        w.at(gens[j], 0) = K.one();
        for (std::uint64_t a = 0; a < m.p; ++a) {
            for (std::size_t row = 0; row < n; ++row) cov.map.at(row, j * m.p + a) = w.at(row, 0);
            if (a + 1 < m.p) {
                w = m.t.mul(w);
                cov.source_t.at(j * m.p + a + 1, j * m.p + a) = K.one();
            }
        }
    }
    return cov;
}

// kernel of a module map as a submodule (basis columns + restricted action)
template <class F>
StModule<F> kernel_module(const Mat<F>& f, const Mat<F>& source_t, std::uint64_t p,
                          Mat<F>* basis_out = nullptr) {
    auto ker = kernel_basis(f);
    if (ker.cols() == 0) {
        if (basis_out) *basis_out = ker;
        const F& K = f.ring();
        return StModule<F>{p, Mat<F>(K, 0, 0)};
    }
    auto tk = source_t.mul(ker);
    auto rest = solve(ker, tk);  // invariant since f and t commute
    if (ker.mul(rest) != tk) throw CheckFailure("kernel_module: kernel is not invariant");
    if (basis_out) *basis_out = ker;
    return StModule<F>{p, std::move(rest)};
}

}  // namespace supvar
