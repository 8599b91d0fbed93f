#pragma once

#include <vector>

#include "supvar/common.hpp"
#include "supvar/niltuple.hpp"
#include "supvar/polyring.hpp"
#include "supvar/rep.hpp"
#include "supvar/u3module.hpp"
#include "supvar/umodule.hpp"

namespace supvar {

enum class Recipe { ur, sum };

inline std::string recipe_name(Recipe r) { return r == Recipe::ur ? "ur" : "sum"; }

namespace detail {

template <class F>
Mat<F> checked(Mat<F> theta, std::uint64_t p) {
    if (!theta.pow(p).is_zero())
        throw CheckFailure("pi operator: theta^p != 0 (implementation or input fault)");
    return theta;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// representation modules: theta acting on rep(V) at a tuple in the Lie algebra
// ---------------------------------------------------------------------------

// u_{r-1} recipe: coefficient of T^(p^(r-1)) in rep(E_{Lambda_r(B)}(T))
template <class F>
Mat<F> pi_ur_rep(const RepExpr& e, const NilTuple<F>& t) {
    unsigned r = t.r();
    if (r == 0) throw ValidationError("pi_ur_rep: empty tuple");
    unsigned nin = rep_input_size(e);
    if (nin != 0 && nin != t.N) throw ValidationError("pi_ur_rep: tuple size does not match rep");
    std::uint64_t trunc = ipow(t.p, r);
    if (trunc > (1u << 26)) throw ValidationError("pi_ur_rep: truncation too large");
    PolyRing<F> ring(*t.field, (unsigned)trunc);
    auto g = one_param_poly(lambda_r(t), ring);
    auto h = rep_eval(e, g);
    return detail::checked(coeff_mat(h, (unsigned)ipow(t.p, r - 1)), t.p);
}

// sum recipe: sum_s of the T^(p^s) coefficient of rep(exp(T B_s))
template <class F>
Mat<F> pi_sum_rep(const RepExpr& e, const NilTuple<F>& t) {
    unsigned r = t.r();
    if (r == 0) throw ValidationError("pi_sum_rep: empty tuple");
    unsigned nin = rep_input_size(e);
    if (nin != 0 && nin != t.N) throw ValidationError("pi_sum_rep: tuple size does not match rep");
    validate_tuple(t);
    const F& K = *t.field;
    std::uint64_t trunc = ipow(t.p, r);
    PolyRing<F> ring(K, (unsigned)trunc);
    Mat<F> theta;
    for (unsigned s = 0; s < r; ++s) {
        auto gs = trunc_exp_poly(ring, ring.monomial(1, K.one()), t.b[s]);
        auto hs = rep_eval(e, gs);
        std::uint64_t target = ipow(t.p, s);
        auto c = target < trunc ? coeff_mat(hs, (unsigned)target)
                                : Mat<F>(K, hs.rows(), hs.cols());
        theta = s == 0 ? c : theta.add(c);
    }
    return detail::checked(theta, t.p);
}

// ---------------------------------------------------------------------------
// u-modules: tuples are scalars b_0..b_{r-1} (the G_a case)
// ---------------------------------------------------------------------------

template <class F>
Mat<F> pi_ur_umodule(const UModule<F>& m, const std::vector<typename F::Elem>& b) {
    unsigned r = (unsigned)b.size();
    if (r == 0) throw ValidationError("pi_ur_umodule: empty tuple");
    validate_umodule(m);
    std::vector<typename F::Elem> rev(b.rbegin(), b.rend());
    PolyRing<F> ring(m.ring(), (unsigned)ipow(m.p, r));
    auto series = umodule_restricted_series(m, rev, ring);
    return detail::checked(coeff_mat(series, (unsigned)ipow(m.p, r - 1)), m.p);
}

template <class F>
Mat<F> pi_sum_umodule(const UModule<F>& m, const std::vector<typename F::Elem>& b) {
    unsigned r = (unsigned)b.size();
    if (r == 0) throw ValidationError("pi_sum_umodule: empty tuple");
    validate_umodule(m);
    const F& K = m.ring();
    Mat<F> theta(K, m.dim, m.dim);
    for (unsigned s = 0; s < r; ++s) {
        std::uint64_t target = ipow(m.p, s);
        std::vector<typename F::Elem> single{b[s]};
        PolyRing<F> ring(K, (unsigned)(target + 1));
        auto series = umodule_restricted_series(m, single, ring);
        theta = theta.add(coeff_mat(series, (unsigned)target));
    }
    return detail::checked(theta, m.p);
}

// ---------------------------------------------------------------------------
// the induced U_3 module
// ---------------------------------------------------------------------------

template <class F>
Mat<F> pi_ur_u3(const U3Induced& m, const NilTuple<F>& t) {
    if (t.tag != AlgTag::u3) throw ValidationError("pi_ur_u3: tuple must have tag u3");
    unsigned r = t.r();
    PolyRing<F> ring(*t.field, (unsigned)ipow(t.p, r));
    auto g = one_param_poly(lambda_r(t), ring);
    unsigned target = (unsigned)ipow(t.p, r - 1);
    return detail::checked(
        u3_translation_coeff(*t.field, m, g.at(0, 1), g.at(1, 2), target), t.p);
}

template <class F>
Mat<F> pi_sum_u3(const U3Induced& m, const NilTuple<F>& t) {
    if (t.tag != AlgTag::u3) throw ValidationError("pi_sum_u3: tuple must have tag u3");
    validate_tuple(t);
    const F& K = *t.field;
    unsigned r = t.r();
    Mat<F> theta(K, u3_dim(m), u3_dim(m));
    for (unsigned s = 0; s < r; ++s) {
        unsigned target = (unsigned)ipow(t.p, s);
        PolyRing<F> ring(K, target + 1);
        auto gs = trunc_exp_poly(ring, ring.monomial(1, K.one()), t.b[s]);
        theta = theta.add(u3_translation_coeff(K, m, gs.at(0, 1), gs.at(1, 2), target));
    }
    return detail::checked(theta, t.p);
}

}  // namespace supvar
