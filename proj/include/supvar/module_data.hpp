#pragma once

#include <string>
#include <variant>
#include <vector>

#include "supvar/carlson.hpp"
#include "supvar/common.hpp"
#include "supvar/fq.hpp"
#include "supvar/pi_op.hpp"
#include "supvar/rep.hpp"
#include "supvar/u3module.hpp"
#include "supvar/umodule.hpp"

namespace supvar {

// Field-free matrix with entries reduced to [0, p); modules are stored this
// way so the same module can be evaluated over every field in a tower.
struct IMat {
    std::size_t rows = 0, cols = 0;
    std::vector<long long> a;

    IMat() = default;
    IMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}

    long long& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    long long at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
    bool operator==(const IMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

template <class F>
Mat<F> bind_mat(const F& field, const IMat& m) {
    Mat<F> out(field, m.rows, m.cols);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) out.at(i, j) = field.from_int(m.at(i, j));
    return out;
}

// read back a matrix with prime-field entries into integers
template <class F>
IMat unbind_mat(const Mat<F>& m) {
    IMat out(m.rows(), m.cols());
    const F& K = m.ring();
    std::uint64_t p = K.characteristic();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            long long found = -1;
            for (std::uint64_t v = 0; v < p; ++v)
                if (K.eq(m.at(i, j), K.from_int((long long)v))) {
                    found = (long long)v;
                    break;
                }
            if (found < 0) throw ValidationError("unbind_mat: entry is not in the prime field");
            out.at(i, j) = found;
        }
    return out;
}

struct UModuleData {
    std::uint64_t p = 0;
    unsigned r = 1;
    unsigned dim = 0;
    std::vector<IMat> u;
};

struct RepModuleData {
    std::uint64_t p = 0;
    AlgTag tag = AlgTag::gl;
    unsigned N = 0;
    RepExpr expr;
};

struct U3InducedData {
    std::uint64_t p = 0;
    unsigned D = 0;
};

struct ModuleData {
    std::string name;
    std::variant<UModuleData, RepModuleData, U3InducedData> v;

    std::uint64_t p() const {
        return std::visit([](const auto& m) { return m.p; }, v);
    }
};

template <class F>
UModule<F> bind_umodule(const F& field, const UModuleData& d) {
    if (field.characteristic() != d.p) throw ValidationError("bind_umodule: characteristic mismatch");
    UModule<F> m;
    m.field = &field;
    m.p = d.p;
    m.r = d.r;
    m.dim = d.dim;
    for (const auto& mm : d.u) m.u.push_back(bind_mat(field, mm));
    return m;
}

template <class F>
UModuleData unbind_umodule(const UModule<F>& m) {
    UModuleData d;
    d.p = m.p;
    d.r = m.r;
    d.dim = m.dim;
    for (const auto& a : m.u) d.u.push_back(unbind_mat(a));
    return d;
}

inline std::size_t module_dim(const ModuleData& m) {
    if (auto* u = std::get_if<UModuleData>(&m.v)) return u->dim;
    if (auto* r = std::get_if<RepModuleData>(&m.v)) return rep_dim(r->expr);
    return u3_dim(U3Induced{std::get<U3InducedData>(m.v).p, std::get<U3InducedData>(m.v).D});
}

// the tuple flavour a module expects
inline AlgTag module_tag(const ModuleData& m) {
    if (std::holds_alternative<UModuleData>(m.v)) return AlgTag::ga;
    if (auto* r = std::get_if<RepModuleData>(&m.v)) return r->tag;
    return AlgTag::u3;
}

inline unsigned module_tuple_size(const ModuleData& m) {
    if (std::holds_alternative<UModuleData>(m.v)) return 2;
    if (auto* r = std::get_if<RepModuleData>(&m.v)) return r->N;
    return 3;
}

// the pi-point operator of a module at a tuple, by either recipe
template <class F>
Mat<F> pi_operator(const ModuleData& m, const NilTuple<F>& t, Recipe recipe) {
    if (m.p() != t.p) throw ValidationError("pi_operator: characteristic mismatch");
    if (auto* u = std::get_if<UModuleData>(&m.v)) {
        auto bm = bind_umodule(*t.field, *u);
        auto b = ga_scalars(t);
        return recipe == Recipe::ur ? pi_ur_umodule(bm, b) : pi_sum_umodule(bm, b);
    }
    if (auto* rm = std::get_if<RepModuleData>(&m.v)) {
        if (t.tag != rm->tag || t.N != rm->N)
            throw ValidationError("pi_operator: tuple does not match module group data");
        return recipe == Recipe::ur ? pi_ur_rep(rm->expr, t) : pi_sum_rep(rm->expr, t);
    }
    const auto& u3 = std::get<U3InducedData>(m.v);
    U3Induced mm{u3.p, u3.D};
    return recipe == Recipe::ur ? pi_ur_u3(mm, t) : pi_sum_u3(mm, t);
}

// ---------------------------------------------------------------------------
// data-level module algebra (computed over the prime field, stored as ints)
// ---------------------------------------------------------------------------

namespace detail {

template <class Fn>
ModuleData umodule_data_op(const std::string& name, std::uint64_t p, Fn&& fn) {
    Fq K(p, 1);
    ModuleData out;
    out.name = name;
    out.v = unbind_umodule(fn(K));
    return out;
}

}  // namespace detail

inline ModuleData data_trivial(std::uint64_t p) {
    return detail::umodule_data_op("k", p, [&](const Fq& K) { return umodule_trivial(K); });
}

inline ModuleData data_regular(std::uint64_t p, unsigned r) {
    return detail::umodule_data_op("regular_r" + std::to_string(r), p,
                                   [&](const Fq& K) { return umodule_regular(K, r); });
}

inline ModuleData data_ls(std::uint64_t p, const std::vector<unsigned>& S, unsigned D) {
    std::string nm = "ls_";
    for (auto s : S) nm += std::to_string(s);
    nm += "_D" + std::to_string(D);
    return detail::umodule_data_op(nm, p, [&](const Fq& K) { return umodule_ls(K, S, D); });
}

inline ModuleData data_carlson(std::uint64_t p, unsigned r, const CohClass& z) {
    return detail::umodule_data_op("carlson", p,
                                   [&](const Fq& K) { return umodule_carlson(K, r, z); });
}

inline const UModuleData& as_umodule(const ModuleData& m) {
    auto* u = std::get_if<UModuleData>(&m.v);
    if (!u) throw ValidationError("expected a u-module: " + m.name);
    return *u;
}

inline ModuleData data_tensor(const ModuleData& a, const ModuleData& b) {
    if (a.p() != b.p()) throw ValidationError("data_tensor: characteristic mismatch");
    if (std::holds_alternative<RepModuleData>(a.v) && std::holds_alternative<RepModuleData>(b.v)) {
        const auto& ra = std::get<RepModuleData>(a.v);
        const auto& rb = std::get<RepModuleData>(b.v);
        if (ra.tag != rb.tag || ra.N != rb.N)
            throw ValidationError("data_tensor: rep modules over different groups");
        ModuleData out;
        out.name = a.name + "(x)" + b.name;
        out.v = RepModuleData{ra.p, ra.tag, ra.N, RepExpr::tensor(ra.expr, rb.expr)};
        return out;
    }
    const auto& ua = as_umodule(a);
    const auto& ub = as_umodule(b);
    return detail::umodule_data_op(a.name + "(x)" + b.name, a.p(), [&](const Fq& K) {
        return umodule_tensor(bind_umodule(K, ua), bind_umodule(K, ub));
    });
}

inline ModuleData data_dsum(const ModuleData& a, const ModuleData& b) {
    if (a.p() != b.p()) throw ValidationError("data_dsum: characteristic mismatch");
    if (std::holds_alternative<RepModuleData>(a.v) && std::holds_alternative<RepModuleData>(b.v)) {
        const auto& ra = std::get<RepModuleData>(a.v);
        const auto& rb = std::get<RepModuleData>(b.v);
        if (ra.tag != rb.tag || ra.N != rb.N)
            throw ValidationError("data_dsum: rep modules over different groups");
        ModuleData out;
        out.name = a.name + "(+)" + b.name;
        out.v = RepModuleData{ra.p, ra.tag, ra.N, RepExpr::dsum(ra.expr, rb.expr)};
        return out;
    }
    const auto& ua = as_umodule(a);
    const auto& ub = as_umodule(b);
    return detail::umodule_data_op(a.name + "(+)" + b.name, a.p(), [&](const Fq& K) {
        return umodule_dsum(bind_umodule(K, ua), bind_umodule(K, ub));
    });
}

inline ModuleData data_dual(const ModuleData& a) {
    if (auto* ra = std::get_if<RepModuleData>(&a.v)) {
        ModuleData out;
        out.name = a.name + "^*";
        out.v = RepModuleData{ra->p, ra->tag, ra->N, RepExpr::dual(ra->expr)};
        return out;
    }
    const auto& ua = as_umodule(a);
    return detail::umodule_data_op(a.name + "^*", a.p(), [&](const Fq& K) {
        return umodule_dual(bind_umodule(K, ua));
    });
}

inline ModuleData data_twist(const ModuleData& a, unsigned e) {
    if (auto* ra = std::get_if<RepModuleData>(&a.v)) {
        ModuleData out;
        out.name = a.name + "^[" + std::to_string(e) + "]";
        out.v = RepModuleData{ra->p, ra->tag, ra->N, RepExpr::twist(e, ra->expr)};
        return out;
    }
    const auto& ua = as_umodule(a);
    return detail::umodule_data_op(a.name + "^[" + std::to_string(e) + "]", a.p(),
                                   [&](const Fq& K) { return umodule_twist(bind_umodule(K, ua), e); });
}

// radical submodule and head quotient; the two ends of the extension
// 0 -> rad M -> M -> M/rad M -> 0 used by the two-out-of-three checks
inline ModuleData data_radical(const ModuleData& a) {
    const auto& ua = as_umodule(a);
    return detail::umodule_data_op("rad(" + a.name + ")", a.p(), [&](const Fq& K) {
        auto m = bind_umodule(K, ua);
        return umodule_sub(m, umodule_radical_basis(m));
    });
}

inline ModuleData data_head(const ModuleData& a) {
    const auto& ua = as_umodule(a);
    return detail::umodule_data_op("head(" + a.name + ")", a.p(), [&](const Fq& K) {
        auto m = bind_umodule(K, ua);
        return umodule_quot(m, umodule_radical_basis(m));
    });
}

inline ModuleData data_basis_change(const ModuleData& a, std::uint64_t seed) {
    const auto& ua = as_umodule(a);
    return detail::umodule_data_op(a.name + "~", a.p(), [&](const Fq& K) {
        Rng rng(seed);
        auto g = random_invertible(K, ua.dim, rng);
        return umodule_basis_change(bind_umodule(K, ua), g);
    });
}

inline ModuleData data_restrict(const ModuleData& a, unsigned rr) {
    const auto& ua = as_umodule(a);
    return detail::umodule_data_op(a.name + "|r" + std::to_string(rr), a.p(), [&](const Fq& K) {
        return umodule_restrict(bind_umodule(K, ua), rr);
    });
}

inline void validate_module(const ModuleData& m) {
    if (auto* u = std::get_if<UModuleData>(&m.v)) {
        Fq K(u->p, 1);
        validate_umodule(bind_umodule(K, *u));
        return;
    }
    if (auto* r = std::get_if<RepModuleData>(&m.v)) {
        if (!is_prime_u64(r->p)) throw ValidationError("rep module: p must be prime");
        unsigned nin = rep_input_size(r->expr);
        if (nin != 0 && nin != r->N) throw ValidationError("rep module: N does not match expression");
        if (r->tag == AlgTag::u3 && r->N != 3) throw ValidationError("rep module: u3 needs N = 3");
        (void)rep_dim(r->expr);
        return;
    }
    const auto& u3 = std::get<U3InducedData>(m.v);
    if (!is_prime_u64(u3.p)) throw ValidationError("u3 module: p must be prime");
}

}  // namespace supvar
