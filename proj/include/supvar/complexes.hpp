#pragma once

#include <vector>

#include "supvar/common.hpp"
#include "supvar/module_data.hpp"
#include "supvar/stmod.hpp"
#include "supvar/support.hpp"

namespace supvar {

// Bounded cochain complex over Lambda = k[t]/t^p.  layers[i] sits in degree
// bottom + i; diffs[i] maps layer i to layer i+1 and commutes with t.
template <class F>
struct StComplex {
    std::uint64_t p = 0;
    int bottom = 0;
    std::vector<StModule<F>> layers;
    std::vector<Mat<F>> diffs;

    int top() const { return bottom + (int)layers.size() - 1; }
};

template <class F>
void validate_st_complex(const StComplex<F>& c) {
    for (std::size_t i = 0; i < c.layers.size(); ++i) {
        if (!is_p_nilpotent(c.layers[i].t, c.p))
            throw ValidationError("complex: layer action is not p-nilpotent");
        if (i + 1 < c.layers.size()) {
            if (c.diffs[i].rows() != c.layers[i + 1].dim() || c.diffs[i].cols() != c.layers[i].dim())
                throw ValidationError("complex: differential shape mismatch");
            if (c.diffs[i].mul(c.layers[i].t) != c.layers[i + 1].t.mul(c.diffs[i]))
                throw ValidationError("complex: differential does not intertwine the action");
        }
    }
    if (!c.layers.empty() && c.diffs.size() + 1 != c.layers.size())
        throw ValidationError("complex: differential count mismatch");
    for (std::size_t i = 0; i + 1 < c.diffs.size(); ++i)
        if (!c.diffs[i + 1].mul(c.diffs[i]).is_zero())
            throw ValidationError("complex: d o d != 0");
}

// drop all-zero layers at both ends
template <class F>
StComplex<F> trim(StComplex<F> c) {
    while (!c.layers.empty() && c.layers.front().dim() == 0) {
        c.layers.erase(c.layers.begin());
        if (!c.diffs.empty()) c.diffs.erase(c.diffs.begin());
        ++c.bottom;
    }
    while (!c.layers.empty() && c.layers.back().dim() == 0) {
        c.layers.pop_back();
        if (!c.diffs.empty()) c.diffs.pop_back();
    }
    return c;
}

template <class F>
StComplex<F> single_module_complex(const StModule<F>& m, int degree) {
    StComplex<F> c;
    c.p = m.p;
    c.bottom = degree;
    c.layers.push_back(m);
    return c;
}

// ---------------------------------------------------------------------------
// the stable collapse
// ---------------------------------------------------------------------------

template <class F>
struct StableRep {
    JordanType cls;      // stable class: no free blocks
    StModule<F> module;  // canonical representative
    int syzygy_degree = 0;

    bool is_zero() const { return cls.dim() == 0; }
};

// Collapse a bounded complex to its stable module class.
//
// A free resolution P -> C is grown downwards two steps past the bottom of
// the complex; in the quotient by perfect complexes C is then the kernel
// module Z = ker(d_P) placed in its degree, and the class of the collapse is
// Omega^(1-i) Z.  Over Lambda the Heller shift is 2-periodic, so only the
// parity of the placement survives.  The result is reduced to have no free
// summand.
template <class F>
StableRep<F> phi_collapse(const StComplex<F>& cin) {
    auto c = trim(cin);
    const F* fieldp = nullptr;
    for (const auto& l : c.layers)
        if (l.dim() > 0) fieldp = &l.t.ring();
    if (!fieldp || c.layers.empty()) {
        // zero object
        StableRep<F> out;
        out.cls.p = cin.p;
        out.cls.m.assign(cin.p, 0);
        return out;
    }
    const F& K = *fieldp;
    validate_st_complex(c);
    int ntop = c.top(), m0 = c.bottom;
    auto layer = [&](int deg) -> const StModule<F>* {
        if (deg < c.bottom || deg > ntop) return nullptr;
        return &c.layers[deg - c.bottom];
    };
    auto diff = [&](int deg) -> const Mat<F>* {  // d_C: C^deg -> C^(deg+1)
        if (deg < c.bottom || deg >= ntop) return nullptr;
        return &c.diffs[deg - c.bottom];
    };

    // descending construction of the resolution: P^j covers
    // B^j = { (x, y) in C^j + P^(j+1) : d_C x = eps y, d_P y = 0 }
    Mat<F> prev_eps, prev_dp;     // eps^(j+1): P^(j+1) -> C^(j+1), d_P^(j+1)
    StModule<F> prev_p{c.p, Mat<F>(K, 0, 0)};
    bool have_prev = false;
    StModule<F> zmod{c.p, Mat<F>(K, 0, 0)};
    int stop = m0 - 1;
    for (int j = ntop; j >= stop; --j) {
        const StModule<F>* cj = layer(j);
        std::size_t nc = cj ? cj->dim() : 0;
        std::size_t np = have_prev ? prev_p.dim() : 0;
        // ambient C^j + P^(j+1) with its t-action
        Mat<F> amb_t(K, nc + np, nc + np);
        if (cj) amb_t.set_block(0, 0, cj->t);
        if (have_prev) amb_t.set_block(nc, nc, prev_p.t);
        // constraints: d_C x - eps y = 0 and d_P y = 0
        const StModule<F>* cj1 = layer(j + 1);
        std::size_t rows1 = cj1 ? cj1->dim() : 0;
        std::size_t rows2 = have_prev ? prev_dp.rows() : 0;
        Mat<F> cons(K, rows1 + rows2, nc + np);
        if (cj1) {
            if (const Mat<F>* d = diff(j)) cons.set_block(0, 0, *d);
            if (have_prev) cons.set_block(0, nc, prev_eps.neg());
        }
        if (have_prev && rows2 > 0) cons.set_block(rows1, nc, prev_dp);
        Mat<F> bbasis;
        auto bmod = kernel_module(cons, amb_t, c.p, &bbasis);
        // free cover of B^j
        auto cov = free_cover(bmod);
        auto incl = bbasis.mul(cov.map);  // P^j -> C^j + P^(j+1)
        Mat<F> eps_j = incl.submat(0, 0, nc, incl.cols());
        Mat<F> dp_j = incl.submat(nc, 0, np, incl.cols());
        if (j == stop) {
            zmod = kernel_module(dp_j, cov.source_t, c.p);
            break;
        }
        prev_eps = std::move(eps_j);
        prev_dp = std::move(dp_j);
        prev_p = StModule<F>{c.p, cov.source_t};
        have_prev = true;
    }

    auto cls = st_class(zmod).stable_part();
    int parity = ((2 - m0) % 2 + 2) % 2;
    if (parity == 1) cls = omega_class(cls);
    StableRep<F> out;
    out.cls = cls;
    out.module = st_canonical(K, cls);
    out.syzygy_degree = stop;
    return out;
}

// ---------------------------------------------------------------------------
// Tate cohomology
// ---------------------------------------------------------------------------

namespace detail {

// differential of the Hom total complex against the 2-periodic complete
// resolution of k; E^n = sum over layers q of C^q placed at i = q - n
template <class F>
Mat<F> tate_differential(const StComplex<F>& c, const F& K, int n) {
    int m0 = c.bottom, ntop = c.top();
    auto dim_of = [&](int q) { return (q >= m0 && q <= ntop) ? c.layers[q - m0].dim() : 0; };
    std::size_t src = 0, dst = 0;
    std::vector<std::size_t> src_off(ntop - m0 + 2, 0), dst_off(ntop - m0 + 2, 0);
    for (int q = m0; q <= ntop; ++q) {
        src_off[q - m0] = src;
        src += dim_of(q);
        dst_off[q - m0] = dst;
        dst += dim_of(q);
    }
    Mat<F> d(K, dst, src);
    for (int q = m0; q <= ntop; ++q) {
        std::size_t nq = dim_of(q);
        if (nq == 0) continue;
        // d_C part: component i = q - n of E^n maps to component i of E^(n+1),
        // which is valued in C^(q+1)
        if (q + 1 <= ntop && dim_of(q + 1) > 0) {
            const auto& dc = c.diffs[q - m0];
            for (std::size_t r = 0; r < dc.rows(); ++r)
                for (std::size_t s = 0; s < dc.cols(); ++s)
                    if (!K.is_zero(dc.at(r, s)))
                        d.at(dst_off[q + 1 - m0] + r, src_off[q - m0] + s) = dc.at(r, s);
        }
        // precomposition with the complete resolution: f_(i+1) contributes to
        // component i of E^(n+1) via t^(a_i), a_i = 1 for odd i, p-1 for even;
        // here the source component is q - n = i + 1, the target is C^q
        int i = q - n - 1;
        std::uint64_t a = (((i % 2) + 2) % 2 == 1) ? 1 : c.p - 1;
        auto tp = c.layers[q - m0].t.pow(a);
        bool negate = (n % 2 + 2) % 2 == 0;  // -(-1)^n
        for (std::size_t r = 0; r < nq; ++r)
            for (std::size_t s = 0; s < nq; ++s) {
                auto v = tp.at(r, s);
                if (K.is_zero(v)) continue;
                d.at(dst_off[q - m0] + r, src_off[q - m0] + s) =
                    K.add(d.at(dst_off[q - m0] + r, src_off[q - m0] + s), negate ? K.neg(v) : v);
            }
    }
    return d;
}

}  // namespace detail

// Whether some Tate hypercohomology group of the complex is nonzero.  The
// complete resolution is 2-periodic, so H^0 and H^1 decide every degree; the
// window of Hom-terms needed spans the layer degrees extended by one on each
// side, which is finite because the complex is bounded.
template <class F>
bool tate_nonzero(const StComplex<F>& cin) {
    auto c = trim(cin);
    if (c.layers.empty()) return false;
    const F* fieldp = nullptr;
    for (const auto& l : c.layers)
        if (l.dim() > 0) fieldp = &l.t.ring();
    if (!fieldp) return false;
    const F& K = *fieldp;
    validate_st_complex(c);
    auto dm1 = detail::tate_differential(c, K, -1);
    auto d0 = detail::tate_differential(c, K, 0);
    auto d1 = detail::tate_differential(c, K, 1);
    if (!d0.mul(dm1).is_zero() || !d1.mul(d0).is_zero())
        throw CheckFailure("tate_nonzero: total differential does not square to zero");
    std::size_t e0 = d0.cols(), e1 = d1.cols();
    std::size_t r_m1 = rank(dm1), r0 = rank(d0), r1 = rank(d1);
    std::size_t h0 = e0 - r0 - r_m1;
    std::size_t h1 = e1 - r1 - r0;
    return h0 != 0 || h1 != 0;
}

// ---------------------------------------------------------------------------
// complexes of G-modules and their supports
// ---------------------------------------------------------------------------

// Bounded complex of modules over common group data; differentials are
// integer matrices that must commute with the actions.
struct ComplexData {
    std::string name;
    int bottom = 0;
    std::vector<ModuleData> layers;
    std::vector<IMat> diffs;

    std::uint64_t p() const { return layers.empty() ? 0 : layers[0].p(); }
};

inline void validate_complex(const ComplexData& c) {
    if (c.layers.empty()) return;
    if (c.diffs.size() + 1 != c.layers.size())
        throw ValidationError("complex: need one differential per adjacent layer pair");
    Fq K(c.p(), 1);
    for (std::size_t i = 0; i < c.layers.size(); ++i) {
        validate_module(c.layers[i]);
        if (c.layers[i].p() != c.p()) throw ValidationError("complex: mixed characteristics");
    }
    for (std::size_t i = 0; i + 1 < c.layers.size(); ++i) {
        if (c.diffs[i].rows != module_dim(c.layers[i + 1]) || c.diffs[i].cols != module_dim(c.layers[i]))
            throw ValidationError("complex: differential shape mismatch");
    }
    for (std::size_t i = 0; i + 1 < c.diffs.size(); ++i)
        if (!bind_mat(K, c.diffs[i + 1]).mul(bind_mat(K, c.diffs[i])).is_zero())
            throw ValidationError("complex: d o d != 0");
    // equivariance for u-module layers is checkable directly
    for (std::size_t i = 0; i + 1 < c.layers.size(); ++i) {
        auto* a = std::get_if<UModuleData>(&c.layers[i].v);
        auto* b = std::get_if<UModuleData>(&c.layers[i + 1].v);
        if (!a || !b) continue;
        auto ma = bind_umodule(K, *a);
        auto mb = bind_umodule(K, *b);
        auto d = bind_mat(K, c.diffs[i]);
        unsigned rr = std::max(ma.r, mb.r);
        for (unsigned l = 0; l < rr; ++l) {
            auto ua = l < ma.r ? ma.u[l] : Mat<Fq>(K, ma.dim, ma.dim);
            auto ub = l < mb.r ? mb.u[l] : Mat<Fq>(K, mb.dim, mb.dim);
            if (d.mul(ua) != ub.mul(d))
                throw ValidationError("complex: differential does not intertwine u_" + std::to_string(l));
        }
    }
}

// restriction along the pi-point of a tuple: layers become t-modules via
// their operators, differentials are reused and must intertwine
template <class F>
StComplex<F> restrict_along_pi(const ComplexData& c, const NilTuple<F>& t) {
    const F& K = *t.field;
    StComplex<F> out;
    out.p = t.p;
    out.bottom = c.bottom;
    for (const auto& layer : c.layers)
        out.layers.push_back(st_module(pi_operator(layer, t, Recipe::ur), t.p));
    for (const auto& d : c.diffs) out.diffs.push_back(bind_mat(K, d));
    for (std::size_t i = 0; i + 1 < out.layers.size(); ++i)
        if (out.diffs[i].mul(out.layers[i].t) != out.layers[i + 1].t.mul(out.diffs[i]))
            throw ValidationError("restrict_along_pi: differential fails to intertwine the operators");
    validate_st_complex(out);
    return out;
}

// support membership for a bounded complex at a tuple; with cross_check the
// collapse oracle must agree with the Tate oracle
template <class F>
bool complex_in_support(const ComplexData& c, const NilTuple<F>& t, bool cross_check = false) {
    auto rc = restrict_along_pi(c, t);
    bool tate = tate_nonzero(rc);
    if (cross_check) {
        bool phi = !phi_collapse(rc).is_zero();
        if (phi != tate)
            throw CheckFailure("complex_in_support: collapse and Tate oracles disagree");
    }
    return tate;
}

// ---------------------------------------------------------------------------
// data-level complex algebra (used by tests and the axiom harness)
// ---------------------------------------------------------------------------

inline ComplexData complex_of_module(const ModuleData& m, int degree) {
    ComplexData c;
    c.name = m.name + "[" + std::to_string(degree) + "]";
    c.bottom = degree;
    c.layers.push_back(m);
    return c;
}

inline ComplexData complex_shift(ComplexData c, int n) {
    c.bottom += n;
    c.name += "[" + std::to_string(n) + "]";
    return c;
}

namespace detail {

inline IMat imat_kron(const IMat& a, const IMat& b, std::uint64_t p) {
    IMat r(a.rows * b.rows, a.cols * b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) {
            if (a.at(i, j) == 0) continue;
            for (std::size_t k = 0; k < b.rows; ++k)
                for (std::size_t l = 0; l < b.cols; ++l)
                    r.at(i * b.rows + k, j * b.cols + l) =
                        (long long)(((unsigned long long)a.at(i, j) * b.at(k, l)) % p);
        }
    return r;
}

inline IMat imat_identity(std::size_t n) {
    IMat r(n, n);
    for (std::size_t i = 0; i < n; ++i) r.at(i, i) = 1;
    return r;
}

}  // namespace detail

// total tensor product of two complexes of u-modules:
// (C ox D)^n = sum_{i+j=n} C^i ox D^j, d(x ox y) = dx ox y + (-1)^i x ox dy
inline ComplexData complex_tensor(const ComplexData& a, const ComplexData& b) {
    std::uint64_t p = a.p();
    ComplexData out;
    out.name = a.name + "(x)" + b.name;
    out.bottom = a.bottom + b.bottom;
    int atop = a.bottom + (int)a.layers.size() - 1;
    int btop = b.bottom + (int)b.layers.size() - 1;
    int top = atop + btop;
    // block order inside degree n: ascending i with j = n - i
    auto blocks_of = [&](int n) {
        std::vector<std::pair<int, int>> bl;
        for (int i = a.bottom; i <= atop; ++i) {
            int j = n - i;
            if (j >= b.bottom && j <= btop) bl.push_back({i, j});
        }
        return bl;
    };
    std::vector<std::vector<std::pair<int, int>>> blocks;
    for (int n = out.bottom; n <= top; ++n) {
        auto bl = blocks_of(n);
        ModuleData layer;
        bool first = true;
        for (auto [i, j] : bl) {
            auto t = data_tensor(a.layers[i - a.bottom], b.layers[j - b.bottom]);
            layer = first ? t : data_dsum(layer, t);
            first = false;
        }
        if (first) {
            layer = data_trivial(p);
            std::get<UModuleData>(layer.v).dim = 0;
            std::get<UModuleData>(layer.v).u[0] = IMat(0, 0);
        }
        out.layers.push_back(std::move(layer));
        blocks.push_back(std::move(bl));
    }
    for (int n = out.bottom; n < top; ++n) {
        const auto& src = blocks[n - out.bottom];
        const auto& dst = blocks[n + 1 - out.bottom];
        std::vector<std::size_t> src_off(src.size() + 1, 0), dst_off(dst.size() + 1, 0);
        for (std::size_t k = 0; k < src.size(); ++k)
            src_off[k + 1] = src_off[k] + module_dim(a.layers[src[k].first - a.bottom]) *
                                              module_dim(b.layers[src[k].second - b.bottom]);
        for (std::size_t k = 0; k < dst.size(); ++k)
            dst_off[k + 1] = dst_off[k] + module_dim(a.layers[dst[k].first - a.bottom]) *
                                              module_dim(b.layers[dst[k].second - b.bottom]);
        IMat d(dst_off.back(), src_off.back());
        auto place = [&](std::size_t r0, std::size_t c0, const IMat& m) {
            for (std::size_t i = 0; i < m.rows; ++i)
                for (std::size_t j = 0; j < m.cols; ++j)
                    if (m.at(i, j)) d.at(r0 + i, c0 + j) = m.at(i, j);
        };
        for (std::size_t k = 0; k < src.size(); ++k) {
            auto [i, j] = src[k];
            std::size_t da = module_dim(a.layers[i - a.bottom]);
            std::size_t db = module_dim(b.layers[j - b.bottom]);
            // d_a ox id lands in block (i+1, j)
            if (i + 1 <= atop)
                for (std::size_t k2 = 0; k2 < dst.size(); ++k2)
                    if (dst[k2] == std::make_pair(i + 1, j))
                        place(dst_off[k2], src_off[k],
                              detail::imat_kron(a.diffs[i - a.bottom], detail::imat_identity(db), p));
            // (-1)^i id ox d_b lands in block (i, j+1)
            if (j + 1 <= btop) {
                IMat idb = detail::imat_kron(detail::imat_identity(da), b.diffs[j - b.bottom], p);
                if (((i % 2) + 2) % 2 == 1)
                    for (auto& v : idb.a) v = v ? (long long)(p - (unsigned long long)v) : 0;
                for (std::size_t k2 = 0; k2 < dst.size(); ++k2)
                    if (dst[k2] == std::make_pair(i, j + 1)) place(dst_off[k2], src_off[k], idb);
            }
        }
        out.diffs.push_back(std::move(d));
    }
    return out;
}

// random G_a-equivariant module map between u-modules, as an integer matrix;
// used to build mapping cones in the triangle checks
inline IMat sample_equivariant_map(const UModuleData& src, const UModuleData& dst, Rng& rng) {
    Fq K(src.p, 1);
    auto ms = bind_umodule(K, src);
    auto md = bind_umodule(K, dst);
    std::size_t n1 = src.dim, n2 = dst.dim;
    unsigned rr = std::max(src.r, dst.r);
    Mat<Fq> sys(K, n1 * n2 * rr, n1 * n2);
    for (unsigned l = 0; l < rr; ++l) {
        auto us = l < src.r ? ms.u[l] : Mat<Fq>(K, n1, n1);
        auto ud = l < dst.r ? md.u[l] : Mat<Fq>(K, n2, n2);
        for (std::size_t a = 0; a < n2; ++a)
            for (std::size_t b = 0; b < n1; ++b) {
                std::size_t col = a * n1 + b;
                for (std::size_t j = 0; j < n1; ++j)
                    sys.at(l * n1 * n2 + a * n1 + j, col) =
                        K.add(sys.at(l * n1 * n2 + a * n1 + j, col), us.at(b, j));
                for (std::size_t i = 0; i < n2; ++i)
                    sys.at(l * n1 * n2 + i * n1 + b, col) =
                        K.sub(sys.at(l * n1 * n2 + i * n1 + b, col), ud.at(i, a));
            }
    }
    auto ker = kernel_basis(sys);
    Mat<Fq> f(K, n2, n1);
    for (std::size_t c = 0; c < ker.cols(); ++c) {
        auto w = K.random(rng);
        if (K.is_zero(w)) continue;
        for (std::size_t a = 0; a < n2; ++a)
            for (std::size_t b = 0; b < n1; ++b)
                f.at(a, b) = K.add(f.at(a, b), K.mul(w, ker.at(a * n1 + b, c)));
    }
    return unbind_mat(f);
}

// mapping cone of a map between single-module complexes: A in degree d-1,
// B in degree d, differential f
inline ComplexData complex_cone_of_map(const ModuleData& a, const ModuleData& b, const IMat& f,
                                       int degree) {
    ComplexData c;
    c.name = "cone(" + a.name + "->" + b.name + ")";
    c.bottom = degree - 1;
    c.layers = {a, b};
    c.diffs = {f};
    validate_complex(c);
    return c;
}

inline ComplexData complex_dsum(const ComplexData& a, const ComplexData& b) {
    ComplexData out;
    out.name = a.name + "(+)" + b.name;
    out.bottom = std::min(a.bottom, b.bottom);
    int top = std::max(a.bottom + (int)a.layers.size(), b.bottom + (int)b.layers.size()) - 1;
    auto layer_of = [&](const ComplexData& c, int deg) -> const ModuleData* {
        int i = deg - c.bottom;
        if (i < 0 || i >= (int)c.layers.size()) return nullptr;
        return &c.layers[i];
    };
    std::uint64_t p = a.p() ? a.p() : b.p();
    ModuleData zero = data_trivial(p);
    std::get<UModuleData>(zero.v).dim = 0;
    std::get<UModuleData>(zero.v).u[0] = IMat(0, 0);
    zero.name = "0";
    for (int deg = out.bottom; deg <= top; ++deg) {
        const ModuleData* la = layer_of(a, deg);
        const ModuleData* lb = layer_of(b, deg);
        ModuleData m = la && lb ? data_dsum(*la, *lb) : (la ? *la : (lb ? *lb : zero));
        out.layers.push_back(std::move(m));
    }
    for (int deg = out.bottom; deg < top; ++deg) {
        const ModuleData* la = layer_of(a, deg);
        const ModuleData* lb = layer_of(b, deg);
        std::size_t ra = la ? module_dim(*la) : 0, rb = lb ? module_dim(*lb) : 0;
        const ModuleData* ua = layer_of(a, deg + 1);
        const ModuleData* ub = layer_of(b, deg + 1);
        std::size_t ca = ua ? module_dim(*ua) : 0, cb = ub ? module_dim(*ub) : 0;
        IMat d(ca + cb, ra + rb);
        if (la && ua) {
            const IMat& da = a.diffs[deg - a.bottom];
            for (std::size_t i = 0; i < da.rows; ++i)
                for (std::size_t j = 0; j < da.cols; ++j) d.at(i, j) = da.at(i, j);
        }
        if (lb && ub) {
            const IMat& db = b.diffs[deg - b.bottom];
            for (std::size_t i = 0; i < db.rows; ++i)
                for (std::size_t j = 0; j < db.cols; ++j) d.at(ca + i, ra + j) = db.at(i, j);
        }
        out.diffs.push_back(std::move(d));
    }
    return out;
}

}  // namespace supvar
