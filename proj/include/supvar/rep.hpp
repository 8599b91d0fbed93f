#pragma once

#include <map>
#include <memory>
#include <vector>

#include "supvar/common.hpp"
#include "supvar/matrix.hpp"
#include "supvar/polyring.hpp"

namespace supvar {

// Representation expression: a tree over the generators {std(N), trivial} and
// the combinators dual / tensor / direct sum / sym^k / wedge^k / external
// Frobenius twist / sub- and quotient-representation by an explicit basis.
// Evaluating the tree at an invertible matrix (over the scalar field or over
// K[T]/(T^D)) yields the action matrix of the corresponding module.
//
// Basis matrices for sub/quot carry integer entries so the same expression
// evaluates over every field of the right characteristic.
struct RepExpr {
    enum class Op { std_rep, trivial, dual, tensor, dsum, sym, wedge, twist, sub, quot };

    Op op = Op::trivial;
    unsigned n = 0;  // std: N, sym/wedge: k, twist: e
    std::vector<RepExpr> args;
    std::vector<std::vector<long long>> basis;  // sub/quot: vectors (rows) in child coordinates

    static RepExpr std_rep(unsigned N) {
        RepExpr e;
        e.op = Op::std_rep;
        e.n = N;
        return e;
    }
    static RepExpr trivial_rep() { return RepExpr{}; }
    static RepExpr dual(RepExpr a) {
        RepExpr e;
        e.op = Op::dual;
        e.args.push_back(std::move(a));
        return e;
    }
    static RepExpr tensor(RepExpr a, RepExpr b) {
        RepExpr e;
        e.op = Op::tensor;
        e.args.push_back(std::move(a));
        e.args.push_back(std::move(b));
        return e;
    }
    static RepExpr dsum(RepExpr a, RepExpr b) {
        RepExpr e;
        e.op = Op::dsum;
        e.args.push_back(std::move(a));
        e.args.push_back(std::move(b));
        return e;
    }
    static RepExpr sym(unsigned k, RepExpr a) {
        RepExpr e;
        e.op = Op::sym;
        e.n = k;
        e.args.push_back(std::move(a));
        return e;
    }
    static RepExpr wedge(unsigned k, RepExpr a) {
        RepExpr e;
        e.op = Op::wedge;
        e.n = k;
        e.args.push_back(std::move(a));
        return e;
    }
    static RepExpr twist(unsigned e_, RepExpr a) {
        RepExpr e;
        e.op = Op::twist;
        e.n = e_;
        e.args.push_back(std::move(a));
        return e;
    }
    static RepExpr sub(RepExpr a, std::vector<std::vector<long long>> rows) {
        RepExpr e;
        e.op = Op::sub;
        e.args.push_back(std::move(a));
        e.basis = std::move(rows);
        return e;
    }
    static RepExpr quot(RepExpr a, std::vector<std::vector<long long>> rows) {
        RepExpr e;
        e.op = Op::quot;
        e.args.push_back(std::move(a));
        e.basis = std::move(rows);
        return e;
    }
};

namespace detail {

inline std::size_t binom(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::size_t r = 1;
    for (std::size_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

inline void enum_tuples(std::size_t n, std::size_t k, bool strict,
                        std::vector<std::vector<unsigned>>& out) {
    std::vector<unsigned> cur;
    // nondecreasing (sym) or strictly increasing (wedge) index tuples
    auto rec = [&](auto&& self, unsigned lo) -> void {
        if (cur.size() == k) {
            out.push_back(cur);
            return;
        }
        for (unsigned i = lo; i < n; ++i) {
            cur.push_back(i);
            self(self, strict ? i + 1 : i);
            cur.pop_back();
        }
    };
    rec(rec, 0);
}

}  // namespace detail

inline std::size_t rep_dim(const RepExpr& e) {
    switch (e.op) {
        case RepExpr::Op::std_rep: return e.n;
        case RepExpr::Op::trivial: return 1;
        case RepExpr::Op::dual: return rep_dim(e.args[0]);
        case RepExpr::Op::tensor: return rep_dim(e.args[0]) * rep_dim(e.args[1]);
        case RepExpr::Op::dsum: return rep_dim(e.args[0]) + rep_dim(e.args[1]);
        case RepExpr::Op::sym: return detail::binom(rep_dim(e.args[0]) + e.n - 1, e.n);
        case RepExpr::Op::wedge: return detail::binom(rep_dim(e.args[0]), e.n);
        case RepExpr::Op::twist: return rep_dim(e.args[0]);
        case RepExpr::Op::sub: return e.basis.size();
        case RepExpr::Op::quot: return rep_dim(e.args[0]) - e.basis.size();
    }
    return 0;
}

// the matrix size the expression must be evaluated at (0 when unconstrained)
inline unsigned rep_input_size(const RepExpr& e) {
    if (e.op == RepExpr::Op::std_rep) return e.n;
    unsigned n = 0;
    for (const auto& a : e.args) {
        unsigned m = rep_input_size(a);
        if (m == 0) continue;
        if (n == 0)
            n = m;
        else if (n != m)
            throw ValidationError("rep expression mixes std() leaves of different sizes");
    }
    return n;
}

// bound for the T-degree of rep(E_B(T)); used to size truncations
inline std::uint64_t rep_degree_bound(const RepExpr& e, std::uint64_t p) {
    switch (e.op) {
        case RepExpr::Op::std_rep: return p - 1;
        case RepExpr::Op::trivial: return 0;
        case RepExpr::Op::dual: return rep_degree_bound(e.args[0], p);
        case RepExpr::Op::tensor:
            return rep_degree_bound(e.args[0], p) + rep_degree_bound(e.args[1], p);
        case RepExpr::Op::dsum:
            return std::max(rep_degree_bound(e.args[0], p), rep_degree_bound(e.args[1], p));
        case RepExpr::Op::sym:
        case RepExpr::Op::wedge: return (std::uint64_t)e.n * rep_degree_bound(e.args[0], p);
        case RepExpr::Op::twist: return ipow(p, e.n) * rep_degree_bound(e.args[0], p);
        case RepExpr::Op::sub:
        case RepExpr::Op::quot: return rep_degree_bound(e.args[0], p);
    }
    return 0;
}

namespace detail {

// action on the symmetric power: multiply out the image linear forms and
// collect monomial coefficients (no divided powers, valid in char p)
template <class R>
Mat<R> sym_power(const Mat<R>& g, unsigned k) {
    const R& ring = g.ring();
    std::size_t n = g.rows();
    std::vector<std::vector<unsigned>> idx;
    enum_tuples(n, k, false, idx);
    std::map<std::vector<unsigned>, std::size_t> pos;
    for (std::size_t i = 0; i < idx.size(); ++i) pos[idx[i]] = i;
    Mat<R> out(ring, idx.size(), idx.size());
    for (std::size_t col = 0; col < idx.size(); ++col) {
        std::map<std::vector<unsigned>, typename R::Elem> acc;
        acc[{}] = ring.one();
        for (unsigned t = 0; t < k; ++t) {
            std::map<std::vector<unsigned>, typename R::Elem> next;
            unsigned j = idx[col][t];
            for (const auto& [mon, c] : acc) {
                for (unsigned i = 0; i < n; ++i) {
                    const auto& gij = g.at(i, j);
                    if (ring.is_zero(gij)) continue;
                    auto mon2 = mon;
                    mon2.insert(std::lower_bound(mon2.begin(), mon2.end(), i), i);
                    auto prod = ring.mul(c, gij);
                    auto it = next.find(mon2);
                    if (it == next.end())
                        next.emplace(std::move(mon2), std::move(prod));
                    else
                        ring.add_assign(it->second, prod);
                }
            }
            acc = std::move(next);
        }
        for (const auto& [mon, c] : acc) out.at(pos.at(mon), col) = c;
    }
    return out;
}

template <class R>
typename R::Elem minor_det(const Mat<R>& g, const std::vector<unsigned>& rows,
                           const std::vector<unsigned>& cols) {
    const R& ring = g.ring();
    std::size_t k = rows.size();
    if (k == 0) return ring.one();
    if (k == 1) return g.at(rows[0], cols[0]);
    typename R::Elem det = ring.zero();
    std::vector<unsigned> subrows(rows.begin() + 1, rows.end());
    for (std::size_t j = 0; j < k; ++j) {
        if (ring.is_zero(g.at(rows[0], cols[j]))) continue;
        std::vector<unsigned> subcols;
        for (std::size_t l = 0; l < k; ++l)
            if (l != j) subcols.push_back(cols[l]);
        auto term = ring.mul(g.at(rows[0], cols[j]), minor_det(g, subrows, subcols));
        if (j % 2 == 0)
            ring.add_assign(det, term);
        else
            ring.add_assign(det, ring.neg(term));
    }
    return det;
}

template <class R>
Mat<R> wedge_power(const Mat<R>& g, unsigned k) {
    const R& ring = g.ring();
    std::vector<std::vector<unsigned>> idx;
    enum_tuples(g.rows(), k, true, idx);
    Mat<R> out(ring, idx.size(), idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) out.at(i, j) = minor_det(g, idx[i], idx[j]);
    return out;
}

template <class R>
Mat<R> mat_inverse_any(const Mat<R>& g) {
    if constexpr (RingTraits<R>::trunc_poly)
        return polymat_inverse(g);
    else
        return inverse(g);
}

template <class R>
Mat<R> frobenius_entrywise(const Mat<R>& g, unsigned e) {
    Mat<R> r = g;
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j) r.at(i, j) = g.ring().frobenius(g.at(i, j), e);
    return r;
}

template <class R>
Mat<typename RingTraits<R>::Base> basis_cols(const R& ring,
                                             const std::vector<std::vector<long long>>& rows,
                                             std::size_t dim) {
    const auto& K = RingTraits<R>::base(ring);
    Mat<typename RingTraits<R>::Base> c(K, dim, rows.size());
    for (std::size_t j = 0; j < rows.size(); ++j) {
        if (rows[j].size() != dim) throw ValidationError("rep basis vector has wrong length");
        for (std::size_t i = 0; i < dim; ++i) c.at(i, j) = K.from_int(rows[j][i]);
    }
    return c;
}

}  // namespace detail

// Evaluate the expression at a group element g (over the scalar field itself
// or over K[T]/(T^D)).  Invariance of sub/quot bases is verified exactly.
template <class R>
Mat<R> rep_eval(const RepExpr& e, const Mat<R>& g) {
    const R& ring = g.ring();
    switch (e.op) {
        case RepExpr::Op::std_rep:
            if (g.rows() != e.n) throw ValidationError("rep_eval: group element size mismatch");
            return g;
        case RepExpr::Op::trivial: return Mat<R>::identity(ring, 1);
        case RepExpr::Op::dual:
            return detail::mat_inverse_any(rep_eval(e.args[0], g)).transpose();
        case RepExpr::Op::tensor:
            return rep_eval(e.args[0], g).kron(rep_eval(e.args[1], g));
        case RepExpr::Op::dsum:
            return rep_eval(e.args[0], g).dsum(rep_eval(e.args[1], g));
        case RepExpr::Op::sym: return detail::sym_power(rep_eval(e.args[0], g), e.n);
        case RepExpr::Op::wedge: return detail::wedge_power(rep_eval(e.args[0], g), e.n);
        case RepExpr::Op::twist:
            return rep_eval(e.args[0], detail::frobenius_entrywise(g, e.n));
        case RepExpr::Op::sub: {
            auto h = rep_eval(e.args[0], g);
            auto c = detail::basis_cols(ring, e.basis, h.rows());
            if (rank(c) != c.cols()) throw ValidationError("rep sub: basis not independent");
            auto lt = solve(c.transpose(), Mat<typename RingTraits<R>::Base>::identity(
                                               RingTraits<R>::base(ring), c.cols()));
            auto cl = lift_const(ring, c);
            auto hc = h.mul(cl);
            auto res = lift_const(ring, lt.transpose()).mul(hc);
            if (cl.mul(res) != hc) throw ValidationError("rep sub: basis is not invariant");
            return res;
        }
        case RepExpr::Op::quot: {
            auto h = rep_eval(e.args[0], g);
            std::size_t n = h.rows(), k = e.basis.size();
            auto c = detail::basis_cols(ring, e.basis, n);
            if (rank(c) != c.cols()) throw ValidationError("rep quot: basis not independent");
            const auto& K = RingTraits<R>::base(ring);
            // complete the basis with standard vectors on non-pivot coordinates
            auto piv = rref(c.transpose()).pivots;
            std::vector<bool> used(n, false);
            for (auto q : piv) used[q] = true;
            Mat<typename RingTraits<R>::Base> pmat(K, n, n);
            pmat.set_block(0, 0, c);
            std::size_t col = k;
            for (std::size_t i = 0; i < n; ++i)
                if (!used[i]) pmat.at(i, col++) = K.one();
            auto pinv = inverse(pmat);
            auto conj = lift_const(ring, pinv).mul(h).mul(lift_const(ring, pmat));
            if (!conj.submat(k, 0, n - k, k).is_zero())
                throw ValidationError("rep quot: basis is not invariant");
            return conj.submat(k, k, n - k, n - k);
        }
    }
    throw CheckFailure("rep_eval: unhandled node");
}

}  // namespace supvar
