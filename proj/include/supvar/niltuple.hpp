#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "supvar/common.hpp"
#include "supvar/matrix.hpp"

namespace supvar {

// Which Lie subalgebra the tuple entries are constrained to.
//   gl : all N x N matrices
//   sl : trace zero
//   u3 : strictly upper triangular 3 x 3 (Heisenberg)
//   ga : the abelian algebra of G_a^s embedded as first-row matrices in
//        gl_{s+1}; for s = 1 a tuple is just a list of scalars b_i
enum class AlgTag { gl, sl, u3, ga };

inline std::string tag_name(AlgTag t) {
    switch (t) {
        case AlgTag::gl: return "gl";
        case AlgTag::sl: return "sl";
        case AlgTag::u3: return "u3";
        case AlgTag::ga: return "ga";
    }
    return "?";
}

inline AlgTag tag_from_name(const std::string& s) {
    if (s == "gl") return AlgTag::gl;
    if (s == "sl") return AlgTag::sl;
    if (s == "u3") return AlgTag::u3;
    if (s == "ga") return AlgTag::ga;
    throw ValidationError("unknown subalgebra tag: " + s);
}

// A point of C_r(G): pairwise commuting p-nilpotent matrices (B_0,...,B_{r-1}).
template <class F>
struct NilTuple {
    const F* field = nullptr;
    std::uint64_t p = 0;
    unsigned N = 0;
    AlgTag tag = AlgTag::gl;
    std::vector<Mat<F>> b;

    unsigned r() const { return (unsigned)b.size(); }
};

template <class F>
bool is_p_nilpotent(const Mat<F>& m, std::uint64_t p) {
    return m.rows() == m.cols() && m.pow(p).is_zero();
}

template <class F>
bool in_subalgebra(const Mat<F>& m, AlgTag tag) {
    const F& K = m.ring();
    switch (tag) {
        case AlgTag::gl:
            return true;
        case AlgTag::sl:
            return K.is_zero(m.trace());
        case AlgTag::u3:
            if (m.rows() != 3) return false;
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = 0; j <= i; ++j)
                    if (!K.is_zero(m.at(i, j))) return false;
            return true;
        case AlgTag::ga:
            for (std::size_t i = 0; i < m.rows(); ++i)
                for (std::size_t j = 0; j < m.cols(); ++j)
                    if (!(i == 0 && j > 0) && !K.is_zero(m.at(i, j))) return false;
            return true;
    }
    return false;
}

// membership predicate for C_r: this is the validator for all tuple inputs
template <class F>
bool in_C_r(const NilTuple<F>& t) {
    if (t.b.empty()) return false;
    for (const auto& m : t.b) {
        if (m.rows() != t.N || m.cols() != t.N) return false;
        if (!is_p_nilpotent(m, t.p)) return false;
        if (!in_subalgebra(m, t.tag)) return false;
    }
    for (std::size_t i = 0; i < t.b.size(); ++i)
        for (std::size_t j = i + 1; j < t.b.size(); ++j)
            if (t.b[i].mul(t.b[j]) != t.b[j].mul(t.b[i])) return false;
    return true;
}

template <class F>
void validate_tuple(const NilTuple<F>& t) {
    if (!in_C_r(t)) throw ValidationError("tuple is not a point of C_r");
}

// the involution reversing the tuple
template <class F>
NilTuple<F> lambda_r(NilTuple<F> t) {
    std::reverse(t.b.begin(), t.b.end());
    return t;
}

// grading on V_r: B_i scaled by a^(p^i)
template <class F>
NilTuple<F> act_dot(const typename F::Elem& a, NilTuple<F> t) {
    const F& K = *t.field;
    for (unsigned i = 0; i < t.r(); ++i) t.b[i] = t.b[i].scale(K.frobenius(a, i));
    return t;
}

// grading on C_r: B_i scaled by a^(p^(r-1-i))
template <class F>
NilTuple<F> act_star(const typename F::Elem& a, NilTuple<F> t) {
    const F& K = *t.field;
    for (unsigned i = 0; i < t.r(); ++i) {
        auto s = K.frobenius(a, t.r() - 1 - i);
        t.b[i] = t.b[i].scale(s);
    }
    return t;
}

template <class F>
bool is_zero_tuple(const NilTuple<F>& t) {
    for (const auto& m : t.b)
        if (!m.is_zero()) return false;
    return true;
}

// scalars of a ga-tuple with s = 1 (entries b_i at position (0,1))
template <class F>
std::vector<typename F::Elem> ga_scalars(const NilTuple<F>& t) {
    if (t.tag != AlgTag::ga || t.N != 2)
        throw ValidationError("ga_scalars: expected a ga tuple with N = 2");
    std::vector<typename F::Elem> out;
    out.reserve(t.r());
    for (const auto& m : t.b) out.push_back(m.at(0, 1));
    return out;
}

template <class F>
NilTuple<F> tuple_from_scalars(const F& field, std::uint64_t p,
                               const std::vector<typename F::Elem>& bs) {
    NilTuple<F> t;
    t.field = &field;
    t.p = p;
    t.N = 2;
    t.tag = AlgTag::ga;
    for (const auto& c : bs) {
        Mat<F> m(field, 2, 2);
        m.at(0, 1) = c;
        t.b.push_back(std::move(m));
    }
    return t;
}

// ---------------------------------------------------------------------------
// Jordan partitions
// ---------------------------------------------------------------------------

// Multiset of Jordan block sizes in 1..p of a p-nilpotent operator.
struct JordanType {
    std::uint64_t p = 0;
    std::vector<std::size_t> m;  // m[j-1] = multiplicity of block size j

    std::size_t dim() const {
        std::size_t d = 0;
        for (std::size_t j = 0; j < m.size(); ++j) d += (j + 1) * m[j];
        return d;
    }

    // true iff some block of size < p is present
    bool stable_nonzero() const {
        for (std::size_t j = 0; j + 1 < m.size(); ++j)
            if (m[j] > 0) return true;
        return false;
    }

    std::size_t free_blocks() const { return m.empty() ? 0 : m.back(); }

    JordanType stable_part() const {
        JordanType s = *this;
        if (!s.m.empty()) s.m.back() = 0;
        return s;
    }

    std::string str() const {
        std::string out;
        for (std::size_t j = m.size(); j-- > 0;) {
            if (m[j] == 0) continue;
            if (!out.empty()) out += ' ';
            out += "[" + std::to_string(j + 1) + "]^" + std::to_string(m[j]);
        }
        return out.empty() ? "0" : out;
    }

    bool operator==(const JordanType& o) const { return p == o.p && m == o.m; }
};

// Jordan partition from the rank sequence: m_j = r_{j-1} - 2 r_j + r_{j+1}
template <class F>
JordanType jordan_partition(const Mat<F>& theta, std::uint64_t p) {
    if (theta.rows() != theta.cols()) throw ValidationError("jordan_partition: not square");
    std::vector<std::size_t> rk(p + 2, 0);
    rk[0] = theta.rows();
    Mat<F> pw = theta;
    for (std::uint64_t j = 1; j <= p; ++j) {
        if (j > 1) pw = pw.mul(theta);
        if (j < p || !pw.is_zero()) {
            if (j == p && !pw.is_zero())
                throw ValidationError("jordan_partition: operator is not p-nilpotent");
            rk[j] = rank(pw);
            if (rk[j] == 0) {
                // all later powers vanish too
                for (std::uint64_t k = j + 1; k <= p; ++k) rk[k] = 0;
                break;
            }
        }
    }
    JordanType jt;
    jt.p = p;
    jt.m.resize(p);
    for (std::uint64_t j = 1; j <= p; ++j) jt.m[j - 1] = rk[j - 1] - 2 * rk[j] + rk[j + 1];
    std::size_t total = 0;
    for (std::uint64_t j = 1; j <= p; ++j) total += j * jt.m[j - 1];
    if (total != theta.rows()) throw CheckFailure("jordan_partition: rank sequence inconsistent");
    return jt;
}

// Membership shortcut: the stable Jordan type is nonzero iff the operator is
// not free, iff rank(theta^(p-1)) < dim/p.  Needs one rank instead of the
// full rank sequence.
template <class F>
bool stable_jordan_nonzero(const Mat<F>& theta, std::uint64_t p) {
    if (theta.rows() == 0) return false;
    auto pw = theta.pow(p - 1);
    if (!pw.mul(theta).is_zero())
        throw ValidationError("stable_jordan_nonzero: operator is not p-nilpotent");
    return rank(pw) * p < theta.rows();
}

inline JordanType jordan_sum(const JordanType& a, const JordanType& b) {
    JordanType r = a;
    for (std::size_t j = 0; j < b.m.size(); ++j) r.m[j] += b.m[j];
    return r;
}

// ---------------------------------------------------------------------------
// sampling
// ---------------------------------------------------------------------------

// basis of the tagged subspace of gl_N, as matrices
template <class F>
std::vector<Mat<F>> tag_basis(const F& field, unsigned N, AlgTag tag) {
    std::vector<Mat<F>> out;
    auto unit = [&](unsigned i, unsigned j) {
        Mat<F> m(field, N, N);
        m.at(i, j) = field.one();
        return m;
    };
    switch (tag) {
        case AlgTag::gl:
            for (unsigned i = 0; i < N; ++i)
                for (unsigned j = 0; j < N; ++j) out.push_back(unit(i, j));
            break;
        case AlgTag::sl:
            for (unsigned i = 0; i < N; ++i)
                for (unsigned j = 0; j < N; ++j)
                    if (i != j) out.push_back(unit(i, j));
            for (unsigned i = 0; i + 1 < N; ++i) {
                Mat<F> m(field, N, N);
                m.at(i, i) = field.one();
                m.at(i + 1, i + 1) = field.neg(field.one());
                out.push_back(std::move(m));
            }
            break;
        case AlgTag::u3:
            if (N != 3) throw ValidationError("tag u3 requires N = 3");
            out.push_back(unit(0, 1));
            out.push_back(unit(1, 2));
            out.push_back(unit(0, 2));
            break;
        case AlgTag::ga:
            for (unsigned j = 1; j < N; ++j) out.push_back(unit(0, j));
            break;
    }
    return out;
}

namespace detail {

template <class F>
Mat<F> random_strict_upper(const F& field, unsigned N, Rng& rng) {
    Mat<F> m(field, N, N);
    for (unsigned i = 0; i < N; ++i)
        for (unsigned j = i + 1; j < N; ++j) m.at(i, j) = field.random(rng);
    return m;
}

template <class F>
std::vector<typename F::Elem> flatten(const Mat<F>& m) {
    std::vector<typename F::Elem> v;
    v.reserve(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m.at(i, j));
    return v;
}

}  // namespace detail

// Draw one more p-nilpotent element commuting with everything in `given`,
// inside the tagged subspace.  The centralizer is a kernel computation; the
// p-nilpotency condition is a rejection filter with a retry cap.
template <class F>
Mat<F> sample_commuting_nilpotent(const F& field, std::uint64_t p, unsigned N, AlgTag tag,
                                  const std::vector<Mat<F>>& given, Rng& rng,
                                  unsigned retry_cap = 1000) {
    auto basis = tag_basis(field, N, tag);
    // rows: for each constraint matrix C, the linear map X -> [X, C] flattened
    Mat<F> sys(field, N * N * given.size(), basis.size());
    for (std::size_t g = 0; g < given.size(); ++g) {
        for (std::size_t k = 0; k < basis.size(); ++k) {
            auto comm = basis[k].mul(given[g]).sub(given[g].mul(basis[k]));
            auto flat = detail::flatten(comm);
            for (std::size_t i = 0; i < flat.size(); ++i) sys.at(g * N * N + i, k) = flat[i];
        }
    }
    auto ker = given.empty() ? Mat<F>::identity(field, basis.size()) : kernel_basis(sys);
    for (unsigned t = 0; t < retry_cap; ++t) {
        Mat<F> x(field, N, N);
        for (std::size_t c = 0; c < ker.cols(); ++c) {
            auto w = field.random(rng);
            if (field.is_zero(w)) continue;
            for (std::size_t k = 0; k < basis.size(); ++k) {
                if (field.is_zero(ker.at(k, c))) continue;
                x = x.add(basis[k].scale(field.mul(w, ker.at(k, c))));
            }
        }
        if (is_p_nilpotent(x, p)) return x;
    }
    throw SamplerExhausted("sample_commuting_nilpotent: retry cap reached");
}

// Sample a point of C_r.  For gl/sl the first entry is a conjugated random
// strictly upper triangular matrix (nilpotent by construction, rejected when
// its p-th power survives); later entries come from the centralizer sampler.
// For u3/ga the tagged subspace is already nilpotent-friendly and entries are
// drawn directly.
template <class F>
NilTuple<F> sample_C_r(const F& field, unsigned N, unsigned r, AlgTag tag, Rng& rng,
                       unsigned retry_cap = 1000) {
    if (r == 0) throw ValidationError("sample_C_r: r must be positive");
    std::uint64_t p = field.characteristic();
    NilTuple<F> t;
    t.field = &field;
    t.p = p;
    t.N = N;
    t.tag = tag;
    if (N == 1) {
        for (unsigned i = 0; i < r; ++i) t.b.emplace_back(field, 1, 1);
        return t;
    }
    if (tag == AlgTag::gl || tag == AlgTag::sl) {
        Mat<F> b0(field, N, N);
        bool ok = false;
        for (unsigned tr = 0; tr < retry_cap && !ok; ++tr) {
            auto u = detail::random_strict_upper(field, N, rng);
            auto g = random_invertible(field, N, rng);
            b0 = g.mul(u).mul(inverse(g));
            ok = is_p_nilpotent(b0, p);
        }
        if (!ok) throw SamplerExhausted("sample_C_r: no p-nilpotent seed found");
        t.b.push_back(std::move(b0));
    } else {
        t.b.push_back(sample_commuting_nilpotent(field, p, N, tag, {}, rng, retry_cap));
    }
    while (t.b.size() < r)
        t.b.push_back(sample_commuting_nilpotent(field, p, N, tag, t.b, rng, retry_cap));
    return t;
}

// Extend an existing tuple by `extra` commuting entries placed in front;
// used for Frobenius-twist tests where (A_0..A_{e-1}, B_0..B_{r-1}) is needed.
template <class F>
NilTuple<F> sample_prefix_extension(const NilTuple<F>& t, unsigned extra, Rng& rng) {
    NilTuple<F> out = t;
    std::vector<Mat<F>> all = t.b;
    std::vector<Mat<F>> front;
    for (unsigned i = 0; i < extra; ++i) {
        auto a = sample_commuting_nilpotent(*t.field, t.p, t.N, t.tag, all, rng);
        all.push_back(a);
        front.push_back(std::move(a));
    }
    out.b.clear();
    for (auto& a : front) out.b.push_back(std::move(a));
    for (auto& m : t.b) out.b.push_back(m);
    return out;
}

// random element of the tagged matrix group, as a product of transvections
// (for ga the adjoint action is trivial and the identity is returned)
template <class F>
Mat<F> sample_group_element(const F& field, unsigned N, AlgTag tag, Rng& rng) {
    auto g = Mat<F>::identity(field, N);
    if (tag == AlgTag::ga) return g;
    auto transvect = [&](unsigned i, unsigned j) {
        auto e = Mat<F>::identity(field, N);
        e.at(i, j) = field.random(rng);
        g = g.mul(e);
    };
    if (tag == AlgTag::u3) {
        transvect(0, 1);
        transvect(1, 2);
        transvect(0, 2);
        transvect(0, 1);
        return g;
    }
    for (unsigned round = 0; round < 2; ++round)
        for (unsigned i = 0; i < N; ++i)
            for (unsigned j = 0; j < N; ++j)
                if (i != j) transvect(i, j);
    return g;
}

template <class F>
NilTuple<F> conjugate_tuple(const Mat<F>& g, const NilTuple<F>& t) {
    NilTuple<F> out = t;
    auto gi = inverse(g);
    for (auto& m : out.b) m = g.mul(m).mul(gi);
    return out;
}

}  // namespace supvar
