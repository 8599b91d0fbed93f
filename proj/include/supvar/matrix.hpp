#pragma once

#include <cstddef>
#include <vector>

#include "supvar/common.hpp"

namespace supvar {

// Compatibility hook for binary matrix operations; truncated polynomial
// rings override this to reject mixed truncation bounds.
template <class R>
bool rings_compatible(const R&, const R&) {
    return true;
}

// Dense matrix over an exact coefficient ring R.  R supplies value-semantic
// elements plus add/sub/neg/mul/zero/one; the field-only algorithms (rref,
// kernels, inverses) additionally use R::inv and are only instantiated for
// field rings.  A Mat keeps a pointer to its ring; rings are immutable and
// must outlive the matrices built over them.
template <class R>
class Mat {
public:
    using Elem = typename R::Elem;

    Mat() : ring_(nullptr), rows_(0), cols_(0) {}

    Mat(const R& ring, std::size_t rows, std::size_t cols)
        : ring_(&ring), rows_(rows), cols_(cols), e_(rows * cols, ring.zero()) {}

    static Mat identity(const R& ring, std::size_t n) {
        Mat m(ring, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = ring.one();
        return m;
    }

    const R& ring() const { return *ring_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Elem& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const Elem& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    bool is_zero() const {
        for (const auto& x : e_)
            if (!ring_->is_zero(x)) return false;
        return true;
    }

    bool operator==(const Mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    Mat add(const Mat& o) const {
        require(rows_ == o.rows_ && cols_ == o.cols_, "Mat::add: shape mismatch");
        require(rings_compatible(*ring_, *o.ring_), "Mat::add: coefficient rings disagree");
        Mat r = *this;
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = ring_->add(e_[i], o.e_[i]);
        return r;
    }

    Mat sub(const Mat& o) const {
        require(rows_ == o.rows_ && cols_ == o.cols_, "Mat::sub: shape mismatch");
        require(rings_compatible(*ring_, *o.ring_), "Mat::sub: coefficient rings disagree");
        Mat r = *this;
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = ring_->sub(e_[i], o.e_[i]);
        return r;
    }

    Mat neg() const {
        Mat r = *this;
        for (auto& x : r.e_) x = ring_->neg(x);
        return r;
    }

    Mat mul(const Mat& o) const {
        require(cols_ == o.rows_, "Mat::mul: shape mismatch");
        require(rings_compatible(*ring_, *o.ring_), "Mat::mul: coefficient rings disagree");
        Mat r(*ring_, rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Elem& a = at(i, k);
                if (ring_->is_zero(a)) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) {
                    const Elem& b = o.at(k, j);
                    if (ring_->is_zero(b)) continue;
                    ring_->add_assign(r.at(i, j), ring_->mul(a, b));
                }
            }
        return r;
    }

    Mat scale(const Elem& c) const {
        Mat r = *this;
        for (auto& x : r.e_) x = ring_->mul(x, c);
        return r;
    }

    Mat pow(std::uint64_t k) const {
        require(rows_ == cols_, "Mat::pow: not square");
        Mat r = identity(*ring_, rows_);
        Mat b = *this;
        while (k) {
            if (k & 1) r = r.mul(b);
            k >>= 1;
            if (k) b = b.mul(b);
        }
        return r;
    }

    Mat transpose() const {
        Mat r(*ring_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    Mat kron(const Mat& o) const {
        Mat r(*ring_, rows_ * o.rows_, cols_ * o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) {
                if (ring_->is_zero(at(i, j))) continue;
                for (std::size_t k = 0; k < o.rows_; ++k)
                    for (std::size_t l = 0; l < o.cols_; ++l)
                        r.at(i * o.rows_ + k, j * o.cols_ + l) = ring_->mul(at(i, j), o.at(k, l));
            }
        return r;
    }

    Mat dsum(const Mat& o) const {
        Mat r(*ring_, rows_ + o.rows_, cols_ + o.cols_);
        r.set_block(0, 0, *this);
        r.set_block(rows_, cols_, o);
        return r;
    }

    Elem trace() const {
        require(rows_ == cols_, "Mat::trace: not square");
        Elem t = ring_->zero();
        for (std::size_t i = 0; i < rows_; ++i) ring_->add_assign(t, at(i, i));
        return t;
    }

    Mat submat(std::size_t r0, std::size_t c0, std::size_t h, std::size_t w) const {
        require(r0 + h <= rows_ && c0 + w <= cols_, "Mat::submat: out of range");
        Mat r(*ring_, h, w);
        for (std::size_t i = 0; i < h; ++i)
            for (std::size_t j = 0; j < w; ++j) r.at(i, j) = at(r0 + i, c0 + j);
        return r;
    }

    void set_block(std::size_t r0, std::size_t c0, const Mat& m) {
        require(r0 + m.rows_ <= rows_ && c0 + m.cols_ <= cols_, "Mat::set_block: out of range");
        for (std::size_t i = 0; i < m.rows_; ++i)
            for (std::size_t j = 0; j < m.cols_; ++j) at(r0 + i, c0 + j) = m.at(i, j);
    }

    static Mat hstack(const Mat& a, const Mat& b) {
        require(a.rows_ == b.rows_, "Mat::hstack: row mismatch");
        Mat r(a.ring(), a.rows_, a.cols_ + b.cols_);
        r.set_block(0, 0, a);
        r.set_block(0, a.cols_, b);
        return r;
    }

    static Mat vstack(const Mat& a, const Mat& b) {
        require(a.cols_ == b.cols_, "Mat::vstack: column mismatch");
        Mat r(a.ring(), a.rows_ + b.rows_, a.cols_);
        r.set_block(0, 0, a);
        r.set_block(a.rows_, 0, b);
        return r;
    }

    void swap_rows(std::size_t i, std::size_t j) {
        for (std::size_t c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
    }

private:
    static void require(bool ok, const char* msg) {
        if (!ok) throw ValidationError(msg);
    }

    const R* ring_;
    std::size_t rows_, cols_;
    std::vector<Elem> e_;
};

// ---------------------------------------------------------------------------
// field algorithms
// ---------------------------------------------------------------------------

template <class F>
struct RrefResult {
    Mat<F> m;
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
};

// reduced row echelon form; pivot choice is the first nonzero entry, so the
// result is deterministic
template <class F>
RrefResult<F> rref(Mat<F> m) {
    const F& K = m.ring();
    RrefResult<F> res;
    std::size_t rr = 0;
    for (std::size_t col = 0; col < m.cols() && rr < m.rows(); ++col) {
        std::size_t piv = rr;
        while (piv < m.rows() && K.is_zero(m.at(piv, col))) ++piv;
        if (piv == m.rows()) continue;
        if (piv != rr) m.swap_rows(piv, rr);
        auto inv = K.inv(m.at(rr, col));
        for (std::size_t c = col; c < m.cols(); ++c) m.at(rr, c) = K.mul(m.at(rr, c), inv);
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == rr || K.is_zero(m.at(r, col))) continue;
            auto f = m.at(r, col);
            for (std::size_t c = col; c < m.cols(); ++c)
                m.at(r, c) = K.sub(m.at(r, c), K.mul(f, m.at(rr, c)));
        }
        res.pivots.push_back(col);
        ++rr;
    }
    res.rank = rr;
    res.m = std::move(m);
    return res;
}

template <class F>
std::size_t rank(const Mat<F>& m) {
    return rref(m).rank;
}

// basis of the right null space, returned as columns; count = cols - rank
template <class F>
Mat<F> kernel_basis(const Mat<F>& m) {
    const F& K = m.ring();
    auto r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : r.pivots) is_pivot[c] = true;
    std::size_t nfree = m.cols() - r.rank;
    Mat<F> ker(K, m.cols(), nfree);
    std::size_t kcol = 0;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (is_pivot[c]) continue;
        ker.at(c, kcol) = K.one();
        for (std::size_t i = 0; i < r.rank; ++i)
            ker.at(r.pivots[i], kcol) = K.neg(r.m.at(i, c));
        ++kcol;
    }
    return ker;
}

// solve A X = B exactly; throws if inconsistent.  Free variables are set to
// zero, so the result is deterministic.
template <class F>
Mat<F> solve(const Mat<F>& a, const Mat<F>& b) {
    if (a.rows() != b.rows()) throw ValidationError("solve: shape mismatch");
    const F& K = a.ring();
    auto r = rref(Mat<F>::hstack(a, b));
    for (auto c : r.pivots)
        if (c >= a.cols()) throw ValidationError("solve: inconsistent system");
    Mat<F> x(K, a.cols(), b.cols());
    for (std::size_t i = 0; i < r.rank; ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            x.at(r.pivots[i], j) = r.m.at(i, a.cols() + j);
    return x;
}

template <class F>
Mat<F> inverse(const Mat<F>& m) {
    if (m.rows() != m.cols()) throw ValidationError("inverse: not square");
    auto r = rref(Mat<F>::hstack(m, Mat<F>::identity(m.ring(), m.rows())));
    if (r.rank < m.rows() || (r.rank > 0 && r.pivots[r.rank - 1] >= m.cols()))
        throw ValidationError("inverse: singular matrix");
    return r.m.submat(0, m.cols(), m.rows(), m.cols());
}

template <class F>
bool is_invertible(const Mat<F>& m) {
    return m.rows() == m.cols() && rank(m) == m.rows();
}

template <class F>
Mat<F> conjugate(const Mat<F>& g, const Mat<F>& m) {
    return g.mul(m).mul(inverse(g));
}

template <class F>
Mat<F> random_mat(const F& ring, std::size_t rows, std::size_t cols, Rng& rng) {
    Mat<F> m(ring, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = ring.random(rng);
    return m;
}

template <class F>
Mat<F> random_invertible(const F& ring, std::size_t n, Rng& rng, unsigned tries = 1000) {
    for (unsigned t = 0; t < tries; ++t) {
        auto m = random_mat(ring, n, n, rng);
        if (is_invertible(m)) return m;
    }
    throw SamplerExhausted("random_invertible: retry cap reached");
}

// incremental row-reduced span; used for complement and generator selection
template <class F>
class IncrementalSpan {
public:
    IncrementalSpan(const F& ring, std::size_t dim) : ring_(&ring), dim_(dim) {}

    // returns true (and absorbs v) iff v was independent of the current span
    bool insert(std::vector<typename F::Elem> v) {
        const F& K = *ring_;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const auto& c = v[piv_[i]];
            if (K.is_zero(c)) continue;
            auto f = c;
            for (std::size_t j = 0; j < dim_; ++j) v[j] = K.sub(v[j], K.mul(f, rows_[i][j]));
        }
        std::size_t p = 0;
        while (p < dim_ && K.is_zero(v[p])) ++p;
        if (p == dim_) return false;
        auto inv = K.inv(v[p]);
        for (auto& x : v) x = K.mul(x, inv);
        rows_.push_back(std::move(v));
        piv_.push_back(p);
        return true;
    }

    bool insert_col(const Mat<F>& m, std::size_t col) {
        std::vector<typename F::Elem> v(dim_);
        for (std::size_t i = 0; i < dim_; ++i) v[i] = m.at(i, col);
        return insert(std::move(v));
    }

    std::size_t size() const { return rows_.size(); }

private:
    const F* ring_;
    std::size_t dim_;
    std::vector<std::vector<typename F::Elem>> rows_;
    std::vector<std::size_t> piv_;
};

}  // namespace supvar
