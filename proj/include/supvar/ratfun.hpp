#pragma once

#include <cstdint>
#include <vector>

#include "supvar/common.hpp"

namespace supvar {

// The univariate rational function field F_p(s).
//
// Elements are reduced fractions of dense polynomials over the prime field:
// the denominator is monic and gcd(num, den) = 1, so equality is structural.
// Polynomials are coefficient vectors, low degree first, no trailing zeros;
// the empty vector is the zero polynomial.
class RatFun {
public:
    using Poly = std::vector<std::uint32_t>;

    struct Elem {
        Poly num, den;
        bool operator==(const Elem& o) const { return num == o.num && den == o.den; }
    };

    explicit RatFun(std::uint64_t p) : p_((std::uint32_t)p) {
        if (!is_prime_u64(p)) throw ValidationError("RatFun: characteristic must be prime");
    }

    std::uint64_t characteristic() const { return p_; }

    Elem zero() const { return Elem{{}, {1}}; }
    Elem one() const { return Elem{{1}, {1}}; }
    Elem indeterminate() const { return Elem{{0, 1}, {1}}; }
    bool is_zero(const Elem& a) const { return a.num.empty(); }

    Elem from_int(long long v) const {
        long long r = v % (long long)p_;
        if (r < 0) r += p_;
        if (r == 0) return zero();
        return Elem{{(std::uint32_t)r}, {1}};
    }

    Elem from_poly(Poly n) const {
        trim(n);
        return Elem{std::move(n), {1}};
    }

    Elem make(Poly n, Poly d) const {
        trim(n);
        trim(d);
        if (d.empty()) throw ValidationError("RatFun: zero denominator");
        return canon(std::move(n), std::move(d));
    }

    Elem add(const Elem& a, const Elem& b) const {
        Poly n = padd(pmul(a.num, b.den), pmul(b.num, a.den));
        return canon(std::move(n), pmul(a.den, b.den));
    }

    Elem neg(const Elem& a) const {
        Elem r = a;
        for (auto& c : r.num) c = (std::uint32_t)((p_ - c) % p_);
        return r;
    }

    Elem sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }
    void add_assign(Elem& a, const Elem& b) const { a = add(a, b); }

    Elem mul(const Elem& a, const Elem& b) const {
        if (a.num.empty() || b.num.empty()) return zero();
        Poly g1 = pgcd(a.num, b.den), g2 = pgcd(b.num, a.den);
        Poly n = pmul(pdiv_exact(a.num, g1), pdiv_exact(b.num, g2));
        Poly d = pmul(pdiv_exact(a.den, g2), pdiv_exact(b.den, g1));
        return monicize(std::move(n), std::move(d));
    }

    Elem inv(const Elem& a) const {
        if (a.num.empty()) throw ValidationError("RatFun: division by zero");
        return monicize(Poly(a.den), Poly(a.num));
    }

    Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }

    Elem pow(const Elem& a, std::uint64_t e) const {
        Elem r = one(), base = a;
        while (e) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }

    // x -> x^(p^e): coefficients of F_p are Frobenius-fixed, so both numerator
    // and denominator just have their exponents spread by p^e
    Elem frobenius(const Elem& a, unsigned e) const {
        if (e == 0 || a.num.empty()) return a;
        std::uint64_t q = 1;
        for (unsigned i = 0; i < e; ++i) q *= p_;
        return Elem{spread(a.num, q), spread(a.den, q)};
    }

    bool eq(const Elem& a, const Elem& b) const { return a == b; }

    Elem random(Rng& rng) const {
        Poly n{(std::uint32_t)rng.below(p_), (std::uint32_t)rng.below(p_)};
        trim(n);
        return Elem{std::move(n), {1}};
    }

    // ---- polynomial layer (exposed for tests and for degree bookkeeping) ----

    static void trim(Poly& a) {
        while (!a.empty() && a.back() == 0) a.pop_back();
    }

    Poly padd(const Poly& a, const Poly& b) const {
        Poly r(std::max(a.size(), b.size()), 0);
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
        for (std::size_t i = 0; i < b.size(); ++i) r[i] = (std::uint32_t)((r[i] + b[i]) % p_);
        trim(r);
        return r;
    }

    Poly pmul(const Poly& a, const Poly& b) const {
        if (a.empty() || b.empty()) return {};
        Poly r(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < b.size(); ++j)
                r[i + j] = (std::uint32_t)((r[i + j] + (std::uint64_t)a[i] * b[j]) % p_);
        }
        trim(r);
        return r;
    }

    // divide a by b, returning (quotient, remainder)
    std::pair<Poly, Poly> pdivmod(Poly a, const Poly& b) const {
        if (b.empty()) throw ValidationError("RatFun: polynomial division by zero");
        Poly q;
        std::uint32_t linv = minv(b.back());
        if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, 0);
        while (a.size() >= b.size() && !a.empty()) {
            std::size_t shift = a.size() - b.size();
            std::uint32_t c = (std::uint32_t)(((std::uint64_t)a.back() * linv) % p_);
            q[shift] = c;
            for (std::size_t i = 0; i < b.size(); ++i) {
                std::uint64_t t = a[shift + i] + (std::uint64_t)(p_ - b[i]) * c % p_ * 1ULL;
                a[shift + i] = (std::uint32_t)(t % p_);
            }
            trim(a);
            if (!q.empty() && a.size() >= b.size() && a.size() - b.size() == shift)
                throw CheckFailure("RatFun: division did not reduce degree");
        }
        trim(q);
        return {q, a};
    }

    Poly pdiv_exact(const Poly& a, const Poly& b) const {
        auto [q, r] = pdivmod(a, b);
        if (!r.empty()) throw CheckFailure("RatFun: inexact polynomial division");
        return q;
    }

    // monic gcd
    Poly pgcd(Poly a, Poly b) const {
        while (!b.empty()) {
            auto [q, r] = pdivmod(a, b);
            (void)q;
            a = std::move(b);
            b = std::move(r);
        }
        if (a.empty()) return a;
        std::uint32_t linv = minv(a.back());
        for (auto& c : a) c = (std::uint32_t)(((std::uint64_t)c * linv) % p_);
        return a;
    }

private:
    std::uint32_t minv(std::uint32_t a) const {
        // Fermat
        std::uint64_t r = 1, base = a, e = p_ - 2;
        while (e) {
            if (e & 1) r = r * base % p_;
            base = base * base % p_;
            e >>= 1;
        }
        return (std::uint32_t)r;
    }

    Poly spread(const Poly& a, std::uint64_t q) const {
        if (a.empty()) return {};
        Poly r((a.size() - 1) * q + 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i) r[i * q] = a[i];
        return r;
    }

    Elem monicize(Poly n, Poly d) const {
        if (n.empty()) return zero();
        std::uint32_t linv = minv(d.back());
        if (linv != 1) {
            for (auto& c : n) c = (std::uint32_t)(((std::uint64_t)c * linv) % p_);
            for (auto& c : d) c = (std::uint32_t)(((std::uint64_t)c * linv) % p_);
        }
        return Elem{std::move(n), std::move(d)};
    }

    Elem canon(Poly n, Poly d) const {
        if (n.empty()) return zero();
        Poly g = pgcd(n, d);
        if (g.size() > 1 || (g.size() == 1 && g[0] != 1)) {
            n = pdiv_exact(n, g);
            d = pdiv_exact(d, g);
        }
        return monicize(std::move(n), std::move(d));
    }

    std::uint32_t p_;
};

}  // namespace supvar
