#pragma once

#include <cstdint>
#include <vector>

#include "supvar/common.hpp"

namespace supvar {

// Finite fields F_p and F_{p^d}, exact arithmetic.
//
// Elements are packed base-p digit strings: the element sum c_i s^i (c_i in
// [0,p), s the class of the generator modulo the defining polynomial) is
// stored as the integer sum c_i p^i < p^d.  The defining polynomial for
// d >= 2 is the smallest monic irreducible of degree d in this encoding, so
// construction is deterministic.  Multiplication goes through exp/log tables
// relative to a fixed generator whenever q fits in memory; otherwise the slow
// polynomial path is used.
class Fq {
public:
    using Elem = std::uint32_t;

    explicit Fq(std::uint64_t p, unsigned d = 1) : p_(p), d_(d) {
        if (!is_prime_u64(p)) throw ValidationError("Fq: characteristic must be prime, got " + std::to_string(p));
        if (d < 1) throw ValidationError("Fq: extension degree must be >= 1");
        q_ = 1;
        for (unsigned i = 0; i < d; ++i) {
            if (q_ > (1ULL << 40) / p) throw ValidationError("Fq: field too large");
            q_ *= p;
        }
        pw_.resize(d + 1);
        pw_[0] = 1;
        for (unsigned i = 1; i <= d; ++i) pw_[i] = pw_[i - 1] * p;
        if (d >= 2) find_modulus();
        if (q_ <= (1ULL << 20)) build_tables();
    }

    std::uint64_t characteristic() const { return p_; }
    unsigned degree() const { return d_; }
    std::uint64_t order() const { return q_; }

    // non-leading coefficients of the defining polynomial, low degree first
    std::vector<std::uint32_t> modulus_coeffs() const {
        std::vector<std::uint32_t> c(d_);
        Elem m = mod_;
        for (unsigned i = 0; i < d_; ++i) { c[i] = m % p_; m /= (Elem)p_; }
        return c;
    }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    bool is_zero(Elem a) const { return a == 0; }

    Elem from_int(long long v) const {
        long long r = v % (long long)p_;
        if (r < 0) r += (long long)p_;
        return (Elem)r;
    }

    Elem from_coeffs(const std::vector<long long>& c) const {
        if (c.size() > d_) throw ValidationError("Fq: too many coefficients for this field");
        Elem r = 0;
        for (std::size_t i = c.size(); i-- > 0;) r = (Elem)(r * p_ + from_int(c[i]));
        return r;
    }

    std::vector<std::uint32_t> coeffs(Elem a) const {
        std::vector<std::uint32_t> c(d_);
        for (unsigned i = 0; i < d_; ++i) { c[i] = a % p_; a /= (Elem)p_; }
        return c;
    }

    Elem add(Elem a, Elem b) const {
        if (d_ == 1) {
            Elem s = a + b;
            return s >= p_ ? s - (Elem)p_ : s;
        }
        Elem r = 0;
        for (unsigned i = 0; i < d_; ++i) {
            Elem s = a % p_ + b % p_;
            if (s >= p_) s -= (Elem)p_;
            r += s * (Elem)pw_[i];
            a /= (Elem)p_;
            b /= (Elem)p_;
        }
        return r;
    }

    Elem neg(Elem a) const {
        if (d_ == 1) return a == 0 ? 0 : (Elem)(p_ - a);
        Elem r = 0;
        for (unsigned i = 0; i < d_; ++i) {
            Elem c = a % p_;
            r += (c == 0 ? 0 : (Elem)(p_ - c)) * (Elem)pw_[i];
            a /= (Elem)p_;
        }
        return r;
    }

    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    void add_assign(Elem& a, Elem b) const { a = add(a, b); }

    Elem mul(Elem a, Elem b) const {
        if (a == 0 || b == 0) return 0;
        if (!exp_.empty()) {
            std::uint64_t e = (std::uint64_t)log_[a] + log_[b];
            return exp_[e];
        }
        return mul_slow(a, b);
    }

    Elem inv(Elem a) const {
        if (a == 0) throw ValidationError("Fq: division by zero");
        if (!exp_.empty()) return exp_[q_ - 1 - log_[a]];
        return pow(a, q_ - 2);
    }

    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    Elem pow(Elem a, std::uint64_t e) const {
        if (a == 0) return e == 0 ? 1 : 0;
        if (!exp_.empty()) {
            std::uint64_t le = ((std::uint64_t)log_[a] * (e % (q_ - 1))) % (q_ - 1);
            return exp_[le];
        }
        Elem r = 1, base = a;
        while (e) {
            if (e & 1) r = mul_slow(r, base);
            base = mul_slow(base, base);
            e >>= 1;
        }
        return r;
    }

    // x -> x^(p^e), the e-fold Frobenius
    Elem frobenius(Elem a, unsigned e) const {
        if (a == 0) return 0;
        std::uint64_t m = q_ - 1, ex = 1;
        for (unsigned i = 0; i < e; ++i) ex = (ex * (p_ % m)) % m;
        return pow(a, ex);
    }

    bool eq(Elem a, Elem b) const { return a == b; }

    Elem random(Rng& rng) const { return (Elem)rng.below(q_); }

private:
    Elem mul_slow(Elem a, Elem b) const {
        // polynomial multiplication of digit strings, reduced by the modulus
        std::uint32_t prod[64] = {0};
        std::uint32_t da[32], db[32];
        unsigned la = 0, lb = 0;
        for (Elem x = a; x; x /= (Elem)p_) da[la++] = x % p_;
        for (Elem x = b; x; x /= (Elem)p_) db[lb++] = x % p_;
        for (unsigned i = 0; i < la; ++i)
            for (unsigned j = 0; j < lb; ++j)
                prod[i + j] = (std::uint32_t)((prod[i + j] + (std::uint64_t)da[i] * db[j]) % p_);
        // reduce: s^d = -mod_ (lower part)
        std::uint32_t mc[32];
        if (d_ >= 2) {
            Elem m = mod_;
            for (unsigned i = 0; i < d_; ++i) { mc[i] = m % p_; m /= (Elem)p_; }
        }
        for (unsigned k = la + lb; k-- > d_;) {
            std::uint32_t c = prod[k];
            if (c == 0) continue;
            prod[k] = 0;
            for (unsigned i = 0; i < d_; ++i) {
                std::uint64_t t = prod[k - d_ + i] + (std::uint64_t)(p_ - mc[i]) * c;
                prod[k - d_ + i] = (std::uint32_t)(t % p_);
            }
        }
        Elem r = 0;
        for (unsigned i = d_; i-- > 0;) r = (Elem)(r * p_ + prod[i]);
        return r;
    }

    bool divides(Elem g, unsigned dg, Elem f, unsigned df) const {
        // trial division of monic f (degree df, packed non-leading coeffs + implicit lead 1)
        // by monic g (degree dg); works on digit arrays
        std::uint32_t rf[40] = {0};
        for (unsigned i = 0; i < df; ++i) { rf[i] = f % p_; f /= (Elem)p_; }
        rf[df] = 1;
        std::uint32_t rg[40] = {0};
        for (unsigned i = 0; i < dg; ++i) { rg[i] = g % p_; g /= (Elem)p_; }
        rg[dg] = 1;
        for (unsigned k = df + 1; k-- > dg;) {
            std::uint32_t c = rf[k];
            if (c == 0) continue;
            for (unsigned i = 0; i <= dg; ++i) {
                std::uint64_t t = rf[k - dg + i] + (std::uint64_t)(p_ - rg[i]) * c;
                rf[k - dg + i] = (std::uint32_t)(t % p_);
            }
        }
        for (unsigned i = 0; i < dg; ++i)
            if (rf[i] != 0) return false;
        return true;
    }

    void find_modulus() {
        for (Elem cand = 0; cand < (Elem)q_; ++cand) {
            bool red = false;
            for (unsigned dg = 1; dg <= d_ / 2 && !red; ++dg)
                for (Elem g = 0; g < (Elem)pw_[dg] && !red; ++g)
                    if (divides(g, dg, cand, d_)) red = true;
            if (!red) {
                mod_ = cand;
                return;
            }
        }
        throw CheckFailure("Fq: no irreducible polynomial found");
    }

    void build_tables() {
        // find a generator of the multiplicative group
        std::vector<std::uint64_t> pf;
        std::uint64_t m = q_ - 1;
        for (std::uint64_t d = 2; d * d <= m; ++d)
            if (m % d == 0) {
                pf.push_back(d);
                while (m % d == 0) m /= d;
            }
        if (m > 1) pf.push_back(m);
        Elem g = 0;
        for (Elem cand = 1; cand < (Elem)q_; ++cand) {
            bool ok = true;
            for (auto f : pf) {
                Elem r = 1;
                std::uint64_t e = (q_ - 1) / f;
                Elem base = cand;
                while (e) {
                    if (e & 1) r = mul_slow(r, base);
                    base = mul_slow(base, base);
                    e >>= 1;
                }
                if (r == 1) { ok = false; break; }
            }
            if (ok) { g = cand; break; }
        }
        if (g == 0 && q_ > 2) throw CheckFailure("Fq: no generator found");
        if (q_ == 2) g = 1;
        exp_.resize(2 * (q_ - 1));
        log_.assign(q_, 0);
        Elem cur = 1;
        for (std::uint64_t i = 0; i < q_ - 1; ++i) {
            exp_[i] = cur;
            exp_[i + q_ - 1] = cur;
            log_[cur] = (std::uint32_t)i;
            cur = mul_slow(cur, g);
        }
    }

    std::uint64_t p_, q_;
    unsigned d_;
    Elem mod_ = 0;  // packed non-leading coefficients of the defining polynomial
    std::vector<std::uint64_t> pw_;
    std::vector<Elem> exp_;
    std::vector<std::uint32_t> log_;
};

}  // namespace supvar
