#pragma once

#include <optional>
#include <string>
#include <vector>

#include "supvar/common.hpp"
#include "supvar/fq.hpp"
#include "supvar/module_data.hpp"
#include "supvar/ratfun.hpp"

namespace supvar {

// A computational field in a sampling tower: F_p, F_{p^d}, or F_p(s).
struct FieldDesc {
    std::uint64_t p = 3;
    unsigned d = 1;
    bool ratfun = false;

    std::string str() const {
        if (ratfun) return "F_" + std::to_string(p) + "(s)";
        if (d == 1) return "F_" + std::to_string(p);
        return "F_" + std::to_string(p) + "^" + std::to_string(d);
    }
    bool operator==(const FieldDesc& o) const {
        return p == o.p && d == o.d && ratfun == o.ratfun;
    }
};

template <class Fn>
auto with_field(const FieldDesc& fd, Fn&& fn) {
    if (fd.ratfun) {
        RatFun k(fd.p);
        return fn(k);
    }
    Fq k(fd.p, fd.d);
    return fn(k);
}

struct SamplePlan {
    std::uint64_t seed = 0;
    unsigned samples = 64;
    std::vector<FieldDesc> tower;

    // default tower: F_p, F_{p^2}, F_{p^3} plus one generic line over F_p(s)
    static SamplePlan defaults(std::uint64_t p) {
        SamplePlan pl;
        pl.tower = {{p, 1, false}, {p, 2, false}, {p, 3, false}, {p, 1, true}};
        return pl;
    }
};

inline std::uint64_t field_salt(const FieldDesc& fd) {
    return fd.p * 1000003ULL + fd.d * 101ULL + (fd.ratfun ? 7ULL : 0ULL);
}

// Per-field sample counts: the finite fields share the load evenly while a
// rational-function entry is a single generic line and gets a handful of
// points along it.
inline std::vector<unsigned> plan_counts(const SamplePlan& plan) {
    std::vector<unsigned> counts(plan.tower.size(), 0);
    unsigned finite = 0;
    for (const auto& fd : plan.tower)
        if (!fd.ratfun) ++finite;
    unsigned generic_each = std::max(2u, plan.samples / 16);
    unsigned remaining = plan.samples;
    for (std::size_t i = 0; i < plan.tower.size(); ++i)
        if (plan.tower[i].ratfun) {
            counts[i] = generic_each;
            remaining -= std::min(remaining, generic_each);
        }
    for (std::size_t i = 0; i < plan.tower.size(); ++i)
        if (!plan.tower[i].ratfun) counts[i] = finite ? std::max(1u, remaining / finite) : 0;
    return counts;
}

// ---------------------------------------------------------------------------
// verdicts
// ---------------------------------------------------------------------------

struct SupportVerdict {
    JordanType jt;
    bool stable = false;  // true iff the stable Jordan type is nonzero
    Recipe recipe = Recipe::ur;
};

template <class F>
SupportVerdict jordan_type_at(const ModuleData& m, const NilTuple<F>& t, Recipe recipe) {
    auto theta = pi_operator(m, t, recipe);
    SupportVerdict v;
    v.jt = jordan_partition(theta, t.p);
    v.stable = v.jt.stable_nonzero();
    v.recipe = recipe;
    return v;
}

template <class F>
bool in_support(const ModuleData& m, const NilTuple<F>& t, Recipe recipe = Recipe::ur) {
    return stable_jordan_nonzero(pi_operator(m, t, recipe), t.p);
}

// sample a tuple matching the module's group data
template <class F>
NilTuple<F> sample_tuple_for(const ModuleData& m, const F& field, unsigned r, Rng& rng) {
    return sample_C_r(field, module_tuple_size(m), r, module_tag(m), rng);
}

// ---------------------------------------------------------------------------
// fingerprints
// ---------------------------------------------------------------------------

struct FingerprintEntry {
    std::string field;
    std::size_t index = 0;
    bool zero_tuple = false;
    bool in_support = false;
    std::string jordan;
};

struct SupportFingerprint {
    std::string module;
    std::uint64_t seed = 0;
    unsigned r = 1;
    std::vector<FieldDesc> tower;
    std::vector<FingerprintEntry> entries;
    std::size_t nonzero = 0;       // sampled tuples that are not the zero tuple
    std::size_t supported = 0;     // of those, how many lie in the support
    std::size_t zero_tuples = 0;   // reported separately, excluded from the fraction
    std::vector<std::string> violations;  // recipe/scaling/conjugation disagreements
};

template <class F>
void fingerprint_one_field(const ModuleData& m, unsigned r, const FieldDesc& fd, const F& field,
                           unsigned count, std::uint64_t seed, SupportFingerprint& out) {
    Rng rng(seed ^ field_salt(fd));
    for (unsigned i = 0; i < count; ++i) {
        auto t = sample_tuple_for(m, field, r, rng);
        auto v = jordan_type_at(m, t, Recipe::ur);
        FingerprintEntry e;
        e.field = fd.str();
        e.index = i;
        e.zero_tuple = is_zero_tuple(t);
        e.in_support = v.stable;
        e.jordan = v.jt.str();
        if (e.zero_tuple)
            ++out.zero_tuples;
        else {
            ++out.nonzero;
            if (v.stable) ++out.supported;
        }
        // cross checks: the sum recipe, star scaling, conjugation
        if (in_support(m, t, Recipe::sum) != v.stable)
            out.violations.push_back(m.name + " " + fd.str() + " #" + std::to_string(i) +
                                     ": recipe disagreement");
        auto a = field.zero();
        while (field.is_zero(a)) a = field.random(rng);
        if (in_support(m, act_star(a, t)) != v.stable)
            out.violations.push_back(m.name + " " + fd.str() + " #" + std::to_string(i) +
                                     ": star-scaling changed the verdict");
        if (module_tag(m) != AlgTag::ga) {
            auto g = sample_group_element(field, t.N, t.tag, rng);
            if (in_support(m, conjugate_tuple(g, t)) != v.stable)
                out.violations.push_back(m.name + " " + fd.str() + " #" + std::to_string(i) +
                                         ": conjugation changed the verdict");
        }
        out.entries.push_back(std::move(e));
    }
}

inline SupportFingerprint fingerprint(const ModuleData& m, unsigned r, const SamplePlan& plan) {
    SupportFingerprint out;
    out.module = m.name;
    out.seed = plan.seed;
    out.r = r;
    out.tower = plan.tower;
    if (plan.tower.empty()) throw ValidationError("fingerprint: empty field tower");
    auto counts = plan_counts(plan);
    for (std::size_t i = 0; i < plan.tower.size(); ++i) {
        const auto& fd = plan.tower[i];
        if (fd.p != m.p()) throw ValidationError("fingerprint: tower characteristic mismatch");
        with_field(fd, [&](const auto& field) {
            fingerprint_one_field(m, r, fd, field, counts[i], plan.seed, out);
            return 0;
        });
    }
    return out;
}

// ---------------------------------------------------------------------------
// the support-axiom harness
// ---------------------------------------------------------------------------

struct AxiomReport {
    std::uint64_t p = 0;
    unsigned r = 1;
    std::uint64_t seed = 0;
    std::size_t checks = 0;
    std::vector<std::string> violations;
};

namespace detail {

inline void note(AxiomReport& rep, bool ok, const std::string& what) {
    ++rep.checks;
    if (!ok) rep.violations.push_back(what);
}

}  // namespace detail

// Pointwise checks of the support laws over a corpus: tensor and direct-sum
// laws on dimension-capped pairs, two-out-of-three on radical extensions,
// basis-change, star-scaling and conjugation invariance.  Any violation is
// reported verbatim; the expected count is zero.
inline AxiomReport axiom_suite(const std::vector<ModuleData>& corpus, unsigned r,
                               const SamplePlan& plan, std::size_t pair_dim_cap = 64) {
    if (corpus.empty()) throw ValidationError("axiom_suite: empty corpus");
    AxiomReport rep;
    rep.p = corpus[0].p();
    rep.r = r;
    rep.seed = plan.seed;
    for (const auto& m : corpus)
        if (m.p() != rep.p) throw ValidationError("axiom_suite: mixed characteristics");

    // designated pairs for the tensor/sum laws
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < corpus.size(); ++i)
        for (std::size_t j = i; j < corpus.size(); ++j) {
            if (module_tag(corpus[i]) != module_tag(corpus[j])) continue;
            if (module_tag(corpus[i]) == AlgTag::u3) continue;
            if (std::holds_alternative<RepModuleData>(corpus[i].v) &&
                std::get<RepModuleData>(corpus[i].v).N !=
                    std::get<RepModuleData>(corpus[j].v).N)
                continue;
            if (module_dim(corpus[i]) * module_dim(corpus[j]) <= pair_dim_cap)
                pairs.push_back({i, j});
        }
    std::vector<ModuleData> tensors, sums;
    for (auto [i, j] : pairs) {
        tensors.push_back(data_tensor(corpus[i], corpus[j]));
        sums.push_back(data_dsum(corpus[i], corpus[j]));
    }

    // radical extensions 0 -> rad M -> M -> head M -> 0
    std::vector<std::size_t> ext_idx;
    std::vector<ModuleData> ext_rad, ext_head;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        if (!std::holds_alternative<UModuleData>(corpus[i].v)) continue;
        if (module_dim(corpus[i]) == 0) continue;
        auto rad = data_radical(corpus[i]);
        if (module_dim(rad) == 0 || module_dim(rad) == module_dim(corpus[i])) continue;
        ext_idx.push_back(i);
        ext_rad.push_back(rad);
        ext_head.push_back(data_head(corpus[i]));
    }

    std::vector<ModuleData> rebased;
    std::vector<std::size_t> rebased_idx;
    for (std::size_t i = 0; i < corpus.size(); ++i)
        if (std::holds_alternative<UModuleData>(corpus[i].v) && module_dim(corpus[i]) > 0) {
            rebased.push_back(data_basis_change(corpus[i], plan.seed + 17 * i + 1));
            rebased_idx.push_back(i);
        }

    auto counts = plan_counts(plan);
    for (std::size_t fi = 0; fi < plan.tower.size(); ++fi) {
        const auto& fd = plan.tower[fi];
        if (fd.p != rep.p) throw ValidationError("axiom_suite: tower characteristic mismatch");
        with_field(fd, [&](const auto& field) {
            using FT = std::decay_t<decltype(field)>;
            Rng rng(plan.seed ^ field_salt(fd));
            unsigned per = counts[fi];
            for (unsigned it = 0; it < per; ++it) {
                // one tuple per group flavour present in the corpus
                std::vector<std::pair<AlgTag, unsigned>> flavours;
                for (const auto& m : corpus) {
                    std::pair<AlgTag, unsigned> f{module_tag(m), module_tuple_size(m)};
                    bool seen = false;
                    for (auto& g : flavours)
                        if (g == f) seen = true;
                    if (!seen) flavours.push_back(f);
                }
                std::vector<NilTuple<FT>> tuples;
                for (auto [tag, nn] : flavours) tuples.push_back(sample_C_r(field, nn, r, tag, rng));
                auto tuple_for = [&](const ModuleData& m) -> const NilTuple<FT>& {
                    std::pair<AlgTag, unsigned> f{module_tag(m), module_tuple_size(m)};
                    for (std::size_t k = 0; k < flavours.size(); ++k)
                        if (flavours[k] == f) return tuples[k];
                    throw CheckFailure("axiom_suite: missing tuple flavour");
                };
                auto vd = [&](const ModuleData& m, const NilTuple<FT>& t) {
                    return in_support(m, t);
                };
                std::string where = " [" + fd.str() + " #" + std::to_string(it) + "]";

                std::vector<bool> base(corpus.size());
                for (std::size_t i = 0; i < corpus.size(); ++i)
                    base[i] = vd(corpus[i], tuple_for(corpus[i]));

                for (std::size_t k = 0; k < pairs.size(); ++k) {
                    auto [i, j] = pairs[k];
                    const auto& t = tuple_for(corpus[i]);
                    detail::note(rep, vd(tensors[k], t) == (base[i] && base[j]),
                                 "tensor law fails for " + tensors[k].name + where);
                    detail::note(rep, vd(sums[k], t) == (base[i] || base[j]),
                                 "direct-sum law fails for " + sums[k].name + where);
                }
                for (std::size_t k = 0; k < ext_idx.size(); ++k) {
                    const auto& t = tuple_for(corpus[ext_idx[k]]);
                    bool v1 = vd(ext_rad[k], t), v2 = base[ext_idx[k]], v3 = vd(ext_head[k], t);
                    detail::note(rep, (!v1 || v2 || v3) && (!v2 || v1 || v3) && (!v3 || v1 || v2),
                                 "two-out-of-three fails for " + corpus[ext_idx[k]].name + where);
                }
                for (std::size_t k = 0; k < rebased_idx.size(); ++k) {
                    const auto& t = tuple_for(corpus[rebased_idx[k]]);
                    detail::note(rep, vd(rebased[k], t) == base[rebased_idx[k]],
                                 "basis-change invariance fails for " + corpus[rebased_idx[k]].name + where);
                }
                for (std::size_t i = 0; i < corpus.size(); ++i) {
                    const auto& t = tuple_for(corpus[i]);
                    auto a = field.zero();
                    while (field.is_zero(a)) a = field.random(rng);
                    detail::note(rep, vd(corpus[i], act_star(a, t)) == base[i],
                                 "star-scaling invariance fails for " + corpus[i].name + where);
                    if (module_tag(corpus[i]) != AlgTag::ga) {
                        auto g = sample_group_element(field, t.N, t.tag, rng);
                        detail::note(rep, vd(corpus[i], conjugate_tuple(g, t)) == base[i],
                                     "conjugation invariance fails for " + corpus[i].name + where);
                    }
                }
            }
            return 0;
        });
    }
    return rep;
}

// ---------------------------------------------------------------------------
// mock injectivity and exponential degree
// ---------------------------------------------------------------------------

// Freeness of the restriction to kG_{a(r)} for r = 1..r_max (minimal-cover
// method); a G_a-module is mock injective iff every entry would be true.
inline std::vector<bool> mock_injective_up_to(const UModuleData& m, unsigned r_max) {
    Fq K(m.p, 1);
    std::vector<bool> out;
    for (unsigned r = 1; r <= r_max; ++r)
        out.push_back(umodule_is_free(umodule_restrict(bind_umodule(K, m), r)));
    return out;
}

// Smallest s such that every sampled operator coefficient u_t with t >= s
// vanishes, i.e. the observed exponential-degree bound; nullopt when the
// window p^(s_max) cannot certify a bound.
inline std::optional<unsigned> exp_degree_bound(const RepModuleData& rm, unsigned s_max,
                                                unsigned samples, std::uint64_t seed) {
    Fq K(rm.p, 1);
    Rng rng(seed);
    std::uint64_t window = ipow(rm.p, s_max);
    std::uint64_t bound = rep_degree_bound(rm.expr, rm.p);
    std::uint64_t trunc = std::min<std::uint64_t>(bound + 1, window);
    unsigned observed = 0;
    for (unsigned i = 0; i < samples; ++i) {
        auto t = sample_C_r(K, rm.N == 0 ? 2 : rm.N, 1, rm.tag, rng);
        PolyRing<Fq> ring(K, (unsigned)trunc);
        auto g = trunc_exp_poly(ring, ring.monomial(1, K.one()), t.b[0]);
        auto h = rep_eval(rm.expr, g);
        for (unsigned s = 0; s < s_max; ++s) {
            std::uint64_t e = ipow(rm.p, s);
            if (e >= trunc) break;
            if (!coeff_mat(h, (unsigned)e).is_zero()) observed = std::max(observed, s + 1);
        }
    }
    if (bound + 1 > window) return std::nullopt;  // window cannot certify a bound
    return observed;
}

}  // namespace supvar
