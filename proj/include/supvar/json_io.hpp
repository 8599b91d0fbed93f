#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "supvar/complexes.hpp"
#include "supvar/module_data.hpp"
#include "supvar/support.hpp"

namespace supvar {

using json = nlohmann::json;

struct ParseError : ValidationError {
    using ValidationError::ValidationError;
};

namespace io {

inline json require(const json& j, const char* key) {
    if (!j.contains(key)) throw ParseError(std::string("missing field: ") + key);
    return j.at(key);
}

// ---- fields ----

inline json to_json(const FieldDesc& fd) {
    json j{{"p", fd.p}};
    if (fd.ratfun)
        j["kind"] = "ratfun";
    else if (fd.d > 1) {
        j["kind"] = "ext";
        j["d"] = fd.d;
    } else
        j["kind"] = "prime";
    return j;
}

inline FieldDesc field_from_json(const json& j) {
    FieldDesc fd;
    fd.p = require(j, "p").get<std::uint64_t>();
    std::string kind = require(j, "kind").get<std::string>();
    if (kind == "prime") {
        fd.d = 1;
    } else if (kind == "ext") {
        fd.d = require(j, "d").get<unsigned>();
        if (fd.d < 2) throw ParseError("extension field needs d >= 2");
    } else if (kind == "ratfun") {
        fd.ratfun = true;
    } else {
        throw ParseError("unknown field kind: " + kind);
    }
    return fd;
}

// ---- field elements ----

inline json elem_to_json(const Fq& k, Fq::Elem e) {
    if (k.degree() == 1) return json((long long)e);
    auto c = k.coeffs(e);
    return json(c);
}

inline json elem_to_json(const RatFun&, const RatFun::Elem& e) {
    return json{{"num", e.num}, {"den", e.den}};
}

inline Fq::Elem elem_from_json(const Fq& k, const json& j) {
    if (j.is_number_integer()) return k.from_int(j.get<long long>());
    if (j.is_array()) {
        std::vector<long long> c = j.get<std::vector<long long>>();
        return k.from_coeffs(c);
    }
    throw ParseError("bad field element encoding");
}

inline RatFun::Elem elem_from_json(const RatFun& k, const json& j) {
    if (j.is_number_integer()) return k.from_int(j.get<long long>());
    if (j.is_object()) {
        RatFun::Poly n = require(j, "num").get<RatFun::Poly>();
        RatFun::Poly d = require(j, "den").get<RatFun::Poly>();
        return k.make(std::move(n), std::move(d));
    }
    throw ParseError("bad rational function encoding");
}

// ---- matrices ----

template <class F>
json mat_to_json(const Mat<F>& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(elem_to_json(m.ring(), m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

template <class F>
Mat<F> mat_from_json(const F& k, const json& j) {
    std::size_t rows = require(j, "rows").get<std::size_t>();
    std::size_t cols = require(j, "cols").get<std::size_t>();
    auto entries = require(j, "entries");
    if (!entries.is_array() || entries.size() != rows) throw ParseError("matrix entry rows mismatch");
    Mat<F> m(k, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!entries[i].is_array() || entries[i].size() != cols)
            throw ParseError("matrix entry cols mismatch");
        for (std::size_t c = 0; c < cols; ++c) m.at(i, c) = elem_from_json(k, entries[i][c]);
    }
    return m;
}

inline json imat_to_json(const IMat& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows; ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols; ++j) row.push_back(m.at(i, j));
        rows.push_back(std::move(row));
    }
    return json{{"rows", m.rows}, {"cols", m.cols}, {"entries", rows}};
}

inline IMat imat_from_json(const json& j) {
    IMat m(require(j, "rows").get<std::size_t>(), require(j, "cols").get<std::size_t>());
    auto entries = require(j, "entries");
    if (!entries.is_array() || entries.size() != m.rows) throw ParseError("matrix entry rows mismatch");
    for (std::size_t i = 0; i < m.rows; ++i) {
        if (!entries[i].is_array() || entries[i].size() != m.cols)
            throw ParseError("matrix entry cols mismatch");
        for (std::size_t c = 0; c < m.cols; ++c) m.at(i, c) = entries[i][c].get<long long>();
    }
    return m;
}

// ---- tuples ----

template <class F>
json tuple_to_json(const NilTuple<F>& t, const FieldDesc& fd) {
    json bs = json::array();
    for (const auto& m : t.b) bs.push_back(mat_to_json(m));
    return json{{"field", to_json(fd)}, {"p", t.p},   {"N", t.N},
                {"r", t.r()},           {"tag", tag_name(t.tag)}, {"B", bs}};
}

template <class F>
NilTuple<F> tuple_from_json(const F& k, const json& j) {
    NilTuple<F> t;
    t.field = &k;
    t.p = require(j, "p").get<std::uint64_t>();
    if (t.p != k.characteristic()) throw ParseError("tuple characteristic does not match field");
    t.N = require(j, "N").get<unsigned>();
    t.tag = tag_from_name(require(j, "tag").get<std::string>());
    auto bs = require(j, "B");
    for (const auto& bj : bs) t.b.push_back(mat_from_json(k, bj));
    if (t.b.size() != require(j, "r").get<std::size_t>()) throw ParseError("tuple r mismatch");
    if (!in_C_r(t)) throw ValidationError("tuple is not a point of C_r");
    return t;
}

// ---- rep expressions ----

inline json rep_to_json(const RepExpr& e) {
    switch (e.op) {
        case RepExpr::Op::std_rep: return json{{"op", "std"}, {"N", e.n}};
        case RepExpr::Op::trivial: return json{{"op", "trivial"}};
        case RepExpr::Op::dual: return json{{"op", "dual"}, {"arg", rep_to_json(e.args[0])}};
        case RepExpr::Op::tensor:
            return json{{"op", "tensor"},
                        {"args", json::array({rep_to_json(e.args[0]), rep_to_json(e.args[1])})}};
        case RepExpr::Op::dsum:
            return json{{"op", "sum"},
                        {"args", json::array({rep_to_json(e.args[0]), rep_to_json(e.args[1])})}};
        case RepExpr::Op::sym: return json{{"op", "sym"}, {"k", e.n}, {"arg", rep_to_json(e.args[0])}};
        case RepExpr::Op::wedge:
            return json{{"op", "wedge"}, {"k", e.n}, {"arg", rep_to_json(e.args[0])}};
        case RepExpr::Op::twist:
            return json{{"op", "twist"}, {"e", e.n}, {"arg", rep_to_json(e.args[0])}};
        case RepExpr::Op::sub:
            return json{{"op", "sub"}, {"basis", e.basis}, {"arg", rep_to_json(e.args[0])}};
        case RepExpr::Op::quot:
            return json{{"op", "quot"}, {"basis", e.basis}, {"arg", rep_to_json(e.args[0])}};
    }
    throw CheckFailure("rep_to_json: unhandled node");
}

inline RepExpr rep_from_json(const json& j) {
    std::string op = require(j, "op").get<std::string>();
    if (op == "std") return RepExpr::std_rep(require(j, "N").get<unsigned>());
    if (op == "trivial") return RepExpr::trivial_rep();
    if (op == "dual") return RepExpr::dual(rep_from_json(require(j, "arg")));
    if (op == "tensor" || op == "sum") {
        auto args = require(j, "args");
        if (!args.is_array() || args.size() < 2) throw ParseError("tensor/sum needs >= 2 args");
        RepExpr acc = rep_from_json(args[0]);
        for (std::size_t i = 1; i < args.size(); ++i) {
            acc = op == "tensor" ? RepExpr::tensor(std::move(acc), rep_from_json(args[i]))
                                 : RepExpr::dsum(std::move(acc), rep_from_json(args[i]));
        }
        return acc;
    }
    if (op == "sym") return RepExpr::sym(require(j, "k").get<unsigned>(), rep_from_json(require(j, "arg")));
    if (op == "wedge")
        return RepExpr::wedge(require(j, "k").get<unsigned>(), rep_from_json(require(j, "arg")));
    if (op == "twist")
        return RepExpr::twist(require(j, "e").get<unsigned>(), rep_from_json(require(j, "arg")));
    if (op == "sub" || op == "quot") {
        auto basis = require(j, "basis").get<std::vector<std::vector<long long>>>();
        auto arg = rep_from_json(require(j, "arg"));
        return op == "sub" ? RepExpr::sub(std::move(arg), std::move(basis))
                           : RepExpr::quot(std::move(arg), std::move(basis));
    }
    throw ParseError("unknown rep op: " + op);
}

// ---- modules ----

inline json module_to_json(const ModuleData& m) {
    if (auto* u = std::get_if<UModuleData>(&m.v)) {
        json us = json::array();
        for (const auto& mm : u->u) us.push_back(imat_to_json(mm));
        return json{{"name", m.name}, {"type", "umodule"}, {"p", u->p},
                    {"r", u->r},      {"dim", u->dim},     {"U", us}};
    }
    if (auto* r = std::get_if<RepModuleData>(&m.v)) {
        return json{{"name", m.name},          {"type", "rep"},   {"p", r->p},
                    {"group", tag_name(r->tag)}, {"N", r->N},     {"expr", rep_to_json(r->expr)}};
    }
    const auto& u3 = std::get<U3InducedData>(m.v);
    return json{{"name", m.name}, {"type", "u3induced"}, {"p", u3.p}, {"D", u3.D}};
}

inline ModuleData module_from_json(const json& j) {
    ModuleData m;
    m.name = j.value("name", "");
    std::string type = require(j, "type").get<std::string>();
    if (type == "umodule") {
        UModuleData u;
        u.p = require(j, "p").get<std::uint64_t>();
        u.r = require(j, "r").get<unsigned>();
        u.dim = require(j, "dim").get<unsigned>();
        for (const auto& mj : require(j, "U")) u.u.push_back(imat_from_json(mj));
        if (u.u.size() != u.r) throw ParseError("umodule: r does not match U count");
        m.v = std::move(u);
    } else if (type == "rep") {
        RepModuleData r;
        r.p = require(j, "p").get<std::uint64_t>();
        r.tag = tag_from_name(require(j, "group").get<std::string>());
        r.N = require(j, "N").get<unsigned>();
        r.expr = rep_from_json(require(j, "expr"));
        m.v = std::move(r);
    } else if (type == "u3induced") {
        U3InducedData u3;
        u3.p = require(j, "p").get<std::uint64_t>();
        u3.D = require(j, "D").get<unsigned>();
        m.v = u3;
    } else {
        throw ParseError("unknown module type: " + type);
    }
    validate_module(m);
    return m;
}

// ---- complexes ----

inline json complex_to_json(const ComplexData& c) {
    json layers = json::array(), diffs = json::array();
    for (const auto& l : c.layers) layers.push_back(module_to_json(l));
    for (const auto& d : c.diffs) diffs.push_back(imat_to_json(d));
    return json{{"name", c.name},
                {"degrees", json::array({c.bottom, c.bottom + (int)c.layers.size() - 1})},
                {"layers", layers},
                {"differentials", diffs}};
}

inline ComplexData complex_from_json(const json& j) {
    ComplexData c;
    c.name = j.value("name", "");
    auto degrees = require(j, "degrees");
    if (!degrees.is_array() || degrees.size() != 2) throw ParseError("complex: degrees must be [m, M]");
    c.bottom = degrees[0].get<int>();
    for (const auto& lj : require(j, "layers")) c.layers.push_back(module_from_json(lj));
    for (const auto& dj : require(j, "differentials")) c.diffs.push_back(imat_from_json(dj));
    if ((int)c.layers.size() != degrees[1].get<int>() - c.bottom + 1)
        throw ParseError("complex: degree range does not match layer count");
    validate_complex(c);
    return c;
}

// ---- files ----

inline json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ParseError("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

inline void save_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write file: " + path);
    out << j.dump(2) << "\n";
}

// FNV-1a over the canonical dump; reports embed this for reproducibility
inline std::string content_hash(const json& j) {
    std::string s = j.dump();
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
    return buf;
}

}  // namespace io
}  // namespace supvar
