// supvar: support varieties for algebraic groups of exponential type at desk
// scale.  Subcommands load JSON modules/tuples/complexes, run verdicts,
// fingerprints and axiom suites, and replay the built-in example recipes.
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "supvar/examples_recipes.hpp"
#include "supvar/json_io.hpp"

namespace fs = std::filesystem;
using namespace supvar;

namespace {

constexpr const char* kVersion = "0.1.0";

struct CommonOpts {
    std::uint64_t p = 3;
    std::uint64_t seed = 0;
    unsigned samples = 64;
    unsigned r = 2;
    std::string field = "tower";
    std::string format = "json";
    std::string verify = "fast";
    std::string config;
};

// precedence: flags > config file > defaults
void apply_config(CLI::App* cmd, CommonOpts& o) {
    if (o.config.empty()) return;
    auto j = io::load_json(o.config);
    auto take = [&](const char* flag, const char* key, auto& slot) {
        if (cmd->count(flag) == 0 && j.contains(key))
            slot = j.at(key).get<std::decay_t<decltype(slot)>>();
    };
    take("--p", "p", o.p);
    take("--seed", "seed", o.seed);
    take("--samples", "samples", o.samples);
    take("--r", "r", o.r);
    take("--field", "field", o.field);
    take("--format", "format", o.format);
    take("--verify", "verify", o.verify);
}

std::vector<FieldDesc> parse_tower(const std::string& spec, std::uint64_t p) {
    if (spec == "tower") return SamplePlan::defaults(p).tower;
    if (spec == "prime") return {{p, 1, false}};
    if (spec == "ratfun") return {{p, 1, true}};
    if (spec.rfind("ext:", 0) == 0) {
        unsigned d = (unsigned)std::stoul(spec.substr(4));
        return {{p, d, false}};
    }
    throw ValidationError("unknown --field spec: " + spec + " (want tower|prime|ext:D|ratfun)");
}

json report_header(const std::string& command, const CommonOpts& o) {
    json tower = json::array();
    for (const auto& fd : parse_tower(o.field, o.p)) tower.push_back(io::to_json(fd));
    return json{{"command", command}, {"version", kVersion}, {"seed", o.seed},
                    {"samples", o.samples}, {"tower", tower}};
}

void emit(const json& j, const std::string& format) {
    if (format == "json") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    if (format == "csv") {
        // flatten one level: scalar fields become columns
        std::string head, row;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!it.value().is_primitive()) continue;
            if (!head.empty()) {
                head += ',';
                row += ',';
            }
            head += it.key();
            row += it.value().is_string() ? it.value().get<std::string>() : it.value().dump();
        }
        std::cout << head << "\n" << row << "\n";
        return;
    }
    throw ValidationError("unknown --format: " + format);
}

// verdict of a module at a tuple loaded from files, dispatched over the
// tuple's declared field
template <class Fn>
void with_tuple_file(const std::string& path, Fn&& fn) {
    auto j = io::load_json(path);
    auto fd = io::field_from_json(io::require(j, "field"));
    with_field(fd, [&](const auto& field) {
        auto t = io::tuple_from_json(field, j);
        fn(fd, field, t);
        return 0;
    });
}

int cmd_jordan(const std::string& module_path, const std::string& tuple_path,
               const std::string& recipe, const CommonOpts& o) {
    auto m = io::module_from_json(io::load_json(module_path));
    json out = report_header("jordan", o);
    with_tuple_file(tuple_path, [&](const FieldDesc& fd, const auto&, const auto& t) {
        auto rec = recipe == "sum" ? Recipe::sum : Recipe::ur;
        auto v = jordan_type_at(m, t, rec);
        out["module"] = m.name;
        out["field"] = io::to_json(fd);
        out["recipe"] = recipe_name(rec);
        out["jordan_type"] = v.jt.str();
        out["stable_jordan_type"] = v.jt.stable_part().str();
        out["stable"] = v.stable;
        out["module_hash"] = io::content_hash(io::module_to_json(m));
    });
    emit(out, o.format);
    return 0;
}

int cmd_support(const std::string& module_path, const std::string& tuple_path,
                const CommonOpts& o) {
    auto m = io::module_from_json(io::load_json(module_path));
    json out = report_header("support", o);
    with_tuple_file(tuple_path, [&](const FieldDesc& fd, const auto&, const auto& t) {
        bool ur = jordan_type_at(m, t, Recipe::ur).stable;
        out["module"] = m.name;
        out["field"] = io::to_json(fd);
        out["in_support"] = ur;
        if (o.verify == "cross-oracle") {
            bool sum = jordan_type_at(m, t, Recipe::sum).stable;
            if (sum != ur) throw CheckFailure("support: the two pi-point recipes disagree");
            out["verified"] = "ur/sum recipes agree";
        }
        out["module_hash"] = io::content_hash(io::module_to_json(m));
    });
    emit(out, o.format);
    return 0;
}

int cmd_fingerprint(const std::string& module_path, const CommonOpts& o) {
    auto m = io::module_from_json(io::load_json(module_path));
    SamplePlan plan;
    plan.seed = o.seed;
    plan.samples = o.samples;
    plan.tower = parse_tower(o.field, m.p());
    auto fp = fingerprint(m, o.r, plan);
    json out = report_header("fingerprint", o);
    out["module"] = m.name;
    out["module_hash"] = io::content_hash(io::module_to_json(m));
    out["r"] = o.r;
    out["nonzero_tuples"] = fp.nonzero;
    out["in_support"] = fp.supported;
    out["zero_tuples"] = fp.zero_tuples;
    out["violations"] = fp.violations;
    if (o.format == "csv") {
        std::cout << "# module=" << m.name << " seed=" << o.seed << " r=" << o.r
                  << " module_hash=" << out["module_hash"].get<std::string>() << " tower=";
        for (const auto& fd : plan.tower) std::cout << fd.str() << ";";
        std::cout << "\n";
        std::cout << "field,index,zero_tuple,in_support,jordan\n";
        for (const auto& e : fp.entries)
            std::cout << e.field << ',' << e.index << ',' << e.zero_tuple << ',' << e.in_support
                      << ',' << e.jordan << "\n";
        return fp.violations.empty() ? 0 : 3;
    }
    json entries = json::array();
    for (const auto& e : fp.entries)
        entries.push_back(json{{"field", e.field},
                                   {"index", e.index},
                                   {"zero_tuple", e.zero_tuple},
                                   {"in_support", e.in_support},
                                   {"jordan", e.jordan}});
    out["entries"] = entries;
    emit(out, o.format);
    return fp.violations.empty() ? 0 : 3;
}

std::vector<ModuleData> load_corpus(const std::string& dir, std::uint64_t p) {
    std::vector<ModuleData> corpus;
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
        auto m = io::module_from_json(io::load_json(f.string()));
        if (p == 0 || m.p() == p) corpus.push_back(std::move(m));
    }
    if (corpus.empty()) throw ValidationError("no modules with p=" + std::to_string(p) + " in " + dir);
    return corpus;
}

int cmd_axioms(const std::string& corpus_dir, const CommonOpts& o) {
    auto corpus = load_corpus(corpus_dir, o.p);
    SamplePlan plan;
    plan.seed = o.seed;
    plan.samples = o.samples;
    plan.tower = parse_tower(o.field, o.p);
    auto rep = axiom_suite(corpus, o.r, plan);
    json out = report_header("axioms", o);
    out["corpus_size"] = corpus.size();
    json names = json::array(), hashes = json::array();
    for (const auto& m : corpus) {
        names.push_back(m.name);
        hashes.push_back(io::content_hash(io::module_to_json(m)));
    }
    out["corpus"] = names;
    out["corpus_hashes"] = hashes;
    out["r"] = o.r;
    out["checks"] = rep.checks;
    out["violations"] = rep.violations;
    emit(out, o.format);
    return rep.violations.empty() ? 0 : 3;
}

int cmd_complex(const std::string& complex_path, const std::string& tuple_path,
                const CommonOpts& o) {
    auto c = io::complex_from_json(io::load_json(complex_path));
    json out = report_header("complex", o);
    with_tuple_file(tuple_path, [&](const FieldDesc& fd, const auto&, const auto& t) {
        bool cross = o.verify == "cross-oracle";
        bool v = complex_in_support(c, t, cross);
        out["complex"] = c.name;
        out["field"] = io::to_json(fd);
        out["r"] = t.r();
        out["in_support"] = v;
        out["complex_hash"] = io::content_hash(io::complex_to_json(c));
        if (cross) out["verified"] = "tate/collapse oracles agree";
    });
    emit(out, o.format);
    return 0;
}

int cmd_examples(const std::string& which, const CommonOpts& o) {
    std::vector<ExampleResult> results;
    auto run = [&](const std::string& name) {
        if (name == "ga-ls")
            results.push_back(example_ga_ls(o.p, o.seed, o.samples));
        else if (name == "sl2-steinberg")
            results.push_back(example_sl2_steinberg(o.p, o.seed, o.samples));
        else if (name == "u3-induced")
            results.push_back(example_u3_induced(o.p, o.seed, o.samples));
        else if (name == "carlson")
            results.push_back(example_carlson(o.seed, o.samples));
        else
            throw ValidationError("unknown example: " + name +
                                  " (want ga-ls|sl2-steinberg|u3-induced|carlson|all)");
    };
    if (which == "all")
        for (const char* n : {"ga-ls", "sl2-steinberg", "u3-induced", "carlson"}) run(n);
    else
        run(which);
    bool all_pass = true;
    for (const auto& r : results) {
        std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.name << "  (" << r.points
                  << " assertions)\n";
        for (const auto& f : r.failures) std::cout << "      " << f << "\n";
        all_pass = all_pass && r.pass;
    }
    return all_pass ? 0 : 3;
}

int cmd_corpus_validate(const std::string& dir) {
    std::size_t count = 0;
    std::vector<fs::path> files;
    for (const auto& e : fs::recursive_directory_iterator(dir))
        if (e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
        auto j = io::load_json(f.string());
        try {
            if (j.contains("layers")) {
                io::complex_from_json(j);
            } else if (j.contains("B")) {
                auto fd = io::field_from_json(io::require(j, "field"));
                with_field(fd, [&](const auto& field) {
                    io::tuple_from_json(field, j);
                    return 0;
                });
            } else {
                io::module_from_json(j);
            }
        } catch (const ValidationError& e) {
            throw ValidationError(f.string() + ": " + e.what());
        }
        ++count;
    }
    std::cout << "validated " << count << " files\n";
    if (count == 0) throw ValidationError("no JSON files under " + dir);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact support-variety computations for algebraic groups of exponential type"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string module_path, tuple_path, complex_path, corpus_dir, recipe = "ur", which = "all";

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--p", o.p, "characteristic");
        cmd->add_option("--seed", o.seed, "sampling seed");
        cmd->add_option("--samples", o.samples, "sample count");
        cmd->add_option("--r", o.r, "tuple length r");
        cmd->add_option("--field", o.field, "field tower: tower|prime|ext:D|ratfun");
        cmd->add_option("--format", o.format, "output format: json|csv");
        cmd->add_option("--verify", o.verify, "verification level: fast|cross-oracle");
        cmd->add_option("--config", o.config, "JSON file with default option values");
    };

    auto* jordan = app.add_subcommand("jordan", "Jordan type of a module at a tuple");
    jordan->add_option("--module", module_path, "module JSON file")->required();
    jordan->add_option("--tuple", tuple_path, "tuple JSON file")->required();
    jordan->add_option("--recipe", recipe, "pi-point recipe: ur|sum");
    add_common(jordan);

    auto* support = app.add_subcommand("support", "support membership of a module at a tuple");
    support->add_option("--module", module_path)->required();
    support->add_option("--tuple", tuple_path)->required();
    add_common(support);

    auto* fp = app.add_subcommand("fingerprint", "sampled support fingerprint of a module");
    fp->add_option("--module", module_path)->required();
    add_common(fp);

    auto* ax = app.add_subcommand("axioms", "support-axiom suite over a corpus directory");
    ax->add_option("--corpus", corpus_dir)->required();
    add_common(ax);

    auto* cx = app.add_subcommand("complex", "support membership of a bounded complex at a tuple");
    cx->add_option("--complex", complex_path)->required();
    cx->add_option("--tuple", tuple_path)->required();
    add_common(cx);

    auto* ex = app.add_subcommand("examples", "replay the built-in worked examples");
    ex->add_option("name", which, "ga-ls|sl2-steinberg|u3-induced|carlson|all");
    add_common(ex);

    auto* cv = app.add_subcommand("corpus-validate", "validate every JSON file under a directory");
    cv->add_option("--corpus", corpus_dir)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        for (CLI::App* cmd : {jordan, support, fp, ax, cx, ex})
            if (cmd->parsed()) apply_config(cmd, o);
        if (jordan->parsed()) return cmd_jordan(module_path, tuple_path, recipe, o);
        if (support->parsed()) return cmd_support(module_path, tuple_path, o);
        if (fp->parsed()) return cmd_fingerprint(module_path, o);
        if (ax->parsed()) return cmd_axioms(corpus_dir, o);
        if (cx->parsed()) return cmd_complex(complex_path, tuple_path, o);
        if (ex->parsed()) return cmd_examples(which, o);
        if (cv->parsed()) return cmd_corpus_validate(corpus_dir);
    } catch (const ValidationError& e) {
        std::cerr << json{{"error", "invalid input"}, {"detail", e.what()}}.dump() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << json{{"error", "check failure"}, {"detail", e.what()}}.dump() << "\n";
        return 3;
    }
    return 0;
}
