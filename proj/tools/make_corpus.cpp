// Regenerates the shipped module corpus under data/corpus: for each (p, r)
// in {2,3,5} x {1,2} a directory of u-modules plus rep modules, all with
// prime-field entries.  Deterministic; run from the repository root.
#include <filesystem>
#include <iostream>

#include "supvar/json_io.hpp"

namespace fs = std::filesystem;
using namespace supvar;

namespace {

void write_module(const fs::path& dir, const ModuleData& m) {
    io::save_json((dir / (m.name + ".json")).string(), io::module_to_json(m));
}

ModuleData named(ModuleData m, const std::string& name) {
    m.name = name;
    return m;
}

std::vector<ModuleData> corpus_for(std::uint64_t p, unsigned r) {
    std::vector<ModuleData> out;
    out.push_back(data_trivial(p));
    out.push_back(named(data_regular(p, r), "regular"));
    out.push_back(named(data_radical(out.back()), "rad_regular"));
    out.push_back(named(data_head(data_radical(data_regular(p, r))), "rad_head"));
    // syzygy of the trivial module: rad of the regular cover
    out.push_back(named(data_dual(data_radical(data_regular(p, r))), "rad_regular_dual"));
    // L_S truncations
    out.push_back(named(data_ls(p, {0}, (unsigned)p), "ls0_short"));
    out.push_back(named(data_ls(p, {0}, (unsigned)(2 * p - 1)), "ls0_long"));
    if (r >= 2) {
        out.push_back(named(data_ls(p, {1}, (unsigned)(p * p)), "ls1"));
        out.push_back(named(data_ls(p, {0, 1}, (unsigned)(p * p)), "ls01"));
    } else {
        out.push_back(named(data_dsum(data_trivial(p), data_regular(p, 1)), "k_plus_reg"));
        out.push_back(named(data_tensor(data_ls(p, {0}, (unsigned)p), data_trivial(p)), "ls0_tensor_k"));
    }
    // single-block modules [2] and [p] as u-modules over level r
    {
        Fq K(p, 1);
        UModuleData blk;
        blk.p = p;
        blk.r = r;
        blk.dim = 2;
        IMat j2(2, 2);
        j2.at(0, 1) = 1;
        blk.u.push_back(j2);
        for (unsigned i = 1; i < r; ++i) blk.u.push_back(IMat(2, 2));
        ModuleData m;
        m.name = "block2";
        m.v = blk;
        out.push_back(m);
    }
    out.push_back(named(data_basis_change(data_dsum(data_trivial(p), data_ls(p, {0}, (unsigned)p)),
                                          2024),
                        "rebased_sum"));
    out.push_back(named(data_dual(data_ls(p, {0}, (unsigned)p)), "ls0_dual"));
    out.push_back(named(data_twist(data_ls(p, {0}, (unsigned)(p - 1)), r >= 2 ? 1 : 0), "ls0_twist"));
    if (p % 2 == 1 && r >= 2) {
        CohClass z{2, {{{1, 0}, 1}}};
        out.push_back(named(data_carlson(p, 2, z), "carlson_x1"));
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    fs::path root = argc > 1 ? argv[1] : "data";
    for (std::uint64_t p : {2ull, 3ull, 5ull}) {
        for (unsigned r : {1u, 2u}) {
            fs::path dir = root / "corpus" / ("p" + std::to_string(p) + "r" + std::to_string(r));
            fs::create_directories(dir);
            auto corpus = corpus_for(p, r);
            for (const auto& m : corpus) {
                validate_module(m);
                write_module(dir, m);
            }
            std::cout << dir.string() << ": " << corpus.size() << " modules\n";
        }
    }
    return 0;
}
