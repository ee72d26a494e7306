// Writes generated instances in the Li & Lim layout.
//
//   pdptw_gen lrc1 OUT_DIR [SEED]              eight LRC1-shaped files lrc101.txt .. lrc108.txt
//   pdptw_gen synthetic OUT_FILE COUPLES TIGHTNESS SEED [VEHICLES CAPACITY]

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "pdptw/lilim.hpp"
#include "pdptw/synthetic.hpp"

namespace {

int usage() {
    std::cerr << "usage: pdptw_gen lrc1 OUT_DIR [SEED]\n"
                 "       pdptw_gen synthetic OUT_FILE COUPLES TIGHTNESS SEED [VEHICLES CAPACITY]\n";
    return 2;
}

bool write(const std::filesystem::path& p, const pdptw::Instance& inst) {
    std::ofstream out(p);
    if (!out) {
        std::cerr << "cannot write " << p << "\n";
        return false;
    }
    out << pdptw::serialize_lilim(inst);
    return true;
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 3) return usage();
    const std::string what = argv[1];
    try {
        if (what == "lrc1") {
            const std::filesystem::path dir = argv[2];
            const std::uint64_t seed = argc > 3 ? std::stoull(argv[3]) : 2010;
            std::filesystem::create_directories(dir);
            for (int v = 1; v <= 8; ++v)
                if (!write(dir / ("lrc10" + std::to_string(v) + ".txt"), pdptw::generate_lrc1_like(v, seed))) return 1;
            return 0;
        }
        if (what == "synthetic" && argc >= 6) {
            pdptw::SyntheticOptions opt;
            if (argc >= 8) {
                opt.vehicles = std::stoi(argv[6]);
                opt.capacity = std::stoi(argv[7]);
            }
            const auto inst = pdptw::generate_synthetic(std::stoi(argv[3]), std::stod(argv[4]), std::stoull(argv[5]), opt);
            return write(argv[2], inst) ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return usage();
}
