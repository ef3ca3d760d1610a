// Writes the GL2 orbit tables mod 16 and mod 27 with their manifest.
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "cubic/localdata.hpp"

int main(int argc, char** argv) {
    std::filesystem::path dir = argc > 1 ? argv[1] : CUBIC_DATA_DIR;
    std::filesystem::create_directories(dir);
    nlohmann::json manifest{{"generator_version", cubic::kOrbitGeneratorVersion}, {"tables", nlohmann::json::array()}};
    for (auto [p, e] : {std::pair<cubic::i64, int>{2, 4}, {3, 3}}) {
        const auto& t = cubic::orbit_table(p);
        std::string name = "orbits_p" + std::to_string(p) + "_e" + std::to_string(e) + ".csv";
        std::ofstream out(dir / name);
        cubic::write_orbit_csv(t, out);
        if (!out) {
            std::cerr << "cannot write " << (dir / name) << '\n';
            return 1;
        }
        nlohmann::json sizes = nlohmann::json::object();
        for (auto [label, n] : t.label_sizes()) sizes[std::to_string(label)] = n;
        manifest["tables"].push_back({{"file", name},
                                      {"p", p},
                                      {"e", e},
                                      {"orbits", t.orbits().size()},
                                      {"tuples_by_label", sizes}});
        std::cout << "wrote " << (dir / name).string() << '\n';
    }
    std::ofstream(dir / "MANIFEST.json") << manifest.dump(2) << '\n';
    return 0;
}
