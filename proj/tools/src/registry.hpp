// Benchmark registry: one instance per line,
//   <path> <optimum> [max_trials]
// '#' starts a comment; paths resolve relative to the registry file.

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mabbtsp/tsplib.hpp"

namespace mabbcli {

struct RegistryEntry {
    std::filesystem::path path;
    std::int64_t optimum = 0;
    std::optional<std::int64_t> max_trials;
};

inline std::vector<RegistryEntry> load_benchmark_registry(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw mabb::ParseError("cannot open registry: " + path.string());
    std::vector<RegistryEntry> entries;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string file;
        if (!(ls >> file) || file[0] == '#')
            continue;
        RegistryEntry e;
        if (!(ls >> e.optimum) || e.optimum <= 0)
            throw mabb::ParseError("registry line needs a positive optimum: " + line);
        std::int64_t mt;
        if (ls >> mt)
            e.max_trials = mt;
        std::filesystem::path p(file);
        e.path = p.is_absolute() ? p : path.parent_path() / p;
        entries.push_back(std::move(e));
    }
    return entries;
}

} // namespace mabbcli
