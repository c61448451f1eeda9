#pragma once

#include <ceda/config.hpp>

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace tools {

// Hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

// Run record: command line, config snapshot, seed, input/output digests and
// step timings. Written by finish() into the output directory.
class Manifest {
public:
    Manifest(std::string command, std::vector<std::string> argv, std::uint64_t seed, std::filesystem::path dir,
             std::string file_name = "manifest.json");

    void add_input(const std::string& path);
    void set_config(const ceda::AnalysisConfig& config);

    // Creates dir/name, lets `fill` write it, and records it as an output.
    void write(const std::string& name, const std::function<void(std::ostream&)>& fill);

    template <class Fn>
    auto time(const std::string& step, Fn&& fn) {
        const auto start = std::chrono::steady_clock::now();
        auto result = fn();
        timings_.emplace_back(step, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
        return result;
    }

    void finish();

private:
    std::string command_;
    std::vector<std::string> argv_;
    std::uint64_t seed_;
    std::filesystem::path dir_;
    std::string file_name_;
    std::string config_json_;
    std::string started_at_;
    std::vector<std::string> inputs_;
    std::vector<std::string> outputs_;
    std::vector<std::pair<std::string, double>> timings_;
};

}  // namespace tools
