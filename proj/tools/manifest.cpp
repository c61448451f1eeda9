#include "manifest.hpp"

#include <ceda/error.hpp>

#include <json.hpp>
#include <openssl/evp.h>

#include <array>
#include <ctime>
#include <fstream>
#include <memory>

#include <fmt/format.h>

namespace tools {

namespace fs = std::filesystem;

std::string sha256_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ceda::Error("cannot read '" + path.string() + "' for hashing");
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
    std::array<char, 1 << 16> buf{};
    while (in) {
        in.read(buf.data(), buf.size());
        if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
    }
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx.get(), md.data(), &len);
    std::string hex;
    for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", md[i]);
    return hex;
}

Manifest::Manifest(std::string command, std::vector<std::string> argv, std::uint64_t seed, fs::path dir,
                   std::string file_name)
    : command_(std::move(command)), argv_(std::move(argv)), seed_(seed), dir_(std::move(dir)),
      file_name_(std::move(file_name)) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw ceda::ConfigError("cannot create output directory '" + dir_.string() + "': " + ec.message());
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm);
    started_at_ = stamp;
}

void Manifest::add_input(const std::string& path) { inputs_.push_back(path); }

void Manifest::set_config(const ceda::AnalysisConfig& config) { config_json_ = ceda::config_to_json(config); }

void Manifest::write(const std::string& name, const std::function<void(std::ostream&)>& fill) {
    const auto path = dir_ / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ceda::Error("cannot write '" + path.string() + "'");
    fill(out);
    out.close();
    if (!out) throw ceda::Error("failed writing '" + path.string() + "'");
    outputs_.push_back(name);
}

void Manifest::finish() {
    nlohmann::ordered_json j;
    j["command"] = command_;
    j["argv"] = argv_;
    j["seed"] = seed_;
    j["started_at"] = started_at_;
    j["config"] = config_json_.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json::parse(config_json_);
    auto files = [](const std::vector<std::string>& names, const fs::path& base) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& n : names) {
            const fs::path p = base.empty() ? fs::path(n) : base / n;
            arr.push_back({{"path", p.string()}, {"sha256", sha256_file(p)}});
        }
        return arr;
    };
    j["inputs"] = files(inputs_, {});
    j["outputs"] = files(outputs_, dir_);
    nlohmann::ordered_json t = nlohmann::ordered_json::object();
    for (const auto& [step, secs] : timings_) t[step] = secs;
    j["timings_seconds"] = t;
    std::ofstream out(dir_ / file_name_, std::ios::binary);
    out << j.dump(2) << "\n";
    if (!out) throw ceda::Error("cannot write manifest in '" + dir_.string() + "'");
}

}  // namespace tools
