#include "run_dir.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <nlohmann/json.hpp>

#include "seqenrich/digest.hpp"

namespace seqenrich::cli {

namespace fs = std::filesystem;

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read '" + path.string() + "'");
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

RunDir::RunDir(fs::path root, std::string command) : root_(std::move(root)), command_(std::move(command)) {
    std::error_code ec;
    fs::create_directories(root_, ec);
    if (ec) throw IoError("cannot create '" + root_.string() + "': " + ec.message());
}

std::string RunDir::read_input(std::string_view role, const std::string& path) {
    std::string bytes = read_file(path);
    inputs_.push_back({std::string(role), path, sha256_hex(bytes)});
    return bytes;
}

void RunDir::write(const std::string& name, std::string_view bytes) {
    const fs::path rel = fs::path(name).lexically_normal();
    if (rel.empty() || rel.is_absolute() || *rel.begin() == "..") {
        throw IoError("output name '" + name + "' leaves the output directory");
    }
    const fs::path full = root_ / rel;
    std::error_code ec;
    fs::create_directories(full.parent_path(), ec);
    std::ofstream out(full, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + full.string() + "'");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("cannot write '" + full.string() + "'");

    const std::string key = rel.generic_string();
    auto it = std::find_if(outputs_.begin(), outputs_.end(), [&](const Entry& e) { return e.path == key; });
    if (it != outputs_.end()) {
        it->sha256 = sha256_hex(bytes);
    } else {
        outputs_.push_back({"output", key, sha256_hex(bytes)});
    }
}

void RunDir::finish(const PipelineConfig& config) {
    write("resolved_config.txt", config.resolved_text());

    auto outputs = outputs_;
    std::sort(outputs.begin(), outputs.end(), [](const Entry& a, const Entry& b) { return a.path < b.path; });

    nlohmann::ordered_json m;
    m["tool"] = "seqenrich";
    m["command"] = command_;
    m["seed"] = config.seed;
    m["config"] = "resolved_config.txt";
    auto& in = m["inputs"] = nlohmann::ordered_json::array();
    for (const auto& e : inputs_) in.push_back({{"role", e.role}, {"path", e.path}, {"sha256", e.sha256}});
    auto& out = m["outputs"] = nlohmann::ordered_json::array();
    for (const auto& e : outputs) out.push_back({{"path", e.path}, {"sha256", e.sha256}});
    write("manifest.json", m.dump(2) + "\n");
}

}  // namespace seqenrich::cli
