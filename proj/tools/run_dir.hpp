#pragma once
// Output directory bookkeeping for one CLI run: every file goes through
// write(), inputs are hashed as they are read, and finish() adds the
// resolved config and the manifest.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "seqenrich/errors.hpp"
#include "seqenrich/pipeline_config.hpp"

namespace seqenrich::cli {

class IoError : public Error {
public:
    using Error::Error;
};

/// Reads a whole file. Throws IoError.
std::string read_file(const std::filesystem::path& path);

class RunDir {
public:
    RunDir(std::filesystem::path root, std::string command);

    /// Reads an input file and records its hash under `role`.
    std::string read_input(std::string_view role, const std::string& path);

    /// `name` is relative to the root and may not leave it. Throws IoError.
    void write(const std::string& name, std::string_view bytes);

    /// Writes resolved_config.txt and manifest.json.
    void finish(const PipelineConfig& config);

    const std::filesystem::path& root() const noexcept { return root_; }

private:
    struct Entry {
        std::string role;
        std::string path;
        std::string sha256;
    };

    std::filesystem::path root_;
    std::string command_;
    std::vector<Entry> inputs_;
    std::vector<Entry> outputs_;
};

}  // namespace seqenrich::cli
