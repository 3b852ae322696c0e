#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace lsim::files {

std::string read_file(const std::filesystem::path& p);
/// Write via a sibling temp file and rename, so readers never see a partial file.
void write_file_atomic(const std::filesystem::path& p, const std::string& content);
/// Lines without their terminating '\n'; a trailing empty line is dropped.
std::vector<std::string> read_lines(const std::filesystem::path& p);

}  // namespace lsim::files
