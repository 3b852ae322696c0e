#include "lsim/agents/templates.hpp"

#include <cctype>
#include <cstdlib>

#include "lsim/error.hpp"
#include "lsim/util/files.hpp"

namespace lsim::agents {

namespace fs = std::filesystem;

std::filesystem::path asset_dir() {
    if (const char* env = std::getenv("LSIM_ASSET_DIR"); env && *env) return env;
    return LSIM_ASSET_DIR;
}

TemplateLibrary TemplateLibrary::load(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw Error("template directory not found: " + dir.string());
    TemplateLibrary lib;
    for (const auto& e : fs::directory_iterator(dir)) {
        if (e.is_regular_file() && e.path().extension() == ".txt") {
            lib.add(e.path().stem().string(), files::read_file(e.path()));
        }
    }
    return lib;
}

const TemplateLibrary& TemplateLibrary::builtin() {
    static const TemplateLibrary lib = load(asset_dir() / "prompts");
    return lib;
}

const std::string& TemplateLibrary::raw(std::string_view id) const {
    auto it = templates_.find(id);
    if (it == templates_.end()) throw Error("unknown template '" + std::string(id) + "'");
    return it->second;
}

std::string TemplateLibrary::render(std::string_view id, const Bindings& bindings) const {
    return render_template(raw(id), bindings, id);
}

std::string render_template(std::string_view text, const Bindings& bindings, std::string_view id) {
    static constexpr std::string_view kOpen = "<INPUT ";
    std::string out;
    out.reserve(text.size());
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto hit = text.find(kOpen, pos);
        if (hit == std::string_view::npos) {
            out.append(text.substr(pos));
            break;
        }
        std::size_t p = hit + kOpen.size();
        std::size_t digits = p;
        while (digits < text.size() && std::isdigit(static_cast<unsigned char>(text[digits]))) ++digits;
        if (digits == p || digits >= text.size() || text[digits] != '>') {
            // not a slot, copy literally
            out.append(text.substr(pos, p - pos));
            pos = p;
            continue;
        }
        int slot = std::stoi(std::string(text.substr(p, digits - p)));
        auto b = bindings.find(slot);
        if (b == bindings.end()) {
            throw Error("template '" + std::string(id) + "': slot <INPUT " + std::to_string(slot) + "> is unbound");
        }
        out.append(text.substr(pos, hit - pos));
        out.append(b->second);
        pos = digits + 1;
    }
    return out;
}

}  // namespace lsim::agents
