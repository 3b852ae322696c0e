#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

namespace lsim::agents {

/// Slot values keyed by slot number, i.e. bindings[2] fills `<INPUT 2>`.
using Bindings = std::map<int, std::string>;

/// Prompt templates loaded from `<dir>/<template_id>.txt`.
class TemplateLibrary {
  public:
    static TemplateLibrary load(const std::filesystem::path& dir);
    /// Bundled assets compiled into the build (assets/prompts).
    static const TemplateLibrary& builtin();

    void add(std::string id, std::string text) { templates_[std::move(id)] = std::move(text); }
    bool contains(std::string_view id) const { return templates_.find(id) != templates_.end(); }
    const std::string& raw(std::string_view id) const;

    /// Substitute every `<INPUT i>` slot verbatim. Throws lsim::Error on an unknown
    /// template or an unbound slot (the message names the slot).
    std::string render(std::string_view id, const Bindings& bindings) const;

  private:
    std::map<std::string, std::string, std::less<>> templates_;
};

/// Render a template string directly.
std::string render_template(std::string_view text, const Bindings& bindings, std::string_view id = "inline");

std::filesystem::path asset_dir();

}  // namespace lsim::agents
