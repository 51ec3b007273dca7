#pragma once

#include <span>
#include <string_view>

namespace gossipsim {

// Bundled experiment configurations, fig1 .. fig7.
struct Preset {
  std::string_view name;
  std::string_view summary;
  std::string_view text;
};

std::span<const Preset> presets() noexcept;

// Accepts "fig1" or "fig1.cfg". Returns nullptr when unknown.
const Preset* find_preset(std::string_view name) noexcept;

}  // namespace gossipsim
