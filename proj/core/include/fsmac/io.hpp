#pragma once

#include <string>

#include "fsmac/channel.hpp"

namespace fsmac {

const char* channel_kind_name(const ChannelSpec& spec) noexcept;

// JSON document with version "1"; probabilities carry 17 significant digits
// so save -> load -> save round-trips are byte-identical.
std::string channel_to_json(const ChannelSpec& spec);

// Validates as it builds; unknown fields and version drift are rejected.
ChannelSpec channel_from_json(const std::string& text);

void save_channel(const ChannelSpec& spec, const std::string& path);
ChannelSpec load_channel(const std::string& path);

}  // namespace fsmac
