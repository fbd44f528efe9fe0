#pragma once

namespace hgcompton {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace hgcompton
