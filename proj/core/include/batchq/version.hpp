#pragma once

namespace batchq {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace batchq
