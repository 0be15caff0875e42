#pragma once

namespace screens {

inline constexpr const char* kVersion = "0.1.0";

}
