#pragma once

namespace framelab {

inline constexpr const char* kVersionString = "0.1.0";

}  // namespace framelab
