#pragma once

#include <iostream>
#include <string>

namespace unmix {

inline void warn(const std::string& message) {
    std::cerr << "[unmix] warning: " << message << "\n";
}

}  // namespace unmix
