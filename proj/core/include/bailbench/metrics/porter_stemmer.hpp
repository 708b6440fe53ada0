#pragma once

#include <string>
#include <string_view>

namespace bailbench {

// Classic Porter (1980) stemmer for lowercase ASCII words. Words with
// non-letters or shorter than three characters come back unchanged.
std::string porter_stem(std::string_view word);

}  // namespace bailbench
