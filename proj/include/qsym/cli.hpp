#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace qsym {

/// Exit codes: 0 success, 1 domain or file error, 2 usage error.
/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace qsym
