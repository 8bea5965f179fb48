#pragma once

#include <string>
#include <vector>

namespace batchq::cli {

/// Exit codes: 0 success, 1 verification failure, 2 configuration error,
/// 3 resource guard tripped.
int run(const std::vector<std::string>& args);

}  // namespace batchq::cli
