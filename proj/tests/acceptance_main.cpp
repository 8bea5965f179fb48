// Acceptance suite runner: one pass/fail line per criterion, nonzero exit on
// any failure. Also reachable through `batchq verify`.
#include <cstdlib>
#include <cstring>
#include <iostream>
#include <string>

#include "batchq/experiments/acceptance.hpp"

int main(int argc, char** argv) {
  batchq::experiments::AcceptanceOptions options;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--seed" && i + 1 < argc) {
      options.seed = std::strtoull(argv[++i], nullptr, 10);
    } else if (arg == "--only" && i + 1 < argc) {
      const std::string list = argv[++i];
      std::size_t pos = 0;
      while (pos < list.size()) {
        options.only.push_back(std::atoi(list.c_str() + pos));
        const auto comma = list.find(',', pos);
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
    } else if (arg == "--threads" && i + 1 < argc) {
      options.threads = static_cast<unsigned>(std::atoi(argv[++i]));
    } else if (arg == "--quick") {
      options.quick = true;
    } else {
      std::cerr << "usage: batchq_acceptance [--seed N] [--only 1,2,...] [--threads N] [--quick]\n";
      return 2;
    }
  }

  std::cout << "acceptance suite, seed " << options.seed << "\n";
  const auto results = batchq::experiments::run_acceptance(options, &std::cout);
  bool ok = !results.empty();
  double total = 0.0;
  for (const auto& r : results) {
    ok = ok && r.pass;
    total += r.seconds;
  }
  std::cout << (ok ? "ALL CRITERIA PASS" : "CRITERIA FAILED") << " (" << results.size()
            << " run, " << total << "s)\n";
  return ok ? 0 : 1;
}
