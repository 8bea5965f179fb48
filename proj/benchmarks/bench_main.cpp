#include <benchmark/benchmark.h>

// the distro's static benchmark_main archive carries incompatible LTO
// bytecode, so the entry point lives here
BENCHMARK_MAIN();
