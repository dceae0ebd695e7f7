// Timing comparison of the parallel counting kernel against the serial
// reference implementation on growing Boolean sets. Usage: bench_count
// [jobs], where jobs = 0 keeps the library default thread count.

#include <threshcap/setcap.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <random>
#include <string>
#include <vector>

using namespace threshcap;

namespace {

using Clock = std::chrono::steady_clock;

double ms_between(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double, std::milli>(b - a).count();
}

PointSet random_subset(int n, std::size_t size, unsigned seed) {
  PointSet cube = PointSet::cube(n);
  std::vector<std::size_t> idx(cube.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::mt19937 rng(seed);
  std::shuffle(idx.begin(), idx.end(), rng);
  idx.resize(size);
  std::sort(idx.begin(), idx.end());
  PointSet out;
  out.dim = n;
  for (std::size_t i : idx) out.pts.push_back(cube.pts[i]);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CountOptions opt;
  if (argc > 1) opt.jobs = std::atoi(argv[1]);

  struct Case {
    std::string name;
    PointSet set;
  };
  std::vector<Case> cases;
  for (int n = 2; n <= 4; ++n)
    cases.push_back({"cube:" + std::to_string(n), PointSet::cube(n)});
  cases.push_back({"14-of-H5", random_subset(5, 14, 7)});
  cases.push_back({"16-of-H5", random_subset(5, 16, 11)});

  std::printf("%-10s %7s %14s %11s %13s %7s\n", "set", "points", "count",
              "serial-ms", "parallel-ms", "ratio");
  for (const Case& c : cases) {
    auto t0 = Clock::now();
    Int serial = count_threshold_functions_serial(c.set, opt);
    auto t1 = Clock::now();
    Int parallel = count_threshold_functions(c.set, opt);
    auto t2 = Clock::now();
    if (serial != parallel) {
      std::fprintf(stderr, "kernel mismatch on %s: serial %s, parallel %s\n",
                   c.name.c_str(), serial.get_str().c_str(),
                   parallel.get_str().c_str());
      return 1;
    }
    double serial_ms = ms_between(t0, t1);
    double parallel_ms = ms_between(t1, t2);
    std::printf("%-10s %7zu %14s %11.1f %13.1f %7.2f\n", c.name.c_str(),
                c.set.size(), serial.get_str().c_str(), serial_ms, parallel_ms,
                serial_ms / parallel_ms);
  }
  return 0;
}
