#include <cstdlib>
#include <cstring>
#include <iostream>

#include "partcat/acceptance.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 42;
  bool json = false;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--seed") && i + 1 < argc) {
      seed = std::strtoull(argv[++i], nullptr, 10);
    } else if (!std::strcmp(argv[i], "--json")) {
      json = true;
    } else {
      std::cerr << "usage: " << argv[0] << " [--seed N] [--json]\n";
      return 2;
    }
  }

  const partcat::AcceptanceReport report = partcat::run_acceptance(seed, &std::cout);
  if (json) std::cout << partcat::acceptance_to_json(report) << "\n";

  std::size_t passed = 0;
  for (const auto& r : report.results) passed += r.pass ? 1 : 0;
  std::cout << "acceptance: " << passed << "/" << report.results.size() << " criteria passed\n";
  return report.all_pass() ? 0 : 1;
}
