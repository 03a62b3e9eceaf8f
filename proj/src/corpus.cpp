#include "cr3kit/corpus.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <string>

namespace cr3kit {
namespace {

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

int pick(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(unit(rng) * (hi - lo + 1));
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

std::vector<ScalarField> random_basic_corpus(std::uint64_t seed, int count, bool positive) {
  std::mt19937_64 rng(seed);
  std::vector<ScalarField> out;
  out.reserve(count);
  for (int n = 0; n < count; ++n) {
    const int terms = pick(rng, 1, 3);
    std::string body;
    double total = 0.0;
    for (int k = 0; k < terms; ++k) {
      const double a = 0.05 + 0.35 * unit(rng);
      int p = pick(rng, -2, 2), q = pick(rng, -2, 2);
      if (p == 0 && q == 0) p = 1;
      const char* fn = unit(rng) < 0.5 ? "sin" : "cos";
      total += a;
      body += " + " + num(a) + "*" + fn + "(6.283185307179586*(" + std::to_string(p) + "*x + " +
              std::to_string(q) + "*y))";
    }
    const double c0 = positive ? total + 0.25 + unit(rng) : 2.0 * unit(rng) - 1.0;
    out.push_back(parse_field(num(c0) + body));
  }
  return out;
}

}  // namespace cr3kit
