#pragma once

// Seeded random basic functions: trigonometric polynomials with integer
// frequencies, so every member is periodic on the unit torus cell.

#include <cstdint>
#include <vector>

#include "cr3kit/field.hpp"

namespace cr3kit {

// Each member is c0 + sum_k a_k trig(2 pi (p_k x + q_k y)) with 1 to 3 terms.
// With `positive` set, c0 exceeds sum |a_k| by at least 0.25.
std::vector<ScalarField> random_basic_corpus(std::uint64_t seed, int count, bool positive);

}  // namespace cr3kit
