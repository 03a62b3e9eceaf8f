#pragma once

// Central finite differences, independent of the jet code. Used as the
// oracle for jet partials of order one and two.

#include "cr3kit/field.hpp"
#include "cr3kit/jet.hpp"

namespace cr3kit::oracle {

// d^m f / dx^a dy^b dt^c at p for |m| <= 2; throws std::invalid_argument
// for higher orders.
double finite_diff(const Field& f, Point p, MultiIndex m, double h = 1e-4);

// |jet - fd| / max(1, |fd|)
double relative_gap(double jet, double fd);

}  // namespace cr3kit::oracle
