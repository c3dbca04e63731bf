#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace tverberg {

// Exact rational scalar backed by GMP. Values stay canonical (lowest terms,
// positive denominator) as long as every entry point canonicalizes, which
// make_rat and parse_rat do.
using Rat = mpq_class;
using RatVec = std::vector<Rat>;

Rat make_rat(long num, long den = 1);

// Accepts an optional '-', digits, and an optional "/digits" suffix.
// Everything else, floats in particular, is rejected.
Rat parse_rat(const std::string& text);

std::string rat_str(const Rat& value);
std::string point_str(const RatVec& p);

}  // namespace tverberg
