#pragma once

#include "tverberg/model.hpp"

#include <string>

namespace tverberg {

// Deterministic SVG of a planar instance: points colored by class, witness
// faces drawn as translucent hulls/segments, common point marked.
// Requires d == 2.
std::string render_svg(const Instance& instance, const TverbergWitness* witness = nullptr);

}  // namespace tverberg
