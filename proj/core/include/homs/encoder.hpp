#pragma once

#include <cstdint>

#include "homs/codebook.hpp"
#include "homs/preprocess.hpp"

namespace homs {

/// Maps a normalized intensity v in [0, 1] to a level index round(v * levels),
/// clamped to [0, levels]. Throws InvariantError for v outside [0, 1].
std::uint32_t quantize_intensity(double v, std::uint32_t levels);

/// Encodes a spectrum vector into a binary hypervector. For each dimension d
/// the bipolar products of position and level vectors are accumulated over
/// all peaks (the product of two {-1,+1} bits is their XNOR), and the bit is
/// set iff the accumulator is strictly positive; an accumulator of zero maps
/// to a clear bit. A single-peak spectrum therefore encodes to the exact
/// XNOR of its two codebook rows.
Hypervector encode(const SpectrumVector& sv, const Codebook& cb);

}  // namespace homs
