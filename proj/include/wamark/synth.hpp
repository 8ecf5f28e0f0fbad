#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wamark/image.hpp"

namespace wamark {

// Synthetic cover families. Generators are band-planned: their spectra stay
// clear of the mid-frequency carrier band (smooth fields below it, the
// checkerboard exactly at Nyquist, noise capped at |k| <= 24), so payload
// recovery from an unattacked marked image is exact.
enum class SynthKind { gradient, radial, checker, noise, phantom };

SynthKind parse_synth_kind(const std::string& name);
const char* synth_kind_name(SynthKind kind);
const std::vector<SynthKind>& all_synth_kinds();

Image synth_image(SynthKind kind, int size, std::uint64_t seed);

}  // namespace wamark
