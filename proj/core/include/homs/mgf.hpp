#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "homs/spectrum.hpp"

namespace homs {

/// Parses MGF text: BEGIN IONS / END IONS blocks containing KEY=VALUE header
/// lines (PEPMASS required; CHARGE, TITLE, SEQ interpreted; others ignored)
/// followed by "mz intensity" peak lines. A spectrum is flagged as decoy when
/// its TITLE or SEQ value begins with decoy_prefix. Missing CHARGE is
/// recorded as unknown, never guessed. Peaks are sorted by m/z and exact
/// duplicates merged by intensity sum. An empty stream yields an empty list;
/// any grammar violation throws ParseError naming the line.
std::vector<RawSpectrum> parse_mgf(std::istream& in, const std::string& decoy_prefix);

std::vector<RawSpectrum> parse_mgf_file(const std::filesystem::path& path,
                                        const std::string& decoy_prefix);

/// Writes spectra in the same MGF subset parse_mgf reads. TITLE carries the
/// id, SEQ the peptide label when present.
void write_mgf(std::ostream& out, std::span<const RawSpectrum> spectra);

void write_mgf_file(const std::filesystem::path& path,
                    std::span<const RawSpectrum> spectra);

}  // namespace homs
