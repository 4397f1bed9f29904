#pragma once

#include <iosfwd>
#include <string>

#include "sdr/grid.hpp"

namespace sdr {

// Binary container, little-endian throughout:
//   magic[8] | u32 d | f64 h | u64 shape[d] | f64 origin[d] | (f64 re, f64 im)[N]
// GridFunction files use the magic "GRIDFN1\0", spectra "SPECTRM1"; a spectrum
// stores its frequency lattice first and then the spatial source layout
// (u32 d | f64 h | u64 shape[d] | f64 origin[d]) before the values.

void write_grid_function(std::ostream& out, const GridFunction& f);
GridFunction read_grid_function(std::istream& in);
void save_grid_function(const std::string& path, const GridFunction& f);
GridFunction load_grid_function(const std::string& path);

void write_spectrum(std::ostream& out, const Spectrum& s);
Spectrum read_spectrum(std::istream& in);
void save_spectrum(const std::string& path, const Spectrum& s);
Spectrum load_spectrum(const std::string& path);

/// 1-D CSV with columns x, re, im (x = cell centres, uniformly spaced).
/// A header line is accepted if its first field is not numeric.
GridFunction read_csv_1d(std::istream& in);
GridFunction load_csv_1d(const std::string& path);

/// Loads either container; the format is picked by the magic bytes, falling
/// back to CSV.
GridFunction load_any(const std::string& path);

}  // namespace sdr
