#pragma once

#include <filesystem>
#include <iosfwd>

#include "alp/spectral/field.hpp"

namespace alp {

struct Snapshot {
  SpectralField3 field;
  double time = 0.0;
};

// Layout: one JSON header line {"n1","n2","n3","L","components","time"}
// terminated by '\n', then for each component the coefficients as
// little-endian float64 (re, im) pairs in the field's storage order
// (row-major, axis 3 fastest, FFT wavenumber order along each axis).
void write_snapshot(std::ostream& out, const SpectralField3& field, double time);
void write_snapshot(const std::filesystem::path& path, const SpectralField3& field, double time);
Snapshot read_snapshot(std::istream& in);
Snapshot read_snapshot(const std::filesystem::path& path);

}  // namespace alp
