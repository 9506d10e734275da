#ifndef GACLUTTER_RASTER_IO_HPP
#define GACLUTTER_RASTER_IO_HPP

#include "gaclutter/grid.hpp"

#include <iosfwd>
#include <string>

namespace gaclutter::raster_io {

/// CSV rasters: row-major, comma-separated, LF endings, 17 significant digits
/// (lossless double round-trip). '#' comment lines permitted before data.
void write_csv(std::ostream& out, const Matrix& m);
void write_csv_file(const std::string& path, const Matrix& m);
Matrix read_csv(std::istream& in);
Matrix read_csv_file(const std::string& path);

/// 16-bit binary PGM (P5, maxval 65535, big-endian samples); values are
/// quantized as round(65535*(z-min)/(max-min)) clamped to [0,65535].
void write_pgm16(std::ostream& out, const Matrix& m, double min, double max);
/// Writes the image plus a "<path>.bounds.txt" sidecar recording min/max.
void write_pgm16_file(const std::string& path, const Matrix& m, double min, double max);

std::string format_double(double v);  // 17 significant digits

} // namespace gaclutter::raster_io

#endif
