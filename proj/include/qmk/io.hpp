#pragma once

#include <string>

#include "qmk/dqft.hpp"

namespace qmk {

// Binary PPM (P6, 8-bit). Malformed input raises std::runtime_error with a
// description of the defect.
RgbImage read_ppm(const std::string& path);
void write_ppm(const std::string& path, const RgbImage& img);

// Spectrum container: magic "QSPC", little-endian u32 rows and cols, then
// rows*cols*4 little-endian binary64 values row major in (q0,q1,q2,q3)
// order.
QImage read_qspc(const std::string& path);
void write_qspc(const std::string& path, const QImage& img);

} // namespace qmk
