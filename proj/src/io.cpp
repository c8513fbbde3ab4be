#include "qmk/io.hpp"

#include <bit>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace qmk {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw std::runtime_error(path + ": " + what);
}

// PPM headers allow '#' comments anywhere whitespace is allowed.
int read_header_int(std::istream& in) {
    int ch;
    while ((ch = in.peek()) != EOF) {
        if (ch == '#') {
            while ((ch = in.get()) != EOF && ch != '\n') {
            }
        } else if (std::isspace(ch)) {
            in.get();
        } else {
            break;
        }
    }
    int value;
    if (!(in >> value)) return -1;
    return value;
}

void put_u32_le(std::ostream& out, std::uint32_t v) {
    const char bytes[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                           static_cast<char>((v >> 16) & 0xff),
                           static_cast<char>((v >> 24) & 0xff)};
    out.write(bytes, 4);
}

bool get_u32_le(std::istream& in, std::uint32_t& v) {
    unsigned char bytes[4];
    if (!in.read(reinterpret_cast<char*>(bytes), 4)) return false;
    v = std::uint32_t(bytes[0]) | std::uint32_t(bytes[1]) << 8 | std::uint32_t(bytes[2]) << 16 |
        std::uint32_t(bytes[3]) << 24;
    return true;
}

void put_f64_le(std::ostream& out, double d) {
    const auto bits = std::bit_cast<std::uint64_t>(d);
    char bytes[8];
    for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
    out.write(bytes, 8);
}

bool get_f64_le(std::istream& in, double& d) {
    unsigned char bytes[8];
    if (!in.read(reinterpret_cast<char*>(bytes), 8)) return false;
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= std::uint64_t(bytes[i]) << (8 * i);
    d = std::bit_cast<double>(bits);
    return true;
}

} // namespace

RgbImage read_ppm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path, "cannot open file");

    char magic[2];
    if (!in.read(magic, 2) || magic[0] != 'P' || magic[1] != '6')
        fail(path, "not a binary PPM (P6) file");

    const int cols = read_header_int(in);
    const int rows = read_header_int(in);
    const int maxval = read_header_int(in);
    if (cols < 1 || rows < 1) fail(path, "bad image dimensions");
    if (maxval != 255) fail(path, "only 8-bit (maxval 255) PPM is supported");
    if (in.get() == EOF) fail(path, "truncated header");

    RgbImage img;
    img.rows = rows;
    img.cols = cols;
    img.pix.resize(static_cast<std::size_t>(rows) * cols);
    const std::streamsize want = static_cast<std::streamsize>(img.pix.size() * 3);
    if (!in.read(reinterpret_cast<char*>(img.pix.data()), want))
        fail(path, "truncated pixel data");
    return img;
}

void write_ppm(const std::string& path, const RgbImage& img) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(path, "cannot open file for writing");
    out << "P6\n" << img.cols << " " << img.rows << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pix.data()),
              static_cast<std::streamsize>(img.pix.size() * 3));
    if (!out) fail(path, "write failed");
}

QImage read_qspc(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path, "cannot open file");

    char magic[4];
    if (!in.read(magic, 4) || std::string(magic, 4) != "QSPC")
        fail(path, "not a QSPC spectrum file");

    std::uint32_t rows, cols;
    if (!get_u32_le(in, rows) || !get_u32_le(in, cols)) fail(path, "truncated header");
    if (rows < 1 || cols < 1 ||
        static_cast<std::uint64_t>(rows) * cols > std::numeric_limits<std::int32_t>::max())
        fail(path, "bad spectrum dimensions");

    QImage img = make_qimage(static_cast<int>(rows), static_cast<int>(cols));
    for (Quat& q : img.pix) {
        double c[4];
        for (double& v : c)
            if (!get_f64_le(in, v)) fail(path, "truncated spectrum data");
        q = {c[0], c[1], c[2], c[3]};
    }
    return img;
}

void write_qspc(const std::string& path, const QImage& img) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(path, "cannot open file for writing");
    out.write("QSPC", 4);
    put_u32_le(out, static_cast<std::uint32_t>(img.rows));
    put_u32_le(out, static_cast<std::uint32_t>(img.cols));
    for (const Quat& q : img.pix) {
        put_f64_le(out, q.q0);
        put_f64_le(out, q.q1);
        put_f64_le(out, q.q2);
        put_f64_le(out, q.q3);
    }
    if (!out) fail(path, "write failed");
}

} // namespace qmk
