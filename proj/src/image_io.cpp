#include "retcc/image_io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <string>

#include "retcc/error.hpp"

namespace retcc {

namespace {

std::vector<unsigned char> load_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::vector<unsigned char> buf((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
    if (in.bad()) {
        throw IoError("read failure on " + path.string());
    }
    return buf;
}

// Header tokenizer that tracks the byte offset for error messages.
struct Cursor {
    const std::vector<unsigned char>& buf;
    const std::string name;
    std::size_t pos = 0;

    bool eof() const { return pos >= buf.size(); }
    unsigned char peek() const { return buf[pos]; }

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(name + ": " + what + " at byte " + std::to_string(pos));
    }

    // PNM whitespace, with '#' comments running to end of line.
    void skip_space_and_comments() {
        while (!eof()) {
            if (std::isspace(peek())) {
                ++pos;
            } else if (peek() == '#') {
                while (!eof() && peek() != '\n') ++pos;
            } else {
                break;
            }
        }
    }

    long next_uint() {
        skip_space_and_comments();
        if (eof() || !std::isdigit(peek())) {
            fail("expected unsigned integer");
        }
        long v = 0;
        while (!eof() && std::isdigit(peek())) {
            v = v * 10 + (peek() - '0');
            if (v > std::numeric_limits<int>::max()) fail("integer overflow");
            ++pos;
        }
        return v;
    }

    double next_real() {
        skip_space_and_comments();
        std::size_t start = pos;
        while (!eof() && !std::isspace(peek())) ++pos;
        if (pos == start) fail("expected real number");
        std::string tok(buf.begin() + start, buf.begin() + pos);
        try {
            std::size_t used = 0;
            double v = std::stod(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            return v;
        } catch (const std::exception&) {
            pos = start;
            fail("malformed real number '" + tok + "'");
        }
    }
};

float le_bytes_to_float(const unsigned char* p, bool little_endian) {
    std::uint32_t u;
    if (little_endian) {
        u = std::uint32_t(p[0]) | std::uint32_t(p[1]) << 8 |
            std::uint32_t(p[2]) << 16 | std::uint32_t(p[3]) << 24;
    } else {
        u = std::uint32_t(p[3]) | std::uint32_t(p[2]) << 8 |
            std::uint32_t(p[1]) << 16 | std::uint32_t(p[0]) << 24;
    }
    return std::bit_cast<float>(u);
}

void float_to_le_bytes(float f, unsigned char* p) {
    auto u = std::bit_cast<std::uint32_t>(f);
    p[0] = static_cast<unsigned char>(u);
    p[1] = static_cast<unsigned char>(u >> 8);
    p[2] = static_cast<unsigned char>(u >> 16);
    p[3] = static_cast<unsigned char>(u >> 24);
}

} // namespace

EncodedImage read_ppm(const std::filesystem::path& path) {
    auto buf = load_file(path);
    Cursor cur{buf, path.filename().string()};

    if (buf.size() < 2 || buf[0] != 'P' || buf[1] != '6') {
        cur.fail("not a binary PPM (expected magic 'P6')");
    }
    cur.pos = 2;
    long w = cur.next_uint();
    long h = cur.next_uint();
    long maxval = cur.next_uint();
    if (w < 1 || h < 1) cur.fail("invalid dimensions");
    if (maxval != 255 && maxval != 65535) cur.fail("unsupported maxval " + std::to_string(maxval));
    if (cur.eof() || !std::isspace(cur.peek())) cur.fail("expected single whitespace before payload");
    ++cur.pos;

    const int bytes_per_sample = maxval == 255 ? 1 : 2;
    const std::size_t need =
        static_cast<std::size_t>(w) * h * kChannels * bytes_per_sample;
    const std::size_t have = buf.size() - cur.pos;
    if (have < need) {
        throw ParseError(path.filename().string() + ": truncated payload, expected " +
                         std::to_string(need) + " bytes but found " + std::to_string(have) +
                         " at byte " + std::to_string(cur.pos));
    }

    EncodedImage img(static_cast<int>(w), static_cast<int>(h));
    const unsigned char* p = buf.data() + cur.pos;
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            for (int c = 0; c < kChannels; ++c) {
                if (bytes_per_sample == 1) {
                    img.at(x, y, c) = *p++;
                } else {
                    unsigned v = unsigned(p[0]) << 8 | unsigned(p[1]);
                    p += 2;
                    img.at(x, y, c) = v * 255.0 / 65535.0;
                }
            }
        }
    }
    return img;
}

LinearImage read_pfm(const std::filesystem::path& path) {
    auto buf = load_file(path);
    Cursor cur{buf, path.filename().string()};

    if (buf.size() < 2 || buf[0] != 'P' || (buf[1] != 'F' && buf[1] != 'f')) {
        cur.fail("not a PFM (expected magic 'PF' or 'Pf')");
    }
    const bool color = buf[1] == 'F';
    cur.pos = 2;
    long w = cur.next_uint();
    long h = cur.next_uint();
    double scale = cur.next_real();
    if (w < 1 || h < 1) cur.fail("invalid dimensions");
    if (scale == 0.0) cur.fail("zero scale factor");
    const bool little_endian = scale < 0.0;
    if (cur.eof() || !std::isspace(cur.peek())) cur.fail("expected single whitespace before payload");
    ++cur.pos;

    const int samples_per_pixel = color ? 3 : 1;
    const std::size_t need = static_cast<std::size_t>(w) * h * samples_per_pixel * 4;
    const std::size_t have = buf.size() - cur.pos;
    if (have < need) {
        throw ParseError(path.filename().string() + ": truncated payload, expected " +
                         std::to_string(need) + " bytes but found " + std::to_string(have) +
                         " at byte " + std::to_string(cur.pos));
    }

    LinearImage img(static_cast<int>(w), static_cast<int>(h));
    const unsigned char* p = buf.data() + cur.pos;
    // PFM rows run bottom-to-top.
    for (int y = img.height() - 1; y >= 0; --y) {
        for (int x = 0; x < img.width(); ++x) {
            for (int s = 0; s < samples_per_pixel; ++s) {
                float v = le_bytes_to_float(p, little_endian);
                p += 4;
                if (!std::isfinite(v) || v < 0.0f) {
                    throw ParseError(path.filename().string() +
                                     ": sample is not a finite nonnegative radiance at byte " +
                                     std::to_string(static_cast<std::size_t>(p - buf.data()) - 4));
                }
                if (color) {
                    img.at(x, y, s) = v;
                } else {
                    for (int c = 0; c < kChannels; ++c) img.at(x, y, c) = v;
                }
            }
        }
    }
    return img;
}

std::variant<LinearImage, EncodedImage> read_image(const std::filesystem::path& path) {
    auto buf = load_file(path);
    if (buf.size() >= 2 && buf[0] == 'P' && buf[1] == '6') {
        return read_ppm(path);
    }
    if (buf.size() >= 2 && buf[0] == 'P' && (buf[1] == 'F' || buf[1] == 'f')) {
        return read_pfm(path);
    }
    throw ParseError(path.filename().string() + ": unrecognized magic at byte 0");
}

void write_ppm(const EncodedImage& img, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out << "P6\n" << img.width() << ' ' << img.height() << "\n255\n";
    std::vector<unsigned char> row(static_cast<std::size_t>(img.width()) * kChannels);
    for (int y = 0; y < img.height(); ++y) {
        unsigned char* p = row.data();
        for (int x = 0; x < img.width(); ++x) {
            for (int c = 0; c < kChannels; ++c) {
                long v = std::lround(img.at(x, y, c));
                *p++ = static_cast<unsigned char>(std::clamp(v, 0L, 255L));
            }
        }
        out.write(reinterpret_cast<const char*>(row.data()),
                  static_cast<std::streamsize>(row.size()));
    }
    if (!out) {
        throw IoError("write failure on " + path.string());
    }
}

void write_pfm(const LinearImage& img, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out << "PF\n" << img.width() << ' ' << img.height() << "\n-1.0\n";
    std::vector<unsigned char> row(static_cast<std::size_t>(img.width()) * kChannels * 4);
    for (int y = img.height() - 1; y >= 0; --y) {
        unsigned char* p = row.data();
        for (int x = 0; x < img.width(); ++x) {
            for (int c = 0; c < kChannels; ++c) {
                float_to_le_bytes(static_cast<float>(img.at(x, y, c)), p);
                p += 4;
            }
        }
        out.write(reinterpret_cast<const char*>(row.data()),
                  static_cast<std::streamsize>(row.size()));
    }
    if (!out) {
        throw IoError("write failure on " + path.string());
    }
}

} // namespace retcc
