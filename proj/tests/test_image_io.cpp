#include "doctest.h"

#include <bit>
#include <cstdint>
#include <string>
#include <variant>

#include "retcc/error.hpp"
#include "retcc/image_io.hpp"
#include "test_util.hpp"

using namespace retcc;

namespace {

template <typename Ex, typename Fn>
std::string thrown_message(Fn&& fn) {
    try {
        fn();
    } catch (const Ex& e) {
        return e.what();
    }
    FAIL("expected exception was not thrown");
    return {};
}

} // namespace

TEST_CASE("ppm roundtrip preserves integer levels") {
    const auto dir = test::make_temp_dir("io_ppm_roundtrip");
    EncodedImage img(3, 2);
    for (int y = 0; y < 2; ++y) {
        for (int x = 0; x < 3; ++x) {
            for (int c = 0; c < kChannels; ++c) {
                img.at(x, y, c) = (x * 31 + y * 57 + c * 91) % 256;
            }
        }
    }
    write_ppm(img, dir / "a.ppm");
    const EncodedImage back = read_ppm(dir / "a.ppm");
    REQUIRE(back.same_shape(img));
    for (std::size_t i = 0; i < img.samples().size(); ++i) {
        CHECK(back.samples()[i] == img.samples()[i]);
    }
}

TEST_CASE("ppm writer rounds and clamps to 8 bits") {
    const auto dir = test::make_temp_dir("io_ppm_clamp");
    EncodedImage img(1, 1);
    img.at(0, 0, 0) = -5.0;
    img.at(0, 0, 1) = 254.6;
    img.at(0, 0, 2) = 300.0;
    write_ppm(img, dir / "c.ppm");
    const std::string bytes = test::read_file_bytes(dir / "c.ppm");
    const std::string payload = bytes.substr(bytes.size() - 3);
    CHECK(static_cast<unsigned char>(payload[0]) == 0);
    CHECK(static_cast<unsigned char>(payload[1]) == 255);
    CHECK(static_cast<unsigned char>(payload[2]) == 255);
}

TEST_CASE("ppm header accepts comments and reports 16-bit samples on [0,255]") {
    const auto dir = test::make_temp_dir("io_ppm_16");
    const std::string header = "P6 # wide\n1 1 # one pixel\n65535\n";
    const std::string payload{'\xFF', '\xFF', '\x80', '\x00', '\x00', '\x01'};
    test::write_file_bytes(dir / "w.ppm", header + payload);
    const EncodedImage img = read_ppm(dir / "w.ppm");
    CHECK(img.at(0, 0, 0) == doctest::Approx(255.0).epsilon(1e-12));
    CHECK(img.at(0, 0, 1) == doctest::Approx(32768.0 * 255.0 / 65535.0).epsilon(1e-12));
    CHECK(img.at(0, 0, 2) == doctest::Approx(255.0 / 65535.0).epsilon(1e-12));
}

TEST_CASE("ppm parser names the byte offset of defects") {
    const auto dir = test::make_temp_dir("io_ppm_errors");

    test::write_file_bytes(dir / "magic.ppm", "P5\n1 1\n255\n???");
    CHECK(thrown_message<ParseError>([&] { read_ppm(dir / "magic.ppm"); })
              .find("byte") != std::string::npos);

    test::write_file_bytes(dir / "trunc.ppm", "P6\n2 2\n255\nabcde");
    const std::string msg =
        thrown_message<ParseError>([&] { read_ppm(dir / "trunc.ppm"); });
    CHECK(msg.find("truncated") != std::string::npos);
    CHECK(msg.find("12") != std::string::npos); // expected byte count
    CHECK(msg.find("5") != std::string::npos);  // found byte count

    test::write_file_bytes(dir / "maxval.ppm", "P6\n1 1\n1023\nabc");
    CHECK_THROWS_AS(read_ppm(dir / "maxval.ppm"), ParseError);

    test::write_file_bytes(dir / "dims.ppm", "P6\n0 1\n255\n");
    CHECK_THROWS_AS(read_ppm(dir / "dims.ppm"), ParseError);
}

TEST_CASE("missing file raises IoError") {
    CHECK_THROWS_AS(read_ppm("/nonexistent/nowhere.ppm"), IoError);
    CHECK_THROWS_AS(write_ppm(EncodedImage(1, 1), "/nonexistent/nowhere.ppm"), IoError);
    CHECK_THROWS_AS(write_pfm(LinearImage(1, 1), "/nonexistent/nowhere.pfm"), IoError);
}

TEST_CASE("pfm roundtrip preserves float32 radiances") {
    const auto dir = test::make_temp_dir("io_pfm_roundtrip");
    LinearImage img(2, 3);
    for (std::size_t i = 0; i < img.samples().size(); ++i) {
        img.samples()[i] = static_cast<float>(0.25 * i + 0.125);
    }
    write_pfm(img, dir / "a.pfm");
    const LinearImage back = read_pfm(dir / "a.pfm");
    REQUIRE(back.same_shape(img));
    for (std::size_t i = 0; i < img.samples().size(); ++i) {
        CHECK(back.samples()[i] == img.samples()[i]);
    }
}

TEST_CASE("pfm rows are stored bottom to top") {
    const auto dir = test::make_temp_dir("io_pfm_rows");
    // 1x2 little-endian color PFM; first stored row is the bottom image row.
    std::string bytes = "PF\n1 2\n-1.0\n";
    const float floats[] = {1.0f, 1.0f, 1.0f, 2.0f, 2.0f, 2.0f};
    for (float f : floats) {
        const auto u = std::bit_cast<std::uint32_t>(f);
        for (int shift = 0; shift < 32; shift += 8) {
            bytes.push_back(static_cast<char>((u >> shift) & 0xFF));
        }
    }
    test::write_file_bytes(dir / "rows.pfm", bytes);
    const LinearImage img = read_pfm(dir / "rows.pfm");
    CHECK(img.at(0, 1, 0) == 1.0); // bottom row appears first in the file
    CHECK(img.at(0, 0, 0) == 2.0);
}

TEST_CASE("grayscale big-endian pfm replicates the channel") {
    const auto dir = test::make_temp_dir("io_pfm_gray");
    // Positive scale marks big-endian payload; 2.5f is 0x40200000.
    const std::string bytes = std::string("Pf\n1 1\n1.0\n") + '\x40' + '\x20' + '\x00' + '\x00';
    test::write_file_bytes(dir / "g.pfm", bytes);
    const LinearImage img = read_pfm(dir / "g.pfm");
    for (int c = 0; c < kChannels; ++c) {
        CHECK(img.at(0, 0, c) == 2.5);
    }
}

TEST_CASE("pfm rejects malformed content") {
    const auto dir = test::make_temp_dir("io_pfm_errors");

    test::write_file_bytes(dir / "scale.pfm", "PF\n1 1\n0.0\nxxxxxxxxxxxx");
    CHECK_THROWS_AS(read_pfm(dir / "scale.pfm"), ParseError);

    test::write_file_bytes(dir / "trunc.pfm", "PF\n2 2\n-1.0\nshort");
    CHECK(thrown_message<ParseError>([&] { read_pfm(dir / "trunc.pfm"); })
              .find("truncated") != std::string::npos);

    // A NaN sample is not a radiance.
    std::string nan_bytes = "PF\n1 1\n-1.0\n";
    const std::uint32_t words[] = {0x7FC00000u, 0u, 0u};
    for (std::uint32_t u : words) {
        for (int shift = 0; shift < 32; shift += 8) {
            nan_bytes.push_back(static_cast<char>((u >> shift) & 0xFF));
        }
    }
    test::write_file_bytes(dir / "nan.pfm", nan_bytes);
    CHECK(thrown_message<ParseError>([&] { read_pfm(dir / "nan.pfm"); })
              .find("finite") != std::string::npos);
}

TEST_CASE("pfm rejects negative radiance") {
    const auto dir = test::make_temp_dir("io_pfm_negative");
    std::string bytes = "PF\n1 1\n-1.0\n";
    const float floats[] = {-1.0f, 0.0f, 0.0f};
    for (float f : floats) {
        const auto u = std::bit_cast<std::uint32_t>(f);
        for (int shift = 0; shift < 32; shift += 8) {
            bytes.push_back(static_cast<char>((u >> shift) & 0xFF));
        }
    }
    test::write_file_bytes(dir / "neg.pfm", bytes);
    CHECK_THROWS_AS(read_pfm(dir / "neg.pfm"), ParseError);
}

TEST_CASE("read_image dispatches on the magic bytes") {
    const auto dir = test::make_temp_dir("io_dispatch");
    write_ppm(EncodedImage(2, 2, 9.0), dir / "a.ppm");
    write_pfm(LinearImage(2, 2, 0.5), dir / "a.pfm");

    CHECK(std::holds_alternative<EncodedImage>(read_image(dir / "a.ppm")));
    CHECK(std::holds_alternative<LinearImage>(read_image(dir / "a.pfm")));

    test::write_file_bytes(dir / "junk.bin", "BM??");
    CHECK(thrown_message<ParseError>([&] { read_image(dir / "junk.bin"); })
              .find("magic") != std::string::npos);
}
