#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "qpt/error.hpp"
#include "qpt/image_pipeline.hpp"

// Netpbm grayscale I/O, 8-bit only: binary P5 and ASCII P2 are read,
// P5 is written. '#' comments in headers are honored. Sample values are
// loaded as-is (no maxval rescaling).

namespace qpt {

namespace detail {

// Next header token, skipping whitespace and comments-to-end-of-line.
inline std::string pgm_token(std::istream& in) {
    std::string tok;
    int c = in.get();
    for (;;) {
        if (c == std::char_traits<char>::eof()) throw parse_error("unexpected end of PGM header");
        if (c == '#') {
            while (c != std::char_traits<char>::eof() && c != '\n') c = in.get();
        } else if (std::isspace(c)) {
            c = in.get();
        } else {
            break;
        }
    }
    while (c != std::char_traits<char>::eof() && !std::isspace(c) && c != '#') {
        tok.push_back(char(c));
        c = in.get();
    }
    if (c == '#') in.unget();
    return tok;
}

inline long pgm_int(std::istream& in, const char* what) {
    const std::string tok = pgm_token(in);
    long v = 0;
    const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || p != tok.data() + tok.size())
        throw parse_error(std::string("bad PGM ") + what + ": '" + tok + "'");
    return v;
}

}  // namespace detail

inline GrayImage load_pgm(std::istream& in) {
    const std::string magic = detail::pgm_token(in);
    if (magic != "P5" && magic != "P2")
        throw parse_error("not a supported PGM (want P5 or P2, got '" + magic + "')");
    const long w = detail::pgm_int(in, "width");
    const long h = detail::pgm_int(in, "height");
    const long maxval = detail::pgm_int(in, "maxval");
    if (w < 1 || h < 1) throw parse_error("PGM dimensions must be positive");
    if (maxval < 1 || maxval > 255)
        throw parse_error("only 8-bit PGMs are supported (maxval " + std::to_string(maxval) + ")");

    GrayImage img{std::size_t(w), std::size_t(h)};
    if (magic == "P5") {
        // The maxval token consumed exactly one delimiter byte; raw samples
        // follow immediately.
        std::string bytes(img.pixels.size(), '\0');
        in.read(bytes.data(), std::streamsize(bytes.size()));
        if (std::size_t(in.gcount()) != bytes.size()) throw parse_error("truncated PGM pixel data");
        for (std::size_t i = 0; i < bytes.size(); ++i)
            img.pixels[i] = double(static_cast<unsigned char>(bytes[i]));
    } else {
        for (std::size_t i = 0; i < img.pixels.size(); ++i) {
            const long v = detail::pgm_int(in, "sample");
            if (v < 0 || v > maxval)
                throw parse_error("PGM sample " + std::to_string(v) + " outside [0, " +
                                  std::to_string(maxval) + "]");
            img.pixels[i] = double(v);
        }
    }
    // Reject samples above maxval for P5 too? A byte can exceed maxval only
    // when maxval < 255; such files are accepted and used as-is.
    return img;
}

inline GrayImage load_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open '" + path.string() + "' for reading");
    return load_pgm(in);
}

// Writes binary P5 with maxval 255. Pixels are rounded half away from zero
// and clamped to [0, 255]; to_display output passes through exactly.
inline void save_pgm(std::ostream& out, const GrayImage& img) {
    detail::check_image(img);
    out << "P5\n" << img.width << " " << img.height << "\n255\n";
    std::string bytes(img.pixels.size(), '\0');
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        long v = std::lround(img.pixels[i]);
        v = v < 0 ? 0 : (v > 255 ? 255 : v);
        bytes[i] = char(static_cast<unsigned char>(v));
    }
    out.write(bytes.data(), std::streamsize(bytes.size()));
    if (!out) throw io_error("PGM write failed");
}

inline void save_pgm(const std::filesystem::path& path, const GrayImage& img) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open '" + path.string() + "' for writing");
    save_pgm(out, img);
    out.close();
    if (!out) throw io_error("PGM write to '" + path.string() + "' failed");
}

}  // namespace qpt
