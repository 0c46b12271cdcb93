#pragma once

#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>

#include <png.h>

#include "scriptid/error.hpp"
#include "scriptid/image.hpp"

namespace scriptid {

namespace detail {

// Reads one whitespace-delimited token from a PGM header, skipping
// '#' comments.
inline std::string pnm_token(std::istream& in, const std::string& path) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {}
            continue;
        }
        if (std::isspace(c)) {
            if (!tok.empty()) return tok;
            continue;
        }
        tok.push_back(static_cast<char>(c));
    }
    if (tok.empty()) throw io_error("truncated PGM header: " + path);
    return tok;
}

inline int pnm_int(std::istream& in, const std::string& path) {
    const std::string tok = pnm_token(in, path);
    try {
        size_t pos = 0;
        const int v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw parse_error("bad PGM header field '" + tok + "' in " + path);
    }
}

}  // namespace detail

inline GrayImage read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open " + path);

    const std::string magic = detail::pnm_token(in, path);
    if (magic != "P5") throw parse_error("not a binary PGM (P5): " + path);
    const int w = detail::pnm_int(in, path);
    const int h = detail::pnm_int(in, path);
    const int maxval = detail::pnm_int(in, path);
    if (w < 1 || h < 1) throw parse_error("bad PGM dimensions in " + path);
    if (maxval < 1 || maxval > 255) throw parse_error("unsupported PGM maxval in " + path);
    // Single whitespace byte separates header from raster.

    GrayImage img(w, h);
    std::vector<unsigned char> row(static_cast<size_t>(w));
    for (int y = 0; y < h; ++y) {
        in.read(reinterpret_cast<char*>(row.data()), w);
        if (in.gcount() != w) throw io_error("truncated PGM raster: " + path);
        for (int x = 0; x < w; ++x)
            img.at(x, y) = maxval == 255 ? row[x] : row[x] * 255.0 / maxval;
    }
    return img;
}

inline void write_pgm(const GrayImage& img, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot write " + path);
    out << "P5\n" << img.width << " " << img.height << "\n255\n";
    std::vector<unsigned char> row(static_cast<size_t>(img.width));
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            const double v = std::lround(img.at(x, y));
            row[x] = static_cast<unsigned char>(v < 0 ? 0 : (v > 255 ? 255 : v));
        }
        out.write(reinterpret_cast<const char*>(row.data()), img.width);
    }
    if (!out) throw io_error("short write: " + path);
}

// Renders foreground as black ink on white for visual inspection.
inline void write_pgm(const BinaryImage& img, const std::string& path) {
    GrayImage g(img.width, img.height);
    for (size_t i = 0; i < img.data.size(); ++i) g.data[i] = img.data[i] ? 0.0 : 255.0;
    write_pgm(g, path);
}

// Decodes a PNG to 8-bit grayscale. Color and 16-bit inputs are reduced via
// libpng transforms; alpha is composited over white.
inline GrayImage read_png(const std::string& path) {
    std::FILE* fp = std::fopen(path.c_str(), "rb");
    if (!fp) throw io_error("cannot open " + path);

    unsigned char sig[8];
    if (std::fread(sig, 1, 8, fp) != 8 || png_sig_cmp(sig, 0, 8) != 0) {
        std::fclose(fp);
        throw parse_error("not a PNG file: " + path);
    }

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        if (png) png_destroy_read_struct(&png, &info, nullptr);
        std::fclose(fp);
        throw io_error("libpng init failed for " + path);
    }

    std::vector<png_bytep> rows;
    std::vector<unsigned char> pixels;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        std::fclose(fp);
        throw parse_error("corrupt PNG file: " + path);
    }

    png_init_io(png, fp);
    png_set_sig_bytes(png, 8);
    png_read_info(png, info);

    const png_uint_32 w = png_get_image_width(png, info);
    const png_uint_32 h = png_get_image_height(png, info);
    const int color = png_get_color_type(png, info);
    const int depth = png_get_bit_depth(png, info);

    if (depth == 16) png_set_strip_16(png);
    if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    if (color & PNG_COLOR_MASK_COLOR)
        png_set_rgb_to_gray_fixed(png, 1, -1, -1);
    png_color_16 white{0, 255, 255, 255, 255};
    png_set_background(png, &white, PNG_BACKGROUND_GAMMA_SCREEN, 0, 1.0);
    png_read_update_info(png, info);

    pixels.assign(static_cast<size_t>(w) * h, 0);
    rows.resize(h);
    for (png_uint_32 y = 0; y < h; ++y) rows[y] = pixels.data() + static_cast<size_t>(y) * w;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);

    GrayImage img(static_cast<int>(w), static_cast<int>(h));
    for (size_t i = 0; i < img.data.size(); ++i) img.data[i] = pixels[i];
    return img;
}

// Dispatches on extension; .pgm and .png are the supported corpus formats.
inline GrayImage read_image(const std::string& path) {
    const auto dot = path.find_last_of('.');
    std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
    for (auto& c : ext) c = static_cast<char>(std::tolower(c));
    if (ext == "pgm") return read_pgm(path);
    if (ext == "png") return read_png(path);
    throw io_error("unsupported image format: " + path);
}

}  // namespace scriptid
