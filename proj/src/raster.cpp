#include "gridplan/raster.hpp"

#include <png.h>

#include <cctype>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gridplan {

namespace {

[[noreturn]] void io_fail(const std::string& path, const std::string& what) {
    throw std::runtime_error(path + ": " + what);
}

[[noreturn]] void format_fail(const std::string& path, const std::string& what) {
    throw std::runtime_error(path + ": " + what);
}

// Reads the next PGM header token, skipping whitespace and # comments.
std::string next_token(std::istream& in) {
    std::string tok;
    int ch;
    while ((ch = in.get()) != EOF) {
        if (ch == '#') {
            while ((ch = in.get()) != EOF && ch != '\n') {
            }
            continue;
        }
        if (std::isspace(ch)) {
            continue;
        }
        tok.push_back(static_cast<char>(ch));
        while ((ch = in.peek()) != EOF && !std::isspace(ch) && ch != '#') {
            tok.push_back(static_cast<char>(in.get()));
        }
        break;
    }
    return tok;
}

long parse_header_int(std::istream& in, const std::string& path, const char* field) {
    const std::string tok = next_token(in);
    if (tok.empty()) format_fail(path, std::string("truncated PGM header, missing ") + field);
    try {
        size_t pos = 0;
        const long v = std::stol(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        format_fail(path, std::string("bad PGM ") + field + " '" + tok + "'");
    }
}

RasterGrid load_pgm(std::ifstream& in, const std::string& path, bool binary) {
    const long w = parse_header_int(in, path, "width");
    const long h = parse_header_int(in, path, "height");
    const long maxval = parse_header_int(in, path, "maxval");
    if (w < 1 || h < 1) format_fail(path, "PGM dimensions must be at least 1x1");
    if (maxval != 255 && maxval != 65535)
        format_fail(path, "unsupported PGM maxval " + std::to_string(maxval) +
                              " (expected 255 or 65535)");

    RasterGrid grid;
    grid.width = static_cast<int>(w);
    grid.height = static_cast<int>(h);
    grid.bit_depth = maxval == 255 ? 8 : 16;
    const std::size_t n = static_cast<std::size_t>(w) * h;
    grid.values.resize(n);

    if (binary) {
        // P5: one whitespace byte after maxval, then raw samples (16-bit big-endian).
        const int sep = in.get();
        if (sep == EOF || !std::isspace(sep))
            format_fail(path, "missing whitespace between P5 header and pixel data");
        const std::size_t bytes_per = grid.bit_depth == 8 ? 1 : 2;
        std::vector<unsigned char> buf(n * bytes_per);
        if (!in.read(reinterpret_cast<char*>(buf.data()),
                     static_cast<std::streamsize>(buf.size())))
            format_fail(path, "truncated P5 pixel data");
        for (std::size_t i = 0; i < n; ++i) {
            grid.values[i] = bytes_per == 1
                                 ? buf[i]
                                 : static_cast<std::uint16_t>((buf[2 * i] << 8) | buf[2 * i + 1]);
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            const long v = parse_header_int(in, path, "pixel");
            if (v < 0 || v > maxval)
                format_fail(path, "P2 pixel value " + std::to_string(v) + " out of range");
            grid.values[i] = static_cast<std::uint16_t>(v);
        }
    }
    grid.validate();
    return grid;
}

struct PngReader {
    png_structp png = nullptr;
    png_infop info = nullptr;
    FILE* fp = nullptr;
    ~PngReader() {
        if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
        if (fp) std::fclose(fp);
    }
};

RasterGrid load_png(const std::string& path) {
    PngReader r;
    r.fp = std::fopen(path.c_str(), "rb");
    if (!r.fp) io_fail(path, "cannot open for reading");

    r.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!r.png) io_fail(path, "png_create_read_struct failed");
    r.info = png_create_info_struct(r.png);
    if (!r.info) io_fail(path, "png_create_info_struct failed");
    if (setjmp(png_jmpbuf(r.png))) format_fail(path, "corrupt PNG stream");

    png_init_io(r.png, r.fp);
    png_read_info(r.png, r.info);

    const png_byte color_type = png_get_color_type(r.png, r.info);
    const png_byte depth = png_get_bit_depth(r.png, r.info);
    if (color_type != PNG_COLOR_TYPE_GRAY) {
        const char* desc = color_type == PNG_COLOR_TYPE_RGB            ? "RGB"
                           : color_type == PNG_COLOR_TYPE_RGB_ALPHA    ? "RGBA"
                           : color_type == PNG_COLOR_TYPE_GRAY_ALPHA   ? "gray+alpha"
                           : color_type == PNG_COLOR_TYPE_PALETTE      ? "palette"
                                                                       : "unknown";
        format_fail(path, std::string("PNG color type is ") + desc +
                              ", expected single-channel grayscale");
    }
    if (depth != 8 && depth != 16)
        format_fail(path, "PNG bit depth " + std::to_string(depth) + ", expected 8 or 16");

    const png_uint_32 w = png_get_image_width(r.png, r.info);
    const png_uint_32 h = png_get_image_height(r.png, r.info);
    if (png_get_interlace_type(r.png, r.info) != PNG_INTERLACE_NONE)
        png_set_interlace_handling(r.png);
    png_read_update_info(r.png, r.info);

    RasterGrid grid;
    grid.width = static_cast<int>(w);
    grid.height = static_cast<int>(h);
    grid.bit_depth = depth;
    grid.values.resize(static_cast<std::size_t>(w) * h);

    const std::size_t rowbytes = png_get_rowbytes(r.png, r.info);
    std::vector<unsigned char> rowdata(rowbytes * h);
    std::vector<png_bytep> rows(h);
    for (png_uint_32 y = 0; y < h; ++y) rows[y] = rowdata.data() + y * rowbytes;
    png_read_image(r.png, rows.data());
    png_read_end(r.png, nullptr);

    for (png_uint_32 y = 0; y < h; ++y) {
        const unsigned char* row = rows[y];
        for (png_uint_32 x = 0; x < w; ++x) {
            // 16-bit PNG samples are big-endian.
            grid.values[static_cast<std::size_t>(y) * w + x] =
                depth == 8 ? row[x]
                           : static_cast<std::uint16_t>((row[2 * x] << 8) | row[2 * x + 1]);
        }
    }
    grid.validate();
    return grid;
}

struct PngWriter {
    png_structp png = nullptr;
    png_infop info = nullptr;
    FILE* fp = nullptr;
    ~PngWriter() {
        if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
        if (fp) std::fclose(fp);
    }
};

void write_png(const std::string& path, int width, int height, int bit_depth,
               int color_type, const std::vector<unsigned char>& rowdata,
               std::size_t rowbytes) {
    PngWriter w;
    w.fp = std::fopen(path.c_str(), "wb");
    if (!w.fp) io_fail(path, "cannot open for writing");

    w.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!w.png) io_fail(path, "png_create_write_struct failed");
    w.info = png_create_info_struct(w.png);
    if (!w.info) io_fail(path, "png_create_info_struct failed");
    if (setjmp(png_jmpbuf(w.png))) io_fail(path, "PNG write failed");

    png_init_io(w.png, w.fp);
    png_set_IHDR(w.png, w.info, static_cast<png_uint_32>(width),
                 static_cast<png_uint_32>(height), bit_depth, color_type,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(w.png, w.info);
    std::vector<png_bytep> rows(height);
    for (int y = 0; y < height; ++y)
        rows[y] = const_cast<png_bytep>(rowdata.data() + static_cast<std::size_t>(y) * rowbytes);
    png_write_image(w.png, rows.data());
    png_write_end(w.png, nullptr);
}

}  // namespace

void RasterGrid::validate() const {
    if (width < 1 || height < 1)
        throw std::invalid_argument("raster dimensions must be at least 1x1");
    if (bit_depth != 8 && bit_depth != 16)
        throw std::invalid_argument("raster bit depth must be 8 or 16");
    if (values.size() != static_cast<std::size_t>(width) * height)
        throw std::invalid_argument("raster value count does not match width*height");
    const std::uint32_t maxv = max_value();
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] > maxv)
            throw std::invalid_argument("raster value " + std::to_string(values[i]) +
                                        " at index " + std::to_string(i) + " exceeds " +
                                        std::to_string(maxv));
    }
}

RasterGrid load_grayscale_raster(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) io_fail(path, "cannot open for reading");

    char magic[2] = {0, 0};
    in.read(magic, 2);
    if (!in) format_fail(path, "file too short to identify");

    if (magic[0] == 'P' && (magic[1] == '2' || magic[1] == '5'))
        return load_pgm(in, path, magic[1] == '5');

    static const unsigned char png_sig[2] = {0x89, 'P'};
    if (static_cast<unsigned char>(magic[0]) == png_sig[0] && magic[1] == 'P') {
        in.close();
        return load_png(path);
    }
    format_fail(path, "unrecognized format (expected PGM P2/P5 or PNG)");
}

void save_grayscale_raster(const RasterGrid& grid, const std::string& path,
                           RasterFormat format) {
    grid.validate();
    if (format == RasterFormat::Pgm) {
        std::ofstream out(path, std::ios::binary);
        if (!out) io_fail(path, "cannot open for writing");
        // ASCII P2 keeps fixtures and diffs readable; decoders accept both.
        out << "P2\n" << grid.width << ' ' << grid.height << '\n' << grid.max_value() << '\n';
        for (int y = 0; y < grid.height; ++y) {
            for (int x = 0; x < grid.width; ++x) {
                out << grid.at(x, y) << (x + 1 == grid.width ? '\n' : ' ');
            }
        }
        if (!out.flush()) io_fail(path, "write failed");
        return;
    }

    const std::size_t bytes_per = grid.bit_depth == 8 ? 1 : 2;
    const std::size_t rowbytes = static_cast<std::size_t>(grid.width) * bytes_per;
    std::vector<unsigned char> rowdata(rowbytes * grid.height);
    for (int y = 0; y < grid.height; ++y) {
        unsigned char* row = rowdata.data() + static_cast<std::size_t>(y) * rowbytes;
        for (int x = 0; x < grid.width; ++x) {
            const std::uint16_t v = grid.at(x, y);
            if (bytes_per == 1) {
                row[x] = static_cast<unsigned char>(v);
            } else {
                row[2 * x] = static_cast<unsigned char>(v >> 8);
                row[2 * x + 1] = static_cast<unsigned char>(v & 0xff);
            }
        }
    }
    write_png(path, grid.width, grid.height, grid.bit_depth, PNG_COLOR_TYPE_GRAY, rowdata,
              rowbytes);
}

RasterFormat raster_format_for_path(std::string_view path) {
    const auto dot = path.rfind('.');
    if (dot != std::string_view::npos) {
        std::string ext(path.substr(dot + 1));
        for (auto& c : ext) c = static_cast<char>(std::tolower(c));
        if (ext == "png") return RasterFormat::Png;
    }
    return RasterFormat::Pgm;
}

RgbImage render_overlay(const RasterGrid& base, const std::vector<OverlayLayer>& layers) {
    base.validate();
    for (const auto& layer : layers) {
        for (const CellCoord c : layer.cells) {
            if (c.x < 0 || c.y < 0 || c.x >= base.width || c.y >= base.height)
                throw std::out_of_range("overlay cell (" + std::to_string(c.x) + "," +
                                        std::to_string(c.y) + ") outside " +
                                        std::to_string(base.width) + "x" +
                                        std::to_string(base.height) + " raster");
        }
    }

    RgbImage img;
    img.width = base.width;
    img.height = base.height;
    img.pixels.resize(static_cast<std::size_t>(base.width) * base.height * 3);
    for (std::size_t i = 0; i < base.values.size(); ++i) {
        const std::uint16_t v = base.values[i];
        const std::uint8_t g =
            base.bit_depth == 8 ? static_cast<std::uint8_t>(v)
                                : static_cast<std::uint8_t>((v * 255u + 32767u) / 65535u);
        img.pixels[3 * i] = g;
        img.pixels[3 * i + 1] = g;
        img.pixels[3 * i + 2] = g;
    }
    for (const auto& layer : layers) {
        for (const CellCoord c : layer.cells) {
            const std::size_t i =
                (static_cast<std::size_t>(c.y) * base.width + c.x) * 3;
            img.pixels[i] = layer.color.r;
            img.pixels[i + 1] = layer.color.g;
            img.pixels[i + 2] = layer.color.b;
        }
    }
    return img;
}

void save_png_rgb(const RgbImage& image, const std::string& path) {
    if (image.width < 1 || image.height < 1 ||
        image.pixels.size() != static_cast<std::size_t>(image.width) * image.height * 3)
        throw std::invalid_argument("malformed RGB image");
    const std::size_t rowbytes = static_cast<std::size_t>(image.width) * 3;
    write_png(path, image.width, image.height, 8, PNG_COLOR_TYPE_RGB, image.pixels, rowbytes);
}

Rgb planner_color(std::string_view planner) {
    if (planner == "astar" || planner == "astar3d") return {0, 0, 255};
    if (planner == "dijkstra" || planner == "dijkstra3d") return {255, 215, 0};
    if (planner == "rrtstar" || planner == "rrtconnect") return {255, 0, 0};
    if (planner == "niaco" || planner == "niaco3d") return {135, 206, 250};
    return {255, 0, 255};
}

}  // namespace gridplan
