#include "cposlm/io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>

#include "cposlm/errors.hpp"

namespace cposlm {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void write_table_csv(const std::vector<std::string>& columns,
                     const std::vector<std::vector<double>>& rows,
                     const std::filesystem::path& path) {
    for (const auto& c : columns)
        if (c.empty()) throw io_error("write_table_csv: empty column name");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open " + path.string());
    for (size_t i = 0; i < columns.size(); ++i)
        out << (i ? "," : "") << columns[i];
    out << '\n';
    for (const auto& row : rows) {
        if (row.size() != columns.size())
            throw io_error("write_table_csv: row width mismatch");
        for (size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << format_number(row[i]);
        out << '\n';
    }
    if (!out) throw io_error("write failed: " + path.string());
}

void write_raster_pgm(const RasterGrid& raster, const std::filesystem::path& path,
                      const PgmMapping& mapping) {
    if (raster.values.empty() ||
        raster.values.size() != static_cast<size_t>(raster.n) * raster.n)
        throw io_error("write_raster_pgm: raster not rendered");
    double lo = mapping.lo;
    double hi = mapping.hi;
    if (mapping.use_data_range) {
        lo = hi = raster.values.front();
        for (double v : raster.values) {
            lo = std::fmin(lo, v);
            hi = std::fmax(hi, v);
        }
    }
    const bool flat = !(hi > lo);

    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open " + path.string());
    out << "P5\n# min=" << format_number(lo) << " max=" << format_number(hi)
        << (flat ? " flat" : "") << "\n"
        << raster.n << ' ' << raster.n << "\n255\n";
    std::vector<unsigned char> bytes(raster.values.size());
    for (size_t i = 0; i < raster.values.size(); ++i) {
        if (flat) {
            bytes[i] = 0;
            continue;
        }
        const double t = (raster.values[i] - lo) / (hi - lo);
        const long g = std::lround(255.0 * std::fmin(1.0, std::fmax(0.0, t)));
        bytes[i] = static_cast<unsigned char>(g);
    }
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw io_error("write failed: " + path.string());
}

void write_text_file(const std::string& text, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open " + path.string());
    out << text;
    if (!out) throw io_error("write failed: " + path.string());
}

std::string hash_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot read " + path.string());
    uint64_t h = 1469598103934665603ull;  // FNV-1a offset basis
    char buf[65536];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        const std::streamsize got = in.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 1099511628211ull;
        }
        if (got < static_cast<std::streamsize>(sizeof(buf))) break;
    }
    char hex[17];
    std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(h));
    return hex;
}

}  // namespace cposlm
