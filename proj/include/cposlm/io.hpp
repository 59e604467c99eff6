#ifndef CPOSLM_IO_HPP
#define CPOSLM_IO_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "cposlm/pump_masks.hpp"

namespace cposlm {

/// How raster values map onto the 0..255 PGM gray range.
struct PgmMapping {
    bool use_data_range = true;  ///< map [data min, data max]
    double lo = 0.0;             ///< fixed range when use_data_range is false
    double hi = 1.0;

    static PgmMapping data_range() { return {true, 0.0, 0.0}; }
    static PgmMapping fixed(double lo, double hi) { return {false, lo, hi}; }
};

/// Number formatted with 12 significant digits (the CSV convention).
std::string format_number(double v);

/// Header line then rows, 12 significant digits, '\n' endings. Byte-stable
/// for identical inputs.
void write_table_csv(const std::vector<std::string>& columns,
                     const std::vector<std::vector<double>>& rows,
                     const std::filesystem::path& path);

/// Binary PGM with the range recorded in a comment:
///   P5\n# min=<v> max=<v>\n<w> <h>\n255\n<row-major bytes>
/// A degenerate (flat) range maps every pixel to 0 and notes it.
void write_raster_pgm(const RasterGrid& raster, const std::filesystem::path& path,
                      const PgmMapping& mapping = PgmMapping::data_range());

void write_text_file(const std::string& text, const std::filesystem::path& path);

/// FNV-1a 64-bit content hash, 16 hex digits.
std::string hash_file(const std::filesystem::path& path);

}  // namespace cposlm

#endif
