#include "cposlm/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cposlm/errors.hpp"
#include "doctest.h"

using namespace cposlm;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / "cposlm_io_test") {
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("csv: header, formatting, determinism") {
    TempDir tmp;
    const auto file = tmp.path / "t.csv";
    write_table_csv({"delta_s", "im_chi_pump_off", "im_chi_pump_on"},
                    {{0.0, 1.0, 0.003069935757}, {-0.5, 0.8, 0.25}}, file);
    const std::string text = slurp(file);
    CHECK(text == "delta_s,im_chi_pump_off,im_chi_pump_on\n"
                  "0,1,0.003069935757\n"
                  "-0.5,0.8,0.25\n");

    write_table_csv({"delta_s", "im_chi_pump_off", "im_chi_pump_on"},
                    {{0.0, 1.0, 0.003069935757}, {-0.5, 0.8, 0.25}}, file);
    CHECK(slurp(file) == text);  // byte-identical re-run
}

TEST_CASE("csv: header-only file for empty rows") {
    TempDir tmp;
    const auto file = tmp.path / "empty.csv";
    write_table_csv({"a", "b"}, {}, file);
    CHECK(slurp(file) == "a,b\n");
}

TEST_CASE("csv: empty column names rejected") {
    TempDir tmp;
    CHECK_THROWS_AS(write_table_csv({"a", ""}, {}, tmp.path / "x.csv"), io_error);
}

TEST_CASE("numbers use 12 significant digits") {
    CHECK(format_number(0.1234567890123456) == "0.123456789012");
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(-3.5e-7) == "-3.5e-07");
}

TEST_CASE("pgm: bit-exact binary mask payload") {
    TempDir tmp;
    RasterGrid r;
    r.n = 2;
    r.pitch_m = 1.0;
    r.values = {0.0, 1.0, 1.0, 0.0};
    const auto file = tmp.path / "mask.pgm";
    write_raster_pgm(r, file);
    const std::string bytes = slurp(file);
    CHECK(bytes == std::string("P5\n# min=0 max=1\n2 2\n255\n") +
                       '\x00' + '\xFF' + '\xFF' + '\x00');
}

TEST_CASE("pgm: flat raster maps to zero with a note") {
    TempDir tmp;
    RasterGrid r;
    r.n = 2;
    r.pitch_m = 1.0;
    r.values = {0.7, 0.7, 0.7, 0.7};
    const auto file = tmp.path / "flat.pgm";
    write_raster_pgm(r, file);
    const std::string bytes = slurp(file);
    CHECK(bytes.find("flat") != std::string::npos);
    CHECK(bytes.substr(bytes.size() - 4) == std::string(4, '\x00'));
}

TEST_CASE("pgm: fixed mapping clamps out-of-range values") {
    TempDir tmp;
    RasterGrid r;
    r.n = 2;
    r.pitch_m = 1.0;
    r.values = {-0.5, 0.0, 0.5, 1.5};
    const auto file = tmp.path / "fixed.pgm";
    write_raster_pgm(r, file, PgmMapping::fixed(0.0, 1.0));
    const std::string bytes = slurp(file);
    const std::string payload = bytes.substr(bytes.size() - 4);
    CHECK(payload[0] == '\x00');
    CHECK(payload[1] == '\x00');
    CHECK(static_cast<unsigned char>(payload[2]) == 128);
    CHECK(static_cast<unsigned char>(payload[3]) == 255);
}

TEST_CASE("hash is stable and content-sensitive") {
    TempDir tmp;
    const auto a = tmp.path / "a";
    const auto b = tmp.path / "b";
    write_text_file("hello\n", a);
    write_text_file("hello\n", b);
    CHECK(hash_file(a) == hash_file(b));
    write_text_file("hello!\n", b);
    CHECK(hash_file(a) != hash_file(b));
    CHECK(hash_file(a).size() == 16);
}

TEST_CASE("io failures throw io_error") {
    CHECK_THROWS_AS(write_text_file("x", "/nonexistent_dir_zz/file"), io_error);
    CHECK_THROWS_AS(hash_file("/nonexistent_dir_zz/file"), io_error);
}
