#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "pansharp/raster.hpp"

namespace pansharp {

enum class BandFormat { Pgm, Csv };

/// `.csv` selects Csv, anything else Pgm.
BandFormat format_from_path(const std::filesystem::path& path);

/// Raw stored DN, no rescaling. PGM maxval 63 yields source depth 6.
Band load_band(const std::filesystem::path& path, BandFormat format);
Band load_band(const std::filesystem::path& path);

/// Binary PPM ("P6") as a three-band image labelled R, G, B.
MultiImage load_ppm(const std::filesystem::path& path);

Band decode_pgm(std::string_view bytes);
Band decode_csv(std::string_view text);
MultiImage decode_ppm(std::string_view bytes);

/// Binary maxval-255 encodings; DN go through quantize_dn.
std::string encode_pgm(const Band& b);
std::string encode_ppm(const MultiImage& img);

void save_band(const Band& b, const std::filesystem::path& path);
/// One band writes PGM, three bands write PPM; other band counts are rejected.
void save_multi(const MultiImage& img, const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

}  // namespace pansharp
