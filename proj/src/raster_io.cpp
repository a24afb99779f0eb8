#include "pansharp/raster_io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "pansharp/error.hpp"

namespace pansharp {

namespace {

struct NetpbmHeader {
  std::size_t width = 0;
  std::size_t height = 0;
  unsigned maxval = 0;
  std::size_t payload_offset = 0;
};

class HeaderScanner {
 public:
  explicit HeaderScanner(std::string_view bytes) : bytes_(bytes) {}

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const char c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::size_t number(const char* what) {
    skip_space_and_comments();
    std::size_t value = 0;
    const char* first = bytes_.data() + pos_;
    const char* last = bytes_.data() + bytes_.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr == first)
      fail(ErrorKind::MalformedFile, std::string("expected ") + what + " in netpbm header");
    pos_ += static_cast<std::size_t>(ptr - first);
    return value;
  }

  std::size_t pos() const noexcept { return pos_; }
  void advance(std::size_t n) { pos_ += n; }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

NetpbmHeader parse_header(std::string_view bytes, std::string_view magic) {
  if (bytes.size() < 2 || bytes.substr(0, 2) != magic)
    fail(ErrorKind::MalformedFile, "bad magic, expected " + std::string(magic));
  HeaderScanner scan(bytes.substr(0));
  scan.advance(2);
  NetpbmHeader h;
  h.width = scan.number("width");
  h.height = scan.number("height");
  h.maxval = static_cast<unsigned>(scan.number("maxval"));
  if (h.width == 0 || h.height == 0) fail(ErrorKind::MalformedFile, "zero image dimension");
  if (h.maxval != 63 && h.maxval != 255)
    fail(ErrorKind::MalformedFile, "unsupported maxval " + std::to_string(h.maxval));
  // Exactly one whitespace byte separates the header from the raster.
  if (scan.pos() >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[scan.pos()])))
    fail(ErrorKind::MalformedFile, "missing separator after maxval");
  h.payload_offset = scan.pos() + 1;
  return h;
}

std::vector<double> read_samples(std::string_view bytes, const NetpbmHeader& h, std::size_t count) {
  if (bytes.size() < h.payload_offset + count)
    fail(ErrorKind::MalformedFile, "raster truncated: need " + std::to_string(count) + " samples");
  std::vector<double> samples(count);
  for (std::size_t n = 0; n < count; ++n) {
    const auto v = static_cast<unsigned char>(bytes[h.payload_offset + n]);
    if (v > h.maxval)
      fail(ErrorKind::ValueOutOfRange,
           "sample " + std::to_string(v) + " exceeds maxval " + std::to_string(h.maxval));
    samples[n] = v;
  }
  return samples;
}

int depth_for(unsigned maxval) { return maxval == 63 ? 6 : 8; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string netpbm_header(std::string_view magic, std::size_t w, std::size_t h) {
  std::ostringstream os;
  os << magic << '\n' << w << ' ' << h << '\n' << 255 << '\n';
  return os.str();
}

}  // namespace

BandFormat format_from_path(const std::filesystem::path& path) {
  return path.extension() == ".csv" ? BandFormat::Csv : BandFormat::Pgm;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::IOFailure, "cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::IOFailure, "cannot open " + path.string() + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(ErrorKind::IOFailure, "write failed for " + path.string());
}

Band decode_pgm(std::string_view bytes) {
  const NetpbmHeader h = parse_header(bytes, "P5");
  return Band(h.width, h.height, read_samples(bytes, h, h.width * h.height), depth_for(h.maxval));
}

MultiImage decode_ppm(std::string_view bytes) {
  const NetpbmHeader h = parse_header(bytes, "P6");
  const std::size_t n = h.width * h.height;
  const std::vector<double> interleaved = read_samples(bytes, h, 3 * n);
  std::vector<Band> bands;
  for (std::size_t c = 0; c < 3; ++c) {
    std::vector<double> px(n);
    for (std::size_t p = 0; p < n; ++p) px[p] = interleaved[3 * p + c];
    bands.emplace_back(h.width, h.height, std::move(px), depth_for(h.maxval));
  }
  return MultiImage(std::move(bands), {"R", "G", "B"});
}

Band decode_csv(std::string_view text) {
  std::vector<double> px;
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    line = trim(line);
    if (line.empty()) {
      if (trim(text).empty()) break;
      fail(ErrorKind::MalformedFile, "empty row at line " + std::to_string(line_no));
    }
    std::size_t cols = 0;
    while (true) {
      const std::size_t comma = line.find(',');
      const std::string_view cell = trim(line.substr(0, comma));
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size())
        fail(ErrorKind::MalformedFile, "bad cell '" + std::string(cell) + "' at line " +
                                           std::to_string(line_no));
      if (!(v >= 0.0 && v <= 255.0))
        fail(ErrorKind::ValueOutOfRange, "value " + std::string(cell) + " outside [0, 255]");
      px.push_back(v);
      ++cols;
      if (comma == std::string_view::npos) break;
      line = line.substr(comma + 1);
    }
    if (height == 0) width = cols;
    if (cols != width)
      fail(ErrorKind::MalformedFile, "ragged row at line " + std::to_string(line_no));
    ++height;
  }
  if (height == 0) fail(ErrorKind::MalformedFile, "empty CSV band");
  return Band(width, height, std::move(px), 8);
}

Band load_band(const std::filesystem::path& path, BandFormat format) {
  const std::string bytes = read_file(path);
  return format == BandFormat::Csv ? decode_csv(bytes) : decode_pgm(bytes);
}

Band load_band(const std::filesystem::path& path) { return load_band(path, format_from_path(path)); }

MultiImage load_ppm(const std::filesystem::path& path) { return decode_ppm(read_file(path)); }

std::string encode_pgm(const Band& b) {
  std::string out = netpbm_header("P5", b.width(), b.height());
  for (double v : b.pixels()) out.push_back(static_cast<char>(static_cast<unsigned char>(quantize_dn(v))));
  return out;
}

std::string encode_ppm(const MultiImage& img) {
  if (img.band_count() != 3)
    fail(ErrorKind::InvalidArgument, "PPM output needs exactly 3 bands, got " +
                                         std::to_string(img.band_count()));
  std::string out = netpbm_header("P6", img.width(), img.height());
  const std::size_t n = img.width() * img.height();
  for (std::size_t p = 0; p < n; ++p)
    for (const Band& b : img.bands())
      out.push_back(static_cast<char>(static_cast<unsigned char>(quantize_dn(b.pixels()[p]))));
  return out;
}

void save_band(const Band& b, const std::filesystem::path& path) { write_file(path, encode_pgm(b)); }

void save_multi(const MultiImage& img, const std::filesystem::path& path) {
  if (img.band_count() == 1) {
    save_band(img.band(0), path);
    return;
  }
  write_file(path, encode_ppm(img));
}

}  // namespace pansharp
