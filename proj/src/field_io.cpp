#include "latadd/field_io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace latadd {

namespace {

std::ifstream open_input(const std::string& path, std::ios::openmode mode = std::ios::in) {
  std::ifstream in(path, mode);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  return in;
}

double parse_double(const std::string& token, const std::string& where) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc() || res.ptr != end)
    throw std::runtime_error("malformed number '" + token + "' in " + where);
  return value;
}

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Skips PGM whitespace and '#' comment lines, then reads one integer token.
long pgm_int(std::istream& in) {
  int c = in.get();
  while (c != EOF && (std::isspace(c) || c == '#')) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    }
    c = in.get();
  }
  if (c == EOF) throw std::runtime_error("truncated PGM header");
  long value = 0;
  bool any = false;
  while (c != EOF && std::isdigit(c)) {
    value = value * 10 + (c - '0');
    any = true;
    c = in.get();
  }
  if (!any) throw std::runtime_error("malformed PGM header");
  if (c != EOF) in.unget();
  return value;
}

}  // namespace

LatticeField read_field_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string token;
    while (std::getline(ss, token, ','))
      row.push_back(parse_double(token, "CSV line " + std::to_string(line_no)));
    if (!rows.empty() && row.size() != rows.front().size())
      throw std::runtime_error("CSV rows have inconsistent lengths");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error("empty CSV field");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (Eigen::Index u = 0; u < m.rows(); ++u)
    for (Eigen::Index v = 0; v < m.cols(); ++v)
      m(u, v) = rows[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
  return LatticeField(std::move(m));
}

LatticeField read_field_csv(const std::string& path) {
  auto in = open_input(path);
  return read_field_csv(in);
}

void write_field_csv(const LatticeField& field, std::ostream& out) {
  for (Eigen::Index u = 0; u < field.rows(); ++u) {
    for (Eigen::Index v = 0; v < field.cols(); ++v) {
      if (v) out << ',';
      out << format_double(field(u, v));
    }
    out << '\n';
  }
}

void write_field_csv(const LatticeField& field, const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // binary keeps LF endings everywhere
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  write_field_csv(field, out);
}

LatticeField read_field_pgm(std::istream& in) {
  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (!in || magic[0] != 'P' || (magic[1] != '2' && magic[1] != '5'))
    throw std::runtime_error("not a P2/P5 PGM file");
  const bool binary = magic[1] == '5';
  const long width = pgm_int(in);
  const long height = pgm_int(in);
  const long maxval = pgm_int(in);
  if (width < 1 || height < 1) throw std::runtime_error("bad PGM dimensions");
  if (maxval < 1 || maxval > 65535) throw std::runtime_error("unsupported PGM maxval");

  Eigen::MatrixXd m(height, width);
  if (binary) {
    in.get();  // single whitespace byte after maxval
    const bool two_byte = maxval > 255;
    for (long u = 0; u < height; ++u) {
      for (long v = 0; v < width; ++v) {
        int hi = in.get();
        if (hi == EOF) throw std::runtime_error("truncated PGM data");
        long value = hi;
        if (two_byte) {
          const int lo = in.get();
          if (lo == EOF) throw std::runtime_error("truncated PGM data");
          value = (value << 8) | lo;  // big-endian
        }
        m(u, v) = static_cast<double>(value);
      }
    }
  } else {
    for (long u = 0; u < height; ++u)
      for (long v = 0; v < width; ++v) m(u, v) = static_cast<double>(pgm_int(in));
  }
  return LatticeField(std::move(m));
}

LatticeField read_field_pgm(const std::string& path) {
  auto in = open_input(path, std::ios::in | std::ios::binary);
  return read_field_pgm(in);
}

LatticeField read_field_auto(const std::string& path) {
  const auto dot = path.find_last_of('.');
  std::string ext = (dot == std::string::npos) ? "" : path.substr(dot + 1);
  for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (ext == "pgm") return read_field_pgm(path);
  return read_field_csv(path);
}

}  // namespace latadd
