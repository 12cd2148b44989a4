#pragma once

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "sparsix/pattern.hpp"
#include "sparsix/types.hpp"

namespace sparsix {

enum class MatrixMarketMode { dense, coordinate };

namespace detail {

struct MmHeader {
  std::string format;    // array | coordinate
  std::string field;     // real | complex | integer | pattern
  std::string symmetry;  // general | symmetric | skew-symmetric | hermitian
};

class MmParser {
 public:
  MmParser(const std::string& path) : path_(path), in_(path) {
    if (!in_) throw io_error("cannot open " + path);
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw io_error(path_ + ":" + std::to_string(line_no_) + ": " + msg);
  }

  bool next_line(std::string& line) {
    while (std::getline(in_, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return true;
    }
    return false;
  }

  /// Next line that is neither blank nor a comment.
  bool next_content_line(std::string& line) {
    while (next_line(line)) {
      const auto pos = line.find_first_not_of(" \t");
      if (pos == std::string::npos) continue;
      if (line[pos] == '%') continue;
      return true;
    }
    return false;
  }

  MmHeader read_header() {
    std::string line;
    if (!next_line(line)) fail("empty file");
    std::istringstream ss(line);
    std::string banner, object;
    MmHeader h;
    ss >> banner >> object >> h.format >> h.field >> h.symmetry;
    std::transform(banner.begin(), banner.end(), banner.begin(), ::tolower);
    for (auto* s : {&object, &h.format, &h.field, &h.symmetry}) {
      std::transform(s->begin(), s->end(), s->begin(), ::tolower);
    }
    if (banner != "%%matrixmarket") fail("missing %%MatrixMarket banner");
    if (object != "matrix") fail("unsupported object '" + object + "'");
    if (h.format != "array" && h.format != "coordinate") {
      fail("unknown format '" + h.format + "'");
    }
    if (h.field != "real" && h.field != "complex" && h.field != "integer" &&
        h.field != "pattern") {
      fail("unknown field '" + h.field + "'");
    }
    if (h.symmetry != "general" && h.symmetry != "symmetric" &&
        h.symmetry != "skew-symmetric" && h.symmetry != "hermitian") {
      fail("unknown symmetry '" + h.symmetry + "'");
    }
    if (h.field == "pattern" && h.format == "array") {
      fail("pattern field requires coordinate format");
    }
    if (h.symmetry == "hermitian" && h.field != "complex") {
      fail("hermitian symmetry requires the complex field");
    }
    return h;
  }

  Index line_no() const { return line_no_; }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::ifstream in_;
  Index line_no_ = 0;
};

inline double parse_double(MmParser& p, std::istringstream& ss,
                           const char* what) {
  double v;
  if (!(ss >> v)) p.fail(std::string("expected ") + what);
  return v;
}

inline Matrix read_matrix_impl(const std::string& path) {
  MmParser p(path);
  const MmHeader h = p.read_header();
  const bool symmetric_like = h.symmetry != "general";

  std::string line;
  if (!p.next_content_line(line)) p.fail("missing size line");
  std::istringstream size_ss(line);
  long long rows = 0, cols = 0, entries = 0;
  if (!(size_ss >> rows >> cols)) p.fail("malformed size line");
  if (rows < 1 || cols < 1) p.fail("dimensions must be positive");
  if (symmetric_like && rows != cols) {
    p.fail("symmetry qualifiers require a square matrix");
  }

  Matrix a = Matrix::Zero(rows, cols);
  if (h.format == "coordinate") {
    if (!(size_ss >> entries)) p.fail("coordinate size line needs nnz");
    std::vector<std::vector<bool>> seen(
        static_cast<size_t>(rows), std::vector<bool>(static_cast<size_t>(cols)));
    for (long long e = 0; e < entries; ++e) {
      if (!p.next_content_line(line)) p.fail("unexpected end of entries");
      std::istringstream ss(line);
      long long i = 0, j = 0;
      if (!(ss >> i >> j)) p.fail("expected row and column indices");
      if (i < 1 || i > rows || j < 1 || j > cols) {
        p.fail("entry index out of bounds");
      }
      Complex v(1.0, 0.0);
      if (h.field == "complex") {
        const double re = parse_double(p, ss, "real part");
        const double im = parse_double(p, ss, "imaginary part");
        v = {re, im};
      } else if (h.field != "pattern") {
        v = {parse_double(p, ss, "value"), 0.0};
      }
      if (symmetric_like) {
        if (j > i) p.fail("symmetry qualifier misuse: upper-triangle entry");
        if (h.symmetry == "skew-symmetric" && i == j) {
          p.fail("symmetry qualifier misuse: diagonal entry in skew-symmetric");
        }
      }
      if (seen[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)]) {
        p.fail("duplicate entry");
      }
      seen[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)] = true;
      a(i - 1, j - 1) = v;
      if (symmetric_like && i != j) {
        if (h.symmetry == "symmetric") a(j - 1, i - 1) = v;
        if (h.symmetry == "hermitian") a(j - 1, i - 1) = std::conj(v);
        if (h.symmetry == "skew-symmetric") a(j - 1, i - 1) = -v;
      }
    }
  } else {
    // Array format: column-major dense values; with a symmetry qualifier
    // only the lower triangle is stored, column by column.
    std::vector<Complex> values;
    const long long expected =
        h.symmetry == "general"
            ? rows * cols
            : (h.symmetry == "skew-symmetric" ? rows * (rows - 1) / 2
                                              : rows * (rows + 1) / 2);
    values.reserve(static_cast<size_t>(expected));
    while (static_cast<long long>(values.size()) < expected) {
      if (!p.next_content_line(line)) p.fail("unexpected end of values");
      std::istringstream ss(line);
      double re;
      while (ss >> re) {
        if (h.field == "complex") {
          const double im = parse_double(p, ss, "imaginary part");
          values.emplace_back(re, im);
        } else {
          values.emplace_back(re, 0.0);
        }
        if (static_cast<long long>(values.size()) == expected) break;
      }
    }
    size_t idx = 0;
    if (h.symmetry == "general") {
      for (long long j = 0; j < cols; ++j) {
        for (long long i = 0; i < rows; ++i) a(i, j) = values[idx++];
      }
    } else {
      for (long long j = 0; j < cols; ++j) {
        const long long start = h.symmetry == "skew-symmetric" ? j + 1 : j;
        for (long long i = start; i < rows; ++i) {
          const Complex v = values[idx++];
          a(i, j) = v;
          if (i != j) {
            if (h.symmetry == "symmetric") a(j, i) = v;
            if (h.symmetry == "hermitian") a(j, i) = std::conj(v);
            if (h.symmetry == "skew-symmetric") a(j, i) = -v;
          }
        }
      }
    }
  }
  return a;
}

/// 17 significant digits: lossless decimal round trip for IEEE doubles.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

}  // namespace detail

/// Read a Matrix Market file (array or coordinate; real, complex, integer or
/// pattern field; symmetry qualifiers expanded) into a dense matrix.
inline Matrix read_matrix(const std::string& path) {
  return detail::read_matrix_impl(path);
}

/// Write a matrix: array format for dense mode, coordinate (nonzeros only)
/// for coordinate mode. Complex output is used only when needed.
inline void write_matrix(const Matrix& a, const std::string& path,
                         MatrixMarketMode mode) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open " + path + " for writing");
  const bool real = is_real(a);
  const char* field = real ? "real" : "complex";
  if (mode == MatrixMarketMode::dense) {
    out << "%%MatrixMarket matrix array " << field << " general\n";
    out << a.rows() << " " << a.cols() << "\n";
    for (Index j = 0; j < a.cols(); ++j) {
      for (Index i = 0; i < a.rows(); ++i) {
        out << detail::format_double(a(i, j).real());
        if (!real) out << " " << detail::format_double(a(i, j).imag());
        out << "\n";
      }
    }
  } else {
    out << "%%MatrixMarket matrix coordinate " << field << " general\n";
    out << a.rows() << " " << a.cols() << " " << nnz_exact(a) << "\n";
    for (Index j = 0; j < a.cols(); ++j) {
      for (Index i = 0; i < a.rows(); ++i) {
        if (a(i, j) == Complex(0.0, 0.0)) continue;
        out << (i + 1) << " " << (j + 1) << " "
            << detail::format_double(a(i, j).real());
        if (!real) out << " " << detail::format_double(a(i, j).imag());
        out << "\n";
      }
    }
  }
  if (!out) throw io_error("write failed for " + path);
}

/// Patterns serialize as coordinate integer files with value 1 per kept entry.
inline void write_pattern(const Pattern& z, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open " + path + " for writing");
  out << "%%MatrixMarket matrix coordinate integer general\n";
  out << z.rows() << " " << z.cols() << " " << z.nnz() << "\n";
  for (Index j = 0; j < z.cols(); ++j) {
    for (Index i = 0; i < z.rows(); ++i) {
      if (z(i, j)) out << (i + 1) << " " << (j + 1) << " 1\n";
    }
  }
  if (!out) throw io_error("write failed for " + path);
}

/// Read a pattern: the nonzero structure of any coordinate/array file.
inline Pattern read_pattern(const std::string& path) {
  const Matrix a = read_matrix(path);
  BoolArray mask(a.rows(), a.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      mask(i, j) = a(i, j) != Complex(0.0, 0.0);
    }
  }
  return Pattern(std::move(mask));
}

}  // namespace sparsix
