#include "relbound/mmio.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace relbound {

namespace {

enum class Format { Array, Coordinate };
enum class Field { Real, Integer, Complex };
enum class Symmetry { General, Symmetric, Hermitian };

// Line/column-tracking tokenizer over a Matrix Market stream.
class Parser {
 public:
  Parser(std::istream& in, const std::string& name) : in_(in), name_(name) {}

  [[noreturn]] void error(const std::string& what, std::size_t column) const {
    std::ostringstream os;
    os << name_ << ":" << line_no_ << ":" << column << ": " << what;
    fail(ErrorCode::ParseError, os.str());
  }

  // Next non-comment, non-empty line.
  bool next_line() {
    while (std::getline(in_, line_)) {
      ++line_no_;
      pos_ = 0;
      skip_space();
      if (pos_ >= line_.size()) continue;
      if (line_[pos_] == '%') continue;
      return true;
    }
    return false;
  }

  bool header_line() {
    if (!std::getline(in_, line_)) return false;
    ++line_no_;
    pos_ = 0;
    return true;
  }

  std::string token() {
    skip_space();
    if (pos_ >= line_.size()) error("unexpected end of line", pos_ + 1);
    const std::size_t start = pos_;
    while (pos_ < line_.size() && !std::isspace(static_cast<unsigned char>(line_[pos_])))
      ++pos_;
    return line_.substr(start, pos_ - start);
  }

  bool at_line_end() {
    skip_space();
    return pos_ >= line_.size();
  }

  double number() {
    skip_space();
    const std::size_t start = pos_;
    const std::string tok = token();
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size())
      error("expected a number, got '" + tok + "'", start + 1);
    return v;
  }

  std::size_t positive_integer() {
    skip_space();
    const std::size_t start = pos_;
    const double v = number();
    if (v < 1.0 || v != std::floor(v))
      error("expected a positive integer", start + 1);
    return static_cast<std::size_t>(v);
  }

  std::size_t column() const { return pos_ + 1; }
  const std::string& raw_line() const { return line_; }

 private:
  void skip_space() {
    while (pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos_])))
      ++pos_;
  }

  std::istream& in_;
  std::string name_;
  std::string line_;
  std::size_t line_no_ = 0;
  std::size_t pos_ = 0;
};

cxd read_value(Parser& p, Field field) {
  const double re = p.number();
  if (field == Field::Complex) return cxd(re, p.number());
  return cxd(re, 0.0);
}

}  // namespace

Matrix read_matrix(std::istream& in, const std::string& name) {
  Parser p(in, name);
  if (!p.header_line()) p.error("empty file", 1);

  std::istringstream header(p.raw_line());
  std::string banner, object, format_s, field_s, symmetry_s;
  header >> banner >> object >> format_s >> field_s >> symmetry_s;
  if (banner != "%%MatrixMarket" || object != "matrix")
    p.error("missing %%MatrixMarket matrix banner", 1);

  Format format;
  if (format_s == "array") format = Format::Array;
  else if (format_s == "coordinate") format = Format::Coordinate;
  else p.error("unsupported format '" + format_s + "'", 1);

  Field field;
  if (field_s == "real") field = Field::Real;
  else if (field_s == "integer") field = Field::Integer;
  else if (field_s == "complex") field = Field::Complex;
  else p.error("unsupported field '" + field_s + "'", 1);

  Symmetry symmetry;
  if (symmetry_s == "general") symmetry = Symmetry::General;
  else if (symmetry_s == "symmetric") symmetry = Symmetry::Symmetric;
  else if (symmetry_s == "hermitian") symmetry = Symmetry::Hermitian;
  else p.error("unsupported symmetry '" + symmetry_s + "'", 1);

  if (!p.next_line()) p.error("missing size line", 1);
  const std::size_t rows = p.positive_integer();
  const std::size_t cols = p.positive_integer();

  if (symmetry != Symmetry::General && rows != cols)
    p.error("symmetric/hermitian matrices must be square", 1);

  Matrix m(rows, cols);
  auto mirror = [&](std::size_t i, std::size_t j, cxd v) {
    m(i, j) = v;
    if (i != j && symmetry != Symmetry::General)
      m(j, i) = symmetry == Symmetry::Hermitian ? std::conj(v) : v;
  };

  if (format == Format::Array) {
    for (std::size_t j = 0; j < cols; ++j) {
      const std::size_t row_start = symmetry == Symmetry::General ? 0 : j;
      for (std::size_t i = row_start; i < rows; ++i) {
        if (!p.next_line()) p.error("missing matrix entries", 1);
        const cxd v = read_value(p, field);
        if (symmetry == Symmetry::Hermitian && i == j && v.imag() != 0.0)
          fail(ErrorCode::SymmetryViolation,
               name + ": hermitian diagonal entry has nonzero imaginary part");
        mirror(i, j, v);
        if (!p.at_line_end()) p.error("trailing data on entry line", p.column());
      }
    }
  } else {
    const std::size_t nnz = p.positive_integer();
    for (std::size_t e = 0; e < nnz; ++e) {
      if (!p.next_line()) p.error("missing coordinate entries", 1);
      const std::size_t i = p.positive_integer();
      const std::size_t j = p.positive_integer();
      if (i > rows || j > cols) p.error("index out of bounds", 1);
      const cxd v = read_value(p, field);
      if (symmetry != Symmetry::General && j > i)
        fail(ErrorCode::SymmetryViolation,
             name + ": declared-" +
                 (symmetry == Symmetry::Hermitian ? std::string("hermitian")
                                                  : std::string("symmetric")) +
                 " file stores an upper-triangle entry");
      if (symmetry == Symmetry::Hermitian && i == j && v.imag() != 0.0)
        fail(ErrorCode::SymmetryViolation,
             name + ": hermitian diagonal entry has nonzero imaginary part");
      mirror(i - 1, j - 1, v);
      if (!p.at_line_end()) p.error("trailing data on entry line", p.column());
    }
  }
  return m;
}

Matrix read_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  return read_matrix(in, path);
}

namespace {

void print_value(std::ostream& out, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out << buf;
}

bool exactly_hermitian(const Matrix& m) {
  if (!m.is_square()) return false;
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i <= j; ++i)
      if (m(i, j) != std::conj(m(j, i))) return false;
  return true;
}

bool has_imaginary(const Matrix& m) {
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (m(i, j).imag() != 0.0) return true;
  return false;
}

}  // namespace

void write_matrix(std::ostream& out, const Matrix& m) {
  const bool hermitian = exactly_hermitian(m);
  const bool complex_field = has_imaginary(m) || hermitian;
  out << "%%MatrixMarket matrix array "
      << (complex_field ? "complex" : "real") << " "
      << (hermitian ? "hermitian" : "general") << "\n";
  out << m.rows() << " " << m.cols() << "\n";
  for (std::size_t j = 0; j < m.cols(); ++j) {
    const std::size_t row_start = hermitian ? j : 0;
    for (std::size_t i = row_start; i < m.rows(); ++i) {
      print_value(out, m(i, j).real());
      if (complex_field) {
        out << " ";
        print_value(out, m(i, j).imag());
      }
      out << "\n";
    }
  }
}

void write_matrix(const std::string& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::IoError, "cannot open " + path + " for writing");
  write_matrix(out, m);
  if (!out) fail(ErrorCode::IoError, "write failed for " + path);
}

}  // namespace relbound
