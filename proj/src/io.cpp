// src/io.cpp

// Copyright 2026  The ntd Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "ntd/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "ntd/errors.hpp"
#include "ntd/tfb.hpp"

namespace ntd {
namespace io {

namespace {

struct Token {
  std::string text;
  std::size_t line;
};

// Whitespace tokenizer that remembers line numbers and skips comments.
class Tokens {
 public:
  explicit Tokens(std::istream& in) : in_(in) {}

  std::optional<Token> next() {
    while (pos_ >= current_.size()) {
      if (!std::getline(in_, current_)) return std::nullopt;
      ++line_;
      pos_ = 0;
      const auto first = current_.find_first_not_of(" \t\r");
      if (first != std::string::npos && current_[first] == '#')
        current_.clear();
    }
    const auto start = current_.find_first_not_of(" \t\r", pos_);
    if (start == std::string::npos) {
      pos_ = current_.size();
      return next();
    }
    auto end = current_.find_first_of(" \t\r", start);
    if (end == std::string::npos) end = current_.size();
    pos_ = end;
    return Token{current_.substr(start, end - start), line_};
  }

  Token expect(std::string_view what) {
    auto t = next();
    if (!t) throw ParseError("unexpected end of input, expected " +
                             std::string(what), line_);
    return *t;
  }

  std::size_t line() const { return line_; }

 private:
  std::istream& in_;
  std::string current_;
  std::size_t pos_ = 0;
  std::size_t line_ = 0;
};

double parse_double(const Token& t) {
  double v = 0.0;
  const char* first = t.text.data();
  const char* last = first + t.text.size();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last)
    throw ParseError("invalid number '" + t.text + "'", t.line);
  if (!std::isfinite(v))
    throw ParseError("non-finite value '" + t.text + "'", t.line);
  return v;
}

double parse_nonnegative(const Token& t) {
  const double v = parse_double(t);
  if (v < 0.0) throw ParseError("negative value '" + t.text + "'", t.line);
  return v;
}

Index parse_extent(const Token& t) {
  long long v = 0;
  auto [ptr, ec] =
      std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
  if (ec != std::errc() || ptr != t.text.data() + t.text.size() || v <= 0)
    throw ParseError("invalid dimension '" + t.text + "'", t.line);
  return static_cast<Index>(v);
}

void expect_word(Tokens& tokens, std::string_view word) {
  const Token t = tokens.expect(word);
  if (t.text != word)
    throw ParseError("expected '" + std::string(word) + "', got '" + t.text +
                         "'",
                     t.line);
}

void expect_end(Tokens& tokens) {
  if (auto extra = tokens.next())
    throw ParseError("trailing data '" + extra->text + "'", extra->line);
}

template <typename Fn>
auto with_file(const std::filesystem::path& path, Fn&& fn) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return fn(in);
  } catch (const ParseError& e) {
    throw e.with_context(path.string());
  }
}

template <typename Fn>
void to_file(const std::filesystem::path& path, Fn&& fn) {
  std::ofstream out(path);
  if (!out) throw ArgumentError("cannot write " + path.string());
  fn(out);
  if (!out) throw ArgumentError("write failed for " + path.string());
}

std::ostream& precise(std::ostream& out) {
  out.precision(17);
  return out;
}

}  // namespace

Tensor3 read_tensor(std::istream& in) {
  Tokens tokens(in);
  expect_word(tokens, "ntd-t3");
  Dims3 d;
  d.j = parse_extent(tokens.expect("J"));
  d.k = parse_extent(tokens.expect("K"));
  d.l = parse_extent(tokens.expect("L"));
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(d.size()));
  for (Index n = 0; n < d.size(); ++n)
    values.push_back(parse_nonnegative(tokens.expect("tensor value")));
  expect_end(tokens);
  return Tensor3::from_row_major(d, values);
}

Tensor3 read_tensor(const std::filesystem::path& path) {
  return with_file(path, [](std::istream& in) { return read_tensor(in); });
}

void write_tensor(std::ostream& out, const Tensor3& t) {
  const Dims3& d = t.dims();
  precise(out) << "ntd-t3 " << d.j << ' ' << d.k << ' ' << d.l << '\n';
  for (Index j = 0; j < d.j; ++j) {
    for (Index k = 0; k < d.k; ++k) {
      for (Index l = 0; l < d.l; ++l) out << (l ? " " : "") << t(j, k, l);
      out << '\n';
    }
  }
}

void write_tensor(const std::filesystem::path& path, const Tensor3& t) {
  to_file(path, [&](std::ostream& out) { write_tensor(out, t); });
}

Matrix read_matrix(std::istream& in, bool nonnegative) {
  Tokens tokens(in);
  expect_word(tokens, "ntd-mat");
  const Index rows = parse_extent(tokens.expect("rows"));
  const Index cols = parse_extent(tokens.expect("cols"));
  Matrix m(rows, cols);
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c) {
      const Token t = tokens.expect("matrix value");
      m(r, c) = nonnegative ? parse_nonnegative(t) : parse_double(t);
    }
  expect_end(tokens);
  return m;
}

Matrix read_matrix(const std::filesystem::path& path, bool nonnegative) {
  return with_file(path, [&](std::istream& in) {
    return read_matrix(in, nonnegative);
  });
}

void write_matrix(std::ostream& out, const Matrix& m) {
  precise(out) << "ntd-mat " << m.rows() << ' ' << m.cols() << '\n';
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) out << (c ? " " : "") << m(r, c);
    out << '\n';
  }
}

void write_matrix(const std::filesystem::path& path, const Matrix& m) {
  to_file(path, [&](std::ostream& out) { write_matrix(out, m); });
}

Spectrogram read_spectrogram(std::istream& in) {
  Tokens tokens(in);
  expect_word(tokens, "ntd-spec");
  expect_word(tokens, "v1");
  const Index bands = parse_extent(tokens.expect("bands"));
  const Index frames = parse_extent(tokens.expect("frames"));
  const Token hop_token = tokens.expect("hop_seconds");
  Spectrogram s{Matrix(bands, frames), parse_double(hop_token)};
  if (!(s.hop_seconds > 0.0))
    throw ParseError("hop_seconds must be positive", hop_token.line);
  for (Index b = 0; b < bands; ++b)
    for (Index f = 0; f < frames; ++f)
      s.data(b, f) = parse_nonnegative(tokens.expect("spectrogram value"));
  expect_end(tokens);
  return s;
}

Spectrogram read_spectrogram(const std::filesystem::path& path) {
  return with_file(path,
                   [](std::istream& in) { return read_spectrogram(in); });
}

void write_spectrogram(std::ostream& out, const Spectrogram& s) {
  precise(out) << "ntd-spec v1 " << s.bands() << ' ' << s.frames() << ' '
               << s.hop_seconds << '\n';
  for (Index b = 0; b < s.bands(); ++b) {
    for (Index f = 0; f < s.frames(); ++f)
      out << (f ? " " : "") << s.data(b, f);
    out << '\n';
  }
}

void write_spectrogram(const std::filesystem::path& path,
                       const Spectrogram& s) {
  to_file(path, [&](std::ostream& out) { write_spectrogram(out, s); });
}

std::vector<double> read_times(std::istream& in) {
  Tokens tokens(in);
  std::vector<double> times;
  while (auto t = tokens.next()) {
    const double v = parse_double(*t);
    if (!times.empty() && !(v > times.back()))
      throw ParseError("times must be strictly increasing, got " + t->text +
                           " after " + std::to_string(times.back()),
                       t->line);
    times.push_back(v);
  }
  return times;
}

std::vector<double> read_times(const std::filesystem::path& path) {
  return with_file(path, [](std::istream& in) { return read_times(in); });
}

void write_times(std::ostream& out, const std::vector<double>& times) {
  precise(out);
  for (double t : times) out << t << '\n';
}

void write_times(const std::filesystem::path& path,
                 const std::vector<double>& times) {
  to_file(path, [&](std::ostream& out) { write_times(out, times); });
}

}  // namespace io
}  // namespace ntd
