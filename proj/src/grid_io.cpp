#include "fcgrid/grid_io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "fcgrid/errors.hpp"

namespace fcgrid {

namespace {

struct Token {
  std::string_view text;
  std::size_t line = 0;
  std::size_t column = 0;
};

class Tokenizer {
 public:
  explicit Tokenizer(std::string_view text) : text_(text) {}

  std::optional<Token> next() {
    skip_blank();
    if (pos_ >= text_.size()) return std::nullopt;
    Token tok{{}, line_, column_};
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !is_space(text_[pos_]) && text_[pos_] != '#') advance();
    tok.text = text_.substr(start, pos_ - start);
    return tok;
  }

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_blank() {
    while (pos_ < text_.size()) {
      if (text_[pos_] == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (is_space(text_[pos_])) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

class DocumentParser {
 public:
  explicit DocumentParser(std::string_view text) : tokens_(text) {}

  GridDocument parse() {
    GridDocument doc;
    const std::size_t k = count("grid count");
    if (k == 0) fail("grid count must be at least 1", last_);
    doc.grids.grids.resize(k);
    for (std::size_t g = 0; g < k; ++g) {
      const std::string name = "grid " + std::to_string(g + 1);
      const std::size_t n = count(name + " length");
      if (n == 0) fail(name + " is empty", last_);
      std::vector<double>& values = doc.grids.grids[g].values;
      values.reserve(n);
      for (std::size_t t = 0; t < n; ++t) {
        const Token tok = expect(name + ": expected " + std::to_string(n) + " values, found " + std::to_string(t));
        const double v = number(tok);
        if (!values.empty() && v < values.back())
          fail(name + " not sorted at position " + std::to_string(t), tok);
        values.push_back(v);
      }
    }

    auto tok = tokens_.next();
    if (!tok) return doc;
    if (tok->text != "sigma") fail("unexpected token '" + std::string(tok->text) + "'", *tok);
    doc.sigma.emplace(k);
    for (std::size_t g = 0; g < k; ++g) {
      const std::string name = "sigma for grid " + std::to_string(g + 1);
      const std::size_t n = count(name + " length");
      const std::size_t expected = doc.grids.grids[g].size();
      if (n != expected)
        fail(name + " has " + std::to_string(n) + " values, grid has " + std::to_string(expected), last_);
      std::vector<double>& column = (*doc.sigma)[g];
      column.reserve(n);
      for (std::size_t t = 0; t < n; ++t) {
        const Token vt = expect(name + ": expected " + std::to_string(n) + " values, found " + std::to_string(t));
        const double v = number(vt);
        if (v < 0.0) fail(name + " is negative at position " + std::to_string(t), vt);
        column.push_back(v);
      }
    }
    if (auto extra = tokens_.next()) fail("unexpected token '" + std::string(extra->text) + "'", *extra);
    return doc;
  }

 private:
  [[noreturn]] void fail(const std::string& message, const Token& at) { throw ParseError(message, at.line, at.column); }

  Token expect(const std::string& what) {
    auto tok = tokens_.next();
    if (!tok) throw ParseError(what + " before end of input", tokens_.line(), tokens_.column());
    last_ = *tok;
    return *tok;
  }

  std::size_t count(const std::string& what) {
    const Token tok = expect("expected " + what);
    std::size_t value = 0;
    const char* end = tok.text.data() + tok.text.size();
    auto [ptr, ec] = std::from_chars(tok.text.data(), end, value);
    if (ec != std::errc{} || ptr != end) fail("malformed " + what + " '" + std::string(tok.text) + "'", tok);
    return value;
  }

  double number(const Token& tok) {
    double value = 0.0;
    const char* end = tok.text.data() + tok.text.size();
    auto [ptr, ec] = std::from_chars(tok.text.data(), end, value);
    if (ec != std::errc{} || ptr != end) fail("non-numeric token '" + std::string(tok.text) + "'", tok);
    if (!std::isfinite(value)) fail("non-finite value '" + std::string(tok.text) + "'", tok);
    return value;
  }

  Tokenizer tokens_;
  Token last_;
};

void append_double(std::string& out, double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, ptr);
}

void append_columns(std::string& out, const std::vector<std::vector<double>>& columns) {
  for (const auto& column : columns) {
    out += std::to_string(column.size());
    out += '\n';
    for (std::size_t t = 0; t < column.size(); ++t) {
      if (t) out += ' ';
      append_double(out, column[t]);
    }
    out += '\n';
  }
}

// Little-endian fixed-width encoding.
class ByteWriter {
 public:
  void u8(std::uint8_t v) { bytes_.push_back(v); }
  void u64(std::uint64_t v) {
    for (int b = 0; b < 8; ++b) bytes_.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
  }
  void i64(std::int64_t v) { u64(static_cast<std::uint64_t>(v)); }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void raw(const char* data, std::size_t n) { bytes_.insert(bytes_.end(), data, data + n); }

  std::vector<std::uint8_t> take() { return std::move(bytes_); }

 private:
  std::vector<std::uint8_t> bytes_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t remaining() const noexcept { return bytes_.size() - pos_; }

  std::uint8_t u8(const char* what) {
    need(1, what);
    return bytes_[pos_++];
  }
  std::uint64_t u64(const char* what) {
    need(8, what);
    std::uint64_t v = 0;
    for (int b = 0; b < 8; ++b) v |= static_cast<std::uint64_t>(bytes_[pos_++]) << (8 * b);
    return v;
  }
  std::int64_t i64(const char* what) { return static_cast<std::int64_t>(u64(what)); }
  double f64(const char* what) { return std::bit_cast<double>(u64(what)); }

 private:
  void need(std::size_t n, const char* what) {
    if (remaining() < n)
      throw DecodeError(DecodeError::Kind::truncated, std::string("snapshot truncated reading ") + what);
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

GridDocument parse_document(std::string_view text) { return DocumentParser(text).parse(); }

GridSet parse_gridset(std::string_view text) { return parse_document(text).grids; }

std::string write_document(const GridDocument& doc) {
  std::string out = std::to_string(doc.grids.k()) + "\n";
  std::vector<std::vector<double>> columns;
  columns.reserve(doc.grids.k());
  for (const EnergyGrid& g : doc.grids.grids) columns.push_back(g.values);
  append_columns(out, columns);
  if (doc.sigma) {
    out += "sigma\n";
    append_columns(out, *doc.sigma);
  }
  return out;
}

std::string write_gridset(const GridSet& grids) { return write_document(GridDocument{grids, std::nullopt}); }

std::vector<std::uint8_t> encode_cascade(const CascadeGrid& cascade) {
  ByteWriter w;
  w.raw(snapshot_magic, sizeof snapshot_magic);
  w.u8(snapshot_version);
  w.u64(cascade.k());
  for (std::size_t i = 0; i < cascade.k(); ++i)
    w.u64(i < cascade.grid_sizes().size() ? cascade.grid_sizes()[i] : 0);
  for (const CascadeLevel& level : cascade.levels()) {
    w.u64(level.size());
    for (std::size_t t = 0; t < level.size(); ++t) {
      w.f64(level.values[t]);
      w.i64(level.p1[t]);
      w.i64(level.p2[t]);
    }
  }
  return w.take();
}

CascadeGrid decode_cascade_unchecked(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < sizeof snapshot_magic || std::memcmp(bytes.data(), snapshot_magic, sizeof snapshot_magic) != 0)
    throw DecodeError(DecodeError::Kind::bad_magic, "not a cascade snapshot (bad magic)");
  ByteReader r(bytes.subspan(sizeof snapshot_magic));
  const std::uint8_t version = r.u8("version");
  if (version != snapshot_version)
    throw DecodeError(DecodeError::Kind::unsupported_version,
                      "unsupported snapshot version " + std::to_string(static_cast<unsigned>(version)));

  const std::uint64_t k = r.u64("level count");
  if (k > r.remaining() / 8) throw DecodeError(DecodeError::Kind::truncated, "snapshot truncated reading grid sizes");
  std::vector<std::size_t> sizes(k);
  for (auto& s : sizes) s = r.u64("grid size");

  std::vector<CascadeLevel> levels(k);
  for (CascadeLevel& level : levels) {
    const std::uint64_t n = r.u64("entry count");
    if (n > r.remaining() / entry_width)
      throw DecodeError(DecodeError::Kind::truncated, "snapshot truncated reading level entries");
    level.values.resize(n);
    level.p1.resize(n);
    level.p2.resize(n);
    for (std::size_t t = 0; t < n; ++t) {
      level.values[t] = r.f64("entry value");
      level.p1[t] = r.i64("entry p1");
      level.p2[t] = r.i64("entry p2");
    }
  }
  if (r.remaining() != 0)
    throw DecodeError(DecodeError::Kind::malformed,
                      "snapshot has " + std::to_string(r.remaining()) + " trailing bytes");
  return CascadeGrid(std::move(levels), std::move(sizes));
}

CascadeGrid decode_cascade(std::span<const std::uint8_t> bytes) {
  CascadeGrid cascade = decode_cascade_unchecked(bytes);
  std::vector<Violation> violations;
  for (std::size_t i = 0; i < cascade.k() && violations.empty(); ++i)
    for (std::size_t t = 0; t < cascade.levels()[i].size(); ++t)
      if (!std::isfinite(cascade.levels()[i].values[t])) {
        violations.push_back({static_cast<std::ptrdiff_t>(i), static_cast<std::ptrdiff_t>(t), "finite",
                              "value is not finite"});
        break;
      }
  std::optional<GridSet> grids;
  if (violations.empty()) {
    grids = recover_grids(cascade);
    if (!grids)
      violations.push_back({Violation::none, Violation::none, "promotion",
                            "promoted values missing; original grids cannot be recovered"});
  }
  if (violations.empty()) violations = validate_structure(cascade, *grids);
  if (!violations.empty()) {
    std::string message = "snapshot fails validation: " + violations.front().to_string();
    throw DecodeError(DecodeError::Kind::invariant_violation, std::move(message), std::move(violations));
  }
  return cascade;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw std::runtime_error("error reading '" + path + "'");
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw std::runtime_error("error writing '" + path + "'");
}

}  // namespace fcgrid
