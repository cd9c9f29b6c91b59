#include "vlac/cli/matrix_market.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

namespace vlac::cli {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::vector<std::string> tokens(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

class LineReader {
 public:
  LineReader(std::string_view text, const std::string& path) : text_(text), path_(path) {}

  bool next(std::string_view& line) {
    if (pos_ >= text_.size()) return false;
    const auto end = text_.find('\n', pos_);
    line = text_.substr(pos_, end == std::string_view::npos ? std::string_view::npos : end - pos_);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos_ = end == std::string_view::npos ? text_.size() : end + 1;
    ++number_;
    return true;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(path_ + ":" + std::to_string(number_) + ": " + what);
  }

 private:
  std::string_view text_;
  const std::string& path_;
  std::size_t pos_ = 0;
  std::size_t number_ = 0;
};

BigInt parse_int(const std::string& t, const LineReader& r) {
  std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
  if (i == t.size() || !std::all_of(t.begin() + i, t.end(), [](unsigned char c) { return std::isdigit(c); })) {
    r.fail("'" + t + "' is not an integer");
  }
  return BigInt(t[0] == '+' ? t.substr(1) : t);
}

std::size_t parse_size(const std::string& t, const LineReader& r) {
  std::size_t v = 0;
  const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || p != t.data() + t.size()) r.fail("'" + t + "' is not a size");
  return v;
}

std::optional<std::uint64_t> modulus_comment(std::string_view line, const LineReader& r) {
  // "%%modulus=p" (spaces around '=' tolerated)
  std::string s;
  for (char c : line)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  s = lower(s);
  if (s.rfind("%%modulus", 0) != 0) return std::nullopt;
  std::string v = s.substr(9);
  if (!v.empty() && v[0] == '=') v.erase(0, 1);
  std::uint64_t p = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), p);
  if (v.empty() || ec != std::errc() || ptr != v.data() + v.size()) r.fail("bad modulus comment");
  return p;
}

}  // namespace

MatrixFile parse_matrix_market(std::string_view text, std::string path) {
  MatrixFile m;
  m.path = std::move(path);
  m.bytes.assign(text.begin(), text.end());
  LineReader r(text, m.path);

  std::string_view line;
  if (!r.next(line)) r.fail("empty file");
  const auto head = tokens(line);
  if (head.size() != 5 || head[0] != "%%MatrixMarket") r.fail("missing %%MatrixMarket header");
  if (lower(head[1]) != "matrix") r.fail("only 'matrix' objects are supported");
  const std::string format = lower(head[2]), field = lower(head[3]), symmetry = lower(head[4]);
  if (format == "coordinate") {
    m.coordinate = true;
  } else if (format == "array") {
    m.coordinate = false;
  } else {
    r.fail("unknown format '" + head[2] + "'");
  }
  if (field == "integer") {
    m.field = MatrixFile::Field::Integer;
  } else if (field == "pattern" && m.coordinate) {
    m.field = MatrixFile::Field::Pattern;
  } else if (field == "poly") {
    m.field = MatrixFile::Field::Poly;
  } else if (field == "real" || field == "complex") {
    r.fail(field + " matrices are not supported: entries must be exact integers");
  } else {
    r.fail("unsupported field '" + head[3] + "'");
  }
  const bool symmetric = symmetry == "symmetric", skew = symmetry == "skew-symmetric";
  if (!symmetric && !skew && symmetry != "general") r.fail("unsupported symmetry '" + head[4] + "'");
  if (skew && m.field == MatrixFile::Field::Pattern) r.fail("skew-symmetric pattern matrix");

  // comments, then the size line
  std::vector<std::string> size;
  while (r.next(line)) {
    if (!line.empty() && line[0] == '%') {
      if (auto p = modulus_comment(line, r)) {
        if (m.modulus && *m.modulus != *p) r.fail("conflicting modulus comments");
        m.modulus = p;
      }
      continue;
    }
    size = tokens(line);
    if (!size.empty()) break;
  }
  if (size.size() != (m.coordinate ? 3u : 2u)) r.fail("bad size line");
  m.rows = parse_size(size[0], r);
  m.cols = parse_size(size[1], r);
  if ((symmetric || skew) && m.rows != m.cols) r.fail("symmetric matrix must be square");
  const std::size_t declared = m.coordinate ? parse_size(size[2], r) : 0;

  const auto arity = [&](std::size_t n) {
    if (m.field == MatrixFile::Field::Poly) return n >= 1;
    return n == (m.field == MatrixFile::Field::Pattern ? 0u : 1u);
  };

  std::set<std::pair<std::size_t, std::size_t>> seen;
  const auto add = [&](std::size_t i, std::size_t j, std::vector<BigInt> vals) {
    if (skew && i == j) {
      if (std::any_of(vals.begin(), vals.end(), [](const BigInt& x) { return x != 0; }))
        r.fail("skew-symmetric matrix with a nonzero diagonal");
      return;
    }
    if (m.coordinate && !seen.insert({i, j}).second) r.fail("duplicate entry");
    if ((symmetric || skew) && i != j) {
      auto mirrored = vals;
      if (skew)
        for (auto& x : mirrored) x = -x;
      m.entries.push_back({j, i, std::move(mirrored)});
    }
    m.entries.push_back({i, j, std::move(vals)});
  };

  std::size_t count = 0;
  // array files list columns in order (lower triangle only when symmetric)
  std::size_t ai = 0, aj = 0;
  const auto array_start = [&](std::size_t j) { return symmetric ? j : skew ? j + 1 : 0; };
  if (!m.coordinate) ai = array_start(0);
  while (r.next(line)) {
    if (!line.empty() && line[0] == '%') continue;
    auto t = tokens(line);
    if (t.empty()) continue;
    std::size_t i, j;
    std::vector<BigInt> vals;
    if (m.coordinate) {
      if (t.size() < 2 || !arity(t.size() - 2)) r.fail("bad entry line");
      i = parse_size(t[0], r);
      j = parse_size(t[1], r);
      if (i == 0 || j == 0 || i > m.rows || j > m.cols) r.fail("index out of range");
      --i, --j;
      if ((symmetric || skew) && i < j) r.fail("entry above the diagonal in a symmetric file");
      for (std::size_t k = 2; k < t.size(); ++k) vals.push_back(parse_int(t[k], r));
      if (m.field == MatrixFile::Field::Pattern) vals.push_back(1);
    } else {
      if (!arity(t.size())) r.fail("bad entry line");
      while (aj < m.cols && ai >= m.rows) ai = array_start(++aj);
      if (aj >= m.cols) r.fail("more entries than the size line declares");
      i = ai++;
      j = aj;
      for (const auto& x : t) vals.push_back(parse_int(x, r));
    }
    add(i, j, std::move(vals));
    ++count;
  }
  if (m.coordinate) {
    if (count != declared) r.fail("expected " + std::to_string(declared) + " entries, found " + std::to_string(count));
  } else {
    while (aj < m.cols && ai >= m.rows) ai = array_start(++aj);
    if (aj < m.cols) r.fail("fewer entries than the size line declares");
  }
  return m;
}

MatrixFile read_matrix_market(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open");
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_matrix_market(text, path);
}

la::AnyMatrix to_field_matrix(const MatrixFile& m, const ff::PrimeField& F) {
  if (m.field == MatrixFile::Field::Poly) throw ParseError(m.path + ": polynomial entries where a field matrix is expected");
  if (m.coordinate) {
    std::vector<la::Triplet> t;
    t.reserve(m.entries.size());
    for (const auto& e : m.entries) t.push_back({e.row, e.col, lift::reduce(e.values[0], F)});
    return la::SparseMatrix::from_triplets(F, m.rows, m.cols, std::move(t));
  }
  la::DenseMatrix A(F, m.rows, m.cols);
  for (const auto& e : m.entries) A(e.row, e.col) = lift::reduce(e.values[0], F);
  return A;
}

lift::IntMatrix to_int_matrix(const MatrixFile& m) {
  if (m.field == MatrixFile::Field::Poly) throw ParseError(m.path + ": polynomial entries where an integer matrix is expected");
  lift::IntMatrix A(m.rows, m.cols);
  for (const auto& e : m.entries) A(e.row, e.col) = e.values[0];
  return A;
}

lift::PolyMatrix to_poly_matrix(const MatrixFile& m, const ff::PrimeField& F) {
  lift::PolyMatrix A(F, m.rows, m.cols);
  for (const auto& e : m.entries) {
    ff::Vec c;
    for (const auto& x : e.values) c.push_back(lift::reduce(x, F));
    A(e.row, e.col) = ff::Poly(std::move(c));
  }
  return A;
}

namespace {

std::string header(const char* format, const char* field, std::uint64_t modulus) {
  std::string s = std::string("%%MatrixMarket matrix ") + format + " " + field + " general\n";
  if (modulus) s += "%%modulus=" + std::to_string(modulus) + "\n";
  return s;
}

}  // namespace

std::string to_matrix_market(const la::DenseMatrix& A) {
  std::string s = header("array", "integer", A.field().modulus());
  s += std::to_string(A.rows()) + " " + std::to_string(A.cols()) + "\n";
  for (std::size_t j = 0; j < A.cols(); ++j)
    for (std::size_t i = 0; i < A.rows(); ++i) s += std::to_string(A(i, j).value) + "\n";
  return s;
}

std::string to_matrix_market(const la::SparseMatrix& A) {
  std::string s = header("coordinate", "integer", A.field().modulus());
  s += std::to_string(A.rows()) + " " + std::to_string(A.cols()) + " " + std::to_string(A.nnz()) + "\n";
  for (const auto& t : A.triplets())
    s += std::to_string(t.row + 1) + " " + std::to_string(t.col + 1) + " " + std::to_string(t.value.value) + "\n";
  return s;
}

std::string to_matrix_market(const lift::IntMatrix& A) {
  std::string s = header("array", "integer", 0);
  s += std::to_string(A.rows()) + " " + std::to_string(A.cols()) + "\n";
  for (std::size_t j = 0; j < A.cols(); ++j)
    for (std::size_t i = 0; i < A.rows(); ++i) s += A(i, j).str() + "\n";
  return s;
}

std::string to_matrix_market(const lift::PolyMatrix& A) {
  std::string s = header("coordinate", "poly", A.field().modulus());
  std::string body;
  std::size_t nnz = 0;
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t j = 0; j < A.cols(); ++j) {
      if (A(i, j).is_zero()) continue;
      ++nnz;
      body += std::to_string(i + 1) + " " + std::to_string(j + 1);
      for (auto c : A(i, j).coeffs()) body += " " + std::to_string(c.value);
      body += "\n";
    }
  }
  return s + std::to_string(A.rows()) + " " + std::to_string(A.cols()) + " " + std::to_string(nnz) + "\n" + body;
}

}  // namespace vlac::cli
