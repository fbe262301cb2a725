#include "hurwitz/core.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <sstream>

namespace hurwitz {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  std::int64_t sum = 0;
  for (int part : parts_) {
    if (part < 1) throw DatumError(DatumError::Kind::Syntax, "partition entries must be positive");
    sum += part;
    if (sum > kMaxDegree) throw DatumError(DatumError::Kind::OutOfRange, "partition sum exceeds supported degree");
  }
  std::sort(parts_.begin(), parts_.end(), std::greater<>());
  n_ = static_cast<int>(sum);
}

std::string Partition::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < parts_.size();) {
    std::size_t j = i;
    while (j < parts_.size() && parts_[j] == parts_[i]) ++j;
    if (i != 0) out << ',';
    out << parts_[i];
    if (j - i > 1) out << '^' << (j - i);
    i = j;
  }
  return out.str();
}

int rh_genus(std::span<const Partition> partitions, int n) {
  if (n < 1) throw DatumError(DatumError::Kind::OutOfRange, "degree must be positive");
  std::int64_t parts = 0;
  for (const auto& p : partitions) {
    if (p.n() != n) throw DatumError(DatumError::Kind::InconsistentSum, "partitions have different sums");
    if (p.trivial()) throw DatumError(DatumError::Kind::TrivialPartition, "trivial partition (1^n) in datum");
    parts += p.size();
  }
  const std::int64_t q = static_cast<std::int64_t>(partitions.size());
  const std::int64_t twice_g = (q - 2) * n + 2 - parts;
  if (twice_g < 0 || twice_g % 2 != 0) {
    throw DatumError(DatumError::Kind::BadGenus,
                     "Riemann-Hurwitz gives 2g = " + std::to_string(twice_g) + ": not a branch datum");
  }
  return static_cast<int>(twice_g / 2);
}

int rh_genus(std::span<const Partition> partitions) {
  if (partitions.empty()) throw DatumError(DatumError::Kind::OutOfRange, "cannot infer n from an empty datum");
  return rh_genus(partitions, partitions.front().n());
}

BranchDatum BranchDatum::make(std::vector<Partition> partitions, int n, std::optional<int> g) {
  const int genus = rh_genus(partitions, n);
  if (g && *g != genus) {
    throw DatumError(DatumError::Kind::BadGenus, "stated g=" + std::to_string(*g) +
                                                     " but Riemann-Hurwitz forces g=" + std::to_string(genus));
  }
  std::sort(partitions.begin(), partitions.end(), canonical_before);
  BranchDatum d;
  d.partitions_ = std::move(partitions);
  d.n_ = n;
  d.g_ = genus;
  return d;
}

BranchDatum BranchDatum::make(std::vector<Partition> partitions, std::optional<int> g) {
  if (partitions.empty()) throw DatumError(DatumError::Kind::OutOfRange, "cannot infer n from an empty datum");
  const int n = partitions.front().n();
  return make(std::move(partitions), n, g);
}

bool datum_before(const BranchDatum& a, const BranchDatum& b) {
  if (a.q() != b.q()) return a.q() < b.q();
  const auto& pa = a.partitions();
  const auto& pb = b.partitions();
  return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end(), canonical_before);
}

namespace {

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= text_.size();
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool accept(std::string_view word) {
    skip_ws();
    if (text_.substr(pos_, word.size()) == word) {
      pos_ += word.size();
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  bool peek_int() {
    skip_ws();
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }
  std::int64_t integer() {
    skip_ws();
    std::int64_t value = 0;
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec == std::errc::result_out_of_range) {
      throw DatumError(DatumError::Kind::OutOfRange, "integer out of range");
    }
    if (ec != std::errc() || ptr == begin) fail("expected integer");
    pos_ += static_cast<std::size_t>(ptr - begin);
    if (value > kMaxDegree) throw DatumError(DatumError::Kind::OutOfRange, "integer exceeds supported range");
    return value;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw DatumError(DatumError::Kind::Syntax, msg + " at offset " + std::to_string(pos_));
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

Partition read_partition(Lexer& lex) {
  std::vector<int> parts;
  std::int64_t sum = 0;
  do {
    const std::int64_t value = lex.integer();
    std::int64_t count = 1;
    if (lex.accept('^')) count = lex.integer();
    if (value < 1) lex.fail("partition entries must be positive");
    if (count < 1) lex.fail("repetition count must be positive");
    sum += value * count;
    if (sum > kMaxDegree) throw DatumError(DatumError::Kind::OutOfRange, "partition sum exceeds supported degree");
    parts.insert(parts.end(), static_cast<std::size_t>(count), static_cast<int>(value));
  } while (lex.accept(','));
  return Partition(std::move(parts));
}

}  // namespace

Partition parse_partition(std::string_view text) {
  Lexer lex(text);
  const bool paren = lex.accept('(');
  Partition p = read_partition(lex);
  if (paren) lex.expect(')');
  if (!lex.done()) lex.fail("trailing input");
  return p;
}

BranchDatum parse_datum(std::string_view text) {
  Lexer lex(text);
  lex.expect('(');
  std::vector<Partition> partitions;
  if (!lex.accept(')')) {
    do {
      partitions.push_back(read_partition(lex));
    } while (lex.accept('|'));
    lex.expect(')');
  }
  std::optional<std::int64_t> n, g;
  while (!lex.done()) {
    if (lex.accept("n=")) {
      if (n) lex.fail("duplicate n=");
      n = lex.integer();
    } else if (lex.accept("g=")) {
      if (g) lex.fail("duplicate g=");
      g = lex.integer();
    } else {
      lex.fail("unexpected input");
    }
  }
  int degree = 0;
  if (!partitions.empty()) {
    degree = partitions.front().n();
    for (const auto& p : partitions) {
      if (p.n() != degree) throw DatumError(DatumError::Kind::InconsistentSum, "partitions have different sums");
    }
    if (n && *n != degree) {
      throw DatumError(DatumError::Kind::InconsistentSum,
                       "n=" + std::to_string(*n) + " does not match part sums " + std::to_string(degree));
    }
  } else {
    if (!n) throw DatumError(DatumError::Kind::Syntax, "empty datum needs an explicit n=");
    degree = static_cast<int>(*n);
  }
  std::optional<int> genus;
  if (g) genus = static_cast<int>(*g);
  return BranchDatum::make(std::move(partitions), degree, genus);
}

std::string format_partitions(const BranchDatum& datum) {
  std::string out = "(";
  for (std::size_t i = 0; i < datum.partitions().size(); ++i) {
    if (i != 0) out += " | ";
    out += datum[i].to_string();
  }
  out += ")";
  return out;
}

std::string format_datum(const BranchDatum& datum) {
  return format_partitions(datum) + " n=" + std::to_string(datum.n()) + " g=" + std::to_string(datum.g());
}

}  // namespace hurwitz
