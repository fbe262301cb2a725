#include "hurwitz/permutation.hpp"

#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace hurwitz {

Perm identity_perm(int n) {
  Perm p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

bool is_permutation(const Perm& p) {
  std::vector<char> seen(p.size(), 0);
  for (int x : p) {
    if (x < 0 || static_cast<std::size_t>(x) >= p.size() || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

Perm compose(const Perm& a, const Perm& b) {
  Perm out(b.size());
  for (std::size_t x = 0; x < b.size(); ++x) out[x] = a[b[x]];
  return out;
}

Perm inverse(const Perm& p) {
  Perm out(p.size());
  for (std::size_t x = 0; x < p.size(); ++x) out[p[x]] = static_cast<int>(x);
  return out;
}

Partition cycle_type(const Perm& p) {
  std::vector<char> seen(p.size(), 0);
  std::vector<int> lengths;
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (seen[x]) continue;
    int len = 0;
    for (int y = static_cast<int>(x); !seen[y]; y = p[y]) {
      seen[y] = 1;
      ++len;
    }
    lengths.push_back(len);
  }
  return Partition(std::move(lengths));
}

Perm canonical_representative(const Partition& type) {
  Perm p(static_cast<std::size_t>(type.n()));
  int start = 0;
  for (int len : type.parts()) {
    for (int i = 0; i < len; ++i) p[start + i] = start + (i + 1) % len;
    start += len;
  }
  return p;
}

std::string cycle_notation(const Perm& p) {
  std::ostringstream out;
  std::vector<char> seen(p.size(), 0);
  bool any = false;
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (seen[x] || p[x] == static_cast<int>(x)) continue;
    out << '(';
    for (int y = static_cast<int>(x); !seen[y]; y = p[y]) {
      seen[y] = 1;
      if (y != static_cast<int>(x)) out << ' ';
      out << y + 1;
    }
    out << ')';
    any = true;
  }
  return any ? out.str() : "()";
}

Perm parse_cycles(std::string_view text, int n) {
  Perm p = identity_perm(n);
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip();
  while (i < text.size()) {
    if (text[i] != '(') throw std::invalid_argument("cycle notation: expected '('");
    ++i;
    std::vector<int> cycle;
    for (;;) {
      skip();
      if (i < text.size() && text[i] == ')') {
        ++i;
        break;
      }
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j == i) throw std::invalid_argument("cycle notation: expected a point");
      const int x = std::stoi(std::string(text.substr(i, j - i))) - 1;
      i = j;
      if (x < 0 || x >= n) throw std::invalid_argument("cycle notation: point out of range");
      if (used[x]) throw std::invalid_argument("cycle notation: repeated point");
      used[x] = 1;
      cycle.push_back(x);
      skip();
      if (i < text.size() && text[i] == ',') ++i;
    }
    for (std::size_t k = 0; k < cycle.size(); ++k) p[cycle[k]] = cycle[(k + 1) % cycle.size()];
    skip();
  }
  return p;
}

}  // namespace hurwitz

namespace hurwitz {

std::string format_constellation(const Constellation& c) {
  std::string out;
  for (std::size_t i = 0; i < c.perms.size(); ++i) {
    if (i != 0) out += " | ";
    out += cycle_notation(c.perms[i]);
  }
  return out;
}

Constellation parse_constellation(std::string_view text, int n) {
  Constellation c;
  c.n = n;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t bar = text.find('|', start);
    if (bar == std::string_view::npos) bar = text.size();
    const std::string_view piece = text.substr(start, bar - start);
    if (piece.find_first_not_of(" \t") != std::string_view::npos) c.perms.push_back(parse_cycles(piece, n));
    start = bar + 1;
  }
  return c;
}

}  // namespace hurwitz
