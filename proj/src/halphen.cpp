#include "hurwitz/halphen.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>

#include "hurwitz/orbifold.hpp"

namespace hurwitz {

namespace {

constexpr std::string_view kRoot = "√D";  // the characters "√D"

bool square_free(long D) {
  if (D == 0) return false;
  unsigned long m = D < 0 ? static_cast<unsigned long>(-D) : static_cast<unsigned long>(D);
  for (unsigned long p = 2; p * p <= m; ++p) {
    if (m % (p * p) == 0) return false;
  }
  return true;
}

void same_field(long a, long b) {
  if (a != b) throw FieldError("polynomials over different fields (D=" + std::to_string(a) + ", " + std::to_string(b) + ")");
}

mpq_class parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char ch) { return std::isspace(ch); }), s.end());
  if (s.empty() || s == "+") return 1;
  if (s == "-") return -1;
  if (s.front() == '+') s.erase(0, 1);
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw FieldError("malformed rational '" + std::string(text) + "'");
  q.canonicalize();
  return q;
}

}  // namespace

Quad parse_quad(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char ch) { return std::isspace(ch); }), s.end());
  std::size_t root = s.find(kRoot);
  std::size_t root_len = kRoot.size();
  if (root == std::string::npos) {
    root = s.find("sqrtD");
    root_len = 5;
  }
  if (root == std::string::npos) return Quad(parse_rational(s));
  if (root + root_len != s.size()) throw FieldError("sqrt(D) must end the coefficient: '" + s + "'");
  const std::string head = s.substr(0, root);
  // Split "r+s" / "r-s" at the last sign that is not the leading one.
  std::size_t split = std::string::npos;
  for (std::size_t i = head.size(); i-- > 1;) {
    if (head[i] == '+' || head[i] == '-') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) return Quad(0, parse_rational(head));
  return Quad(parse_rational(head.substr(0, split)), parse_rational(head.substr(split)));
}

std::string format_quad(const Quad& x) {
  if (sgn(x.s) == 0) return x.r.get_str();
  std::string out;
  if (sgn(x.r) != 0) out = x.r.get_str() + (sgn(x.s) > 0 ? "+" : "");
  return out + x.s.get_str() + std::string(kRoot);
}

Quad add(long, const Quad& a, const Quad& b) { return Quad(a.r + b.r, a.s + b.s); }

Quad sub(long, const Quad& a, const Quad& b) { return Quad(a.r - b.r, a.s - b.s); }

Quad mul(long D, const Quad& a, const Quad& b) {
  if (D == 1) return Quad(a.r * b.r);
  return Quad(a.r * b.r + D * a.s * b.s, a.r * b.s + a.s * b.r);
}

Quad inv(long D, const Quad& a) {
  if (a.is_zero()) throw FieldError("division by zero");
  const mpq_class norm = a.r * a.r - D * a.s * a.s;
  return Quad(a.r / norm, -a.s / norm);
}

Quad qpow(long D, Quad a, unsigned e) {
  Quad out(1);
  while (e) {
    if (e & 1u) out = mul(D, out, a);
    e >>= 1;
    if (e) a = mul(D, a, a);
  }
  return out;
}

QuadPoly::QuadPoly(long D) : D_(D) {
  if (!square_free(D)) throw FieldError("D must be a square-free integer, got " + std::to_string(D));
}

QuadPoly::QuadPoly(long D, std::vector<Quad> coeffs) : QuadPoly(D) {
  c_ = std::move(coeffs);
  if (D_ == 1) {
    for (const auto& x : c_) {
      if (sgn(x.s) != 0) throw FieldError("D=1 polynomials have rational coefficients");
    }
  }
  trim();
}

QuadPoly QuadPoly::constant(long D, Quad c) { return QuadPoly(D, {std::move(c)}); }

QuadPoly QuadPoly::z(long D) { return QuadPoly(D, {Quad(0), Quad(1)}); }

Quad QuadPoly::coeff(int i) const {
  if (i < 0 || i > degree()) return Quad(0);
  return c_[i];
}

void QuadPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

QuadPoly QuadPoly::operator+(const QuadPoly& o) const {
  same_field(D_, o.D_);
  std::vector<Quad> out(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = add(D_, coeff(static_cast<int>(i)), o.coeff(static_cast<int>(i)));
  return QuadPoly(D_, std::move(out));
}

QuadPoly QuadPoly::operator-(const QuadPoly& o) const {
  same_field(D_, o.D_);
  std::vector<Quad> out(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = sub(D_, coeff(static_cast<int>(i)), o.coeff(static_cast<int>(i)));
  return QuadPoly(D_, std::move(out));
}

QuadPoly QuadPoly::operator-() const { return QuadPoly(D_) - *this; }

QuadPoly QuadPoly::operator*(const QuadPoly& o) const {
  same_field(D_, o.D_);
  if (is_zero() || o.is_zero()) return QuadPoly(D_);
  std::vector<Quad> out(c_.size() + o.c_.size() - 1, Quad(0));
  if (D_ == 1) {
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (sgn(c_[i].r) == 0) continue;
      for (std::size_t j = 0; j < o.c_.size(); ++j) out[i + j].r += c_[i].r * o.c_[j].r;
    }
  } else {
    for (std::size_t i = 0; i < c_.size(); ++i) {
      for (std::size_t j = 0; j < o.c_.size(); ++j) {
        out[i + j].r += c_[i].r * o.c_[j].r + D_ * c_[i].s * o.c_[j].s;
        out[i + j].s += c_[i].r * o.c_[j].s + c_[i].s * o.c_[j].r;
      }
    }
  }
  return QuadPoly(D_, std::move(out));
}

QuadPoly QuadPoly::scaled(const Quad& k) const {
  std::vector<Quad> out;
  out.reserve(c_.size());
  for (const auto& x : c_) out.push_back(mul(D_, x, k));
  return QuadPoly(D_, std::move(out));
}

std::string QuadPoly::to_string() const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < c_.size(); ++i) out += (i ? ", " : "") + format_quad(c_[i]);
  return out;
}

QuadPoly pow(const QuadPoly& p, unsigned e) {
  QuadPoly out = QuadPoly::constant(p.D(), Quad(1));
  QuadPoly base = p;
  while (e) {
    if (e & 1u) out = out * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return out;
}

QuadPoly compose(const QuadPoly& p, const QuadPoly& q) {
  same_field(p.D(), q.D());
  QuadPoly out(p.D());
  for (int i = p.degree(); i >= 0; --i) out = out * q + QuadPoly::constant(p.D(), p.coeffs()[i]);
  return out;
}

std::pair<QuadPoly, QuadPoly> divmod(const QuadPoly& a, const QuadPoly& b) {
  same_field(a.D(), b.D());
  if (b.is_zero()) throw FieldError("polynomial division by zero");
  const long D = a.D();
  std::vector<Quad> rem = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {QuadPoly(D), a};
  std::vector<Quad> quo(static_cast<std::size_t>(a.degree() - db + 1), Quad(0));
  const Quad lead_inv = inv(D, b.leading());
  for (int i = a.degree(); i >= db; --i) {
    if (rem[i].is_zero()) continue;
    const Quad f = mul(D, rem[i], lead_inv);
    quo[i - db] = f;
    for (int j = 0; j <= db; ++j) rem[i - db + j] = sub(D, rem[i - db + j], mul(D, f, b.coeffs()[j]));
  }
  rem.resize(static_cast<std::size_t>(db));
  return {QuadPoly(D, std::move(quo)), QuadPoly(D, std::move(rem))};
}

namespace {

QuadPoly monic(const QuadPoly& p) {
  if (p.is_zero()) return p;
  return p.scaled(inv(p.D(), p.leading()));
}

}  // namespace

QuadPoly gcd(const QuadPoly& a, const QuadPoly& b) {
  same_field(a.D(), b.D());
  QuadPoly x = monic(a);
  QuadPoly y = monic(b);
  while (!y.is_zero()) {
    QuadPoly r = monic(divmod(x, y).second);
    x = std::move(y);
    y = std::move(r);
  }
  return x;
}

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 out = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) out = mulmod(out, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return out;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int r = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++r;
  }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

u64 reduce(long D, u64 p) {
  const long long m = static_cast<long long>(D % static_cast<long long>(p));
  return static_cast<u64>(m < 0 ? m + static_cast<long long>(p) : m);
}

// Square root of a quadratic residue modulo an odd prime (Tonelli-Shanks).
std::optional<u64> sqrt_mod(u64 a, u64 p) {
  a %= p;
  if (a == 0) return std::nullopt;
  if (powmod(a, (p - 1) / 2, p) != 1) return std::nullopt;
  u64 q = p - 1;
  int s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  u64 z = 2;
  while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
  u64 m = static_cast<u64>(s);
  u64 c = powmod(z, q, p);
  u64 t = powmod(a, q, p);
  u64 r = powmod(a, (q + 1) / 2, p);
  while (t != 1) {
    u64 i = 0;
    u64 tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt, p);
      ++i;
    }
    u64 b = c;
    for (u64 j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return r;
}

std::optional<u64> rational_mod(const mpq_class& x, u64 p) {
  mpz_class pz;
  mpz_import(pz.get_mpz_t(), 1, 1, sizeof(u64), 0, 0, &p);
  mpz_class den = x.get_den() % pz;
  if (sgn(den) == 0) return std::nullopt;
  mpz_class num = x.get_num() % pz;
  if (sgn(num) < 0) num += pz;
  mpz_class inv_den;
  mpz_invert(inv_den.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t());
  mpz_class v = num * inv_den % pz;
  u64 out = 0;
  mpz_export(&out, nullptr, 1, sizeof(u64), 0, 0, v.get_mpz_t());
  return out;
}

std::optional<std::vector<u64>> poly_mod(const QuadPoly& a, u64 p, u64 root) {
  std::vector<u64> out;
  for (const auto& c : a.coeffs()) {
    auto r = rational_mod(c.r, p);
    auto s = rational_mod(c.s, p);
    if (!r || !s) return std::nullopt;
    out.push_back((*r + mulmod(*s, root, p)) % p);
  }
  return out;
}

int gcd_degree_mod(std::vector<u64> x, std::vector<u64> y, u64 p) {
  auto trim = [](std::vector<u64>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  };
  trim(x);
  trim(y);
  while (!y.empty()) {
    // x <- x mod y
    const u64 li = powmod(y.back(), p - 2, p);
    while (x.size() >= y.size()) {
      const u64 f = mulmod(x.back(), li, p);
      const std::size_t shift = x.size() - y.size();
      for (std::size_t j = 0; j < y.size(); ++j) x[shift + j] = (x[shift + j] + p - mulmod(f, y[j], p)) % p;
      trim(x);
      if (x.empty()) break;
    }
    std::swap(x, y);
  }
  return static_cast<int>(x.size()) - 1;
}

}  // namespace

bool coprime(const QuadPoly& a, const QuadPoly& b) {
  same_field(a.D(), b.D());
  if (a.is_zero() || b.is_zero()) return a.degree() == 0 || b.degree() == 0;
  if (a.degree() == 0 || b.degree() == 0) return true;
  // A common factor over Q(sqrt D) survives reduction modulo a prime above
  // p with the same degree when p does not divide 2D, any denominator or the
  // leading coefficients; a constant gcd modulo p therefore proves coprimality.
  u64 candidate = (1ull << 61) - 1;
  int tried = 0;
  while (tried < 4 && candidate > 1000) {
    candidate -= 2;
    if (!is_prime(candidate)) continue;
    const u64 d = reduce(a.D(), candidate);
    std::optional<u64> root = a.D() == 1 ? std::optional<u64>(1) : sqrt_mod(d, candidate);
    if (!root) continue;
    ++tried;
    auto x = poly_mod(a, candidate, *root);
    auto y = poly_mod(b, candidate, *root);
    if (!x || !y || x->back() == 0 || y->back() == 0) continue;
    if (gcd_degree_mod(*x, *y, candidate) == 0) return true;
  }
  return gcd(a, b).degree() == 0;
}

QuadPoly homogenize(const QuadPoly& p, const QuadPoly& U, const QuadPoly& V, int m) {
  same_field(p.D(), U.D());
  same_field(p.D(), V.D());
  if (m < p.degree()) throw std::invalid_argument("homogenize: exponent below the degree");
  const long D = p.D();
  std::vector<QuadPoly> upow{QuadPoly::constant(D, Quad(1))};
  std::vector<QuadPoly> vpow{QuadPoly::constant(D, Quad(1))};
  for (int i = 1; i <= m; ++i) {
    upow.push_back(upow.back() * U);
    vpow.push_back(vpow.back() * V);
  }
  QuadPoly out(D);
  for (int j = 0; j <= p.degree(); ++j) {
    if (p.coeffs()[j].is_zero()) continue;
    out = out + (upow[j] * vpow[m - j]).scaled(p.coeffs()[j]);
  }
  return out;
}

bool verify_fermat(const QuadPoly& X, const QuadPoly& Y, const QuadPoly& Z, int a, int b, int c) {
  if (a < 2 || b < 2 || c < 2) return false;
  if (X.D() != Y.D() || X.D() != Z.D()) return false;
  if (X.degree() < 1 || Y.degree() < 1 || Z.degree() < 1) return false;
  if (!(pow(X, a) + pow(Y, b) - pow(Z, c)).is_zero()) return false;
  return coprime(X, Y) && coprime(Y, Z) && coprime(X, Z);
}

bool verify_covering_data(const QuadPoly& P, const QuadPoly& Q, const QuadPoly& R, int a, int b, int c) {
  if (a < 2 || b < 2 || c < 2) return false;
  if (P.D() != Q.D() || P.D() != R.D()) return false;
  const TripleInvariants t = triple_invariants(a, b, c);
  if (!t.n_abc) return false;
  const std::int64_t n = *t.n_abc;
  if (static_cast<std::int64_t>(c) * R.degree() != n || static_cast<std::int64_t>(b) * P.degree() != n ||
      static_cast<std::int64_t>(a) * Q.degree() != n) {
    return false;
  }
  if (!(pow(Q, a) + pow(P, b) - pow(R, c)).is_zero()) return false;
  return coprime(P, Q) && coprime(Q, R) && coprime(P, R);
}

CoveringData parse_covering(std::string_view text) {
  CoveringData data;
  std::istringstream in{std::string(text)};
  std::string line;
  bool header = false;
  std::vector<std::string> rows[3];
  bool seen[3] = {false, false, false};
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    if (!header) {
      std::istringstream hs(line);
      std::string tok;
      int fields = 0;
      while (hs >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) throw FieldError("malformed header token '" + tok + "'");
        const std::string key = tok.substr(0, eq);
        const long value = std::stol(tok.substr(eq + 1));
        if (key == "D") {
          data.D = value;
        } else if (key == "a") {
          data.a = static_cast<int>(value);
        } else if (key == "b") {
          data.b = static_cast<int>(value);
        } else if (key == "c") {
          data.c = static_cast<int>(value);
        } else {
          throw FieldError("unknown header key '" + key + "'");
        }
        ++fields;
      }
      if (fields != 4) throw FieldError("header needs D, a, b and c");
      header = true;
      continue;
    }
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw FieldError("expected 'P:', 'Q:' or 'R:' line");
    const std::string name = trim(line.substr(0, colon));
    const int idx = name == "P" ? 0 : name == "Q" ? 1 : name == "R" ? 2 : -1;
    if (idx < 0) throw FieldError("unknown polynomial '" + name + "'");
    if (seen[idx]) throw FieldError("polynomial " + name + " given twice");
    seen[idx] = true;
    std::stringstream ls(line.substr(colon + 1));
    std::string item;
    while (std::getline(ls, item, ',')) rows[idx].push_back(item);
  }
  if (!header || !seen[0] || !seen[1] || !seen[2]) throw FieldError("covering file needs a header and P, Q, R");
  QuadPoly* polys[3] = {&data.P, &data.Q, &data.R};
  for (int i = 0; i < 3; ++i) {
    std::vector<Quad> coeffs;
    for (const auto& item : rows[i]) coeffs.push_back(parse_quad(item));
    *polys[i] = QuadPoly(data.D, std::move(coeffs));
  }
  return data;
}

CoveringData load_covering(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FieldError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_covering(buf.str());
}

std::string format_covering(const CoveringData& data) {
  std::ostringstream out;
  out << "D=" << data.D << " a=" << data.a << " b=" << data.b << " c=" << data.c << "\n";
  out << "P: " << data.P.to_string() << "\n";
  out << "Q: " << data.Q.to_string() << "\n";
  out << "R: " << data.R.to_string() << "\n";
  return out.str();
}

CoveringData dihedral_covering(int d) {
  if (d < 2) throw std::invalid_argument("dihedral_covering: d must be at least 2");
  CoveringData data;
  data.D = 1;
  data.a = 2;
  data.b = d;
  data.c = 2;
  const QuadPoly plus(1, {Quad(1), Quad(1)});
  const QuadPoly minus(1, {Quad(-1), Quad(1)});
  const QuadPoly s = pow(plus, d).scaled(Quad(2));
  const QuadPoly t = pow(minus, d).scaled(Quad(mpq_class(1, 2)));
  data.P = QuadPoly(1, {Quad(-1), Quad(0), Quad(1)});
  data.Q = (s - t).scaled(Quad(mpq_class(1, 2)));
  data.R = (s + t).scaled(Quad(mpq_class(1, 2)));
  return data;
}

std::tuple<QuadPoly, QuadPoly, QuadPoly> build_solution(const QuadPoly& P, const QuadPoly& Q, const QuadPoly& R,
                                                        const QuadPoly& U, const QuadPoly& V, const Quad& alpha,
                                                        const Quad& beta, const Quad& gamma, int a, int b, int c) {
  if (!verify_covering_data(P, Q, R, a, b, c)) throw std::invalid_argument("build_solution: covering data do not verify");
  same_field(P.D(), U.D());
  same_field(P.D(), V.D());
  if (std::max(U.degree(), V.degree()) < 1) throw std::invalid_argument("build_solution: U and V are both constant");
  if (!coprime(U, V)) throw std::invalid_argument("build_solution: U and V must be coprime");
  const long D = P.D();
  const Quad lambda = qpow(D, alpha, static_cast<unsigned>(a));
  if (lambda.is_zero() || !(qpow(D, beta, static_cast<unsigned>(b)) == lambda) ||
      !(qpow(D, gamma, static_cast<unsigned>(c)) == lambda)) {
    throw std::invalid_argument("build_solution: scalars must satisfy alpha^a = beta^b = gamma^c != 0");
  }
  const int n = static_cast<int>(*triple_invariants(a, b, c).n_abc);
  QuadPoly X = homogenize(Q, U, V, n / a).scaled(alpha);
  QuadPoly Y = homogenize(P, U, V, n / b).scaled(beta);
  QuadPoly Z = homogenize(R, U, V, n / c).scaled(gamma);
  return {std::move(X), std::move(Y), std::move(Z)};
}

}  // namespace hurwitz
