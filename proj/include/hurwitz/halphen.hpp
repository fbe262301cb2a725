#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

namespace hurwitz {

class FieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// r + s sqrt(D) with rational r, s. The field parameter D lives in the
/// polynomial that owns the coefficient.
struct Quad {
  mpq_class r;
  mpq_class s;

  Quad() = default;
  Quad(mpq_class r_, mpq_class s_ = 0) : r(std::move(r_)), s(std::move(s_)) {}
  Quad(long r_) : r(r_), s(0) {}

  bool is_zero() const { return sgn(r) == 0 && sgn(s) == 0; }
  bool operator==(const Quad& o) const { return r == o.r && s == o.s; }
};

/// Coefficient text: "r", "s√D" or "r+s√D" (also "r-s√D"); rationals as p/q.
Quad parse_quad(std::string_view text);
std::string format_quad(const Quad& x);

/// Univariate polynomial over Q(sqrt(D)), constant term first. D = 1 encodes
/// rational coefficients.
class QuadPoly {
 public:
  /// Throws FieldError unless D is a square-free integer other than 0.
  explicit QuadPoly(long D = 1);
  QuadPoly(long D, std::vector<Quad> coeffs);

  static QuadPoly constant(long D, Quad c);
  /// The polynomial z.
  static QuadPoly z(long D);

  long D() const noexcept { return D_; }
  const std::vector<Quad>& coeffs() const noexcept { return c_; }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  const Quad& leading() const { return c_.back(); }
  Quad coeff(int i) const;

  QuadPoly operator+(const QuadPoly& o) const;
  QuadPoly operator-(const QuadPoly& o) const;
  QuadPoly operator*(const QuadPoly& o) const;
  QuadPoly operator-() const;
  QuadPoly scaled(const Quad& k) const;
  bool operator==(const QuadPoly& o) const { return D_ == o.D_ && c_ == o.c_; }

  std::string to_string() const;

 private:
  void trim();
  long D_;
  std::vector<Quad> c_;
};

Quad add(long D, const Quad& a, const Quad& b);
Quad sub(long D, const Quad& a, const Quad& b);
Quad mul(long D, const Quad& a, const Quad& b);
/// Throws FieldError on division by zero.
Quad inv(long D, const Quad& a);
Quad qpow(long D, Quad a, unsigned e);

QuadPoly pow(const QuadPoly& p, unsigned e);
/// p(q(z)).
QuadPoly compose(const QuadPoly& p, const QuadPoly& q);
/// Quotient and remainder; throws FieldError on a zero divisor.
std::pair<QuadPoly, QuadPoly> divmod(const QuadPoly& a, const QuadPoly& b);
/// Monic gcd; gcd(0, 0) = 0.
QuadPoly gcd(const QuadPoly& a, const QuadPoly& b);
/// True when gcd(a, b) is a nonzero constant. Decided by reduction modulo a
/// prime where sqrt(D) exists, falling back to the exact gcd.
bool coprime(const QuadPoly& a, const QuadPoly& b);
/// sum_j p_j U^j V^(m-j); requires m >= deg p.
QuadPoly homogenize(const QuadPoly& p, const QuadPoly& U, const QuadPoly& V, int m);

/// X^a + Y^b = Z^c with X, Y, Z non-constant and pairwise coprime.
bool verify_fermat(const QuadPoly& X, const QuadPoly& Y, const QuadPoly& Z, int a, int b, int c);

/// Q^a + P^b = R^c, pairwise coprime, c deg R = b deg P = a deg Q = n(a,b,c).
bool verify_covering_data(const QuadPoly& P, const QuadPoly& Q, const QuadPoly& R, int a, int b, int c);

struct CoveringData {
  long D = 1;
  int a = 2;
  int b = 2;
  int c = 2;
  QuadPoly P, Q, R;
};

/// Header "D=<int> a=<int> b=<int> c=<int>" then lines "P:", "Q:", "R:".
CoveringData parse_covering(std::string_view text);
CoveringData load_covering(const std::string& path);
std::string format_covering(const CoveringData& data);

/// Dihedral data for (a,b,c) = (2,d,2): P = z^2 - 1 and
/// R -+ Q = (z-1)^d / 2, 2 (z+1)^d, so that Q^2 + P^d = R^2.
CoveringData dihedral_covering(int d);

/// X = alpha hom(Q, n/a), Y = beta hom(P, n/b), Z = gamma hom(R, n/c) in U, V.
/// Throws std::invalid_argument unless the covering data verify, U and V are
/// coprime and not both constant, and alpha^a = beta^b = gamma^c.
std::tuple<QuadPoly, QuadPoly, QuadPoly> build_solution(const QuadPoly& P, const QuadPoly& Q, const QuadPoly& R,
                                                        const QuadPoly& U, const QuadPoly& V, const Quad& alpha,
                                                        const Quad& beta, const Quad& gamma, int a, int b, int c);

}  // namespace hurwitz
