#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace soliton::sym {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

/// Fixed jet-variable alphabet.  f, g, h are one-variable function values;
/// f1..f4 etc. their derivatives (f1 = f').  derive_x acts by f -> f1,
/// fi -> f(i+1), h likewise, kills g-atoms and parameters, and sends the
/// coordinate atom x to 1; derive_y acts symmetrically on g.  q = g'(g),
/// q1 = q', p = f'(f), p1 = p' are the change-of-variables atoms of the
/// product-surface analysis; deriving them is an error.
enum class Atom : std::uint8_t {
  F, F1, F2, F3, F4,
  G, G1, G2, G3, G4,
  H, H1, H2, H3, H4,
  V1, V2, V3,
  C, K, A, B, X,
  M0, M1,
  P0, P1, P2, P3,
  C1, C2, C3,
  Qg, Qg1, Pf, Pf1,
};
inline constexpr std::size_t kAtomCount = 37;

const char* atom_name(Atom a);

struct OrderOverflowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DivisionByZeroError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Monomial = std::array<std::uint8_t, kAtomCount>;

enum class DeriveVar { X, Y };

/// Exact multivariate polynomial over the atom alphabet with big-rational
/// coefficients.  Terms are kept in a sorted map with no zero entries, so
/// representation is canonical and operator== is structural equality.
class Poly {
 public:
  Poly() = default;
  static Poly constant(BigRat c);
  static Poly constant(long long c) { return constant(BigRat(c)); }
  static Poly atom(Atom a, unsigned power = 1);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::size_t term_count() const { return terms_.size(); }
  int degree(Atom a) const;

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  bool operator==(const Poly& o) const { return terms_ == o.terms_; }

  Poly scaled(const BigRat& c) const;
  Poly pow(unsigned n) const;

  /// Formal total derivative in x or y (see Atom docs).  Throws
  /// OrderOverflowError past the stored order 4.
  Poly derive(DeriveVar v) const;

  /// Substitution homomorphism a -> repl (every power of a expands).
  Poly substitute(Atom a, const Poly& repl) const;

  /// Parity-preserving square substitution: a^2 -> repl, odd powers keep one
  /// factor of a.
  Poly substitute_square(Atom a, const Poly& repl) const;

  /// Pairwise product substitution: each monomial's a*b pairs become repl.
  /// Leftover unpaired factors of a or b stay in place.
  Poly substitute_pair(Atom a, Atom b, const Poly& repl) const;

  /// Coefficients by degree in a (constant first, highest degree last).
  std::vector<Poly> collect(Atom a) const;

  /// Positive gcd of all coefficients (0 for the zero polynomial).
  BigRat content() const;

  /// Exact division; nullopt when the divisor does not divide exactly.
  std::optional<Poly> divided_exactly_by(const Poly& d) const;

  BigRat eval(const std::map<Atom, BigRat>& point) const;

  std::string str() const;

  const std::map<Monomial, BigRat>& terms() const { return terms_; }

 private:
  void add_term(const Monomial& m, const BigRat& c);
  std::map<Monomial, BigRat> terms_;
};

inline Poly operator*(long long c, const Poly& p) { return p.scaled(BigRat(c)); }

/// Quotient of polynomials with equality decided by cross-multiplication.
/// No gcd normalization is performed; pipelines clear denominators
/// explicitly and reduce to Poly via exact division.
class RatFn {
 public:
  RatFn() : num_(), den_(Poly::constant(1)) {}
  RatFn(Poly num, Poly den);
  explicit RatFn(Poly num) : num_(std::move(num)), den_(Poly::constant(1)) {}

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  RatFn operator-() const;
  RatFn operator+(const RatFn& o) const;
  RatFn operator-(const RatFn& o) const;
  RatFn operator*(const RatFn& o) const;
  RatFn operator/(const RatFn& o) const;

  bool equals(const RatFn& o) const;
  bool is_zero() const { return num_.is_zero(); }

  RatFn derive(DeriveVar v) const;
  RatFn substitute(Atom a, const RatFn& repl) const;

  /// Exact reduction to a polynomial; throws DivisionByZeroError-style
  /// logic errors only via the optional interface of Poly.
  std::optional<Poly> to_poly() const;

 private:
  Poly num_, den_;
};

/// a^2 - b^2 D: the square-free elimination of a + b sqrt(D) = 0.
RatFn eliminate_sqrt(const RatFn& a, const RatFn& b, const RatFn& D);
Poly eliminate_sqrt(const Poly& a, const Poly& b, const Poly& D);

}  // namespace soliton::sym
