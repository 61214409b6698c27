#include "soliton/poly.hpp"

#include <algorithm>

namespace soliton::sym {

namespace {

constexpr const char* kAtomNames[kAtomCount] = {
    "f", "f1", "f2", "f3", "f4",
    "g", "g1", "g2", "g3", "g4",
    "h", "h1", "h2", "h3", "h4",
    "v1", "v2", "v3",
    "c", "k", "a", "b", "x",
    "m0", "m1",
    "p0", "p1", "p2", "p3",
    "c1", "c2", "c3",
    "q", "q'", "p", "p'",
};

enum class DeriveAction { Zero, Next, One, Unsupported };

struct AtomDerive {
  DeriveAction action = DeriveAction::Zero;
  Atom next = Atom::F;
};

AtomDerive derive_action(Atom a, DeriveVar v) {
  auto idx = static_cast<unsigned>(a);
  auto chain = [&](Atom last) -> AtomDerive {
    if (a == last) return {DeriveAction::Unsupported, a};  // order overflow
    return {DeriveAction::Next, static_cast<Atom>(idx + 1)};
  };
  if (v == DeriveVar::X) {
    if (idx >= static_cast<unsigned>(Atom::F) && idx <= static_cast<unsigned>(Atom::F4))
      return chain(Atom::F4);
    if (idx >= static_cast<unsigned>(Atom::H) && idx <= static_cast<unsigned>(Atom::H4))
      return chain(Atom::H4);
    if (a == Atom::X) return {DeriveAction::One, a};
    if (a == Atom::Qg || a == Atom::Qg1 || a == Atom::Pf || a == Atom::Pf1)
      return {DeriveAction::Unsupported, a};
    return {DeriveAction::Zero, a};
  }
  // DeriveVar::Y
  if (idx >= static_cast<unsigned>(Atom::G) && idx <= static_cast<unsigned>(Atom::G4))
    return chain(Atom::G4);
  if (a == Atom::Qg || a == Atom::Qg1 || a == Atom::Pf || a == Atom::Pf1)
    return {DeriveAction::Unsupported, a};
  return {DeriveAction::Zero, a};
}

BigRat rat_abs(const BigRat& r) { return r < 0 ? BigRat(-r) : r; }

}  // namespace

const char* atom_name(Atom a) { return kAtomNames[static_cast<unsigned>(a)]; }

void Poly::add_term(const Monomial& m, const BigRat& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly Poly::constant(BigRat c) {
  Poly p;
  Monomial m{};
  p.add_term(m, c);
  return p;
}

Poly Poly::atom(Atom a, unsigned power) {
  Poly p;
  if (power > 255) throw std::invalid_argument("Poly::atom: exponent too large");
  Monomial m{};
  m[static_cast<unsigned>(a)] = static_cast<std::uint8_t>(power);
  p.add_term(m, BigRat(1));
  return p;
}

bool Poly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  Monomial zero{};
  return terms_.begin()->first == zero;
}

int Poly::degree(Atom a) const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, int(m[static_cast<unsigned>(a)]));
  return d;
}

Poly Poly::operator-() const {
  Poly r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  r += o;
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  Poly r = *this;
  r -= o;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly Poly::operator*(const Poly& o) const {
  Poly r;
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      Monomial m;
      for (std::size_t i = 0; i < kAtomCount; ++i) {
        unsigned e = unsigned(ma[i]) + unsigned(mb[i]);
        if (e > 255) throw std::overflow_error("Poly: monomial exponent overflow");
        m[i] = static_cast<std::uint8_t>(e);
      }
      r.add_term(m, ca * cb);
    }
  }
  return r;
}

Poly Poly::scaled(const BigRat& c) const {
  Poly r;
  if (c == 0) return r;
  for (const auto& [m, co] : terms_) r.terms_.emplace(m, co * c);
  return r;
}

Poly Poly::pow(unsigned n) const {
  Poly r = Poly::constant(1);
  Poly base = *this;
  while (n) {
    if (n & 1) r = r * base;
    base = n > 1 ? base * base : base;
    n >>= 1;
  }
  return r;
}

Poly Poly::derive(DeriveVar v) const {
  Poly r;
  for (const auto& [m, c] : terms_) {
    for (std::size_t i = 0; i < kAtomCount; ++i) {
      if (m[i] == 0) continue;
      Atom a = static_cast<Atom>(i);
      AtomDerive act = derive_action(a, v);
      if (act.action == DeriveAction::Zero) continue;
      if (act.action == DeriveAction::Unsupported)
        throw OrderOverflowError(std::string("derive: no derivative stored for atom ") +
                                 atom_name(a));
      Monomial dm = m;
      dm[i] -= 1;
      BigRat coeff = c * m[i];
      if (act.action == DeriveAction::Next) {
        unsigned j = static_cast<unsigned>(act.next);
        if (dm[j] == 255) throw std::overflow_error("Poly: monomial exponent overflow");
        dm[j] += 1;
      }
      r.add_term(dm, coeff);
    }
  }
  return r;
}

Poly Poly::substitute(Atom a, const Poly& repl) const {
  unsigned ia = static_cast<unsigned>(a);
  std::vector<Poly> powers{Poly::constant(1)};
  Poly r;
  for (const auto& [m, c] : terms_) {
    unsigned e = m[ia];
    while (powers.size() <= e) powers.push_back(powers.back() * repl);
    Monomial base = m;
    base[ia] = 0;
    Poly t;
    t.add_term(base, c);
    r += t * powers[e];
  }
  return r;
}

Poly Poly::substitute_square(Atom a, const Poly& repl) const {
  unsigned ia = static_cast<unsigned>(a);
  std::vector<Poly> powers{Poly::constant(1)};
  Poly r;
  for (const auto& [m, c] : terms_) {
    unsigned e = m[ia];
    unsigned pairs = e / 2;
    while (powers.size() <= pairs) powers.push_back(powers.back() * repl);
    Monomial base = m;
    base[ia] = static_cast<std::uint8_t>(e % 2);
    Poly t;
    t.add_term(base, c);
    r += t * powers[pairs];
  }
  return r;
}

Poly Poly::substitute_pair(Atom a, Atom b, const Poly& repl) const {
  unsigned ia = static_cast<unsigned>(a), ib = static_cast<unsigned>(b);
  std::vector<Poly> powers{Poly::constant(1)};
  Poly r;
  for (const auto& [m, c] : terms_) {
    unsigned pairs = std::min<unsigned>(m[ia], m[ib]);
    while (powers.size() <= pairs) powers.push_back(powers.back() * repl);
    Monomial base = m;
    base[ia] -= static_cast<std::uint8_t>(pairs);
    base[ib] -= static_cast<std::uint8_t>(pairs);
    Poly t;
    t.add_term(base, c);
    r += t * powers[pairs];
  }
  return r;
}

std::vector<Poly> Poly::collect(Atom a) const {
  unsigned ia = static_cast<unsigned>(a);
  std::vector<Poly> out(static_cast<std::size_t>(degree(a)) + 1);
  for (const auto& [m, c] : terms_) {
    Monomial base = m;
    unsigned e = base[ia];
    base[ia] = 0;
    out[e].add_term(base, c);
  }
  return out;
}

BigRat Poly::content() const {
  BigInt num_gcd = 0, den_lcm = 1;
  for (const auto& [m, c] : terms_) {
    num_gcd = boost::multiprecision::gcd(num_gcd, boost::multiprecision::numerator(c));
    den_lcm = boost::multiprecision::lcm(den_lcm, boost::multiprecision::denominator(c));
  }
  if (num_gcd == 0) return BigRat(0);
  if (num_gcd < 0) num_gcd = -num_gcd;
  return BigRat(num_gcd, den_lcm);
}

std::optional<Poly> Poly::divided_exactly_by(const Poly& d) const {
  if (d.is_zero()) throw DivisionByZeroError("Poly division by the zero polynomial");
  Poly rem = *this;
  Poly quot;
  const auto& dlead = *d.terms_.rbegin();
  while (!rem.is_zero()) {
    const auto& rlead = *rem.terms_.rbegin();
    Monomial qm;
    for (std::size_t i = 0; i < kAtomCount; ++i) {
      if (rlead.first[i] < dlead.first[i]) return std::nullopt;
      qm[i] = static_cast<std::uint8_t>(rlead.first[i] - dlead.first[i]);
    }
    Poly t;
    t.add_term(qm, rlead.second / dlead.second);
    quot += t;
    rem -= t * d;
  }
  return quot;
}

BigRat Poly::eval(const std::map<Atom, BigRat>& point) const {
  BigRat total = 0;
  for (const auto& [m, c] : terms_) {
    BigRat term = c;
    for (std::size_t i = 0; i < kAtomCount; ++i) {
      if (m[i] == 0) continue;
      auto it = point.find(static_cast<Atom>(i));
      if (it == point.end())
        throw std::invalid_argument(std::string("Poly::eval: unbound atom ") +
                                    atom_name(static_cast<Atom>(i)));
      for (unsigned e = 0; e < m[i]; ++e) term *= it->second;
    }
    total += term;
  }
  return total;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  // highest monomial first reads like the displayed formulas
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    BigRat ac = rat_abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    bool unit = (ac == 1);
    Monomial zero{};
    bool constant_term = (m == zero);
    if (!unit || constant_term) out += ac.str();
    bool first_factor = unit && !constant_term;
    for (std::size_t i = 0; i < kAtomCount; ++i) {
      if (m[i] == 0) continue;
      if (!first_factor)
        out += "*";
      else
        first_factor = false;
      out += kAtomNames[i];
      if (m[i] > 1) {
        out += "^";
        out += std::to_string(int(m[i]));
      }
    }
  }
  return out;
}

RatFn::RatFn(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DivisionByZeroError("RatFn with zero denominator");
}

RatFn RatFn::operator-() const { return RatFn(-num_, den_); }

RatFn RatFn::operator+(const RatFn& o) const {
  return RatFn(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFn RatFn::operator-(const RatFn& o) const {
  return RatFn(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RatFn RatFn::operator*(const RatFn& o) const { return RatFn(num_ * o.num_, den_ * o.den_); }

RatFn RatFn::operator/(const RatFn& o) const {
  if (o.num_.is_zero()) throw DivisionByZeroError("RatFn division by zero");
  return RatFn(num_ * o.den_, den_ * o.num_);
}

bool RatFn::equals(const RatFn& o) const { return (num_ * o.den_) == (o.num_ * den_); }

RatFn RatFn::derive(DeriveVar v) const {
  return RatFn(num_.derive(v) * den_ - num_ * den_.derive(v), den_ * den_);
}

RatFn RatFn::substitute(Atom a, const RatFn& repl) const {
  auto subst_poly = [&](const Poly& p) -> RatFn {
    int deg = p.degree(a);
    std::vector<Poly> by_degree = p.collect(a);
    // sum p_k repl^k over the common denominator repl.den^deg
    Poly num;
    Poly rn_pow = Poly::constant(1);
    std::vector<Poly> rd_pows(static_cast<std::size_t>(deg) + 1);
    rd_pows[deg] = Poly::constant(1);
    for (int k = deg - 1; k >= 0; --k) rd_pows[k] = rd_pows[k + 1] * repl.den();
    for (int k = 0; k <= deg; ++k) {
      num += by_degree[k] * rn_pow * rd_pows[k];
      if (k < deg) rn_pow = rn_pow * repl.num();
    }
    return RatFn(num, repl.den().pow(static_cast<unsigned>(deg)));
  };
  RatFn n = subst_poly(num_);
  RatFn d = subst_poly(den_);
  return n / d;
}

std::optional<Poly> RatFn::to_poly() const {
  return num_.divided_exactly_by(den_);
}

RatFn eliminate_sqrt(const RatFn& a, const RatFn& b, const RatFn& D) {
  return a * a - b * b * D;
}

Poly eliminate_sqrt(const Poly& a, const Poly& b, const Poly& D) { return a * a - b * b * D; }

}  // namespace soliton::sym
