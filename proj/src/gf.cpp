#include "pglatlas/gf.hpp"

#include <sstream>
#include <stdexcept>

namespace pglatlas::gf {

namespace {

using Poly = std::vector<std::uint64_t>;  // low degree first, over GF(p)

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  // m is monic
  const std::size_t deg = m.size() - 1;
  for (std::size_t i = prod.size(); i-- > deg;) {
    const std::uint64_t c = prod[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= deg; ++j)
      prod[i - deg + j] = (prod[i - deg + j] + (p - c) * m[j]) % p;
  }
  if (prod.size() > deg) prod.resize(deg);
  trim(prod);
  return prod;
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& m, std::uint64_t p) {
  Poly acc{1};
  while (e) {
    if (e & 1) acc = poly_mulmod(acc, base, m, p);
    base = poly_mulmod(base, base, m, p);
    e >>= 1;
  }
  return acc;
}

std::uint64_t modinv(std::uint64_t a, std::uint64_t p) {
  std::uint64_t result = 1, e = p - 2;
  a %= p;
  while (e) {
    if (e & 1) result = result * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return result;
}

Poly poly_mod(Poly a, const Poly& b, std::uint64_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  const std::uint64_t lead_inv = modinv(b.back(), p);
  while (a.size() >= b.size()) {
    const std::uint64_t c = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - b.size();
    for (std::size_t j = 0; j <= db; ++j)
      a[shift + j] = (a[shift + j] + (p - c) * b[j]) % p;
    trim(a);
  }
  return a;
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Rabin's test.
bool is_irreducible(const Poly& f, std::uint64_t p) {
  const std::size_t r = f.size() - 1;
  if (r == 1) return true;
  const Poly x{0, 1};
  auto frob_power = [&](std::size_t k) {
    Poly acc = x;
    for (std::size_t i = 0; i < k; ++i) acc = poly_powmod(acc, p, f, p);
    return acc;
  };
  auto minus_x = [&](Poly a) {
    if (a.size() < 2) a.resize(2, 0);
    a[1] = (a[1] + p - 1) % p;
    trim(a);
    return a;
  };
  if (!minus_x(frob_power(r)).empty()) return false;
  for (std::uint64_t l : prime_divisors(r)) {
    Poly g = poly_gcd(f, minus_x(frob_power(r / l)), p);
    if (g.size() != 1) return false;
  }
  return true;
}

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

FieldSpec make_field(std::uint32_t p, unsigned r, std::uint64_t bound) {
  if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
  if (r < 1) throw std::invalid_argument("field degree must be at least 1");
  if (r > kMaxDegree) throw std::invalid_argument("field degree too large");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < r; ++i) {
    q *= p;
    if (q > bound) throw std::invalid_argument("field order exceeds bound");
  }

  FieldSpec f;
  f.p = p;
  f.r = r;
  f.q = static_cast<std::uint32_t>(q);
  for (std::uint64_t code = 0; code < q; ++code) {
    Poly cand(r + 1, 0);
    std::uint64_t c = code;
    for (unsigned i = 0; i < r; ++i) {
      cand[i] = c % p;
      c /= p;
    }
    cand[r] = 1;
    if (is_irreducible(cand, p)) {
      f.modulus.assign(cand.begin(), cand.end());
      return f;
    }
  }
  throw std::logic_error("no irreducible polynomial found");
}

FieldSpec make_field_of_order(std::uint64_t q, std::uint64_t bound) {
  if (q < 2) throw std::invalid_argument("field order must be a prime power");
  const auto primes = prime_divisors(q);
  if (primes.size() != 1) throw std::invalid_argument("field order must be a prime power");
  unsigned r = 0;
  for (std::uint64_t n = q; n > 1; n /= primes[0]) ++r;
  return make_field(static_cast<std::uint32_t>(primes[0]), r, bound);
}

FieldElement zero() { return {}; }

FieldElement one() {
  FieldElement e;
  e.coeffs[0] = 1;
  return e;
}

FieldElement from_int(const FieldSpec& f, std::int64_t n) {
  const std::int64_t p = f.p;
  FieldElement e;
  e.coeffs[0] = static_cast<std::uint32_t>(((n % p) + p) % p);
  return e;
}

FieldElement generator_t(const FieldSpec& f) {
  if (f.r == 1) return neg(f, from_int(f, f.modulus[0]));
  FieldElement e;
  e.coeffs[1] = 1;
  return e;
}

std::uint32_t to_index(const FieldSpec& f, const FieldElement& a) {
  std::uint32_t idx = 0;
  for (unsigned i = f.r; i-- > 0;) idx = idx * f.p + a.coeffs[i];
  return idx;
}

FieldElement from_index(const FieldSpec& f, std::uint32_t index) {
  if (index >= f.q) throw std::out_of_range("field element index out of range");
  FieldElement e;
  for (unsigned i = 0; i < f.r; ++i) {
    e.coeffs[i] = index % f.p;
    index /= f.p;
  }
  return e;
}

bool is_zero(const FieldElement& a) { return a == FieldElement{}; }

FieldElement add(const FieldSpec& f, const FieldElement& a, const FieldElement& b) {
  FieldElement c;
  for (unsigned i = 0; i < f.r; ++i) {
    const std::uint32_t s = a.coeffs[i] + b.coeffs[i];
    c.coeffs[i] = s >= f.p ? s - f.p : s;
  }
  return c;
}

FieldElement neg(const FieldSpec& f, const FieldElement& a) {
  FieldElement c;
  for (unsigned i = 0; i < f.r; ++i) c.coeffs[i] = a.coeffs[i] == 0 ? 0 : f.p - a.coeffs[i];
  return c;
}

FieldElement sub(const FieldSpec& f, const FieldElement& a, const FieldElement& b) {
  return add(f, a, neg(f, b));
}

FieldElement mul(const FieldSpec& f, const FieldElement& a, const FieldElement& b) {
  const std::uint64_t p = f.p;
  const unsigned r = f.r;
  std::array<std::uint64_t, 2 * kMaxDegree> prod{};
  for (unsigned i = 0; i < r; ++i) {
    if (a.coeffs[i] == 0) continue;
    for (unsigned j = 0; j < r; ++j)
      prod[i + j] = (prod[i + j] + std::uint64_t{a.coeffs[i]} * b.coeffs[j]) % p;
  }
  // Reduce by the monic modulus, top coefficient first.
  for (unsigned i = 2 * r - 1; i-- > r;) {
    const std::uint64_t c = prod[i];
    if (c == 0) continue;
    for (unsigned j = 0; j < r; ++j)
      prod[i - r + j] = (prod[i - r + j] + (p - c) * f.modulus[j]) % p;
    prod[i] = 0;
  }
  FieldElement out;
  for (unsigned i = 0; i < r; ++i) out.coeffs[i] = static_cast<std::uint32_t>(prod[i]);
  return out;
}

FieldElement pow(const FieldSpec& f, const FieldElement& a, std::uint64_t e) {
  FieldElement acc = one();
  FieldElement base = a;
  while (e) {
    if (e & 1) acc = mul(f, acc, base);
    base = mul(f, base, base);
    e >>= 1;
  }
  return acc;
}

FieldElement inv(const FieldSpec& f, const FieldElement& a) {
  if (is_zero(a)) throw std::domain_error("inverse of zero");
  return pow(f, a, f.q - 2);
}

FieldElement frobenius(const FieldSpec& f, const FieldElement& a, unsigned k) {
  k %= f.r;
  return pow(f, a, ipow(f.p, k));
}

bool is_square(const FieldSpec& f, const FieldElement& a) {
  if (f.p == 2 || is_zero(a)) return true;
  return pow(f, a, (f.q - 1) / 2) == one();
}

FieldElement primitive_element(const FieldSpec& f) {
  const auto primes = prime_divisors(f.q - 1);
  for (std::uint32_t idx = 1; idx < f.q; ++idx) {
    const FieldElement a = from_index(f, idx);
    bool ok = true;
    for (std::uint64_t l : primes) {
      if (pow(f, a, (f.q - 1) / l) == one()) {
        ok = false;
        break;
      }
    }
    if (ok) return a;
  }
  return one();  // GF(2): the multiplicative group is trivial
}

FieldElement least_nonsquare(const FieldSpec& f) {
  if (f.p == 2) throw std::domain_error("every element is a square in characteristic 2");
  for (std::uint32_t idx = 1; idx < f.q; ++idx) {
    const FieldElement a = from_index(f, idx);
    if (!is_square(f, a)) return a;
  }
  throw std::logic_error("no non-square found");
}

std::string to_string(const FieldSpec& f, const FieldElement& a) {
  std::ostringstream out;
  bool first = true;
  for (unsigned i = f.r; i-- > 0;) {
    const std::uint32_t c = a.coeffs[i];
    if (c == 0) continue;
    if (!first) out << '+';
    first = false;
    if (i == 0 || c != 1) out << c;
    if (i >= 1) out << 't';
    if (i >= 2) out << '^' << i;
  }
  if (first) out << '0';
  return out.str();
}

std::string modulus_string(const FieldSpec& f) {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = f.modulus.size(); i-- > 0;) {
    const std::uint32_t c = f.modulus[i];
    if (c == 0) continue;
    if (!first) out << '+';
    first = false;
    if (i == 0 || c != 1) out << c;
    if (i >= 1) out << 't';
    if (i >= 2) out << '^' << i;
  }
  return out.str();
}

}  // namespace pglatlas::gf
