// Copyright 2026 The eatonflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "eaton/torus_homology.hpp"

#include <string>

#include "eaton/errors.hpp"

namespace eaton {

namespace {
const Rational kHalf(1, 2);
const Rational kMinusHalf(-1, 2);
}  // namespace

bool is_puncture(const Rational& x, const Rational& y) {
  const bool x_half = x == 0 || x == kMinusHalf;
  const bool y_half = y == 0 || y == kMinusHalf;
  return x_half && y_half;
}

TorusPoint::TorusPoint(Rational x, Rational y) : x_(std::move(x)), y_(std::move(y)) {
  x_.canonicalize();
  y_.canonicalize();
  if (x_ < kMinusHalf || x_ >= kHalf || y_ < kMinusHalf || y_ >= kHalf)
    throw input_error("point (" + x_.get_str() + ", " + y_.get_str() +
                      ") is outside [-1/2, 1/2)^2");
  if (is_puncture(x_, y_))
    throw singular_error("point (" + x_.get_str() + ", " + y_.get_str() +
                         ") is a puncture");
}

TorusPoint TorusPoint::negated() const { return reduce(-x_, -y_); }

std::string TorusPoint::to_string() const {
  return "(" + x_.get_str() + ", " + y_.get_str() + ")";
}

Rational reduce_coordinate(const Rational& v) {
  Rational out = v - Rational(floor(v + kHalf));
  out.canonicalize();
  return out;
}

TorusPoint reduce(const Rational& x, const Rational& y) {
  Rational rx = reduce_coordinate(x), ry = reduce_coordinate(y);
  if (is_puncture(rx, ry))
    throw singular_error("(" + x.get_str() + ", " + y.get_str() +
                         ") reduces to the puncture (" + rx.get_str() + ", " +
                         ry.get_str() + ")");
  return TorusPoint(std::move(rx), std::move(ry));
}

TorusPoint apply_matrix(const IntegerMatrix2& g, const TorusPoint& z) {
  const Rational ga(g.a), gb(g.b), gc(g.c), gd(g.d);
  return reduce(ga * z.x() + gb * z.y(), gc * z.x() + gd * z.y());
}

bool in_S(const TorusPoint& z) {
  const Rational sum = z.x() + z.y();
  return kMinusHalf <= sum && sum < kHalf;
}

bool in_F(const TorusPoint& z) { return z.x() != kMinusHalf && z.y() != kMinusHalf; }

const char* to_string(Generator g) { return g == Generator::h_plus ? "h+" : "h-"; }

IntegerMatrix2 generator_matrix(Generator g, std::int64_t exponent) {
  return g == Generator::h_plus ? IntegerMatrix2::h_plus(exponent)
                                : IntegerMatrix2::h_minus(exponent);
}

IntegerMatrix2 HWord::matrix() const {
  IntegerMatrix2 m;
  for (const Letter& l : letters) m = m * generator_matrix(l.gen, l.exponent);
  return m;
}

HWord HWord::operator*(const HWord& other) const {
  HWord out = *this;
  out.letters.insert(out.letters.end(), other.letters.begin(), other.letters.end());
  return out;
}

std::vector<std::int64_t> HWord::exponents() const {
  std::vector<std::int64_t> out;
  out.reserve(letters.size());
  for (const Letter& l : letters) out.push_back(l.exponent);
  return out;
}

StarStep star_step(Generator gen, const TorusPoint& z) {
  const int exponent = in_S(z) ? 1 : -1;
  return {apply_matrix(generator_matrix(gen), z), exponent};
}

StarPower star_power(Generator gen, std::int64_t n, const TorusPoint& z) {
  if (n < 0) throw input_error("star_power exponent must be non-negative");
  const Rational nn(static_cast<long>(n));
  // The coordinate that moves; the other one is fixed by every step.
  const Rational moved =
      gen == Generator::h_minus ? z.y() + nn * z.x() : z.x() + nn * z.y();
  const Integer k = floor(moved + kHalf);
  const Integer exponent = Integer(static_cast<long>(n)) - 2 * abs(k);
  TorusPoint image = gen == Generator::h_minus ? reduce(z.x(), moved)
                                               : reduce(moved, z.y());
  return {std::move(image), to_int64(exponent)};
}

StarWordResult star_word(const HWord& w, const TorusPoint& z) {
  StarWordResult out{z, HomologyAction{}, {}};
  out.trace.reserve(w.letters.size());
  for (std::size_t li = w.letters.size(); li-- > 0;) {
    const Letter& letter = w.letters[li];
    if (letter.exponent < 1) throw input_error("word exponents must be >= 1");
    const TorusPoint before = out.point;
    const IntegerMatrix2 unit = generator_matrix(letter.gen);
    const IntegerMatrix2 unit_inv = generator_matrix(letter.gen, -1);
    std::int64_t net = 0;
    for (std::int64_t step = 0; step < letter.exponent; ++step) {
      try {
        StarStep s = star_step(letter.gen, out.point);
        out.action.matrix = (s.exponent > 0 ? unit : unit_inv) * out.action.matrix;
        out.point = std::move(s.point);
        net += s.exponent;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::singular) throw;
        throw singular_error("letter " + std::to_string(li + 1) + " (" +
                             to_string(letter.gen) + "^" +
                             std::to_string(letter.exponent) + "), step " +
                             std::to_string(step + 1) + ": " + e.what());
      }
    }
    out.trace.push_back({letter, before, out.point, net});
  }
  return out;
}

HWord build_g_word(std::int64_t r, std::int64_t s, std::int64_t q, std::int64_t a,
                   std::int64_t d, std::int64_t n) {
  check_slit_parameters(r, s, q);
  // The congruences are checked against the endpoint the word was solved
  // for: (-r, -s) when s < 0.
  const std::int64_t rr = s > 0 ? r : -r, ss = s > 0 ? s : -s;
  const std::int64_t m2 = 2 * q;
  auto congruent = [m2](std::int64_t x, std::int64_t target) {
    return ((x - target) % m2 + m2) % m2 == 0;
  };
  if (!(4 * q < a && a <= 6 * q && 4 * q < d && d <= 6 * q))
    throw input_error("a and d must lie in (4q, 6q]");
  if (!congruent(rr + a * ss, -q)) throw input_error("r + a s is not -q mod 2q");
  if (!congruent(d * ss - rr, -q)) throw input_error("d s - r is not -q mod 2q");
  if (n <= 0 || n % (8 * q) != 0)
    throw input_error("n must be a positive multiple of 8q");
  using G = Generator;
  return HWord{{{G::h_plus, d - 1}, {G::h_minus, 1}, {G::h_plus, 1}, {G::h_minus, d},
                {G::h_plus, n}, {G::h_minus, a - 1}, {G::h_plus, 1}, {G::h_minus, 1},
                {G::h_plus, a}, {G::h_minus, n}}};
}

VerificationReport verify_g(std::int64_t r, std::int64_t s, std::int64_t q,
                            std::int64_t m) {
  check_slit_parameters(r, s, q);
  if (m < 1) throw input_error("m must be >= 1");
  VerificationReport rep;
  rep.r = r;
  rep.s = s;
  rep.q = q;
  rep.m = m;
  std::tie(rep.a, rep.d) = endpoint_ad(r, s, q);
  rep.n = 8 * q * m;
  const TorusPoint z(Rational(r, 2 * q), Rational(s, 2 * q));
  rep.start = z;
  const HWord w = build_g_word(r, s, q, rep.a, rep.d, rep.n);
  StarWordResult res = star_word(w, z);
  rep.final_point = res.point;
  rep.action = res.action;
  rep.fixed_point = res.point == z;
  rep.action_trivial = res.action.is_identity();
  rep.chain = std::move(res.trace);
  return rep;
}

bool negation_symmetry_check(const HWord& w, const TorusPoint& z) {
  if (!in_F(z)) throw input_error("z = " + z.to_string() + " is not in F");
  const TorusPoint minus_z = z.negated();
  if (!in_F(minus_z)) throw input_error("-z is not in F");
  const StarWordResult plus = star_word(w, z);
  const StarWordResult minus = star_word(w, minus_z);
  if (!in_F(plus.point) || !in_F(minus.point))
    throw input_error("the word maps z or -z outside F");
  return plus.action == minus.action;
}

}  // namespace eaton
