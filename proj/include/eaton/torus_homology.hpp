// Copyright 2026 The eatonflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eaton/cf_engine.hpp"
#include "eaton/numeric.hpp"

namespace eaton {

/// Point of the fundamental domain [-1/2, 1/2)^2 of the punctured torus,
/// never one of the four half-integer punctures.
class TorusPoint {
 public:
  /// Throws an input error when (x, y) is outside the domain and a singular
  /// error when it is a puncture.
  TorusPoint(Rational x, Rational y);

  const Rational& x() const { return x_; }
  const Rational& y() const { return y_; }

  /// -z reduced back into the domain.
  TorusPoint negated() const;

  bool operator==(const TorusPoint& o) const { return x_ == o.x_ && y_ == o.y_; }
  std::string to_string() const;

 private:
  Rational x_;
  Rational y_;
};

bool is_puncture(const Rational& x, const Rational& y);

/// Representative in [-1/2, 1/2) of v mod 1.
Rational reduce_coordinate(const Rational& v);

/// Unique representative of (x, y) mod Z^2. Singular error on punctures.
TorusPoint reduce(const Rational& x, const Rational& y);

/// Linear action of g on the torus followed by reduction.
TorusPoint apply_matrix(const IntegerMatrix2& g, const TorusPoint& z);

/// -1/2 <= x + y < 1/2.
bool in_S(const TorusPoint& z);

/// Membership in F = {x, y != -1/2}.
bool in_F(const TorusPoint& z);

enum class Generator { h_plus, h_minus };

const char* to_string(Generator g);
IntegerMatrix2 generator_matrix(Generator g, std::int64_t exponent = 1);

struct Letter {
  Generator gen;
  std::int64_t exponent;
};

/// Word in positive powers of h+ and h-, written left to right and applied
/// right to left (the rightmost letter acts first).
struct HWord {
  std::vector<Letter> letters;

  IntegerMatrix2 matrix() const;
  /// Letters of `other` appended on the right: (*this) * other.
  HWord operator*(const HWord& other) const;
  std::vector<std::int64_t> exponents() const;
};

/// Induced action on zero-holonomy homology. Only defined up to a global
/// sign, so equality ignores it.
struct HomologyAction {
  IntegerMatrix2 matrix;

  bool operator==(const HomologyAction& o) const {
    return matrix == o.matrix || matrix == -o.matrix;
  }
  bool is_identity() const { return *this == HomologyAction{}; }
  HomologyAction operator*(const HomologyAction& o) const {
    return {matrix * o.matrix};
  }
};

struct StarStep {
  TorusPoint point;
  int exponent;  // +1 or -1
};

/// One generator: image point and the exponent of the induced action,
/// +1 exactly when z lies in S.
StarStep star_step(Generator gen, const TorusPoint& z);

struct StarPower {
  TorusPoint point;
  std::int64_t exponent;
};

/// Closed form for gen^n: write y + n x (for h-) or x + n y (for h+) as
/// k + {{.}} with {{.}} in [-1/2, 1/2); the exponent is n - 2|k|.
StarPower star_power(Generator gen, std::int64_t n, const TorusPoint& z);

/// Record of one letter of a word evaluation.
struct LetterTrace {
  Letter letter;
  TorusPoint before;
  TorusPoint after;
  std::int64_t induced_exponent;  // net exponent of the letter's induced action
};

struct StarWordResult {
  TorusPoint point;
  HomologyAction action;
  std::vector<LetterTrace> trace;  // in evaluation order (rightmost first)
};

/// Evaluates the chain rule letter by letter, one generator at a time. On a
/// puncture the singular error names the offending letter and step.
StarWordResult star_word(const HWord& w, const TorusPoint& z);

/// g_z(n) = h+^{d-1} h- h+ h-^d h+^n h-^{a-1} h+ h- h+^a h-^n.
HWord build_g_word(std::int64_t r, std::int64_t s, std::int64_t q, std::int64_t a,
                   std::int64_t d, std::int64_t n);

struct VerificationReport {
  std::int64_t r = 0, s = 0, q = 0, m = 0;
  std::int64_t a = 0, d = 0, n = 0;
  std::optional<TorusPoint> start;
  std::optional<TorusPoint> final_point;
  HomologyAction action;
  bool fixed_point = false;
  bool action_trivial = false;
  std::vector<LetterTrace> chain;

  bool passed() const { return fixed_point && action_trivial; }
};

/// Builds g_z(8qm) for z = (r/2q, s/2q) and checks that it fixes z and acts
/// as +-identity on homology.
VerificationReport verify_g(std::int64_t r, std::int64_t s, std::int64_t q,
                            std::int64_t m);

/// True iff w induces the same action (mod sign) at z and at -z. Both points
/// and their images must lie in F.
bool negation_symmetry_check(const HWord& w, const TorusPoint& z);

}  // namespace eaton
