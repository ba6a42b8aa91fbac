#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace grassp {

/// Extended integer used for inputs, state fields and outputs.
///
/// Finite values are exact 64-bit integers; overflow raises EvalError instead
/// of wrapping. The infinities absorb finite operands. Eof marks the end of
/// an input stream and supports equality only.
class Scalar {
 public:
  enum class Kind : std::uint8_t { kInt, kNegInf, kPosInf, kEof };

  constexpr Scalar() = default;
  constexpr Scalar(std::int64_t value) : value_(value) {}  // NOLINT

  static constexpr Scalar neg_inf() { return Scalar(Kind::kNegInf); }
  static constexpr Scalar pos_inf() { return Scalar(Kind::kPosInf); }
  static constexpr Scalar eof() { return Scalar(Kind::kEof); }

  constexpr Kind kind() const { return kind_; }
  constexpr bool is_int() const { return kind_ == Kind::kInt; }
  constexpr bool is_eof() const { return kind_ == Kind::kEof; }
  constexpr bool is_infinite() const {
    return kind_ == Kind::kNegInf || kind_ == Kind::kPosInf;
  }
  // Only meaningful for kInt.
  constexpr std::int64_t value() const { return value_; }

  friend constexpr bool operator==(const Scalar&, const Scalar&) = default;

 private:
  constexpr explicit Scalar(Kind kind) : kind_(kind) {}

  Kind kind_ = Kind::kInt;
  std::int64_t value_ = 0;
};

// -inf < ints < +inf. Throws EvalError("Eof is unordered") if either side is
// Eof.
std::strong_ordering compare(const Scalar& a, const Scalar& b);

// A total order used for sorting constant lists: Eof sorts after +inf.
bool sort_before(const Scalar& a, const Scalar& b);

Scalar add(const Scalar& a, const Scalar& b);
Scalar sub(const Scalar& a, const Scalar& b);
Scalar mul(const Scalar& a, const Scalar& b);
Scalar min_of(const Scalar& a, const Scalar& b);
Scalar max_of(const Scalar& a, const Scalar& b);

std::string to_string(const Scalar& s);
std::ostream& operator<<(std::ostream& os, const Scalar& s);

// Accepts integers, "-inf", "+inf" (or "inf") and "eof".
std::optional<Scalar> parse_scalar(std::string_view token);

}  // namespace grassp
