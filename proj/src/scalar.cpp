#include "grassp/scalar.hpp"

#include <charconv>
#include <ostream>

#include "grassp/error.hpp"

namespace grassp {
namespace {

int rank(const Scalar& s) {
  switch (s.kind()) {
    case Scalar::Kind::kNegInf:
      return 0;
    case Scalar::Kind::kInt:
      return 1;
    case Scalar::Kind::kPosInf:
      return 2;
    case Scalar::Kind::kEof:
      return 3;
  }
  return 3;
}

void require_arithmetic(const Scalar& a, const Scalar& b, const char* op) {
  if (a.is_eof() || b.is_eof()) {
    throw EvalError(std::string("Eof is not a number (operator ") + op + ")");
  }
}

// -1, 0, +1 for finite values; infinities carry their own sign.
int sign(const Scalar& s) {
  if (s.kind() == Scalar::Kind::kNegInf) return -1;
  if (s.kind() == Scalar::Kind::kPosInf) return 1;
  return (s.value() > 0) - (s.value() < 0);
}

Scalar infinity_with_sign(int sign) {
  return sign < 0 ? Scalar::neg_inf() : Scalar::pos_inf();
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : Error([&] {
        std::string msg = "invalid program:";
        for (const auto& v : violations) msg += " " + v + ";";
        return msg;
      }()),
      violations_(std::move(violations)) {}

std::strong_ordering compare(const Scalar& a, const Scalar& b) {
  if (a.is_eof() || b.is_eof()) throw EvalError("Eof is unordered");
  if (a.is_int() && b.is_int()) return a.value() <=> b.value();
  return rank(a) <=> rank(b);
}

bool sort_before(const Scalar& a, const Scalar& b) {
  if (a.is_int() && b.is_int()) return a.value() < b.value();
  return rank(a) < rank(b);
}

Scalar add(const Scalar& a, const Scalar& b) {
  require_arithmetic(a, b, "+");
  if (a.is_infinite() || b.is_infinite()) {
    if (a.is_infinite() && b.is_infinite() && a != b) {
      throw EvalError("-inf + +inf is undefined");
    }
    return a.is_infinite() ? a : b;
  }
  std::int64_t r = 0;
  if (__builtin_add_overflow(a.value(), b.value(), &r)) {
    throw EvalError("integer overflow in +");
  }
  return r;
}

Scalar sub(const Scalar& a, const Scalar& b) {
  require_arithmetic(a, b, "-");
  if (a.is_infinite() || b.is_infinite()) {
    if (a.is_infinite() && a == b) throw EvalError("inf - inf is undefined");
    return a.is_infinite() ? a : infinity_with_sign(-sign(b));
  }
  std::int64_t r = 0;
  if (__builtin_sub_overflow(a.value(), b.value(), &r)) {
    throw EvalError("integer overflow in -");
  }
  return r;
}

Scalar mul(const Scalar& a, const Scalar& b) {
  require_arithmetic(a, b, "*");
  if (a.is_infinite() || b.is_infinite()) {
    int s = sign(a) * sign(b);
    if (s == 0) throw EvalError("0 * inf is undefined");
    return infinity_with_sign(s);
  }
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a.value(), b.value(), &r)) {
    throw EvalError("integer overflow in *");
  }
  return r;
}

Scalar min_of(const Scalar& a, const Scalar& b) {
  return compare(a, b) <= 0 ? a : b;
}

Scalar max_of(const Scalar& a, const Scalar& b) {
  return compare(a, b) >= 0 ? a : b;
}

std::string to_string(const Scalar& s) {
  switch (s.kind()) {
    case Scalar::Kind::kNegInf:
      return "-inf";
    case Scalar::Kind::kPosInf:
      return "+inf";
    case Scalar::Kind::kEof:
      return "eof";
    case Scalar::Kind::kInt:
      break;
  }
  return std::to_string(s.value());
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) {
  return os << to_string(s);
}

std::optional<Scalar> parse_scalar(std::string_view token) {
  if (token == "-inf") return Scalar::neg_inf();
  if (token == "+inf" || token == "inf") return Scalar::pos_inf();
  if (token == "eof") return Scalar::eof();
  if (token.empty()) return std::nullopt;
  std::int64_t value = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (*first == '+') {
    ++first;
    if (first != last && *first == '-') return std::nullopt;
  }
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) return std::nullopt;
  return Scalar(value);
}

}  // namespace grassp
