#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace asyalg
{

/// Exact rational number in lowest terms with a positive denominator.
///
/// Numerator and denominator are 64-bit; every operation computes in 128 bits
/// and throws `algebra_error(errc::arithmetic_overflow)` instead of wrapping.
class rational
{
public:
  constexpr rational() = default;
  rational( std::int64_t numerator ); // NOLINT(google-explicit-constructor)
  rational( std::int64_t numerator, std::int64_t denominator );

  [[nodiscard]] std::int64_t num() const noexcept { return _num; }
  [[nodiscard]] std::int64_t den() const noexcept { return _den; }

  [[nodiscard]] bool is_integer() const noexcept { return _den == 1; }

  /// Largest integer not greater than the value.
  [[nodiscard]] std::int64_t floor() const noexcept;

  friend rational operator+( const rational& a, const rational& b );
  friend rational operator-( const rational& a, const rational& b );
  friend rational operator*( const rational& a, const rational& b );
  friend rational operator/( const rational& a, const rational& b );
  rational operator-() const;

  rational& operator+=( const rational& o ) { return *this = *this + o; }
  rational& operator-=( const rational& o ) { return *this = *this - o; }

  friend bool operator==( const rational& a, const rational& b ) noexcept = default;
  friend std::strong_ordering operator<=>( const rational& a, const rational& b ) noexcept;

  /// `n` or `n/d`, always lowest terms.
  [[nodiscard]] std::string to_string() const;

  /// Accepts `[-]digits` or `[-]digits/digits`; nullopt on malformed text or
  /// a zero denominator.
  static std::optional<rational> parse( std::string_view text );

private:
  static rational from_wide( __int128 num, __int128 den );

  std::int64_t _num = 0;
  std::int64_t _den = 1;
};

rational abs( const rational& x );
rational min( const rational& a, const rational& b );
rational max( const rational& a, const rational& b );

/// Remainder of `x` modulo the positive `m`, in [0, m).
rational mod( const rational& x, const rational& m );

/// Least positive common multiple of two positive rationals: the smallest
/// positive value that is an integer multiple of both.
rational lcm( const rational& a, const rational& b );

} // namespace asyalg
