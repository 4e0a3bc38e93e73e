#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace asyalg
{

/// A value of B^n. Coordinate 1 is bit 0; the text form lists coordinates
/// left to right, so `"10"` has x_1 = 1 and x_2 = 0.
class bvec
{
public:
  static constexpr unsigned max_dimension = 64;

  bvec() = default;
  explicit bvec( unsigned dimension, std::uint64_t bits = 0 );

  static bvec zeros( unsigned dimension ) { return bvec( dimension ); }
  static bvec ones( unsigned dimension );

  /// Parses a string over {0,1}; nullopt on any other character or on an
  /// empty / over-long string.
  static std::optional<bvec> parse( std::string_view text );

  [[nodiscard]] unsigned dimension() const noexcept { return _dim; }
  [[nodiscard]] std::uint64_t bits() const noexcept { return _bits; }

  /// Zero-based coordinate access.
  [[nodiscard]] bool operator[]( unsigned i ) const noexcept { return ( _bits >> i ) & 1u; }
  [[nodiscard]] bvec with( unsigned i, bool value ) const;

  [[nodiscard]] bool any() const noexcept { return _bits != 0; }
  [[nodiscard]] unsigned count() const noexcept;

  bvec operator~() const;
  friend bvec operator&( const bvec& a, const bvec& b );
  friend bvec operator|( const bvec& a, const bvec& b );
  friend bvec operator^( const bvec& a, const bvec& b );

  /// Concatenation: `a` supplies the low coordinates.
  friend bvec concat( const bvec& a, const bvec& b );

  friend bool operator==( const bvec&, const bvec& ) = default;
  friend auto operator<=>( const bvec&, const bvec& ) = default;

  [[nodiscard]] std::string to_string() const;

private:
  unsigned _dim = 0;
  std::uint64_t _bits = 0;
};

} // namespace asyalg
