#include <asyalg/rational.hpp>

#include <asyalg/error.hpp>

#include <charconv>
#include <limits>
#include <numeric>

namespace asyalg
{

namespace
{

using wide = __int128;

wide wide_gcd( wide a, wide b )
{
  if ( a < 0 )
    a = -a;
  if ( b < 0 )
    b = -b;
  while ( b != 0 )
  {
    wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

[[noreturn]] void overflow()
{
  throw algebra_error( errc::arithmetic_overflow, "rational arithmetic overflow" );
}

bool fits( wide v )
{
  return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
}

} // namespace

rational::rational( std::int64_t numerator ) : _num( numerator ), _den( 1 ) {}

rational::rational( std::int64_t numerator, std::int64_t denominator )
{
  if ( denominator == 0 )
    throw algebra_error( errc::invalid_signal, "rational with zero denominator" );
  *this = from_wide( numerator, denominator );
}

rational rational::from_wide( wide num, wide den )
{
  if ( den < 0 )
  {
    num = -num;
    den = -den;
  }
  wide g = wide_gcd( num, den );
  if ( g > 1 )
  {
    num /= g;
    den /= g;
  }
  if ( !fits( num ) || !fits( den ) )
    overflow();
  rational r;
  r._num = static_cast<std::int64_t>( num );
  r._den = static_cast<std::int64_t>( den );
  return r;
}

std::int64_t rational::floor() const noexcept
{
  std::int64_t q = _num / _den;
  if ( _num % _den != 0 && _num < 0 )
    --q;
  return q;
}

rational operator+( const rational& a, const rational& b )
{
  if ( a._den == b._den )
    return rational::from_wide( wide( a._num ) + b._num, a._den );
  return rational::from_wide( wide( a._num ) * b._den + wide( b._num ) * a._den, wide( a._den ) * b._den );
}

rational operator-( const rational& a, const rational& b ) { return a + ( -b ); }

rational operator*( const rational& a, const rational& b )
{
  return rational::from_wide( wide( a._num ) * b._num, wide( a._den ) * b._den );
}

rational operator/( const rational& a, const rational& b )
{
  if ( b._num == 0 )
    throw algebra_error( errc::arithmetic_overflow, "rational division by zero" );
  return rational::from_wide( wide( a._num ) * b._den, wide( a._den ) * b._num );
}

rational rational::operator-() const
{
  if ( _num == std::numeric_limits<std::int64_t>::min() )
    overflow();
  rational r = *this;
  r._num = -r._num;
  return r;
}

std::strong_ordering operator<=>( const rational& a, const rational& b ) noexcept
{
  wide lhs = wide( a._num ) * b._den;
  wide rhs = wide( b._num ) * a._den;
  if ( lhs < rhs )
    return std::strong_ordering::less;
  if ( lhs > rhs )
    return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string rational::to_string() const
{
  if ( _den == 1 )
    return std::to_string( _num );
  return std::to_string( _num ) + "/" + std::to_string( _den );
}

std::optional<rational> rational::parse( std::string_view text )
{
  auto parse_int = []( std::string_view s, bool allow_sign ) -> std::optional<std::int64_t> {
    if ( s.empty() )
      return std::nullopt;
    if ( !allow_sign && ( s.front() == '-' || s.front() == '+' ) )
      return std::nullopt;
    if ( s.front() == '+' )
      s.remove_prefix( 1 );
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars( s.data(), s.data() + s.size(), v );
    if ( ec != std::errc{} || ptr != s.data() + s.size() )
      return std::nullopt;
    return v;
  };

  auto slash = text.find( '/' );
  if ( slash == std::string_view::npos )
  {
    auto n = parse_int( text, true );
    if ( !n )
      return std::nullopt;
    return rational( *n );
  }
  auto n = parse_int( text.substr( 0, slash ), true );
  auto d = parse_int( text.substr( slash + 1 ), false );
  if ( !n || !d || *d == 0 )
    return std::nullopt;
  return rational( *n, *d );
}

rational abs( const rational& x ) { return x < rational( 0 ) ? -x : x; }
rational min( const rational& a, const rational& b ) { return b < a ? b : a; }
rational max( const rational& a, const rational& b ) { return a < b ? b : a; }

rational mod( const rational& x, const rational& m )
{
  rational q = x / m;
  return x - m * rational( q.floor() );
}

rational lcm( const rational& a, const rational& b )
{
  // For a = p/q and b = r/s in lowest terms, lcm = lcm(p, r) / gcd(q, s).
  wide p = a.num(), r = b.num();
  wide g = wide_gcd( p, r );
  wide top = p / g * r;
  wide bottom = std::gcd( a.den(), b.den() );
  if ( top < 0 )
    top = -top;
  if ( !fits( top ) )
    overflow();
  return rational( static_cast<std::int64_t>( top ), static_cast<std::int64_t>( bottom ) );
}

} // namespace asyalg
