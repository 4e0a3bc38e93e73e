#include <asyalg/bvec.hpp>

#include <asyalg/error.hpp>

#include <bit>

namespace asyalg
{

namespace
{

std::uint64_t mask_for( unsigned dim )
{
  return dim >= 64 ? ~std::uint64_t( 0 ) : ( ( std::uint64_t( 1 ) << dim ) - 1 );
}

void require_same( const bvec& a, const bvec& b )
{
  if ( a.dimension() != b.dimension() )
    throw algebra_error( errc::dimension_mismatch, "Boolean vectors of dimensions " + std::to_string( a.dimension() ) +
                                                       " and " + std::to_string( b.dimension() ) );
}

} // namespace

bvec::bvec( unsigned dimension, std::uint64_t bits ) : _dim( dimension ), _bits( bits & mask_for( dimension ) )
{
  if ( dimension == 0 || dimension > max_dimension )
    throw algebra_error( errc::dimension_mismatch, "Boolean vector dimension must be in [1, 64], got " +
                                                       std::to_string( dimension ) );
}

bvec bvec::ones( unsigned dimension ) { return bvec( dimension, ~std::uint64_t( 0 ) ); }

std::optional<bvec> bvec::parse( std::string_view text )
{
  if ( text.empty() || text.size() > max_dimension )
    return std::nullopt;
  std::uint64_t bits = 0;
  for ( std::size_t i = 0; i < text.size(); ++i )
  {
    if ( text[i] == '1' )
      bits |= std::uint64_t( 1 ) << i;
    else if ( text[i] != '0' )
      return std::nullopt;
  }
  return bvec( static_cast<unsigned>( text.size() ), bits );
}

bvec bvec::with( unsigned i, bool value ) const
{
  bvec r = *this;
  if ( value )
    r._bits |= std::uint64_t( 1 ) << i;
  else
    r._bits &= ~( std::uint64_t( 1 ) << i );
  return r;
}

unsigned bvec::count() const noexcept { return static_cast<unsigned>( std::popcount( _bits ) ); }

bvec bvec::operator~() const { return bvec( _dim, ~_bits ); }

bvec operator&( const bvec& a, const bvec& b )
{
  require_same( a, b );
  return bvec( a._dim, a._bits & b._bits );
}

bvec operator|( const bvec& a, const bvec& b )
{
  require_same( a, b );
  return bvec( a._dim, a._bits | b._bits );
}

bvec operator^( const bvec& a, const bvec& b )
{
  require_same( a, b );
  return bvec( a._dim, a._bits ^ b._bits );
}

bvec concat( const bvec& a, const bvec& b )
{
  unsigned dim = a._dim + b._dim;
  if ( dim > bvec::max_dimension )
    throw algebra_error( errc::dimension_mismatch, "concatenated dimension exceeds 64" );
  return bvec( dim, a._bits | ( b._bits << a._dim ) );
}

std::string bvec::to_string() const
{
  std::string s( _dim, '0' );
  for ( unsigned i = 0; i < _dim; ++i )
    if ( ( *this )[i] )
      s[i] = '1';
  return s;
}

} // namespace asyalg
