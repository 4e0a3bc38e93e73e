#include <asyalg/constraints.hpp>

#include <asyalg/error.hpp>

#include <bit>
#include <sstream>

namespace asyalg
{

namespace
{

struct switch_point
{
  rational time;
  bvec before;
  bvec after;
};

/// Every switch up to the tail start plus `periods` full periods (or up to
/// the last switch of a tail-free signal).
std::vector<switch_point> switches( const signal& x, std::int64_t periods )
{
  std::vector<switch_point> out;
  auto first = x.first_switch();
  if ( !first )
    return out;
  rational end = x.tail() ? x.tail()->start + x.tail()->period * rational( periods ) : *x.last_switch();
  for ( const auto& t : x.switch_instants( *first, end ) )
    out.push_back( { t, left_limit( x, t ), value_at( x, t ) } );
  return out;
}

void require_dimension( unsigned expected, const signal& x, const char* what )
{
  if ( x.dimension() != expected )
    throw algebra_error( errc::dimension_mismatch, std::string( what ) + ": expected dimension " +
                                                       std::to_string( expected ) + ", got " +
                                                       std::to_string( x.dimension() ) );
}

bool holds( const pred::null_initial&, const signal& x ) { return !x.initial().any(); }

bool holds( const pred::monotone&, const signal& x )
{
  std::vector<int> count( x.dimension(), 0 );
  for ( const auto& s : switches( x, 2 ) )
  {
    const bvec diff = s.before ^ s.after;
    for ( unsigned i = 0; i < x.dimension(); ++i )
      if ( diff[i] && ++count[i] > 1 )
        return false;
  }
  return true;
}

bool holds( const pred::at_least_one_high&, const signal& x )
{
  if ( !x.initial().any() )
    return false;
  for ( const auto& s : switches( x, 1 ) )
    if ( !s.after.any() )
      return false;
  return true;
}

bool holds( const pred::single_coordinate_switch&, const signal& x )
{
  for ( const auto& s : switches( x, 1 ) )
    if ( ( s.before ^ s.after ).count() != 1 )
      return false;
  return true;
}

bool holds( const pred::stuck_at& p, const signal& x )
{
  const unsigned i = p.coordinate - 1;
  if ( x.initial()[i] != p.value )
    return false;
  for ( const auto& s : switches( x, 1 ) )
    if ( s.after[i] != p.value )
      return false;
  return true;
}

bool holds( const pred::absolute_inertia& p, const signal& x )
{
  // Switches in the first tail period need their successor, which is at
  // most one period later.
  const auto all = switches( x, 2 );
  const std::optional<rational> checked_until =
      x.tail() ? std::optional( x.tail()->start + x.tail()->period ) : std::nullopt;
  for ( unsigned i = 0; i < x.dimension(); ++i )
  {
    for ( std::size_t k = 0; k < all.size(); ++k )
    {
      const auto& s = all[k];
      if ( checked_until && s.time > *checked_until )
        break;
      if ( s.before[i] == s.after[i] )
        continue;
      const rational& delta = s.after[i] ? p.rise : p.fall;
      for ( std::size_t j = k + 1; j < all.size(); ++j )
        if ( all[j].before[i] != all[j].after[i] )
        {
          if ( all[j].time <= s.time + delta )
            return false;
          break;
        }
    }
  }
  return true;
}

rational parse_delay( std::string_view text, std::string_view whole )
{
  auto r = rational::parse( text );
  if ( !r || *r <= rational( 0 ) )
    throw std::invalid_argument( "invalid delay '" + std::string( text ) + "' in predicate '" + std::string( whole ) +
                                 "'" );
  return *r;
}

std::vector<std::string_view> split( std::string_view text, char sep )
{
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while ( true )
  {
    auto next = text.find( sep, pos );
    parts.push_back( text.substr( pos, next - pos ) );
    if ( next == std::string_view::npos )
      return parts;
    pos = next + 1;
  }
}

} // namespace

state_predicate::state_predicate( unsigned dim, kind_type k ) : dimension( dim ), kind( std::move( k ) )
{
  if ( dimension < 1 || dimension > bvec::max_dimension )
    throw std::invalid_argument( "predicate dimension out of range" );
  if ( auto* s = std::get_if<pred::stuck_at>( &kind ) )
  {
    if ( s->coordinate < 1 || s->coordinate > dimension )
      throw std::invalid_argument( "stuck-at coordinate " + std::to_string( s->coordinate ) + " outside 1.." +
                                   std::to_string( dimension ) );
  }
  if ( auto* a = std::get_if<pred::absolute_inertia>( &kind ) )
  {
    if ( a->rise <= rational( 0 ) || a->fall <= rational( 0 ) )
      throw std::invalid_argument( "inertia delays must be positive" );
  }
}

state_predicate state_predicate::parse( std::string_view text, unsigned dimension )
{
  auto parts = split( text, ':' );
  const auto& name = parts.front();
  auto arity = [&]( std::size_t n ) {
    if ( parts.size() != n + 1 )
      throw std::invalid_argument( "predicate '" + std::string( text ) + "' expects " + std::to_string( n ) +
                                   " argument(s)" );
  };
  if ( name == "null-initial" )
    return arity( 0 ), state_predicate( dimension, pred::null_initial{} );
  if ( name == "monotone" )
    return arity( 0 ), state_predicate( dimension, pred::monotone{} );
  if ( name == "at-least-one-high" )
    return arity( 0 ), state_predicate( dimension, pred::at_least_one_high{} );
  if ( name == "single-switch" )
    return arity( 0 ), state_predicate( dimension, pred::single_coordinate_switch{} );
  if ( name == "stuck-at" )
  {
    arity( 2 );
    auto i = rational::parse( parts[1] );
    if ( !i || !i->is_integer() || i->num() < 1 || ( parts[2] != "0" && parts[2] != "1" ) )
      throw std::invalid_argument( "invalid stuck-at arguments in '" + std::string( text ) + "'" );
    return state_predicate( dimension, pred::stuck_at{ static_cast<unsigned>( i->num() ), parts[2] == "1" } );
  }
  if ( name == "inertia" )
  {
    arity( 2 );
    return state_predicate( dimension, pred::absolute_inertia{ parse_delay( parts[1], text ), parse_delay( parts[2], text ) } );
  }
  throw std::invalid_argument( "unknown predicate '" + std::string( text ) + "'" );
}

std::string state_predicate::to_string() const
{
  struct visitor
  {
    std::string operator()( const pred::null_initial& ) const { return "null-initial"; }
    std::string operator()( const pred::monotone& ) const { return "monotone"; }
    std::string operator()( const pred::at_least_one_high& ) const { return "at-least-one-high"; }
    std::string operator()( const pred::single_coordinate_switch& ) const { return "single-switch"; }
    std::string operator()( const pred::stuck_at& p ) const
    {
      return "stuck-at:" + std::to_string( p.coordinate ) + ":" + ( p.value ? "1" : "0" );
    }
    std::string operator()( const pred::absolute_inertia& p ) const
    {
      return "inertia:" + p.rise.to_string() + ":" + p.fall.to_string();
    }
  };
  return std::visit( visitor{}, kind );
}

bool predicate_holds( const state_predicate& p, const signal& x )
{
  require_dimension( p.dimension, x, "predicate" );
  return std::visit( [&]( const auto& k ) { return holds( k, x ); }, p.kind );
}

bool_fn::bool_fn( unsigned input_dim, unsigned output_dim, std::vector<bvec> table )
    : _m( input_dim ), _n( output_dim ), _table( std::move( table ) )
{
  if ( _m < 1 || _m > 20 )
    throw std::invalid_argument( "truth tables support 1..20 inputs" );
  if ( _table.size() != ( std::size_t{ 1 } << _m ) )
    throw std::invalid_argument( "truth table needs " + std::to_string( std::size_t{ 1 } << _m ) + " rows" );
  for ( const auto& v : _table )
    if ( v.dimension() != _n )
      throw algebra_error( errc::dimension_mismatch, "truth table output " + v.to_string() + " is not of dimension " +
                                                         std::to_string( _n ) );
}

bool_fn bool_fn::identity( unsigned dim )
{
  std::vector<bvec> table;
  for ( std::uint64_t k = 0; k < ( std::uint64_t{ 1 } << dim ); ++k )
    table.emplace_back( dim, k );
  return bool_fn( dim, dim, std::move( table ) );
}

bool_fn bool_fn::parse( std::string_view text )
{
  std::optional<unsigned> m, n;
  std::vector<std::optional<bvec>> rows;
  std::istringstream in{ std::string( text ) };
  std::string line;
  std::size_t line_no = 0;
  while ( std::getline( in, line ) )
  {
    ++line_no;
    auto first = line.find_first_not_of( " \t\r" );
    if ( first == std::string::npos || line[first] == '#' )
      continue;
    auto arrow = line.find( "->" );
    if ( arrow == std::string::npos )
      throw parse_error( line_no, first + 1, "expected '<bits> -> <bits>'" );
    auto trim = []( std::string_view s ) {
      auto b = s.find_first_not_of( " \t\r" );
      if ( b == std::string_view::npos )
        return std::string_view{};
      auto e = s.find_last_not_of( " \t\r" );
      return s.substr( b, e - b + 1 );
    };
    auto lhs = trim( std::string_view( line ).substr( 0, arrow ) );
    auto rhs = trim( std::string_view( line ).substr( arrow + 2 ) );
    auto in_bits = bvec::parse( lhs );
    auto out_bits = bvec::parse( rhs );
    if ( !in_bits )
      throw parse_error( line_no, first + 1, "invalid input bits '" + std::string( lhs ) + "'" );
    if ( !out_bits )
      throw parse_error( line_no, arrow + 3, "invalid output bits '" + std::string( rhs ) + "'" );
    if ( !m )
    {
      m = in_bits->dimension();
      n = out_bits->dimension();
      if ( *m > 20 )
        throw parse_error( line_no, first + 1, "truth tables support at most 20 inputs" );
      rows.resize( std::size_t{ 1 } << *m );
    }
    if ( in_bits->dimension() != *m || out_bits->dimension() != *n )
      throw parse_error( line_no, first + 1, "row dimensions differ from the first row" );
    auto& slot = rows[in_bits->bits()];
    if ( slot )
      throw parse_error( line_no, first + 1, "duplicate row for input " + in_bits->to_string() );
    slot = *out_bits;
  }
  if ( !m )
    throw parse_error( line_no + 1, 1, "empty truth table" );
  std::vector<bvec> table;
  for ( std::size_t k = 0; k < rows.size(); ++k )
  {
    if ( !rows[k] )
      throw parse_error( line_no + 1, 1, "missing row for input " + bvec( *m, k ).to_string() );
    table.push_back( *rows[k] );
  }
  return bool_fn( *m, *n, std::move( table ) );
}

const bvec& bool_fn::operator()( const bvec& input ) const
{
  if ( input.dimension() != _m )
    throw algebra_error( errc::dimension_mismatch, "Boolean function of " + std::to_string( _m ) +
                                                       " inputs applied to " + input.to_string() );
  return _table[input.bits()];
}

signal compose_boolean( const bool_fn& f, const signal& u )
{
  require_dimension( f.input_dim(), u, "compose_boolean" );
  return pointwise( std::span( &u, 1 ), f.output_dim(), [&]( std::span<const bvec> v ) { return f( v[0] ); } );
}

bool inertial_membership( const bool_fn& f, const rational& rise, const rational& fall, const signal& u,
                          const signal& x )
{
  require_dimension( f.input_dim(), u, "inertial input" );
  require_dimension( f.output_dim(), x, "inertial state" );
  if ( rise <= rational( 0 ) || fall <= rational( 0 ) )
    throw std::invalid_argument( "inertial delays must be positive" );
  const signal y = compose_boolean( f, u );

  // Past T both x and y repeat with period L, so a window that starts after
  // T gives the same verdict one period earlier.
  rational settle( 0 );
  if ( auto s = x.settle_time() )
    settle = max( settle, *s );
  if ( auto s = y.settle_time() )
    settle = max( settle, *s );
  rational period( 1 );
  if ( x.tail() )
    period = x.tail()->period;
  if ( y.tail() )
    period = x.tail() ? lcm( period, y.tail()->period ) : y.tail()->period;
  auto first = x.first_switch();
  if ( !first )
    return true;
  const rational horizon = settle + max( rise, fall ) + period;

  for ( const auto& t : x.switch_instants( *first, horizon ) )
  {
    const bvec before = left_limit( x, t );
    const bvec after = value_at( x, t );
    for ( unsigned i = 0; i < x.dimension(); ++i )
    {
      if ( before[i] == after[i] )
        continue;
      const bool v = after[i];
      const rational from = t - ( v ? rise : fall );
      if ( value_at( y, from )[i] != v )
        return false;
      for ( const auto& s : y.switch_instants( from, t ) )
        if ( s > from && s < t && value_at( y, s )[i] != v )
          return false;
    }
  }
  return true;
}

system intersect_with_predicate( const system& f, const state_predicate& p )
{
  if ( p.dimension != f.state_dim() )
    throw algebra_error( errc::dimension_mismatch, "predicate of dimension " + std::to_string( p.dimension ) +
                                                       " on states of dimension " + std::to_string( f.state_dim() ) );
  return intersect_with_predicate( f, [&]( const signal& x ) { return predicate_holds( p, x ); } );
}

system intersect_inertial( const system& f, const bool_fn& fn, const rational& rise, const rational& fall )
{
  if ( fn.input_dim() != f.input_dim() || fn.output_dim() != f.state_dim() )
    throw algebra_error( errc::dimension_mismatch, "truth table dimensions do not match the system" );
  system::map_type out;
  for ( const auto& [u, states] : f )
  {
    signal_set kept( f.state_dim() );
    for ( const auto& x : states )
      if ( inertial_membership( fn, rise, fall, u, x ) )
        kept.insert( x );
    if ( !kept.empty() )
      out.emplace( u, std::move( kept ) );
  }
  if ( out.empty() )
    throw algebra_error( errc::incompatible_systems, "no state of the system satisfies the inertial model" );
  return system( f.input_dim(), f.state_dim(), std::move( out ) );
}

} // namespace asyalg
