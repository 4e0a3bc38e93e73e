#include <asyalg/system.hpp>

#include <asyalg/error.hpp>

#include <algorithm>
#include <iterator>

namespace asyalg
{

namespace
{

void require_dims( const system& f, const system& g, const char* op )
{
  if ( f.input_dim() != g.input_dim() || f.state_dim() != g.state_dim() )
    throw algebra_error( errc::dimension_mismatch,
                         std::string( op ) + ": systems of dimensions (" + std::to_string( f.input_dim() ) + "," +
                             std::to_string( f.state_dim() ) + ") and (" + std::to_string( g.input_dim() ) + "," +
                             std::to_string( g.state_dim() ) + ")" );
}

template<class Combine>
signal_set merge_sets( const signal_set& a, const signal_set& b, Combine combine )
{
  if ( a.dimension() != b.dimension() )
    throw algebra_error( errc::dimension_mismatch, "signal sets of different dimensions" );
  signal_set out( a.dimension() );
  std::vector<signal> tmp;
  combine( a.begin(), a.end(), b.begin(), b.end(), std::back_inserter( tmp ) );
  for ( auto& x : tmp )
    out.insert( std::move( x ) );
  return out;
}

} // namespace

signal_set::signal_set( unsigned dimension ) : _dim( dimension ) {}

signal_set::signal_set( unsigned dimension, std::initializer_list<signal> members ) : _dim( dimension )
{
  for ( const auto& x : members )
    insert( x );
}

bool signal_set::insert( signal x )
{
  if ( x.dimension() != _dim )
    throw algebra_error( errc::dimension_mismatch, "signal " + x.to_string() + " in a set of dimension " +
                                                       std::to_string( _dim ) );
  return _members.insert( std::move( x ) ).second;
}

signal_set set_intersection( const signal_set& a, const signal_set& b )
{
  return merge_sets( a, b, []( auto... args ) { std::set_intersection( args... ); } );
}

signal_set set_union( const signal_set& a, const signal_set& b )
{
  return merge_sets( a, b, []( auto... args ) { std::set_union( args... ); } );
}

signal_set set_difference( const signal_set& a, const signal_set& b )
{
  return merge_sets( a, b, []( auto... args ) { std::set_difference( args... ); } );
}

bool is_subset( const signal_set& a, const signal_set& b )
{
  return a.dimension() == b.dimension() && std::includes( b.begin(), b.end(), a.begin(), a.end() );
}

bool intersects( const signal_set& a, const signal_set& b )
{
  auto i = a.begin();
  auto j = b.begin();
  while ( i != a.end() && j != b.end() )
  {
    if ( *i < *j )
      ++i;
    else if ( *j < *i )
      ++j;
    else
      return true;
  }
  return false;
}

system::system( unsigned input_dim, unsigned state_dim, map_type entries )
    : _m( input_dim ), _n( state_dim ), _map( std::move( entries ) )
{
  if ( _map.empty() )
    throw algebra_error( errc::invalid_system, "a system needs at least one input" );
  for ( const auto& [u, states] : _map )
  {
    if ( u.dimension() != _m )
      throw algebra_error( errc::dimension_mismatch, "input " + u.to_string() + " is not an " +
                                                         std::to_string( _m ) + "-signal" );
    if ( states.dimension() != _n )
      throw algebra_error( errc::dimension_mismatch, "states of input " + u.to_string() + " are not " +
                                                         std::to_string( _n ) + "-signals" );
    if ( states.empty() )
      throw algebra_error( errc::invalid_system, "empty state set for input " + u.to_string() );
  }
}

system system::from_entries( unsigned input_dim, unsigned state_dim,
                             const std::vector<std::pair<signal, std::vector<signal>>>& entries )
{
  map_type map;
  for ( const auto& [u, states] : entries )
  {
    auto [it, fresh] = map.try_emplace( u, state_dim );
    for ( const auto& x : states )
      it->second.insert( x );
  }
  return system( input_dim, state_dim, std::move( map ) );
}

const signal_set* system::find( const signal& u ) const
{
  auto it = _map.find( u );
  return it == _map.end() ? nullptr : &it->second;
}

const signal_set& system::at( const signal& u ) const
{
  if ( auto* s = find( u ) )
    return *s;
  throw algebra_error( errc::input_not_shared, "input " + u.to_string() + " is not in the domain" );
}

signal_set system::domain() const
{
  signal_set out( _m );
  for ( const auto& entry : _map )
    out.insert( entry.first );
  return out;
}

system intersect( const system& f, const system& g )
{
  require_dims( f, g, "intersect" );
  system::map_type out;
  for ( const auto& [u, fu] : f )
  {
    const auto* gu = g.find( u );
    if ( !gu )
      continue;
    auto common = set_intersection( fu, *gu );
    if ( !common.empty() )
      out.emplace( u, std::move( common ) );
  }
  if ( out.empty() )
    throw algebra_error( errc::incompatible_systems, "no input u in U cap V with f(u) cap g(u) non-empty" );
  return system( f.input_dim(), f.state_dim(), std::move( out ) );
}

union_result unite_reporting( const system& f, const system& g )
{
  require_dims( f, g, "unite" );
  system::map_type out = f.entries();
  bool disjoint = true;
  for ( const auto& [u, gu] : g )
  {
    auto [it, fresh] = out.try_emplace( u, gu );
    if ( !fresh )
    {
      disjoint = false;
      it->second = set_union( it->second, gu );
    }
  }
  return { system( f.input_dim(), f.state_dim(), std::move( out ) ), disjoint };
}

system unite( const system& f, const system& g ) { return unite_reporting( f, g ).result; }

bool is_subsystem( const system& f, const system& g )
{
  if ( f.input_dim() != g.input_dim() || f.state_dim() != g.state_dim() )
    return false;
  for ( const auto& [u, fu] : f )
  {
    const auto* gu = g.find( u );
    if ( !gu || !is_subset( fu, *gu ) )
      return false;
  }
  return true;
}

state_function initial_state_function( const system& f )
{
  state_function out;
  for ( const auto& [u, states] : f )
  {
    auto& values = out.per_input[u];
    for ( const auto& x : states )
      values.insert( x.initial() );
    out.values.insert( values.begin(), values.end() );
  }
  return out;
}

state_function final_state_function( const system& f )
{
  state_function out;
  for ( const auto& [u, states] : f )
  {
    auto& values = out.per_input[u];
    for ( const auto& x : states )
    {
      auto v = final_value( x );
      if ( !v )
        throw algebra_error( errc::not_absolutely_stable, "state " + x.to_string() + " of input " + u.to_string() +
                                                              " has no final value" );
      values.insert( *v );
    }
    out.values.insert( values.begin(), values.end() );
  }
  return out;
}

system restrict_to_initial( const system& f, const bvec& mu )
{
  system::map_type out;
  for ( const auto& [u, states] : f )
  {
    signal_set kept( f.state_dim() );
    for ( const auto& x : states )
      if ( x.initial() == mu )
        kept.insert( x );
    if ( !kept.empty() )
      out.emplace( u, std::move( kept ) );
  }
  if ( out.empty() )
    throw algebra_error( errc::not_an_initial_state, mu.to_string() + " is not an initial state of the system" );
  return system( f.input_dim(), f.state_dim(), std::move( out ) );
}

system dual( const system& f )
{
  system::map_type out;
  for ( const auto& [u, states] : f )
  {
    signal_set flipped( f.state_dim() );
    for ( const auto& x : states )
      flipped.insert( complement( x ) );
    out.emplace( complement( u ), std::move( flipped ) );
  }
  return system( f.input_dim(), f.state_dim(), std::move( out ) );
}

system inverse( const system& f )
{
  system::map_type out;
  for ( const auto& [u, states] : f )
    for ( const auto& x : states )
      out.try_emplace( x, f.input_dim() ).first->second.insert( u );
  return system( f.state_dim(), f.input_dim(), std::move( out ) );
}

namespace
{

signal_set set_product( const signal_set& a, const signal_set& b )
{
  signal_set out( a.dimension() + b.dimension() );
  for ( const auto& x : a )
    for ( const auto& y : b )
      out.insert( product( x, y ) );
  return out;
}

} // namespace

system cartesian( const system& f, const system& g )
{
  system::map_type out;
  for ( const auto& [u, fu] : f )
    for ( const auto& [v, gv] : g )
      out.emplace( product( u, v ), set_product( fu, gv ) );
  return system( f.input_dim() + g.input_dim(), f.state_dim() + g.state_dim(), std::move( out ) );
}

system parallel( const system& f, const system& g )
{
  if ( f.input_dim() != g.input_dim() )
    throw algebra_error( errc::dimension_mismatch, "parallel connection needs equal input dimensions" );
  system::map_type out;
  for ( const auto& [u, fu] : f )
    if ( const auto* gu = g.find( u ) )
      out.emplace( u, set_product( fu, *gu ) );
  if ( out.empty() )
    throw algebra_error( errc::empty_domain, "parallel connection: the input domains are disjoint" );
  return system( f.input_dim(), f.state_dim() + g.state_dim(), std::move( out ) );
}

system serial( const system& h, const system& f, serial_mode mode )
{
  if ( h.input_dim() != f.state_dim() )
    throw algebra_error( errc::dimension_mismatch, "serial connection: h has input dimension " +
                                                       std::to_string( h.input_dim() ) + ", f has state dimension " +
                                                       std::to_string( f.state_dim() ) );
  system::map_type out;
  for ( const auto& [u, states] : f )
  {
    signal_set image( h.state_dim() );
    for ( const auto& x : states )
    {
      const auto* hx = h.find( x );
      if ( !hx )
      {
        if ( mode == serial_mode::strict )
          throw algebra_error( errc::state_outside_domain, "state " + x.to_string() + " is not an input of h" );
        continue;
      }
      for ( const auto& y : *hx )
        image.insert( y );
    }
    if ( !image.empty() )
      out.emplace( u, std::move( image ) );
  }
  if ( out.empty() )
    throw algebra_error( errc::empty_domain, "serial connection: no input u with f(u) cap X non-empty" );
  return system( f.input_dim(), h.state_dim(), std::move( out ) );
}

system intersect_with_predicate( const system& f, const state_filter& member )
{
  system::map_type out;
  for ( const auto& [u, states] : f )
  {
    signal_set kept( f.state_dim() );
    for ( const auto& x : states )
      if ( member( x ) )
        kept.insert( x );
    if ( !kept.empty() )
      out.emplace( u, std::move( kept ) );
  }
  if ( out.empty() )
    throw algebra_error( errc::incompatible_systems, "no state of the system satisfies the constraint" );
  return system( f.input_dim(), f.state_dim(), std::move( out ) );
}

system unite_with_constant( const system& f, const signal_set& x, const signal_set& universe )
{
  if ( x.dimension() != f.state_dim() || universe.dimension() != f.input_dim() )
    throw algebra_error( errc::dimension_mismatch, "unite_with_constant: dimension mismatch" );
  if ( x.empty() )
    throw algebra_error( errc::invalid_system, "unite_with_constant: the constant set must be non-empty" );
  for ( const auto& entry : f )
    if ( !universe.contains( entry.first ) )
      throw algebra_error( errc::universe_too_small, "input " + entry.first.to_string() + " is missing from the universe" );
  system::map_type out;
  for ( const auto& u : universe )
  {
    const auto* fu = f.find( u );
    out.emplace( u, fu ? set_union( *fu, x ) : x );
  }
  return system( f.input_dim(), f.state_dim(), std::move( out ) );
}

signal_set state_union( const system& f )
{
  signal_set out( f.state_dim() );
  for ( const auto& entry : f )
    for ( const auto& x : entry.second )
      out.insert( x );
  return out;
}

} // namespace asyalg
