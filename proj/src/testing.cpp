#include <asyalg/testing.hpp>

#include <asyalg/error.hpp>

namespace asyalg
{

const char* to_string( verdict v )
{
  switch ( v )
  {
  case verdict::good:
    return "Good";
  case verdict::bad:
    return "Bad";
  case verdict::ambiguous:
    return "Ambiguous";
  case verdict::foreign_state:
    return "ForeignState";
  }
  return "?";
}

signal_set find_distinguishing_inputs( const system& f, const system& g )
{
  if ( f.input_dim() != g.input_dim() || f.state_dim() != g.state_dim() )
    throw algebra_error( errc::dimension_mismatch, "testgen: the models have different dimensions" );
  signal_set out( f.input_dim() );
  for ( const auto& [u, fu] : f )
    if ( const auto* gu = g.find( u ); gu && !intersects( fu, *gu ) )
      out.insert( u );
  return out;
}

verdict classify_state( const system& f, const system& g, const signal& u, const signal& x )
{
  if ( f.input_dim() != g.input_dim() || f.state_dim() != g.state_dim() )
    throw algebra_error( errc::dimension_mismatch, "classify: the models have different dimensions" );
  if ( u.dimension() != f.input_dim() || x.dimension() != f.state_dim() )
    throw algebra_error( errc::dimension_mismatch, "classify: input or state of the wrong dimension" );
  const auto* fu = f.find( u );
  const auto* gu = g.find( u );
  if ( !fu || !gu )
    throw algebra_error( errc::input_not_shared, "input " + u.to_string() + " is not an input of both models" );
  const bool in_f = fu->contains( x );
  const bool in_g = gu->contains( x );
  if ( in_f && in_g )
    return verdict::ambiguous;
  if ( in_f )
    return verdict::good;
  if ( in_g )
    return verdict::bad;
  return verdict::foreign_state;
}

} // namespace asyalg
