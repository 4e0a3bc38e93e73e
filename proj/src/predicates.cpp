#include <asyalg/predicates.hpp>

#include <asyalg/error.hpp>

namespace asyalg
{

namespace
{

void require_level( int level, int lo, int hi )
{
  if ( level < lo || level > hi )
    throw std::invalid_argument( "level " + std::to_string( level ) + " is outside " + std::to_string( lo ) + ".." +
                                 std::to_string( hi ) );
}

using value_of = std::optional<bvec> ( * )( const signal& );

std::optional<bvec> initial_of( const signal& x ) { return x.initial(); }

/// Shared logic for isfs2/3 and isfs5/6 once every state has a value.
void value_regime( const system& f, bool global, value_of value, regime_report& r )
{
  std::optional<std::pair<signal, signal>> first; // (input, state) fixing the global value
  for ( const auto& [u, states] : f )
  {
    const signal& x0 = *states.begin();
    const bvec mu = *value( x0 );
    for ( const auto& x : states )
      if ( *value( x ) != mu )
      {
        r.holds = false;
        r.counterexample = regime_counterexample{ u, x0, std::nullopt, x };
        return;
      }
    r.state_per_input.emplace( u, mu );
    if ( !global )
      continue;
    if ( !first )
      first.emplace( u, x0 );
    else if ( *value( first->second ) != mu )
    {
      r.holds = false;
      r.counterexample = regime_counterexample{ first->first, first->second, u, x0 };
      return;
    }
  }
  if ( global )
  {
    r.state = r.state_per_input.begin()->second;
    r.state_per_input.clear();
  }
}

} // namespace

regime_report check_initial_states( const system& f, int level )
{
  require_level( level, 1, 3 );
  regime_report r;
  r.level = level;
  if ( level > 1 )
    value_regime( f, level == 3, initial_of, r );
  return r;
}

regime_report check_final_states( const system& f, int level )
{
  require_level( level, 4, 6 );
  regime_report r;
  r.level = level;
  for ( const auto& [u, states] : f )
    for ( const auto& x : states )
      if ( !x.has_final_value() )
      {
        r.holds = false;
        r.counterexample = regime_counterexample{ u, x, std::nullopt, std::nullopt };
        return r;
      }
  if ( level > 4 )
    value_regime( f, level == 6, final_value, r );
  return r;
}

regime_report check_initial_time( const system& f, int level )
{
  require_level( level, 1, 3 );
  regime_report r;
  r.level = level;
  if ( level == 1 )
    return r;
  for ( const auto& [u, states] : f )
  {
    std::optional<rational> t0;
    for ( const auto& x : states )
      if ( auto s = x.first_switch() )
        t0 = t0 ? min( *t0, *s ) : *s;
    if ( level == 2 )
      r.time_per_input.emplace( u, t0 );
    else if ( t0 )
      r.time = r.time ? min( *r.time, *t0 ) : *t0;
  }
  return r;
}

regime_report check_final_time( const system& f, int level )
{
  require_level( level, 4, 6 );
  regime_report r;
  r.level = level;
  for ( const auto& [u, states] : f )
  {
    bool any_final = false;
    std::optional<rational> tf;
    for ( const auto& x : states )
    {
      if ( !x.has_final_value() )
        continue;
      any_final = true;
      if ( auto s = x.last_switch() )
        tf = tf ? max( *tf, *s ) : *s;
    }
    if ( !any_final )
      r.vacuous_inputs.push_back( u );
    if ( level == 5 )
      r.time_per_input.emplace( u, tf );
    else if ( level == 6 && tf )
      r.time = r.time ? max( *r.time, *tf ) : *tf;
  }
  return r;
}

} // namespace asyalg
