#pragma once

// Raw quantifier forms of the regime properties and state predicates,
// evaluated by sampling the chi-sum of unrolled events on a dense grid.
// Used to re-validate witnesses, counterexamples and membership verdicts.

#include "oracles.hpp"

#include <asyalg/constraints.hpp>
#include <asyalg/predicates.hpp>
#include <asyalg/system.hpp>

#include <map>
#include <set>

namespace oracle
{

using asyalg::signal;
using asyalg::system;

/// Events of `x` up to the later of its last transient and `periods` tail
/// repetitions, plus `extra`.
inline std::vector<event> events_of( const signal& x, std::int64_t periods, const rational& extra = 0 )
{
  auto raw = raw_of( x );
  rational h = raw.transient.empty() ? rational( 0 ) : raw.transient.back().time;
  if ( raw.tail )
    h = max( h, raw.tail->start + raw.tail->period * rational( periods ) );
  return unroll( raw, h + extra );
}

inline bvec at( const signal& x, const std::vector<event>& events, const rational& t )
{
  return chi_sum( x.initial(), events, t );
}

inline bvec before( const signal& x, const std::vector<event>& events, const rational& t )
{
  return chi_left_limit( x.initial(), events, t );
}

/// Instants where the unrolled value actually changes.
inline std::vector<rational> switches( const signal& x, const std::vector<event>& events )
{
  std::vector<rational> out;
  for ( const auto& e : events )
    if ( at( x, events, e.time ) != before( x, events, e.time ) )
      out.push_back( e.time );
  out.erase( std::unique( out.begin(), out.end() ), out.end() );
  return out;
}

/// x(-inf + 0), sampled well before every event.
inline bvec initial_of( const signal& x )
{
  auto ev = events_of( x, 1 );
  rational t = ev.empty() ? rational( 0 ) : ev.front().time - rational( 1 );
  return at( x, ev, t );
}

/// The value after every switch, or nullopt when x still changes within
/// two periods of its tail.
inline std::optional<bvec> final_of( const signal& x )
{
  auto ev = events_of( x, 3 );
  if ( ev.empty() )
    return x.initial();
  const rational last = ev.back().time;
  if ( x.tail() )
  {
    const rational from = x.tail()->start + x.tail()->period;
    std::set<bvec> seen;
    for ( const auto& e : ev )
      if ( e.time >= from )
        seen.insert( at( x, ev, e.time ) );
    seen.insert( at( x, ev, from ) );
    if ( seen.size() > 1 )
      return std::nullopt;
  }
  return at( x, ev, last + rational( 1 ) );
}

// ---------------------------------------------------------------------------
// Regime properties

inline std::optional<bvec> value_of( const signal& x, bool initial )
{
  return initial ? std::optional( initial_of( x ) ) : final_of( x );
}

/// isfs2 / isfs5: one value per input; isfs3 / isfs6: one overall.
/// Level 4 is "every state has a final value".
inline bool regime_holds( const system& f, int level )
{
  const bool initial = level <= 3;
  if ( level == 1 )
    return true;
  std::set<bvec> global;
  for ( const auto& [u, states] : f )
  {
    std::set<bvec> local;
    for ( const auto& x : states )
    {
      auto v = value_of( x, initial );
      if ( !v )
        return false;
      local.insert( *v );
    }
    if ( level == 4 )
      continue;
    if ( local.size() != 1 )
      return false;
    global.insert( local.begin(), local.end() );
  }
  return ( level != 3 && level != 6 ) || global.size() == 1;
}

/// Re-checks a positive state witness: every listed value is the value of
/// every state it covers.
inline bool state_witness_valid( const system& f, const asyalg::regime_report& r )
{
  const bool initial = r.level <= 3;
  if ( r.level == 1 || r.level == 4 )
    return true;
  for ( const auto& [u, states] : f )
  {
    std::optional<bvec> mu = r.state;
    if ( !mu )
    {
      auto it = r.state_per_input.find( u );
      if ( it == r.state_per_input.end() )
        return false;
      mu = it->second;
    }
    for ( const auto& x : states )
      if ( value_of( x, initial ) != mu )
        return false;
  }
  return true;
}

/// Re-checks a counterexample: the named states belong to the system and
/// violate the property.
inline bool counterexample_valid( const system& f, const asyalg::regime_report& r )
{
  if ( !r.counterexample )
    return false;
  const auto& c = *r.counterexample;
  const bool initial = r.level <= 3;
  const auto* fu = f.find( c.input );
  if ( !fu || !fu->contains( c.state ) )
    return false;
  if ( !c.other_state )
    return !initial && !final_of( c.state );
  const signal other_input = c.other_input ? *c.other_input : c.input;
  const auto* fv = f.find( other_input );
  if ( !fv || !fv->contains( *c.other_state ) )
    return false;
  if ( r.level == 2 || r.level == 5 )
    if ( other_input != c.input )
      return false;
  auto a = value_of( c.state, initial );
  auto b = value_of( *c.other_state, initial );
  return a && b && *a != *b;
}

/// No state of `states` switches before t0, and (maximality) some state
/// switches at t0. nullopt: every state is constant.
inline bool initial_time_valid( const asyalg::signal_set& states, const std::optional<rational>& t0 )
{
  bool attained = false;
  for ( const auto& x : states )
  {
    auto ev = events_of( x, 1 );
    auto sw = switches( x, ev );
    if ( !t0 )
    {
      if ( !sw.empty() )
        return false;
      continue;
    }
    for ( const auto& t : sw )
      if ( t < *t0 )
        return false;
    if ( !sw.empty() && sw.front() == *t0 )
      attained = true;
  }
  return !t0 || attained;
}

/// Every tail-free state of `states` is constant from t_f on, and some
/// state switches exactly at t_f. nullopt: no tail-free state switches.
inline bool final_time_valid( const asyalg::signal_set& states, const std::optional<rational>& tf )
{
  bool attained = false;
  for ( const auto& x : states )
  {
    if ( !final_of( x ) )
      continue;
    auto sw = switches( x, events_of( x, 1 ) );
    if ( !tf )
    {
      if ( !sw.empty() )
        return false;
      continue;
    }
    for ( const auto& t : sw )
      if ( t > *tf )
        return false;
    if ( !sw.empty() && sw.back() == *tf )
      attained = true;
  }
  return !tf || attained;
}

// ---------------------------------------------------------------------------
// State predicates

/// Sample instants for x: every unrolled event, the midpoints, one before
/// and one after, plus `extra` points.
inline std::vector<rational> grid_of( const std::vector<event>& events, std::vector<rational> extra = {} )
{
  auto ts = times_of( events );
  ts.insert( ts.end(), extra.begin(), extra.end() );
  return witness_grid( ts );
}

/// x stays `v` in coordinate i on the closed [lo, hi].
inline bool holds_on_closed( const signal& x, const std::vector<event>& events, unsigned i, bool v,
                             const rational& lo, const rational& hi )
{
  std::vector<rational> pts{ lo, hi };
  for ( const auto& e : events )
    if ( lo <= e.time && e.time <= hi )
      pts.push_back( e.time );
  for ( const auto& t : witness_grid( pts ) )
    if ( lo <= t && t <= hi && at( x, events, t )[i] != v )
      return false;
  return true;
}

inline bool predicate_oracle( const asyalg::state_predicate& p, const signal& x )
{
  namespace pr = asyalg::pred;
  const unsigned n = x.dimension();
  if ( std::holds_alternative<pr::null_initial>( p.kind ) )
    return !initial_of( x ).any();

  if ( std::holds_alternative<pr::monotone>( p.kind ) )
  {
    auto ev = events_of( x, 3 );
    for ( unsigned i = 0; i < n; ++i )
    {
      int changes = 0;
      bool prev = initial_of( x )[i];
      for ( const auto& t : grid_of( ev ) )
      {
        bool cur = at( x, ev, t )[i];
        changes += cur != prev;
        prev = cur;
      }
      if ( changes > 1 )
        return false;
    }
    return true;
  }

  if ( std::holds_alternative<pr::at_least_one_high>( p.kind ) )
  {
    auto ev = events_of( x, 2 );
    for ( const auto& t : grid_of( ev ) )
      if ( !at( x, ev, t ).any() )
        return false;
    return true;
  }

  if ( std::holds_alternative<pr::single_coordinate_switch>( p.kind ) )
  {
    auto ev = events_of( x, 2 );
    for ( const auto& t : grid_of( ev ) )
    {
      auto d = at( x, ev, t ) ^ before( x, ev, t );
      if ( d.any() && d.count() != 1 )
        return false;
    }
    return true;
  }

  if ( const auto* s = std::get_if<pr::stuck_at>( &p.kind ) )
  {
    auto ev = events_of( x, 2 );
    for ( const auto& t : grid_of( ev ) )
      if ( at( x, ev, t )[s->coordinate - 1] != s->value )
        return false;
    return true;
  }

  const auto& d = std::get<pr::absolute_inertia>( p.kind );
  const rational reach = max( d.rise, d.fall );
  auto ev = events_of( x, 2, reach + reach );
  rational limit = ev.empty() ? rational( 0 ) : ev.back().time - reach - reach;
  if ( !x.tail() )
    limit = ev.empty() ? rational( 0 ) : ev.back().time;
  for ( const auto& e : ev )
  {
    if ( e.time > limit )
      break;
    const bvec now = at( x, ev, e.time ), prev = before( x, ev, e.time );
    for ( unsigned i = 0; i < n; ++i )
    {
      if ( now[i] == prev[i] )
        continue;
      const bool rise = now[i];
      if ( !holds_on_closed( x, ev, i, rise, e.time, e.time + ( rise ? d.rise : d.fall ) ) )
        return false;
    }
  }
  return true;
}

/// F(u(t)) sampled from u's chi-sum.
inline bvec composed_at( const asyalg::bool_fn& fn, const signal& u, const std::vector<event>& uev,
                         const rational& t )
{
  return fn( at( u, uev, t ) );
}

inline bool inertial_oracle( const asyalg::bool_fn& fn, const rational& rise, const rational& fall,
                             const signal& u, const signal& x )
{
  rational period = 1;
  rational start = 0;
  bool periodic = false;
  for ( const auto* s : { &u, &x } )
    if ( s->tail() )
    {
      period = periodic ? asyalg::lcm( period, s->tail()->period ) : s->tail()->period;
      start = periodic ? max( start, s->tail()->start ) : s->tail()->start;
      periodic = true;
    }
  const rational reach = max( rise, fall );
  rational horizon = 0;
  for ( const auto* s : { &u, &x } )
    if ( !s->transient().empty() )
      horizon = max( horizon, s->transient().back().time );
  if ( periodic )
    horizon = max( horizon, start ) + period + period + reach;

  auto uev = unroll( raw_of( u ), horizon + reach );
  auto xev = unroll( raw_of( x ), horizon );
  for ( const auto& e : xev )
  {
    const bvec now = at( x, xev, e.time ), prev = before( x, xev, e.time );
    for ( unsigned i = 0; i < x.dimension(); ++i )
    {
      if ( now[i] == prev[i] )
        continue;
      const bool v = now[i];
      const rational lo = e.time - ( v ? rise : fall );
      std::vector<rational> pts{ lo };
      for ( const auto& ue : uev )
        if ( lo < ue.time && ue.time < e.time )
          pts.push_back( ue.time );
      for ( const auto& t : pts )
        if ( composed_at( fn, u, uev, t )[i] != v )
          return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Instance generation

/// x delayed by d.
inline signal shifted( const signal& x, const rational& d )
{
  auto raw = raw_of( x );
  for ( auto& e : raw.transient )
    e.time += d;
  if ( raw.tail )
    raw.tail->start += d;
  return raw.build();
}

/// A signal whose switches touch one coordinate at a time and that may
/// leave coordinates untouched, so monotone and stuck-at instances occur.
inline signal tame_signal( std::mt19937_64& rng, unsigned dim )
{
  auto pick = [&]( int lo, int hi ) { return std::uniform_int_distribution<int>( lo, hi )( rng ); };
  bvec v( dim, rng() );
  const bvec initial = v;
  std::vector<event> transient;
  int quarter = pick( -8, 0 );
  const unsigned active = static_cast<unsigned>( pick( 1, static_cast<int>( dim ) ) );
  for ( int k = pick( 0, 4 ); k > 0; --k )
  {
    quarter += pick( 1, 6 );
    const auto i = static_cast<unsigned>( pick( 0, static_cast<int>( active ) - 1 ) );
    v = v.with( i, !v[i] );
    transient.push_back( { rational( quarter, 4 ), v } );
  }
  return asyalg::make_signal( dim, initial, std::move( transient ) );
}

/// Gaps between consecutive switches of x, which are the exact-boundary
/// delays for inertia checks.
inline std::vector<rational> gaps_of( const signal& x )
{
  auto sw = switches( x, events_of( x, 2 ) );
  std::vector<rational> out;
  for ( std::size_t i = 1; i < sw.size(); ++i )
    out.push_back( sw[i] - sw[i - 1] );
  return out;
}

/// A positive delay: half the time an exact gap of x, else 1..8 quarters.
inline rational random_delay( std::mt19937_64& rng, const signal& x )
{
  auto gaps = gaps_of( x );
  if ( !gaps.empty() && std::bernoulli_distribution( 0.5 )( rng ) )
    return gaps[std::uniform_int_distribution<std::size_t>( 0, gaps.size() - 1 )( rng )];
  return rational( std::uniform_int_distribution<int>( 1, 8 )( rng ), 4 );
}

inline asyalg::state_predicate random_predicate( std::mt19937_64& rng, const signal& x )
{
  namespace pr = asyalg::pred;
  const unsigned n = x.dimension();
  switch ( std::uniform_int_distribution<int>( 0, 5 )( rng ) )
  {
  case 0:
    return { n, pr::null_initial{} };
  case 1:
    return { n, pr::monotone{} };
  case 2:
    return { n, pr::at_least_one_high{} };
  case 3:
    return { n, pr::single_coordinate_switch{} };
  case 4:
    return { n, pr::stuck_at{ std::uniform_int_distribution<unsigned>( 1, n )( rng ),
                              std::bernoulli_distribution( 0.5 )( rng ) } };
  default:
    return { n, pr::absolute_inertia{ random_delay( rng, x ), random_delay( rng, x ) } };
  }
}

inline asyalg::bool_fn random_bool_fn( std::mt19937_64& rng, unsigned m, unsigned n )
{
  std::vector<bvec> table;
  for ( unsigned k = 0; k < ( 1u << m ); ++k )
    table.emplace_back( n, rng() );
  return { m, n, std::move( table ) };
}

} // namespace oracle
