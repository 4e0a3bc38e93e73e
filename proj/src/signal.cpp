#include <asyalg/signal.hpp>

#include <asyalg/error.hpp>

#include <algorithm>
#include <cassert>

namespace asyalg
{

namespace
{

[[noreturn]] void invalid( const std::string& what ) { throw algebra_error( errc::invalid_signal, what ); }

void check_dimension( unsigned dimension, const bvec& v )
{
  if ( v.dimension() != dimension )
    throw algebra_error( errc::dimension_mismatch, "value " + v.to_string() + " does not have dimension " +
                                                       std::to_string( dimension ) );
}

void drop_noops( const bvec& initial, std::vector<event>& events )
{
  std::vector<event> kept;
  kept.reserve( events.size() );
  const bvec* current = &initial;
  for ( auto& e : events )
  {
    if ( e.value != *current )
    {
      kept.push_back( std::move( e ) );
      current = &kept.back().value;
    }
  }
  events = std::move( kept );
}

const bvec& last_value( const bvec& initial, const std::vector<event>& events )
{
  return events.empty() ? initial : events.back().value;
}

/// Reduces `pattern` (steady-state, all switches real) to its minimal period.
void minimize_period( periodic_tail& tail )
{
  const std::size_t k = tail.pattern.size();
  // Largest repetition count r first; r copies of a block of k/r events.
  for ( std::size_t r = k; r >= 2; --r )
  {
    if ( k % r != 0 )
      continue;
    const std::size_t block = k / r;
    const rational sub = tail.period / rational( static_cast<std::int64_t>( r ) );
    bool repeats = true;
    for ( std::size_t j = 0; j + block < k && repeats; ++j )
    {
      const auto& a = tail.pattern[j];
      const auto& b = tail.pattern[j + block];
      repeats = b.value == a.value && b.time == a.time + sub;
    }
    if ( repeats )
    {
      tail.pattern.resize( block );
      tail.period = sub;
      return;
    }
  }
}

/// Rotates the pattern so that entry `first` sits at offset 0.
void rotate_to( periodic_tail& tail, std::size_t first )
{
  if ( first == 0 )
    return;
  const rational shift = tail.pattern[first].time;
  std::vector<event> rotated;
  rotated.reserve( tail.pattern.size() );
  for ( std::size_t j = first; j < tail.pattern.size(); ++j )
    rotated.push_back( { tail.pattern[j].time - shift, tail.pattern[j].value } );
  for ( std::size_t j = 0; j < first; ++j )
    rotated.push_back( { tail.pattern[j].time + tail.period - shift, tail.pattern[j].value } );
  tail.start += shift;
  tail.pattern = std::move( rotated );
}

/// Index of the last pattern entry with offset <= `offset` (or < when
/// `strict`); -1 if none.
std::ptrdiff_t pattern_index( const periodic_tail& tail, const rational& offset, bool strict )
{
  auto it = strict ? std::lower_bound( tail.pattern.begin(), tail.pattern.end(), offset,
                                       []( const event& e, const rational& t ) { return e.time < t; } )
                   : std::upper_bound( tail.pattern.begin(), tail.pattern.end(), offset,
                                       []( const rational& t, const event& e ) { return t < e.time; } );
  return ( it - tail.pattern.begin() ) - 1;
}

} // namespace

signal::signal( bvec value ) : _initial( value )
{
  if ( value.dimension() == 0 )
    invalid( "a signal needs a positive dimension" );
}

signal make_signal( unsigned dimension, bvec initial, std::vector<event> transient, std::optional<periodic_tail> tail )
{
  check_dimension( dimension, initial );
  for ( std::size_t i = 0; i < transient.size(); ++i )
  {
    check_dimension( dimension, transient[i].value );
    if ( i > 0 && !( transient[i - 1].time < transient[i].time ) )
      invalid( "event times must be strictly increasing (at " + transient[i].time.to_string() + ")" );
  }

  signal x;
  x._initial = initial;

  if ( tail )
  {
    if ( !( tail->period > rational( 0 ) ) )
      invalid( "tail period must be positive" );
    if ( tail->pattern.empty() )
      invalid( "tail pattern must not be empty" );
    if ( !transient.empty() && !( transient.back().time < tail->start ) )
      invalid( "tail must start after the last transient event" );
    for ( std::size_t j = 0; j < tail->pattern.size(); ++j )
    {
      const auto& e = tail->pattern[j];
      check_dimension( dimension, e.value );
      if ( e.time < rational( 0 ) || !( e.time < tail->period ) )
        invalid( "tail offset " + e.time.to_string() + " outside [0, period)" );
      if ( j > 0 && !( tail->pattern[j - 1].time < e.time ) )
        invalid( "tail offsets must be strictly increasing" );
    }
  }

  drop_noops( initial, transient );

  if ( !tail )
  {
    x._transient = std::move( transient );
    return x;
  }

  // From s0 = start + first offset on, the signal is purely periodic.
  periodic_tail t = std::move( *tail );
  t.start += t.pattern.front().time;
  {
    const rational shift = t.pattern.front().time;
    for ( auto& e : t.pattern )
      e.time -= shift;
  }
  const rational s0 = t.start;
  const bvec w0 = t.pattern.front().value;

  // Steady-state switches: drop entries equal to their cyclic predecessor.
  std::vector<event> steady;
  {
    const bvec* previous = &t.pattern.back().value;
    for ( const auto& e : t.pattern )
    {
      if ( e.value != *previous )
        steady.push_back( e );
      previous = &e.value;
    }
  }

  if ( steady.empty() )
  {
    // Constant tail: a single switch at s0 (if any) and then nothing.
    transient.push_back( { s0, w0 } );
    drop_noops( initial, transient );
    x._transient = std::move( transient );
    return x;
  }

  t.pattern = std::move( steady );
  if ( t.pattern.front().time != rational( 0 ) )
  {
    // Value w0 holds on [s0, first real steady switch).
    if ( last_value( initial, transient ) != w0 )
      transient.push_back( { s0, w0 } );
    const rational shift = t.pattern.front().time;
    t.start += shift;
    for ( auto& e : t.pattern )
      e.time -= shift;
  }
  else if ( last_value( initial, transient ) == w0 )
  {
    // The switch at s0 is a no-op in the first period only.
    assert( t.pattern.size() >= 2 );
    rotate_to( t, 1 );
  }

  minimize_period( t );

  // Pull the tail start back while the transient already repeats it.
  while ( !transient.empty() )
  {
    const auto& back = t.pattern.back();
    const rational candidate = t.start - ( t.period - back.time );
    if ( transient.back().time != candidate || transient.back().value != back.value )
      break;
    transient.pop_back();
    rotate_to( t, t.pattern.size() - 1 );
    t.start -= t.period;
    assert( t.start == candidate );
  }

  x._transient = std::move( transient );
  x._tail = std::move( t );
  return x;
}

std::optional<rational> signal::first_switch() const
{
  if ( !_transient.empty() )
    return _transient.front().time;
  if ( _tail )
    return _tail->start;
  return std::nullopt;
}

std::optional<rational> signal::last_switch() const
{
  if ( _tail || _transient.empty() )
    return std::nullopt;
  return _transient.back().time;
}

std::optional<rational> signal::settle_time() const
{
  if ( _tail )
    return _tail->start;
  return last_switch();
}

std::vector<rational> signal::switch_instants( const rational& from, const rational& to ) const
{
  std::vector<rational> out;
  for ( const auto& e : _transient )
    if ( from <= e.time && e.time <= to )
      out.push_back( e.time );
  if ( _tail && _tail->start <= to )
  {
    std::int64_t k = 0;
    if ( _tail->start < from )
      k = ( ( from - _tail->start ) / _tail->period ).floor();
    for ( ;; ++k )
    {
      const rational base = _tail->start + _tail->period * rational( k );
      if ( base > to )
        break;
      for ( const auto& e : _tail->pattern )
      {
        const rational t = base + e.time;
        if ( t > to )
          break;
        if ( from <= t )
          out.push_back( t );
      }
    }
  }
  return out;
}

std::string signal::to_string() const
{
  std::string s = "init=" + _initial.to_string();
  for ( const auto& e : _transient )
    s += " " + e.time.to_string() + ":" + e.value.to_string();
  if ( _tail )
  {
    s += " tail@" + _tail->start.to_string() + "+" + _tail->period.to_string() + ":";
    for ( const auto& e : _tail->pattern )
      s += " " + e.time.to_string() + ":" + e.value.to_string();
  }
  return s;
}

bvec value_at( const signal& x, const rational& t )
{
  const auto& tail = x.tail();
  if ( tail && tail->start <= t )
  {
    const rational offset = mod( t - tail->start, tail->period );
    auto j = pattern_index( *tail, offset, false );
    // Offset 0 is always a pattern entry, so j >= 0.
    return tail->pattern[static_cast<std::size_t>( j )].value;
  }
  const auto& ev = x.transient();
  auto it = std::upper_bound( ev.begin(), ev.end(), t, []( const rational& v, const event& e ) { return v < e.time; } );
  return it == ev.begin() ? x.initial() : std::prev( it )->value;
}

bvec left_limit( const signal& x, const rational& t )
{
  const auto& tail = x.tail();
  if ( tail && tail->start < t )
  {
    const rational offset = mod( t - tail->start, tail->period );
    auto j = pattern_index( *tail, offset, true );
    if ( j < 0 )
      return tail->pattern.back().value;
    return tail->pattern[static_cast<std::size_t>( j )].value;
  }
  const auto& ev = x.transient();
  auto it = std::lower_bound( ev.begin(), ev.end(), t, []( const event& e, const rational& v ) { return e.time < v; } );
  return it == ev.begin() ? x.initial() : std::prev( it )->value;
}

std::optional<bvec> final_value( const signal& x )
{
  if ( x.tail() )
    return std::nullopt;
  return x.transient().empty() ? x.initial() : x.transient().back().value;
}

signal pointwise( std::span<const signal> args, unsigned dimension,
                  const std::function<bvec( std::span<const bvec> )>& fn )
{
  std::vector<bvec> values( args.size() );
  auto eval = [&]( auto&& value_of ) {
    for ( std::size_t i = 0; i < args.size(); ++i )
      values[i] = value_of( args[i] );
    return fn( values );
  };

  const bvec initial = eval( []( const signal& s ) { return s.initial(); } );

  std::optional<rational> settle;
  std::optional<rational> period;
  for ( const auto& s : args )
  {
    if ( auto st = s.settle_time() )
      settle = settle ? max( *settle, *st ) : *st;
    if ( s.tail() )
      period = period ? lcm( *period, s.tail()->period ) : s.tail()->period;
  }

  // Every switch instant of every argument, up to `limit`, sorted and unique.
  auto instants = [&]( const rational& from, const rational& to ) {
    std::vector<rational> all;
    for ( const auto& s : args )
    {
      auto si = s.switch_instants( from, to );
      all.insert( all.end(), si.begin(), si.end() );
    }
    std::sort( all.begin(), all.end() );
    all.erase( std::unique( all.begin(), all.end() ), all.end() );
    return all;
  };

  if ( !settle )
    return make_signal( dimension, initial );

  auto lower_bound_time = [&]() {
    rational lo = *settle;
    for ( const auto& s : args )
      if ( auto f = s.first_switch() )
        lo = min( lo, *f );
    return lo;
  }();

  std::vector<event> transient;
  if ( !period )
  {
    for ( const auto& t : instants( lower_bound_time, *settle ) )
      transient.push_back( { t, eval( [&]( const signal& s ) { return value_at( s, t ); } ) } );
    return make_signal( dimension, initial, std::move( transient ) );
  }

  const rational start = *settle;
  for ( const auto& t : instants( lower_bound_time, start ) )
    if ( t < start )
      transient.push_back( { t, eval( [&]( const signal& s ) { return value_at( s, t ); } ) } );

  periodic_tail tail{ start, *period, {} };
  tail.pattern.push_back( { rational( 0 ), eval( [&]( const signal& s ) { return value_at( s, start ); } ) } );
  for ( const auto& t : instants( start, start + *period ) )
  {
    if ( t == start || !( t < start + *period ) )
      continue;
    tail.pattern.push_back( { t - start, eval( [&]( const signal& s ) { return value_at( s, t ); } ) } );
  }
  return make_signal( dimension, initial, std::move( transient ), std::move( tail ) );
}

signal complement( const signal& x )
{
  return pointwise( std::span( &x, 1 ), x.dimension(), []( std::span<const bvec> v ) { return ~v[0]; } );
}

signal product( const signal& x, const signal& y )
{
  const signal args[] = { x, y };
  return pointwise( args, x.dimension() + y.dimension(),
                    []( std::span<const bvec> v ) { return concat( v[0], v[1] ); } );
}

} // namespace asyalg
