#include <asyalg/theorems.hpp>

#include <asyalg/error.hpp>
#include <asyalg/format.hpp>
#include <asyalg/predicates.hpp>

#include <algorithm>
#include <functional>
#include <optional>
#include <stdexcept>

namespace asyalg
{

void gen_params::validate() const
{
  auto range = []( unsigned lo, unsigned hi, unsigned min, unsigned max, const char* what ) {
    if ( lo > hi || lo < min || hi > max )
      throw std::invalid_argument( std::string( "invalid " ) + what + " range" );
  };
  range( m_min, m_max, 1, 16, "input dimension" );
  range( n_min, n_max, 1, 16, "state dimension" );
  range( inputs_min, inputs_max, 1, 64, "input count" );
  range( states_min, states_max, 1, 64, "states-per-input" );
  range( switches_min, switches_max, 0, 64, "switch count" );
  if ( !( time_min < time_max ) )
    throw std::invalid_argument( "invalid time range" );
  if ( !( tail_probability >= 0 && tail_probability <= 1 ) || !( overlap_bias >= 0 && overlap_bias <= 1 ) )
    throw std::invalid_argument( "probabilities must lie in [0, 1]" );
}

system_generator::system_generator( const gen_params& params ) : system_generator( params, params.seed ) {}

system_generator::system_generator( const gen_params& params, std::uint64_t seed ) : _params( params ), _rng( seed )
{
  _params.validate();
}

unsigned system_generator::pick( unsigned lo, unsigned hi )
{
  return std::uniform_int_distribution<unsigned>( lo, hi )( _rng );
}

bool system_generator::coin( double p ) { return std::bernoulli_distribution( p )( _rng ); }

namespace
{

std::int64_t quarters_ceil( const rational& t ) { return -( -t * rational( 4 ) ).floor(); }

bvec nonzero( std::mt19937_64& rng, unsigned dimension )
{
  while ( true )
  {
    bvec v( dimension, rng() );
    if ( v.any() )
      return v;
  }
}

/// `count` distinct values from [lo, hi], ascending.
std::vector<std::int64_t> distinct( std::mt19937_64& rng, std::int64_t lo, std::int64_t hi, std::size_t count )
{
  std::vector<std::int64_t> all;
  for ( std::int64_t q = lo; q <= hi; ++q )
    all.push_back( q );
  count = std::min( count, all.size() );
  for ( std::size_t i = 0; i < count; ++i )
  {
    auto j = std::uniform_int_distribution<std::size_t>( i, all.size() - 1 )( rng );
    std::swap( all[i], all[j] );
  }
  all.resize( count );
  std::sort( all.begin(), all.end() );
  return all;
}

} // namespace

signal system_generator::random_signal( unsigned dimension )
{
  const std::int64_t lo = quarters_ceil( _params.time_min );
  const std::int64_t hi = ( _params.time_max * rational( 4 ) ).floor();
  const unsigned count = pick( _params.switches_min, _params.switches_max );

  bvec value( dimension, _rng() );
  const bvec initial = value;
  std::vector<event> transient;
  for ( auto q : distinct( _rng, lo, hi, count ) )
  {
    value = value ^ nonzero( _rng, dimension );
    transient.push_back( { rational( q, 4 ), value } );
  }

  std::optional<periodic_tail> tail;
  if ( coin( _params.tail_probability ) )
  {
    const std::int64_t base = transient.empty() ? hi : ( transient.back().time * rational( 4 ) ).floor();
    const auto period = static_cast<std::int64_t>( pick( 2, 8 ) );
    const auto events = std::min<std::size_t>( pick( 2, 3 ), static_cast<std::size_t>( period ) );
    auto offsets = distinct( _rng, 1, period - 1, events - 1 );
    offsets.insert( offsets.begin(), 0 );
    periodic_tail t{ rational( base + pick( 1, 4 ), 4 ), rational( period, 4 ), {} };
    for ( auto o : offsets )
    {
      value = value ^ nonzero( _rng, dimension );
      t.pattern.push_back( { rational( o, 4 ), value } );
    }
    tail = std::move( t );
  }
  return make_signal( dimension, initial, std::move( transient ), std::move( tail ) );
}

signal system_generator::pooled( std::map<unsigned, std::vector<signal>>& pools, unsigned size, unsigned dimension )
{
  auto& pool = pools[dimension];
  if ( pool.empty() )
    for ( unsigned i = 0; i < size; ++i )
      pool.push_back( random_signal( dimension ) );
  if ( coin( _params.overlap_bias ) )
    return pool[std::uniform_int_distribution<std::size_t>( 0, pool.size() - 1 )( _rng )];
  return random_signal( dimension );
}

signal system_generator::input_signal( unsigned dimension )
{
  return pooled( _input_pool, _params.inputs_max + 1, dimension );
}

signal system_generator::state_signal( unsigned dimension )
{
  return pooled( _state_pool, _params.states_max + 2, dimension );
}

system system_generator::system_on( const signal_set& domain, unsigned n )
{
  system::map_type map;
  for ( const auto& u : domain )
  {
    signal_set states( n );
    const unsigned count = pick( _params.states_min, _params.states_max );
    for ( unsigned k = 0; k < count; ++k )
      states.insert( state_signal( n ) );
    map.emplace( u, std::move( states ) );
  }
  return system( domain.dimension(), n, std::move( map ) );
}

system system_generator::random_system( unsigned m, unsigned n )
{
  signal_set domain( m );
  const unsigned count = pick( _params.inputs_min, _params.inputs_max );
  for ( unsigned k = 0; k < count; ++k )
    domain.insert( input_signal( m ) );
  return system_on( domain, n );
}

signal random_signal( const gen_params& params )
{
  system_generator gen( params );
  return gen.random_signal( gen.state_dim() );
}

system random_system( const gen_params& params )
{
  system_generator gen( params );
  const unsigned m = gen.input_dim();
  return gen.random_system( m, gen.state_dim() );
}

namespace
{

using operands = std::vector<system>;

struct outcome
{
  enum kind_type
  {
    vacuous,
    pass,
    fail,
  } kind;
  std::string lhs;
  std::string rhs;
  std::string message;
  bool equal_domains = false;
};

outcome vacuous() { return { outcome::vacuous, {}, {}, {} }; }
outcome pass() { return { outcome::pass, {}, {}, {} }; }
outcome fail( std::string lhs, std::string rhs, std::string message )
{
  return { outcome::fail, std::move( lhs ), std::move( rhs ), std::move( message ) };
}

/// The value of an operation, or nullopt when it is undefined on its
/// operands.
template<class Fn>
auto attempt( Fn fn ) -> std::optional<decltype( fn() )>
{
  try
  {
    return fn();
  }
  catch ( const algebra_error& e )
  {
    if ( !e.undefined_operation() )
      throw;
    return std::nullopt;
  }
}

std::string text_of( const std::optional<system>& f ) { return f ? serialize_system( *f ) : "undefined"; }

template<class L, class R>
outcome equal_sides( L lhs, R rhs )
{
  auto l = attempt( lhs );
  auto r = attempt( rhs );
  if ( !l || !r )
    return fail( text_of( l ), text_of( r ), "a side is undefined although the hypotheses hold" );
  if ( *l != *r )
    return fail( text_of( l ), text_of( r ), "the two sides differ" );
  return pass();
}

template<class L, class R>
outcome included_sides( L lhs, R rhs )
{
  auto l = attempt( lhs );
  auto r = attempt( rhs );
  if ( !l || !r )
    return fail( text_of( l ), text_of( r ), "a side is undefined although the hypotheses hold" );
  if ( !is_subsystem( *l, *r ) )
    return fail( text_of( l ), text_of( r ), "the left side is not a subsystem of the right side" );
  outcome o = pass();
  o.equal_domains = l->domain() == r->domain();
  return o;
}

std::string text_of( const std::set<bvec>& values )
{
  std::string s = "{";
  for ( const auto& v : values )
    s += ( s.size() > 1 ? "," : "" ) + v.to_string();
  return s + "}";
}

std::string text_of( const std::optional<rational>& t ) { return t ? t->to_string() : "any"; }

// ---------------------------------------------------------------------------
// Operand construction

template<class Set>
const auto& element( system_generator& gen, const Set& set )
{
  auto it = set.begin();
  std::advance( it, std::uniform_int_distribution<std::size_t>( 0, set.size() - 1 )( gen.rng() ) );
  return *it;
}

/// A system sharing inputs with `f` and, when the state dimensions agree,
/// states within each shared input.
system partner( system_generator& gen, const system& f, unsigned n )
{
  const auto& p = gen.params();
  const signal_set domain = f.domain();
  system::map_type map;
  const unsigned count = gen.pick( p.inputs_min, p.inputs_max );
  for ( unsigned k = 0; k < count; ++k )
  {
    const signal u = gen.coin( p.overlap_bias ) ? element( gen, domain ) : gen.input_signal( f.input_dim() );
    auto [it, fresh] = map.try_emplace( u, n );
    if ( !fresh )
      continue;
    const unsigned states = gen.pick( p.states_min, p.states_max );
    const signal_set* fu = n == f.state_dim() ? f.find( u ) : nullptr;
    unsigned k2 = 0;
    if ( fu && gen.coin( p.overlap_bias ) )
      it->second.insert( element( gen, *fu ) ), ++k2;
    for ( ; k2 < states; ++k2 )
      it->second.insert( gen.state_signal( n ) );
  }
  return system( f.input_dim(), n, std::move( map ) );
}

system partner( system_generator& gen, const system& f ) { return partner( gen, f, f.state_dim() ); }

/// A system with h(x) for every x in `domain`, each h(x) sharing a state
/// with base(x) at the overlap-bias rate.
system partner_on( system_generator& gen, const signal_set& domain, const system& base )
{
  const auto& p = gen.params();
  system::map_type map;
  for ( const auto& x : domain )
  {
    signal_set states( base.state_dim() );
    const unsigned count = gen.pick( p.states_min, p.states_max );
    unsigned k = 0;
    if ( const auto* bx = base.find( x ); bx && gen.coin( p.overlap_bias ) )
      states.insert( element( gen, *bx ) ), ++k;
    for ( ; k < count; ++k )
      states.insert( gen.state_signal( base.state_dim() ) );
    map.emplace( x, std::move( states ) );
  }
  return system( domain.dimension(), base.state_dim(), std::move( map ) );
}

using keep_fn = std::function<bool( const signal&, const signal& )>;

/// The states with keep(u, x); nullopt if nothing is left.
std::optional<system> keep_states( const system& f, const keep_fn& keep )
{
  system::map_type map;
  for ( const auto& [u, states] : f )
  {
    signal_set kept( f.state_dim() );
    for ( const auto& x : states )
      if ( keep( u, x ) )
        kept.insert( x );
    if ( !kept.empty() )
      map.emplace( u, std::move( kept ) );
  }
  if ( map.empty() )
    return std::nullopt;
  return system( f.input_dim(), f.state_dim(), std::move( map ) );
}

/// A random subsystem: each input kept with probability 3/4 and each state
/// with probability 2/3, at least one of each.
system subsystem_of( system_generator& gen, const system& f )
{
  system::map_type map;
  for ( const auto& [u, states] : f )
  {
    if ( !gen.coin( 0.75 ) )
      continue;
    signal_set kept( f.state_dim() );
    for ( const auto& x : states )
      if ( gen.coin( 2.0 / 3 ) )
        kept.insert( x );
    if ( kept.empty() )
      kept.insert( element( gen, states ) );
    map.emplace( u, std::move( kept ) );
  }
  if ( map.empty() )
    map.emplace( *f.begin() );
  return system( f.input_dim(), f.state_dim(), std::move( map ) );
}

using value_fn = std::optional<bvec> ( * )( const signal& );
std::optional<bvec> initial_of( const signal& x ) { return x.initial(); }

/// Keeps, per input, the states whose value matches `anchor(u)`, or the
/// value of a random state when the anchor has no opinion.
std::optional<system> race_free( system_generator& gen, const system& f, value_fn value,
                                 const std::function<std::optional<bvec>( const signal& )>& anchor )
{
  std::map<signal, bvec> mu;
  for ( const auto& [u, states] : f )
  {
    auto a = anchor( u );
    mu.emplace( u, a ? *a : *value( element( gen, states ) ) );
  }
  return keep_states( f, [&]( const signal& u, const signal& x ) { return value( x ) == mu.at( u ); } );
}

std::optional<system> constant( const system& f, value_fn value, const bvec& mu )
{
  return keep_states( f, [&]( const signal&, const signal& x ) { return value( x ) == mu; } );
}

std::optional<system> tail_free( const system& f )
{
  return keep_states( f, []( const signal&, const signal& x ) { return x.has_final_value(); } );
}

/// The value shared by f(u) under `value`, if f(u) agrees on one.
std::optional<bvec> shared_value( const system& f, const signal& u, value_fn value )
{
  const auto* fu = f.find( u );
  if ( !fu )
    return std::nullopt;
  return value( *fu->begin() );
}

/// f race-free (or constant) under `value`; g a partner steered to agree
/// with f where they share inputs.
std::optional<operands> regime_pair( system_generator& gen, value_fn value, bool stable_only )
{
  const unsigned m = gen.input_dim(), n = gen.state_dim();
  std::optional<system> f = gen.random_system( m, n );
  if ( stable_only )
    f = tail_free( *f );
  if ( !f )
    return std::nullopt;
  std::optional<system> g = partner( gen, *f );
  if ( stable_only )
    g = tail_free( *g );
  if ( !g )
    return std::nullopt;
  if ( gen.coin( 0.5 ) )
  {
    const bvec mu = *value( element( gen, element( gen, *f ).second ) );
    f = constant( *f, value, mu );
    if ( f && gen.coin( gen.params().overlap_bias ) )
      g = constant( *g, value, mu );
    else if ( f )
      g = race_free( gen, *g, value, []( const signal& ) { return std::nullopt; } );
  }
  else
  {
    f = race_free( gen, *f, value, []( const signal& ) { return std::nullopt; } );
    if ( f )
      g = race_free( gen, *g, value, [&]( const signal& u ) { return shared_value( *f, u, value ); } );
  }
  if ( !f || !g )
    return std::nullopt;
  return operands{ *f, *g };
}

std::optional<operands> plain_pair( system_generator& gen )
{
  const unsigned m = gen.input_dim(), n = gen.state_dim();
  system f = gen.random_system( m, n );
  system g = partner( gen, f );
  return operands{ f, g };
}

std::optional<operands> stable_pair( system_generator& gen )
{
  const unsigned m = gen.input_dim(), n = gen.state_dim();
  auto f = tail_free( gen.random_system( m, n ) );
  if ( !f )
    return std::nullopt;
  auto g = tail_free( partner( gen, *f ) );
  if ( !g )
    return std::nullopt;
  return operands{ *f, *g };
}

// ---------------------------------------------------------------------------
// Hypotheses

bool holds( const regime_report& r ) { return r.holds; }

bool shared_inputs_meet( const system& f, const system& g )
{
  for ( const auto& [u, fu] : f )
    if ( const auto* gu = g.find( u ); gu && !intersects( fu, *gu ) )
      return false;
  return true;
}

bool domains_meet( const system& f, const system& g ) { return intersects( f.domain(), g.domain() ); }

bool within_domain( const system& f, const system& h ) { return is_subset( state_union( f ), h.domain() ); }

// ---------------------------------------------------------------------------
// Checks

using regime_check = regime_report ( * )( const system&, int );

std::string level_text( const char* what, int level, bool value )
{
  return std::string( what ) + " level " + std::to_string( level ) + ": " + ( value ? "holds" : "fails" );
}

/// Each level that holds for the premise systems must hold for `result`.
outcome preserved( regime_check check, const char* what, const system& result, std::initializer_list<int> levels,
                   const std::function<bool( int )>& premise )
{
  bool any = false;
  for ( int level : levels )
  {
    if ( !premise( level ) )
      continue;
    any = true;
    if ( !holds( check( result, level ) ) )
      return fail( level_text( what, level, false ), level_text( what, level, true ),
                   "the regime is not preserved: " + serialize_system( result ) );
  }
  return any ? pass() : vacuous();
}

outcome isect_init_racefree( const operands& o )
{
  auto fg = attempt( [&] { return intersect( o[0], o[1] ); } );
  if ( !fg )
    return vacuous();
  return preserved( check_initial_states, "initial states", *fg, { 2, 3 },
                    [&]( int level ) { return holds( check_initial_states( o[0], level ) ); } );
}

outcome isect_final( const operands& o )
{
  auto fg = attempt( [&] { return intersect( o[0], o[1] ); } );
  if ( !fg )
    return vacuous();
  return preserved( check_final_states, "final states", *fg, { 4, 5, 6 },
                    [&]( int level ) { return holds( check_final_states( o[0], level ) ); } );
}

outcome union_init( const operands& o )
{
  const auto& f = o[0];
  const auto& g = o[1];
  const system fug = unite( f, g );
  return preserved( check_initial_states, "initial states", fug, { 2, 3 }, [&]( int level ) {
    const bool both = holds( check_initial_states( f, level ) ) && holds( check_initial_states( g, level ) );
    if ( level == 2 )
      return both && shared_inputs_meet( f, g );
    return both && intersects( state_union( f ), state_union( g ) );
  } );
}

outcome union_final( const operands& o )
{
  const auto& f = o[0];
  const auto& g = o[1];
  const system fug = unite( f, g );
  return preserved( check_final_states, "final states", fug, { 4, 5, 6 }, [&]( int level ) {
    const bool both = holds( check_final_states( f, level ) ) && holds( check_final_states( g, level ) );
    if ( level == 4 )
      return both;
    if ( level == 5 )
      return both && shared_inputs_meet( f, g );
    return both && intersects( state_union( f ), state_union( g ) );
  } );
}

/// t0 works as an initial time for every state in `states`.
bool valid_initial_time( const signal_set& states, const std::optional<rational>& t0 )
{
  for ( const auto& x : states )
    if ( auto s = x.first_switch(); s && ( !t0 || *s < *t0 ) )
      return false;
  return true;
}

/// t_f works as a final time for every tail-free state in `states`.
bool valid_final_time( const signal_set& states, const std::optional<rational>& tf )
{
  for ( const auto& x : states )
    if ( auto s = x.last_switch(); s && ( !tf || *s > *tf ) )
      return false;
  return true;
}

outcome isect_time( const operands& o, bool initial )
{
  auto fg = attempt( [&] { return intersect( o[0], o[1] ); } );
  if ( !fg )
    return vacuous();
  auto valid = initial ? valid_initial_time : valid_final_time;
  const auto per_input = initial ? check_initial_time( o[0], 2 ) : check_final_time( o[0], 5 );
  const auto global = initial ? check_initial_time( o[0], 3 ) : check_final_time( o[0], 6 );
  for ( const auto& [u, states] : *fg )
  {
    const auto& t = per_input.time_per_input.at( u );
    if ( !valid( states, t ) )
      return fail( "witness " + text_of( t ) + " of f at " + u.to_string(), "invalid for f cap g",
                   "the bound of f does not carry over to f cap g" );
    if ( !valid( states, global.time ) )
      return fail( "witness " + text_of( global.time ) + " of f", "invalid for f cap g at " + u.to_string(),
                   "the fixed time of f does not carry over to f cap g" );
  }
  const auto r2 = initial ? check_initial_time( *fg, 2 ) : check_final_time( *fg, 5 );
  const auto r3 = initial ? check_initial_time( *fg, 3 ) : check_final_time( *fg, 6 );
  if ( !r2.holds || !r3.holds )
    return fail( "f cap g time regime", "expected to hold", "the time regime of f cap g fails" );
  return pass();
}

/// min over initial witnesses (nullopt is +inf), max over final ones
/// (nullopt is -inf).
std::optional<rational> combine( const std::optional<rational>& a, const std::optional<rational>& b, bool initial )
{
  if ( !a )
    return b;
  if ( !b )
    return a;
  return initial ? min( *a, *b ) : max( *a, *b );
}

outcome union_time( const operands& o, bool initial )
{
  const auto& f = o[0];
  const auto& g = o[1];
  const system fug = unite( f, g );
  auto check = initial ? check_initial_time : check_final_time;
  const int per = initial ? 2 : 5;
  const auto wf = check( f, per ), wg = check( g, per ), wfg = check( fug, per );
  for ( const auto& [u, states] : fug )
  {
    std::optional<rational> expected;
    const bool in_f = f.contains( u ), in_g = g.contains( u );
    if ( in_f && in_g )
      expected = combine( wf.time_per_input.at( u ), wg.time_per_input.at( u ), initial );
    else
      expected = in_f ? wf.time_per_input.at( u ) : wg.time_per_input.at( u );
    if ( wfg.time_per_input.at( u ) != expected )
      return fail( text_of( wfg.time_per_input.at( u ) ), text_of( expected ),
                   "union witness at " + u.to_string() + " is not the " + ( initial ? "min" : "max" ) +
                       " of the operand witnesses" );
  }
  const auto gf = check( f, per + 1 ), gg = check( g, per + 1 ), gfg = check( fug, per + 1 );
  const auto expected = combine( gf.time, gg.time, initial );
  if ( gfg.time != expected )
    return fail( text_of( gfg.time ), text_of( expected ), "global union witness mismatch" );
  return pass();
}

using state_fn = state_function ( * )( const system& );

outcome phi_isect( const operands& o, state_fn phi, bool stable )
{
  const auto& f = o[0];
  const auto& g = o[1];
  if ( stable && ( !holds( check_final_states( f, 4 ) ) || !holds( check_final_states( g, 4 ) ) ) )
    return vacuous();
  auto fg = attempt( [&] { return intersect( f, g ); } );
  if ( !fg )
    return vacuous();
  const auto pf = phi( f ), pg = phi( g ), pfg = phi( *fg );
  std::set<bvec> theta;
  for ( const auto& [u, states] : *fg )
  {
    std::set<bvec> expected;
    const auto& a = pf.per_input.at( u );
    const auto& b = pg.per_input.at( u );
    std::set_intersection( a.begin(), a.end(), b.begin(), b.end(), std::inserter( expected, expected.end() ) );
    const auto& actual = pfg.per_input.at( u );
    if ( actual != expected )
      return fail( text_of( actual ), text_of( expected ),
                   "state function of f cap g at " + u.to_string() + " differs from the intersection" );
    theta.insert( actual.begin(), actual.end() );
  }
  if ( theta != pfg.values )
    return fail( text_of( pfg.values ), text_of( theta ), "state set is not the union over W" );
  return pass();
}

outcome phi_union( const operands& o, state_fn phi, bool stable )
{
  const auto& f = o[0];
  const auto& g = o[1];
  if ( stable && ( !holds( check_final_states( f, 4 ) ) || !holds( check_final_states( g, 4 ) ) ) )
    return vacuous();
  const system fug = unite( f, g );
  const auto pf = phi( f ), pg = phi( g ), pfg = phi( fug );
  for ( const auto& [u, states] : fug )
  {
    std::set<bvec> expected;
    if ( auto it = pf.per_input.find( u ); it != pf.per_input.end() )
      expected.insert( it->second.begin(), it->second.end() );
    if ( auto it = pg.per_input.find( u ); it != pg.per_input.end() )
      expected.insert( it->second.begin(), it->second.end() );
    if ( pfg.per_input.at( u ) != expected )
      return fail( text_of( pfg.per_input.at( u ) ), text_of( expected ),
                   "state function of f cup g at " + u.to_string() + " is not the three-case union" );
  }
  std::set<bvec> theta = pf.values;
  theta.insert( pg.values.begin(), pg.values.end() );
  if ( pfg.values != theta )
    return fail( text_of( pfg.values ), text_of( theta ), "state set of f cup g is not the union" );
  return pass();
}

outcome sub_isect( const operands& o )
{
  const auto &f = o[0], &g = o[1], &f1 = o[2], &g1 = o[3];
  if ( !is_subsystem( f, f1 ) || !is_subsystem( g, g1 ) )
    return vacuous();
  if ( !attempt( [&] { return intersect( f, g ); } ) )
    return vacuous();
  return included_sides( [&] { return intersect( f, g ); }, [&] { return intersect( f1, g1 ); } );
}

outcome sub_union( const operands& o )
{
  const auto &f = o[0], &g = o[1], &f1 = o[2], &g1 = o[3];
  if ( !is_subsystem( f, f1 ) || !is_subsystem( g, g1 ) )
    return vacuous();
  return included_sides( [&] { return unite( f, g ); }, [&] { return unite( f1, g1 ); } );
}

bool isect_defined( const system& f, const system& g )
{
  return attempt( [&] { return intersect( f, g ); } ).has_value();
}

outcome dual_isect( const operands& o )
{
  if ( !isect_defined( o[0], o[1] ) )
    return vacuous();
  return equal_sides( [&] { return dual( intersect( o[0], o[1] ) ); },
                      [&] { return intersect( dual( o[0] ), dual( o[1] ) ); } );
}

outcome dual_union( const operands& o )
{
  return equal_sides( [&] { return dual( unite( o[0], o[1] ) ); }, [&] { return unite( dual( o[0] ), dual( o[1] ) ); } );
}

outcome inv_isect( const operands& o )
{
  if ( !isect_defined( o[0], o[1] ) )
    return vacuous();
  return equal_sides( [&] { return inverse( intersect( o[0], o[1] ) ); },
                      [&] { return intersect( inverse( o[0] ), inverse( o[1] ) ); } );
}

outcome inv_union( const operands& o )
{
  return equal_sides( [&] { return inverse( unite( o[0], o[1] ) ); },
                      [&] { return unite( inverse( o[0] ), inverse( o[1] ) ); } );
}

outcome prod_isect( const operands& o )
{
  const auto &f = o[0], &g = o[1], &f1 = o[2];
  if ( !isect_defined( f, g ) )
    return vacuous();
  return equal_sides( [&] { return cartesian( intersect( f, g ), f1 ); },
                      [&] { return intersect( cartesian( f, f1 ), cartesian( g, f1 ) ); } );
}

outcome prod_union( const operands& o )
{
  const auto &f = o[0], &g = o[1], &f1 = o[2];
  return equal_sides( [&] { return cartesian( unite( f, g ), f1 ); },
                      [&] { return unite( cartesian( f, f1 ), cartesian( g, f1 ) ); } );
}

outcome prod_isect_4( const operands& o )
{
  const auto &f = o[0], &g = o[1], &f1 = o[2], &g1 = o[3];
  if ( !isect_defined( f, g ) || !isect_defined( f1, g1 ) )
    return vacuous();
  return equal_sides( [&] { return cartesian( intersect( f, g ), intersect( f1, g1 ) ); },
                      [&] {
                        return intersect( intersect( intersect( cartesian( f, f1 ), cartesian( f, g1 ) ), cartesian( g, f1 ) ),
                                          cartesian( g, g1 ) );
                      } );
}

outcome prod_union_4( const operands& o )
{
  const auto &f = o[0], &g = o[1], &f1 = o[2], &g1 = o[3];
  return equal_sides( [&] { return cartesian( unite( f, g ), unite( f1, g1 ) ); },
                      [&] {
                        return unite( unite( unite( cartesian( f, f1 ), cartesian( f, g1 ) ), cartesian( g, f1 ) ),
                                      cartesian( g, g1 ) );
                      } );
}

outcome par_isect( const operands& o )
{
  const auto &f = o[0], &g = o[1], &f1 = o[2];
  auto fg = attempt( [&] { return intersect( f, g ); } );
  if ( !fg || !domains_meet( *fg, f1 ) )
    return vacuous();
  return equal_sides( [&] { return parallel( intersect( f, g ), f1 ); },
                      [&] { return intersect( parallel( f, f1 ), parallel( g, f1 ) ); } );
}

outcome par_union( const operands& o )
{
  const auto &f = o[0], &g = o[1], &f1 = o[2];
  if ( !domains_meet( f, f1 ) || !domains_meet( g, f1 ) )
    return vacuous();
  return equal_sides( [&] { return parallel( unite( f, g ), f1 ); },
                      [&] { return unite( parallel( f, f1 ), parallel( g, f1 ) ); } );
}

outcome par_isect_right( const operands& o )
{
  const auto &f = o[0], &f1 = o[1], &g1 = o[2];
  auto fg1 = attempt( [&] { return intersect( f1, g1 ); } );
  if ( !fg1 || !domains_meet( f, *fg1 ) )
    return vacuous();
  return equal_sides( [&] { return parallel( f, intersect( f1, g1 ) ); },
                      [&] { return intersect( parallel( f, f1 ), parallel( f, g1 ) ); } );
}

outcome par_union_right( const operands& o )
{
  const auto &f = o[0], &f1 = o[1], &g1 = o[2];
  if ( !domains_meet( f, f1 ) || !domains_meet( f, g1 ) )
    return vacuous();
  return equal_sides( [&] { return parallel( f, unite( f1, g1 ) ); },
                      [&] { return unite( parallel( f, f1 ), parallel( f, g1 ) ); } );
}

outcome ser_isect_left( const operands& o )
{
  const auto &f = o[0], &g = o[1], &h = o[2];
  if ( !within_domain( f, h ) || !within_domain( g, h ) || !isect_defined( f, g ) )
    return vacuous();
  return included_sides( [&] { return serial( h, intersect( f, g ) ); },
                         [&] { return intersect( serial( h, f ), serial( h, g ) ); } );
}

outcome ser_isect_right( const operands& o )
{
  const auto &f = o[0], &h = o[1], &h1 = o[2];
  // Every state of f must be an input of both h and h1 with h(x) cap h1(x)
  // non-empty.
  for ( const auto& x : state_union( f ) )
  {
    const auto* hx = h.find( x );
    const auto* h1x = h1.find( x );
    if ( !hx || !h1x || !intersects( *hx, *h1x ) )
      return vacuous();
  }
  return included_sides( [&] { return serial( intersect( h, h1 ), f ); },
                         [&] { return intersect( serial( h, f ), serial( h1, f ) ); } );
}

outcome ser_union_left( const operands& o )
{
  const auto &f = o[0], &g = o[1], &h = o[2];
  if ( !within_domain( f, h ) || !within_domain( g, h ) )
    return vacuous();
  return equal_sides( [&] { return serial( h, unite( f, g ) ); },
                      [&] { return unite( serial( h, f ), serial( h, g ) ); } );
}

outcome ser_union_right( const operands& o )
{
  const auto &f = o[0], &h = o[1], &h1 = o[2];
  if ( !within_domain( f, h ) || !within_domain( f, h1 ) )
    return vacuous();
  return equal_sides( [&] { return serial( unite( h, h1 ), f ); },
                      [&] { return unite( serial( h, f ), serial( h1, f ) ); } );
}

outcome restrict_decompose( const operands& o )
{
  const auto& f = o[0];
  return equal_sides( [&] { return f; },
                      [&] {
                        std::optional<system> acc;
                        for ( const auto& mu : initial_state_function( f ).values )
                        {
                          system part = restrict_to_initial( f, mu );
                          acc = acc ? unite( *acc, part ) : part;
                        }
                        return *acc;
                      } );
}

// ---------------------------------------------------------------------------
// Generators for the multi-operand identities

std::optional<operands> sub_operands( system_generator& gen )
{
  auto pair = plain_pair( gen );
  const auto &f1 = ( *pair )[0], &g1 = ( *pair )[1];
  return operands{ subsystem_of( gen, f1 ), subsystem_of( gen, g1 ), f1, g1 };
}

std::optional<operands> prod_operands( system_generator& gen, bool four )
{
  auto pair = plain_pair( gen );
  const unsigned m = gen.input_dim(), n = gen.state_dim();
  system f1 = gen.random_system( m, n );
  if ( !four )
    return operands{ ( *pair )[0], ( *pair )[1], f1 };
  return operands{ ( *pair )[0], ( *pair )[1], f1, partner( gen, f1 ) };
}

std::optional<operands> par_operands( system_generator& gen )
{
  auto pair = plain_pair( gen );
  const auto& f = ( *pair )[0];
  return operands{ f, ( *pair )[1], partner( gen, f, gen.state_dim() ) };
}

std::optional<operands> par_right_operands( system_generator& gen )
{
  const unsigned m = gen.input_dim(), n = gen.state_dim();
  system f = gen.random_system( m, n );
  system f1 = partner( gen, f, gen.state_dim() );
  return operands{ f, f1, partner( gen, f1 ) };
}

/// h on the states of the given systems, plus an occasional extra state.
system cascade_on( system_generator& gen, std::initializer_list<const system*> sources )
{
  const unsigned n = ( *sources.begin() )->state_dim();
  signal_set domain( n );
  for ( const auto* s : sources )
    for ( const auto& x : state_union( *s ) )
      domain.insert( x );
  if ( gen.coin( 0.5 ) )
    domain.insert( gen.state_signal( n ) );
  return gen.system_on( domain, gen.state_dim() );
}

std::optional<operands> ser_left_operands( system_generator& gen )
{
  auto pair = plain_pair( gen );
  const auto &f = ( *pair )[0], &g = ( *pair )[1];
  return operands{ f, g, cascade_on( gen, { &f, &g } ) };
}

std::optional<operands> ser_right_operands( system_generator& gen )
{
  const unsigned m = gen.input_dim(), n = gen.state_dim();
  system f = gen.random_system( m, n );
  system h = cascade_on( gen, { &f } );
  return operands{ f, h, partner_on( gen, h.domain(), h ) };
}

std::optional<operands> single( system_generator& gen )
{
  const unsigned m = gen.input_dim(), n = gen.state_dim();
  return operands{ gen.random_system( m, n ) };
}

struct identity
{
  theorem_info info;
  std::function<std::optional<operands>( system_generator& )> generate;
  std::function<outcome( const operands& )> check;
};

const std::vector<identity>& identities()
{
  static const std::vector<identity> all = [] {
    auto initial = []( system_generator& g ) { return regime_pair( g, initial_of, false ); };
    auto final = []( system_generator& g ) { return regime_pair( g, final_value, true ); };
    std::vector<identity> v{
        { { "isect-init-racefree", "f race-free (constant) initial states => so has f cap g", 2, false }, initial,
          isect_init_racefree },
        { { "isect-final", "f has (race-free, constant) final states => so has f cap g", 2, false }, final,
          isect_final },
        { { "union-init", "race-free / constant initial states are preserved by f cup g", 2, false }, initial,
          union_init },
        { { "union-final", "(race-free, constant) final states are preserved by f cup g", 2, false }, final,
          union_final },
        { { "isect-init-time", "bounded (fixed) initial time of f carries over to f cap g", 2, false }, plain_pair,
          []( const operands& o ) { return isect_time( o, true ); } },
        { { "isect-final-time", "bounded (fixed) final time of f carries over to f cap g", 2, false }, plain_pair,
          []( const operands& o ) { return isect_time( o, false ); } },
        { { "union-init-time", "t0 of f cup g is min of the operand witnesses", 2, false }, plain_pair,
          []( const operands& o ) { return union_time( o, true ); } },
        { { "union-final-time", "t_f of f cup g is max of the operand witnesses", 2, false }, plain_pair,
          []( const operands& o ) { return union_time( o, false ); } },
        { { "phi0-isect", "(phi cap gamma)_0(u) = phi_0(u) cap gamma_0(u)", 2, false }, plain_pair,
          []( const operands& o ) { return phi_isect( o, initial_state_function, false ); } },
        { { "phif-isect", "(phi cap gamma)_f(u) = phi_f(u) cap gamma_f(u)", 2, false }, stable_pair,
          []( const operands& o ) { return phi_isect( o, final_state_function, true ); } },
        { { "phi0-union", "(phi cup gamma)_0 is the three-case union", 2, false }, plain_pair,
          []( const operands& o ) { return phi_union( o, initial_state_function, false ); } },
        { { "phif-union", "(phi cup gamma)_f is the three-case union", 2, false }, stable_pair,
          []( const operands& o ) { return phi_union( o, final_state_function, true ); } },
        { { "sub-isect", "f sub f1, g sub g1 => f cap g sub f1 cap g1", 4, false }, sub_operands, sub_isect },
        { { "sub-union", "f sub f1, g sub g1 => f cup g sub f1 cup g1", 4, false }, sub_operands, sub_union },
        { { "dual-isect", "(f cap g)* = f* cap g*", 2, false }, plain_pair, dual_isect },
        { { "dual-union", "(f cup g)* = f* cup g*", 2, false }, plain_pair, dual_union },
        { { "inv-isect", "(f cap g)^-1 = f^-1 cap g^-1", 2, false }, plain_pair, inv_isect },
        { { "inv-union", "(f cup g)^-1 = f^-1 cup g^-1", 2, false }, plain_pair, inv_union },
        { { "prod-isect", "(f cap g) x f' = (f x f') cap (g x f')", 3, false },
          []( system_generator& g ) { return prod_operands( g, false ); }, prod_isect },
        { { "prod-union", "(f cup g) x f' = (f x f') cup (g x f')", 3, false },
          []( system_generator& g ) { return prod_operands( g, false ); }, prod_union },
        { { "prod-isect-4", "(f cap g) x (f' cap g') = four-way intersection", 4, false },
          []( system_generator& g ) { return prod_operands( g, true ); }, prod_isect_4 },
        { { "prod-union-4", "(f cup g) x (f' cup g') = four-way union", 4, false },
          []( system_generator& g ) { return prod_operands( g, true ); }, prod_union_4 },
        { { "par-isect", "(f cap g, f1') = (f, f1') cap (g, f1')", 3, false }, par_operands, par_isect },
        { { "par-union", "(f cup g, f1') = (f, f1') cup (g, f1')", 3, false }, par_operands, par_union },
        { { "par-isect-right", "(f, f1' cap g1') = (f, f1') cap (f, g1')", 3, false }, par_right_operands,
          par_isect_right },
        { { "par-union-right", "(f, f1' cup g1') = (f, f1') cup (f, g1')", 3, false }, par_right_operands,
          par_union_right },
        { { "ser-isect-left", "h o (f cap g) sub (h o f) cap (h o g)", 3, true }, ser_left_operands, ser_isect_left },
        { { "ser-isect-right", "(h cap h1) o f sub (h o f) cap (h1 o f)", 3, true }, ser_right_operands,
          ser_isect_right },
        { { "ser-union-left", "h o (f cup g) = (h o f) cup (h o g)", 3, false }, ser_left_operands, ser_union_left },
        { { "ser-union-right", "(h cup h1) o f = (h o f) cup (h1 o f)", 3, false }, ser_right_operands,
          ser_union_right },
        { { "restrict-decompose", "f = union of its restrictions f_mu over initial states", 1, false }, single,
          restrict_decompose },
    };
    return v;
  }();
  return all;
}

std::uint64_t trial_seed( std::uint64_t seed, std::size_t theorem, std::size_t trial )
{
  std::seed_seq seq{ static_cast<std::uint32_t>( seed ), static_cast<std::uint32_t>( seed >> 32 ),
                     static_cast<std::uint32_t>( theorem ), static_cast<std::uint32_t>( trial ),
                     static_cast<std::uint32_t>( std::uint64_t( trial ) >> 32 ) };
  std::mt19937_64 rng( seq );
  return rng();
}

constexpr std::size_t max_recorded_failures = 10;

void record( theorem_report& report, const outcome& o, std::uint64_t seed, const operands& ops )
{
  if ( o.kind == outcome::vacuous )
  {
    ++report.vacuous;
    return;
  }
  ++report.non_vacuous;
  if ( o.equal_domains )
    ++report.equal_domains;
  if ( o.kind == outcome::fail )
  {
    ++report.failure_count;
    if ( report.failures.size() < max_recorded_failures )
    {
      theorem_failure failure{ seed, {}, o.lhs, o.rhs, o.message };
      for ( const auto& s : ops )
        failure.operands.push_back( serialize_system( s ) );
      report.failures.push_back( std::move( failure ) );
    }
  }
}

} // namespace

const std::vector<theorem_info>& theorem_registry()
{
  static const std::vector<theorem_info> infos = [] {
    std::vector<theorem_info> v;
    for ( const auto& i : identities() )
      v.push_back( i.info );
    return v;
  }();
  return infos;
}

theorem_report verify_identity( std::string_view id, const std::vector<system>& ops, std::size_t trials,
                                const gen_params& params )
{
  const auto& all = identities();
  auto it = std::find_if( all.begin(), all.end(), [&]( const identity& i ) { return i.info.id == id; } );
  if ( it == all.end() )
    throw algebra_error( errc::unknown_theorem, "unknown theorem id '" + std::string( id ) + "'" );
  const auto index = static_cast<std::size_t>( it - all.begin() );

  theorem_report report;
  report.id = std::string( id );
  if ( !ops.empty() )
  {
    if ( ops.size() != it->info.arity )
      throw std::invalid_argument( report.id + " takes " + std::to_string( it->info.arity ) + " systems, got " +
                                   std::to_string( ops.size() ) );
    report.trials = 1;
    record( report, it->check( ops ), 0, ops );
  }
  else
  {
    params.validate();
    for ( std::size_t trial = 0; trial < trials; ++trial )
    {
      const auto seed = trial_seed( params.seed, index, trial );
      system_generator gen( params, seed );
      ++report.trials;
      auto generated = it->generate( gen );
      if ( !generated )
      {
        ++report.vacuous;
        continue;
      }
      record( report, it->check( *generated ), seed, *generated );
    }
  }
  report.under_powered = report.trials > 0 && report.non_vacuous * 100 < report.trials;
  return report;
}

} // namespace asyalg
