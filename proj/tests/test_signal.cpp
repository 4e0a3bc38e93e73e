#include <doctest.h>

#include "oracles.hpp"

#include <asyalg/error.hpp>
#include <asyalg/signal.hpp>

#include <random>

using namespace asyalg;

namespace
{

bvec b( const char* bits ) { return *bvec::parse( bits ); }
event ev( rational t, const char* bits ) { return { t, b( bits ) }; }

const signal a = make_signal( 1, b( "0" ), { ev( 1, "1" ) } );
const signal pulse = make_signal( 1, b( "0" ), { ev( 1, "1" ), ev( 2, "0" ) } );
const signal clk = make_signal( 1, b( "0" ), {}, periodic_tail{ 0, 2, { ev( 0, "1" ), ev( 1, "0" ) } } );

} // namespace

TEST_CASE( "make_signal canonicalizes" )
{
  SUBCASE( "duplicate value dropped" )
  {
    auto x = make_signal( 1, b( "0" ), { ev( 1, "1" ), ev( 2, "1" ) } );
    CHECK( x == a );
    CHECK( x.transient().size() == 1 );
  }
  SUBCASE( "constant tail folds away" )
  {
    auto x = make_signal( 1, b( "0" ), {}, periodic_tail{ 0, 2, { ev( 0, "0" ), ev( 1, "0" ) } } );
    CHECK( x.is_constant() );
    CHECK( x == signal( b( "0" ) ) );
  }
  SUBCASE( "constant tail with a different value becomes one switch" )
  {
    auto x = make_signal( 1, b( "0" ), {}, periodic_tail{ 5, 2, { ev( 1, "1" ) } } );
    CHECK( x == make_signal( 1, b( "0" ), { ev( 6, "1" ) } ) );
    CHECK( final_value( x ) == b( "1" ) );
  }
  SUBCASE( "clk already minimal" )
  {
    REQUIRE( clk.tail() );
    CHECK( clk.tail()->period == rational( 2 ) );
    CHECK( clk.tail()->start == rational( 0 ) );
    CHECK( clk.tail()->pattern.size() == 2 );
    CHECK( clk.transient().empty() );
  }
  SUBCASE( "period 4 reduces to 2" )
  {
    auto x = make_signal( 1, b( "0" ), {},
                          periodic_tail{ 0, 4, { ev( 0, "1" ), ev( 1, "0" ), ev( 2, "1" ), ev( 3, "0" ) } } );
    CHECK( signals_equal( clk, x ) );
  }
  SUBCASE( "tail pulled back over a transient that already repeats it" )
  {
    auto x = make_signal( 1, b( "0" ), { ev( 0, "1" ), ev( 1, "0" ) },
                          periodic_tail{ 2, 2, { ev( 0, "1" ), ev( 1, "0" ) } } );
    CHECK( x == clk );
  }
  SUBCASE( "first tail event that is a no-op only in the first period" )
  {
    // Value 1 already holds before t = 0; the first real switch is at 1.
    auto x = make_signal( 1, b( "1" ), {}, periodic_tail{ 0, 2, { ev( 0, "1" ), ev( 1, "0" ) } } );
    REQUIRE( x.tail() );
    CHECK( x.tail()->start == rational( 1 ) );
    CHECK( x.initial() == b( "1" ) );
    CHECK( x.transient().empty() );
    CHECK( x == complement( make_signal( 1, b( "0" ), {}, periodic_tail{ 1, 2, { ev( 0, "1" ), ev( 1, "0" ) } } ) ) );
  }
}

TEST_CASE( "make_signal rejects malformed input" )
{
  CHECK_THROWS_AS( make_signal( 2, b( "0" ) ), algebra_error );
  CHECK_THROWS_AS( make_signal( 1, b( "0" ), { ev( 2, "1" ), ev( 1, "0" ) } ), algebra_error );
  CHECK_THROWS_AS( make_signal( 1, b( "0" ), { ev( 1, "1" ), ev( 1, "0" ) } ), algebra_error );
  CHECK_THROWS_AS( make_signal( 1, b( "0" ), { ev( 3, "1" ) }, periodic_tail{ 3, 2, { ev( 0, "0" ), ev( 1, "1" ) } } ),
                   algebra_error );
  CHECK_THROWS_AS( make_signal( 1, b( "0" ), {}, periodic_tail{ 0, 2, { ev( 2, "1" ) } } ), algebra_error );
  CHECK_THROWS_AS( make_signal( 1, b( "0" ), {}, periodic_tail{ 0, 0, { ev( 0, "1" ) } } ), algebra_error );
  try
  {
    make_signal( 1, b( "00" ) );
    FAIL( "expected an error" );
  }
  catch ( const algebra_error& e )
  {
    CHECK( e.code() == errc::dimension_mismatch );
  }
}

TEST_CASE( "value_at and left_limit" )
{
  CHECK( value_at( a, 0 ) == b( "0" ) );
  CHECK( value_at( a, 1 ) == b( "1" ) );
  CHECK( value_at( clk, rational( 7, 2 ) ) == b( "0" ) );
  CHECK( left_limit( a, 1 ) == b( "0" ) );
  CHECK( left_limit( a, rational( 3, 2 ) ) == b( "1" ) );
  CHECK( left_limit( clk, 2 ) == b( "0" ) );
  CHECK( left_limit( clk, 0 ) == b( "0" ) );
  CHECK( left_limit( clk, 1 ) == b( "1" ) );
  CHECK( value_at( clk, -5 ) == b( "0" ) );
}

TEST_CASE( "initial and final values" )
{
  CHECK( initial_value( a ) == b( "0" ) );
  CHECK( initial_value( make_signal( 1, b( "1" ), { ev( 5, "0" ) } ) ) == b( "1" ) );
  CHECK( initial_value( clk ) == b( "0" ) );
  CHECK( final_value( a ) == b( "1" ) );
  CHECK( final_value( pulse ) == b( "0" ) );
  CHECK_FALSE( final_value( clk ).has_value() );
}

TEST_CASE( "complement" )
{
  CHECK( complement( a ) == make_signal( 1, b( "1" ), { ev( 1, "0" ) } ) );
  CHECK( complement( clk ) == make_signal( 1, b( "1" ), {}, periodic_tail{ 0, 2, { ev( 0, "0" ), ev( 1, "1" ) } } ) );
  CHECK( complement( complement( pulse ) ) == pulse );
}

TEST_CASE( "product" )
{
  CHECK( product( a, a ) == make_signal( 2, b( "00" ), { ev( 1, "11" ) } ) );
  CHECK( product( a, pulse ) == make_signal( 2, b( "00" ), { ev( 1, "11" ), ev( 2, "10" ) } ) );

  SUBCASE( "tails combine over the rational lcm" )
  {
    auto y = make_signal( 1, b( "0" ), {}, periodic_tail{ 0, 3, { ev( 0, "1" ), ev( rational( 3, 2 ), "0" ) } } );
    auto p = product( clk, y );
    REQUIRE( p.tail() );
    CHECK( p.tail()->period == rational( 6 ) );
    // Sample every event instant of either factor over [0, 6] and the
    // midpoints between them against the factors' raw unrolled events.
    auto clk_events = oracle::unroll( oracle::raw_of( clk ), 8 );
    auto y_events = oracle::unroll( oracle::raw_of( y ), 8 );
    auto instants = oracle::times_of( clk_events );
    auto more = oracle::times_of( y_events );
    instants.insert( instants.end(), more.begin(), more.end() );
    for ( const auto& t : oracle::witness_grid( instants ) )
    {
      if ( t > rational( 7 ) )
        continue;
      auto expected = concat( oracle::chi_sum( clk.initial(), clk_events, t ), oracle::chi_sum( y.initial(), y_events, t ) );
      CHECK( value_at( p, t ) == expected );
    }
  }
}

TEST_CASE( "signals_equal" )
{
  CHECK( signals_equal( a, make_signal( 1, b( "0" ), { ev( 1, "1" ), ev( 3, "1" ) } ) ) );
  CHECK_FALSE( signals_equal( a, pulse ) );
}

TEST_CASE( "switch instants" )
{
  auto s = clk.switch_instants( -1, 4 );
  REQUIRE( s.size() == 5 );
  CHECK( s.front() == rational( 0 ) );
  CHECK( s.back() == rational( 4 ) );
  CHECK( a.first_switch() == rational( 1 ) );
  CHECK( pulse.last_switch() == rational( 2 ) );
  CHECK_FALSE( clk.last_switch() );
}

TEST_CASE( "canonical form agrees with the raw description" )
{
  std::mt19937_64 rng( 7 );
  for ( int trial = 0; trial < 2000; ++trial )
  {
    unsigned dim = 1 + static_cast<unsigned>( trial % 3 );
    auto raw = oracle::random_raw_signal( rng, dim );
    auto x = raw.build();
    rational span = raw.tail ? raw.tail->period * rational( 2 ) : rational( 0 );
    rational horizon = oracle::horizon_of( raw, span );
    auto events = oracle::unroll( raw, horizon );
    for ( const auto& t : oracle::witness_grid( oracle::times_of( events ) ) )
    {
      if ( t > horizon )
        continue;
      REQUIRE( value_at( x, t ) == oracle::chi_sum( raw.initial, events, t ) );
      REQUIRE( left_limit( x, t ) == oracle::chi_left_limit( raw.initial, events, t ) );
    }
    // Idempotence of canonicalization.
    REQUIRE( oracle::raw_of( x ).build() == x );
    // Every stored event is a real switch.
    for ( const auto& e : x.transient() )
      REQUIRE( left_limit( x, e.time ) != e.value );
    if ( x.tail() )
      for ( int k = 0; k < 2; ++k )
        for ( const auto& e : x.tail()->pattern )
        {
          auto t = x.tail()->start + x.tail()->period * rational( k ) + e.time;
          REQUIRE( left_limit( x, t ) != value_at( x, t ) );
        }
    REQUIRE( complement( complement( x ) ) == x );
  }
}
