#include <doctest.h>

#include <asyalg/error.hpp>
#include <asyalg/rational.hpp>

#include <limits>

using namespace asyalg;

TEST_CASE( "rationals are kept in lowest terms" )
{
  CHECK( rational( 6, 4 ) == rational( 3, 2 ) );
  CHECK( rational( 6, 4 ).to_string() == "3/2" );
  CHECK( rational( 3, -6 ).to_string() == "-1/2" );
  CHECK( rational( 0, 5 ).den() == 1 );
  CHECK_THROWS_AS( rational( 1, 0 ), algebra_error );
}

TEST_CASE( "arithmetic and ordering" )
{
  CHECK( rational( 1, 2 ) + rational( 1, 3 ) == rational( 5, 6 ) );
  CHECK( rational( 1, 2 ) - rational( 1, 3 ) == rational( 1, 6 ) );
  CHECK( rational( 2, 3 ) * rational( 3, 4 ) == rational( 1, 2 ) );
  CHECK( rational( 1, 2 ) / rational( 1, 4 ) == rational( 2 ) );
  CHECK( rational( -1, 3 ) < rational( -1, 4 ) );
  CHECK( rational( 7, 2 ).floor() == 3 );
  CHECK( rational( -7, 2 ).floor() == -4 );
  CHECK( mod( rational( 7, 2 ), rational( 2 ) ) == rational( 3, 2 ) );
  CHECK( mod( rational( -1, 2 ), rational( 2 ) ) == rational( 3, 2 ) );
}

TEST_CASE( "rational lcm" )
{
  CHECK( lcm( rational( 2 ), rational( 3 ) ) == rational( 6 ) );
  CHECK( lcm( rational( 2 ), rational( 3, 2 ) ) == rational( 6 ) );
  CHECK( lcm( rational( 1, 2 ), rational( 1, 3 ) ) == rational( 1 ) );
  CHECK( lcm( rational( 3, 4 ), rational( 1, 2 ) ) == rational( 3, 2 ) );
  // Brute force: the smallest k*a that is also an integer multiple of b.
  for ( int an = 1; an <= 6; ++an )
    for ( int ad = 1; ad <= 4; ++ad )
      for ( int bn = 1; bn <= 6; ++bn )
        for ( int bd = 1; bd <= 4; ++bd )
        {
          rational a( an, ad ), b( bn, bd );
          rational expected;
          for ( int k = 1;; ++k )
          {
            rational c = a * rational( k );
            if ( ( c / b ).is_integer() )
            {
              expected = c;
              break;
            }
          }
          CHECK( lcm( a, b ) == expected );
        }
}

TEST_CASE( "parse" )
{
  CHECK( rational::parse( "3/2" ) == rational( 3, 2 ) );
  CHECK( rational::parse( "-6/4" ) == rational( -3, 2 ) );
  CHECK( rational::parse( "17" ) == rational( 17 ) );
  CHECK_FALSE( rational::parse( "1/0" ) );
  CHECK_FALSE( rational::parse( "1/-2" ) );
  CHECK_FALSE( rational::parse( "x" ) );
  CHECK_FALSE( rational::parse( "" ) );
  CHECK_FALSE( rational::parse( "1.5" ) );
}

TEST_CASE( "overflow is reported, not wrapped" )
{
  rational big( std::numeric_limits<std::int64_t>::max() );
  CHECK_THROWS_AS( big + rational( 1 ), algebra_error );
  CHECK_THROWS_AS( big * rational( 2 ), algebra_error );
}
