#include <doctest.h>

#include <asyalg/error.hpp>
#include <asyalg/format.hpp>
#include <asyalg/theorems.hpp>

using namespace asyalg;

namespace
{

bvec b( const char* bits ) { return *bvec::parse( bits ); }
event ev( rational t, const char* bits ) { return { t, b( bits ) }; }

const signal a = make_signal( 1, b( "0" ), { ev( 1, "1" ) } );
const signal clk = make_signal( 1, b( "0" ), {}, periodic_tail{ 0, 2, { ev( 0, "1" ), ev( 1, "0" ) } } );

std::pair<std::size_t, std::size_t> where( std::string_view text )
{
  try
  {
    parse_system( text );
  }
  catch ( const parse_error& e )
  {
    return { e.line(), e.column() };
  }
  return { 0, 0 };
}

} // namespace

TEST_CASE( "parse" )
{
  auto doc = parse_system( "system m=1 n=1\ninput init=0\n  state init=0 1:1\n" );
  CHECK( doc.sys == asyalg::system::from_entries( 1, 1, { { signal( b( "0" ) ), { a } } } ) );
  CHECK_FALSE( doc.name );

  doc = parse_system( "# clock\nsystem m=1 n=1 name=osc\n\ninput init=1\n  state init=0 tail@0+2: 0:1 1:0\n" );
  CHECK( doc.sys.at( signal( b( "1" ) ) ) == signal_set( 1, { clk } ) );
  CHECK( doc.name == "osc" );

  doc = parse_system( "system m=1 n=1\ninput init=0\n  state init=0 1:1\ninput init=0 5:0\n  state init=0 2/2:1\n" );
  CHECK( doc.sys.size() == 1 );
  REQUIRE( doc.warnings.size() == 2 );
  CHECK( doc.warnings[0].find( "line 4" ) != std::string::npos );
}

TEST_CASE( "parse errors carry positions" )
{
  CHECK( where( "system m=1 n=1\ninput init=0\ninput init=1\n  state init=0\n" ) == std::pair<std::size_t, std::size_t>{ 2, 1 } );
  CHECK( where( "system m=1 n=1\ninput init=0\n  state init=01\n" ) == std::pair<std::size_t, std::size_t>{ 3, 14 } );
  CHECK( where( "system m=1 n=1\ninput init=0 x:1\n  state init=0\n" ) == std::pair<std::size_t, std::size_t>{ 2, 14 } );
  CHECK( where( "system m=1\n" ).first == 1 );
  CHECK( where( "input init=0\n" ) == std::pair<std::size_t, std::size_t>{ 1, 1 } );
  CHECK( where( "system m=1 n=1\n  state init=0\n" ) == std::pair<std::size_t, std::size_t>{ 2, 3 } );
  CHECK( where( "system m=1 n=1\ninput init=0 2:1 1:0\n  state init=0\n" ).first == 2 );
  try
  {
    parse_system( "system m=1 n=1\ninput init=0\n" );
    FAIL( "expected an error" );
  }
  catch ( const parse_error& e )
  {
    CHECK( std::string( e.what() ).find( "empty state set" ) != std::string::npos );
  }
}

TEST_CASE( "serialize" )
{
  auto f = asyalg::system::from_entries( 1, 1, { { signal( b( "0" ) ), { make_signal( 1, b( "0" ), { ev( rational( 6, 4 ), "1" ) } ) } } } );
  const auto text = serialize_system( f );
  CHECK( text == "system m=1 n=1\ninput init=0\n  state init=0 3/2:1\n" );
  CHECK( text.find( "6/4" ) == std::string::npos );
  CHECK( serialize_system( f, "x" ).rfind( "system m=1 n=1 name=x\n", 0 ) == 0 );
}

TEST_CASE( "signal sets" )
{
  const signal_set s( 1, { a, clk } );
  CHECK( parse_signal_set( serialize_signal_set( s ) ) == s );
  CHECK( parse_signal( "init=0 tail@0+2: 0:1 1:0" ) == clk );
  CHECK_THROWS_AS( parse_signal( "init=0 1:1", 2 ), parse_error );
}

TEST_CASE( "round trip and canonical bytes on random systems" )
{
  gen_params params;
  system_generator gen( params, 21 );
  for ( int trial = 0; trial < 300; ++trial )
  {
    const unsigned m = gen.input_dim(), n = gen.state_dim();
    const auto f = gen.random_system( m, n );
    const auto text = serialize_system( f );
    const auto back = parse_system( text );
    CHECK( back.sys == f );
    CHECK( back.warnings.empty() );
    CHECK( serialize_system( back.sys ) == text );
  }
}

TEST_CASE( "semantically equal descriptions serialize identically" )
{
  const auto x = make_signal( 1, b( "0" ), { ev( 0, "1" ), ev( 1, "0" ) }, periodic_tail{ 2, 4, { ev( 0, "1" ), ev( 1, "0" ), ev( 2, "1" ), ev( 3, "0" ) } } );
  const auto y = parse_signal( "init=0 tail@0+2: 0:1 1:0" );
  const auto f = asyalg::system::from_entries( 1, 1, { { a, { x } } } );
  const auto g = asyalg::system::from_entries( 1, 1, { { a, { y } } } );
  CHECK( serialize_system( f ) == serialize_system( g ) );
}
