#include <asyalg/format.hpp>

#include <asyalg/error.hpp>

#include <charconv>
#include <sstream>

namespace asyalg
{

namespace
{

struct token
{
  std::string_view text;
  std::size_t column; // 1-based
};

std::vector<token> tokenize( std::string_view line, std::size_t column_base = 1 )
{
  std::vector<token> out;
  std::size_t i = 0;
  while ( i < line.size() )
  {
    while ( i < line.size() && ( line[i] == ' ' || line[i] == '\t' || line[i] == '\r' ) )
      ++i;
    std::size_t start = i;
    while ( i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' )
      ++i;
    if ( i > start )
      out.push_back( { line.substr( start, i - start ), column_base + start } );
  }
  return out;
}

rational parse_time( const token& t, std::string_view text, std::size_t line, std::size_t offset )
{
  auto r = rational::parse( text );
  if ( !r )
    throw parse_error( line, t.column + offset, "invalid time '" + std::string( text ) + "'" );
  return *r;
}

bvec parse_bits( const token& t, std::string_view text, std::size_t line, std::size_t offset )
{
  auto b = bvec::parse( text );
  if ( !b )
    throw parse_error( line, t.column + offset, "invalid bit string '" + std::string( text ) + "'" );
  return *b;
}

event parse_event( const token& t, std::size_t line )
{
  auto colon = t.text.find( ':' );
  if ( colon == std::string_view::npos )
    throw parse_error( line, t.column, "expected <time>:<bits>, got '" + std::string( t.text ) + "'" );
  return { parse_time( t, t.text.substr( 0, colon ), line, 0 ), parse_bits( t, t.text.substr( colon + 1 ), line, colon + 1 ) };
}

unsigned parse_count( const token& t, std::string_view key, std::size_t line )
{
  if ( t.text.substr( 0, key.size() ) != key )
    throw parse_error( line, t.column, "expected " + std::string( key ) + "<int>" );
  auto digits = t.text.substr( key.size() );
  unsigned value = 0;
  auto [ptr, ec] = std::from_chars( digits.data(), digits.data() + digits.size(), value );
  if ( ec != std::errc() || ptr != digits.data() + digits.size() || value < 1 || value > bvec::max_dimension )
    throw parse_error( line, t.column + key.size(), "dimension must be an integer in 1..64" );
  return value;
}

signal parse_signal_tokens( const std::vector<token>& tokens, std::size_t first, unsigned dimension, std::size_t line,
                            std::size_t end_column )
{
  if ( first >= tokens.size() )
    throw parse_error( line, end_column, "expected a signal" );
  const token& head = tokens[first];
  if ( head.text.substr( 0, 5 ) != "init=" )
    throw parse_error( line, head.column, "a signal starts with init=<bits>" );
  bvec initial = parse_bits( head, head.text.substr( 5 ), line, 5 );
  if ( dimension != 0 && initial.dimension() != dimension )
    throw parse_error( line, head.column + 5, "expected " + std::to_string( dimension ) + " bits, got " +
                                                  std::to_string( initial.dimension() ) );

  std::vector<event> transient;
  std::optional<periodic_tail> tail;
  for ( std::size_t i = first + 1; i < tokens.size(); ++i )
  {
    const token& t = tokens[i];
    if ( t.text.substr( 0, 5 ) == "tail@" )
    {
      if ( tail )
        throw parse_error( line, t.column, "a signal has at most one tail" );
      auto spec = t.text.substr( 5 );
      if ( spec.empty() || spec.back() != ':' )
        throw parse_error( line, t.column, "expected tail@<start>+<period>:" );
      spec.remove_suffix( 1 );
      auto plus = spec.find( '+', 1 );
      if ( plus == std::string_view::npos )
        throw parse_error( line, t.column, "expected tail@<start>+<period>:" );
      tail = periodic_tail{ parse_time( t, spec.substr( 0, plus ), line, 5 ),
                            parse_time( t, spec.substr( plus + 1 ), line, 5 + plus + 1 ), {} };
      continue;
    }
    event e = parse_event( t, line );
    if ( e.value.dimension() != initial.dimension() )
      throw parse_error( line, t.column, "value " + e.value.to_string() + " does not have dimension " +
                                             std::to_string( initial.dimension() ) );
    ( tail ? tail->pattern : transient ).push_back( std::move( e ) );
  }
  if ( tail && tail->pattern.empty() )
    throw parse_error( line, end_column, "a tail needs at least one <offset>:<bits> entry" );
  try
  {
    return make_signal( initial.dimension(), initial, std::move( transient ), std::move( tail ) );
  }
  catch ( const parse_error& )
  {
    throw;
  }
  catch ( const algebra_error& e )
  {
    throw parse_error( line, head.column, e.what() );
  }
}

template<class Fn>
void for_each_line( std::string_view text, Fn fn )
{
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while ( pos <= text.size() )
  {
    auto next = text.find( '\n', pos );
    auto line = text.substr( pos, next == std::string_view::npos ? std::string_view::npos : next - pos );
    ++line_no;
    auto tokens = tokenize( line );
    if ( !tokens.empty() && tokens.front().text.front() != '#' )
      fn( line_no, tokens, line.size() + 1 );
    if ( next == std::string_view::npos )
      break;
    pos = next + 1;
  }
}

} // namespace

signal parse_signal( std::string_view text, unsigned dimension, std::size_t line, std::size_t column )
{
  auto tokens = tokenize( text, column );
  return parse_signal_tokens( tokens, 0, dimension, line, column + text.size() );
}

system_document parse_system( std::string_view text )
{
  std::optional<unsigned> m, n;
  std::optional<std::string> name;
  std::vector<std::string> warnings;
  system::map_type entries;
  system::map_type::iterator current = entries.end();
  std::size_t current_line = 0;
  std::size_t last_line = 0;

  auto close_input = [&]() {
    if ( current != entries.end() && current->second.empty() )
      throw parse_error( current_line, 1, "empty state set for input " + current->first.to_string() );
  };

  for_each_line( text, [&]( std::size_t line, const std::vector<token>& tokens, std::size_t end_column ) {
    last_line = line;
    const auto& keyword = tokens.front();
    if ( !m )
    {
      if ( keyword.text != "system" )
        throw parse_error( line, keyword.column, "expected 'system m=<int> n=<int>'" );
      if ( tokens.size() < 3 || tokens.size() > 4 )
        throw parse_error( line, keyword.column, "expected 'system m=<int> n=<int> [name=<ident>]'" );
      m = parse_count( tokens[1], "m=", line );
      n = parse_count( tokens[2], "n=", line );
      if ( tokens.size() == 4 )
      {
        if ( tokens[3].text.substr( 0, 5 ) != "name=" || tokens[3].text.size() == 5 )
          throw parse_error( line, tokens[3].column, "expected name=<ident>" );
        name = std::string( tokens[3].text.substr( 5 ) );
      }
      return;
    }
    if ( keyword.text == "input" )
    {
      close_input();
      signal u = parse_signal_tokens( tokens, 1, *m, line, end_column );
      auto [it, fresh] = entries.try_emplace( u, *n );
      if ( !fresh )
        warnings.push_back( "line " + std::to_string( line ) + ": duplicate input " + u.to_string() + " merged" );
      current = it;
      current_line = line;
      return;
    }
    if ( keyword.text == "state" )
    {
      if ( current == entries.end() )
        throw parse_error( line, keyword.column, "state before the first input" );
      signal x = parse_signal_tokens( tokens, 1, *n, line, end_column );
      if ( !current->second.insert( x ) )
        warnings.push_back( "line " + std::to_string( line ) + ": duplicate state " + x.to_string() + " merged" );
      return;
    }
    if ( keyword.text == "system" )
      throw parse_error( line, keyword.column, "only one system per file" );
    throw parse_error( line, keyword.column, "expected 'input' or 'state', got '" + std::string( keyword.text ) + "'" );
  } );

  if ( !m )
    throw parse_error( last_line + 1, 1, "missing 'system' header" );
  close_input();
  if ( entries.empty() )
    throw parse_error( last_line + 1, 1, "a system needs at least one input" );
  return { system( *m, *n, std::move( entries ) ), name, std::move( warnings ) };
}

std::string serialize_system( const system& f, const std::optional<std::string>& name )
{
  std::ostringstream out;
  out << "system m=" << f.input_dim() << " n=" << f.state_dim();
  if ( name )
    out << " name=" << *name;
  out << '\n';
  for ( const auto& [u, states] : f )
  {
    out << "input " << u.to_string() << '\n';
    for ( const auto& x : states )
      out << "  state " << x.to_string() << '\n';
  }
  return out.str();
}

signal_set parse_signal_set( std::string_view text )
{
  std::optional<signal_set> out;
  std::size_t last_line = 0;
  for_each_line( text, [&]( std::size_t line, const std::vector<token>& tokens, std::size_t end_column ) {
    last_line = line;
    const auto& keyword = tokens.front();
    if ( !out )
    {
      if ( keyword.text != "signals" || tokens.size() != 2 )
        throw parse_error( line, keyword.column, "expected 'signals n=<int>'" );
      out.emplace( parse_count( tokens[1], "n=", line ) );
      return;
    }
    if ( keyword.text != "signal" )
      throw parse_error( line, keyword.column, "expected 'signal <signal>'" );
    out->insert( parse_signal_tokens( tokens, 1, out->dimension(), line, end_column ) );
  } );
  if ( !out )
    throw parse_error( last_line + 1, 1, "missing 'signals' header" );
  return *out;
}

std::string serialize_signal_set( const signal_set& s )
{
  std::string out = "signals n=" + std::to_string( s.dimension() ) + "\n";
  for ( const auto& x : s )
    out += "signal " + x.to_string() + "\n";
  return out;
}

} // namespace asyalg
