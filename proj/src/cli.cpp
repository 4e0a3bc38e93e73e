#include <asyalg/cli.hpp>

#include <asyalg/constraints.hpp>
#include <asyalg/error.hpp>
#include <asyalg/format.hpp>
#include <asyalg/predicates.hpp>
#include <asyalg/testing.hpp>
#include <asyalg/theorems.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

namespace asyalg::cli
{

namespace
{

using json = nlohmann::ordered_json;

/// Bad invocation or unreadable input; maps to exit code 2.
struct usage_failure : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

std::string read_file( const std::string& path )
{
  std::ifstream in( path, std::ios::binary );
  if ( !in )
    throw usage_failure( "cannot read '" + path + "'" );
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

template<class Fn>
auto located( const std::string& path, Fn fn )
{
  try
  {
    return fn();
  }
  catch ( const parse_error& e )
  {
    throw usage_failure( path + ": " + e.what() );
  }
}

system load_system( const std::string& path, std::ostream& err )
{
  const auto text = read_file( path );
  return located( path, [&] {
    auto doc = parse_system( text );
    for ( const auto& w : doc.warnings )
      err << path << ": warning: " << w << '\n';
    return doc.sys;
  } );
}

bool is_signal_list( const std::string& text )
{
  std::istringstream in( text );
  std::string word;
  while ( in >> word )
  {
    if ( word.front() == '#' )
    {
      std::getline( in, word );
      continue;
    }
    return word == "signals";
  }
  return false;
}

signal parse_signal_arg( const std::string& text, const char* what )
{
  try
  {
    return parse_signal( text );
  }
  catch ( const parse_error& e )
  {
    throw usage_failure( std::string( what ) + ": " + e.what() );
  }
}

rational parse_rational_arg( const std::string& text, const char* what )
{
  auto r = rational::parse( text );
  if ( !r )
    throw usage_failure( std::string( what ) + ": invalid rational '" + text + "'" );
  return *r;
}

template<class T, class Parse>
void parse_range( const std::string& text, T& lo, T& hi, const char* what, Parse parse )
{
  if ( text.empty() )
    return;
  auto dots = text.find( ".." );
  try
  {
    lo = parse( text.substr( 0, dots ) );
    hi = dots == std::string::npos ? lo : parse( text.substr( dots + 2 ) );
  }
  catch ( const std::exception& )
  {
    throw usage_failure( std::string( what ) + ": expected <lo>..<hi> or a single value, got '" + text + "'" );
  }
}

unsigned to_unsigned( const std::string& s )
{
  std::size_t used = 0;
  const unsigned long v = std::stoul( s, &used );
  if ( used != s.size() || v > 1000 )
    throw std::invalid_argument( s );
  return static_cast<unsigned>( v );
}

rational to_rational( const std::string& s )
{
  auto r = rational::parse( s );
  if ( !r )
    throw std::invalid_argument( s );
  return *r;
}

/// Generator flags shared by `verify` and `gen`.
struct gen_flags
{
  std::string m, n, inputs, states, switches, time;
  std::optional<double> tail_probability, overlap;

  void attach( CLI::App& app )
  {
    app.add_option( "--m", m, "input dimension range, e.g. 1..3" );
    app.add_option( "--n", n, "state dimension range" );
    app.add_option( "--inputs", inputs, "inputs per system" );
    app.add_option( "--states", states, "states per input" );
    app.add_option( "--switches", switches, "transient switches per signal" );
    app.add_option( "--time", time, "time range of transient switches, e.g. -4..8" );
    app.add_option( "--tail-prob", tail_probability, "probability of a periodic tail" );
    app.add_option( "--overlap", overlap, "probability of drawing from the shared pools" );
  }

  void apply( gen_params& p ) const
  {
    parse_range( m, p.m_min, p.m_max, "--m", to_unsigned );
    parse_range( n, p.n_min, p.n_max, "--n", to_unsigned );
    parse_range( inputs, p.inputs_min, p.inputs_max, "--inputs", to_unsigned );
    parse_range( states, p.states_min, p.states_max, "--states", to_unsigned );
    parse_range( switches, p.switches_min, p.switches_max, "--switches", to_unsigned );
    parse_range( time, p.time_min, p.time_max, "--time", to_rational );
    if ( tail_probability )
      p.tail_probability = *tail_probability;
    if ( overlap )
      p.overlap_bias = *overlap;
    try
    {
      p.validate();
    }
    catch ( const std::invalid_argument& e )
    {
      throw usage_failure( e.what() );
    }
  }
};

struct style
{
  bool color = false;

  [[nodiscard]] std::string paint( const std::string& text, bool good ) const
  {
    if ( !color )
      return text;
    return ( good ? "\033[32m" : "\033[31m" ) + text + "\033[0m";
  }
};

std::string indent( const std::string& text, const std::string& prefix )
{
  std::string out;
  std::istringstream in( text );
  for ( std::string line; std::getline( in, line ); )
    out += prefix + line + '\n';
  return out;
}

void emit( const std::string& text, const std::string& path, std::ostream& out )
{
  if ( path.empty() || path == "-" )
  {
    out << text;
    return;
  }
  std::ofstream file( path, std::ios::binary );
  if ( !file || !( file << text ) )
    throw usage_failure( "cannot write '" + path + "'" );
}

std::string time_text( const std::optional<rational>& t ) { return t ? t->to_string() : "any"; }

json time_json( const std::optional<rational>& t ) { return t ? json( t->to_string() ) : json( nullptr ); }

// ---------------------------------------------------------------------------
// Commands

struct op_args
{
  std::string name;
  std::vector<std::string> files;
  std::string mode = "strict";
  std::string universe;
  std::string output;
};

int run_op( const op_args& a, std::ostream& out, std::ostream& err )
{
  static const std::map<std::string, std::size_t> arity{ { "intersect", 2 }, { "unite", 2 }, { "dual", 1 },
                                                          { "inverse", 1 },   { "cartesian", 2 }, { "parallel", 2 },
                                                          { "serial", 2 } };
  auto it = arity.find( a.name );
  if ( it == arity.end() )
    throw usage_failure( "unknown operation '" + a.name + "'" );
  if ( a.files.size() != it->second )
    throw usage_failure( a.name + " takes " + std::to_string( it->second ) + " file(s)" );
  if ( a.mode != "strict" && a.mode != "generalized" )
    throw usage_failure( "--mode must be strict or generalized" );
  if ( !a.universe.empty() && a.name != "unite" )
    throw usage_failure( "--universe applies to 'unite' with a signal list" );

  const system f = load_system( a.files[0], err );
  std::optional<system> result;
  if ( it->second == 1 )
    result = a.name == "dual" ? dual( f ) : inverse( f );
  else if ( a.name == "unite" && is_signal_list( read_file( a.files[1] ) ) )
  {
    const auto x = located( a.files[1], [&] { return parse_signal_set( read_file( a.files[1] ) ); } );
    const auto universe = a.universe.empty()
                              ? f.domain()
                              : located( a.universe, [&] { return parse_signal_set( read_file( a.universe ) ); } );
    result = unite_with_constant( f, x, universe );
  }
  else
  {
    if ( !a.universe.empty() )
      throw usage_failure( "--universe needs a signal list as the second operand" );
    const system g = load_system( a.files[1], err );
    if ( a.name == "intersect" )
      result = intersect( f, g );
    else if ( a.name == "unite" )
      result = unite( f, g );
    else if ( a.name == "cartesian" )
      result = cartesian( f, g );
    else if ( a.name == "parallel" )
      result = parallel( f, g );
    else
      result = serial( f, g, a.mode == "strict" ? serial_mode::strict : serial_mode::generalized );
  }
  emit( serialize_system( *result ), a.output, out );
  return success;
}

struct check_args
{
  std::string property;
  int level = 0;
  std::string file;
};

int run_check( const check_args& a, bool as_json, const style& st, std::ostream& out, std::ostream& err )
{
  const bool states = a.property == "isfs";
  if ( !states && a.property != "itft" )
    throw usage_failure( "check expects isfs or itft" );
  const system f = load_system( a.file, err );
  const auto r = a.level <= 3 ? ( states ? check_initial_states( f, a.level ) : check_initial_time( f, a.level ) )
                              : ( states ? check_final_states( f, a.level ) : check_final_time( f, a.level ) );
  const std::string label = a.property + std::to_string( a.level );

  if ( as_json )
  {
    json j{ { "property", a.property }, { "level", a.level }, { "holds", r.holds } };
    json witness = json::object();
    if ( !r.state_per_input.empty() )
    {
      json per = json::array();
      for ( const auto& [u, v] : r.state_per_input )
        per.push_back( { { "input", u.to_string() }, { "value", v.to_string() } } );
      witness["per_input"] = per;
    }
    if ( r.state )
      witness["value"] = r.state->to_string();
    if ( !r.time_per_input.empty() )
    {
      json per = json::array();
      for ( const auto& [u, t] : r.time_per_input )
        per.push_back( { { "input", u.to_string() }, { "time", time_json( t ) } } );
      witness["per_input"] = per;
    }
    if ( !states && ( a.level == 3 || a.level == 6 ) )
      witness["time"] = time_json( r.time );
    if ( r.holds && !witness.empty() )
      j["witness"] = witness;
    if ( !r.vacuous_inputs.empty() )
    {
      json v = json::array();
      for ( const auto& u : r.vacuous_inputs )
        v.push_back( u.to_string() );
      j["vacuous_inputs"] = v;
    }
    if ( r.counterexample )
    {
      const auto& c = *r.counterexample;
      json cj{ { "input", c.input.to_string() }, { "state", c.state.to_string() } };
      if ( c.other_input )
        cj["other_input"] = c.other_input->to_string();
      if ( c.other_state )
        cj["other_state"] = c.other_state->to_string();
      j["counterexample"] = cj;
    }
    out << j.dump( 2 ) << '\n';
    return r.holds ? success : property_fails;
  }

  out << label << ": " << st.paint( r.holds ? "holds" : "fails", r.holds ) << '\n';
  if ( r.holds )
  {
    for ( const auto& [u, v] : r.state_per_input )
      out << "  input " << u.to_string() << " -> " << v.to_string() << '\n';
    if ( r.state )
      out << "  value " << r.state->to_string() << '\n';
    for ( const auto& [u, t] : r.time_per_input )
      out << "  input " << u.to_string() << " -> " << time_text( t ) << '\n';
    if ( !states && ( a.level == 3 || a.level == 6 ) )
      out << "  time " << time_text( r.time ) << '\n';
    for ( const auto& u : r.vacuous_inputs )
      out << "  input " << u.to_string() << ": no state with a final value\n";
  }
  if ( r.counterexample )
  {
    const auto& c = *r.counterexample;
    out << "  counterexample: input " << c.input.to_string() << " state " << c.state.to_string() << '\n';
    if ( c.other_state )
      out << "  conflicts with: input " << ( c.other_input ? *c.other_input : c.input ).to_string() << " state "
          << c.other_state->to_string() << '\n';
  }
  return r.holds ? success : property_fails;
}

struct verify_args
{
  std::string theorem;
  std::size_t trials = 500;
  std::uint64_t seed = 1;
  gen_flags gen;
  std::vector<std::string> files;
};

int run_verify( const verify_args& a, bool as_json, const style& st, std::ostream& out, std::ostream& err )
{
  gen_params params;
  params.seed = a.seed;
  a.gen.apply( params );

  std::vector<std::string> ids;
  if ( a.theorem == "all" )
  {
    if ( !a.files.empty() )
      throw usage_failure( "explicit operands need a single --theorem id" );
    for ( const auto& info : theorem_registry() )
      ids.emplace_back( info.id );
  }
  else
    ids.push_back( a.theorem );

  std::vector<system> operands;
  for ( const auto& path : a.files )
    operands.push_back( load_system( path, err ) );

  std::vector<theorem_report> reports;
  for ( const auto& id : ids )
  {
    try
    {
      reports.push_back( verify_identity( id, operands, a.trials, params ) );
    }
    catch ( const std::invalid_argument& e )
    {
      throw usage_failure( e.what() );
    }
  }

  std::size_t failed = 0;
  for ( const auto& r : reports )
    failed += !r.passed();

  if ( as_json )
  {
    json list = json::array();
    for ( const auto& r : reports )
    {
      json j{ { "theorem", r.id },       { "trials", r.trials },
              { "non_vacuous", r.non_vacuous }, { "vacuous", r.vacuous },
              { "failures", r.failure_count },  { "under_powered", r.under_powered },
              { "passed", r.passed() } };
      const auto& reg = theorem_registry();
      auto info = std::find_if( reg.begin(), reg.end(), [&]( const theorem_info& i ) { return i.id == r.id; } );
      if ( info != reg.end() && info->inclusion )
        j["equal_domains"] = r.equal_domains;
      json details = json::array();
      for ( const auto& f : r.failures )
        details.push_back( { { "seed", f.seed },
                             { "message", f.message },
                             { "lhs", f.lhs },
                             { "rhs", f.rhs },
                             { "operands", f.operands } } );
      j["failure_details"] = details;
      list.push_back( j );
    }
    out << json{ { "seed", a.seed }, { "theorems", list }, { "failed", failed } }.dump( 2 ) << '\n';
    return failed ? property_fails : success;
  }

  constexpr std::size_t shown = 2;
  for ( const auto& r : reports )
  {
    const std::string verdict = r.failure_count ? "FAIL" : r.under_powered ? "UNDER-POWERED" : "PASS";
    out << st.paint( verdict, r.passed() ) << ' ' << r.id << "  trials=" << r.trials
        << " non-vacuous=" << r.non_vacuous << " vacuous=" << r.vacuous << " failures=" << r.failure_count;
    const auto& reg = theorem_registry();
    auto info = std::find_if( reg.begin(), reg.end(), [&]( const theorem_info& i ) { return i.id == r.id; } );
    if ( info != reg.end() && info->inclusion )
      out << " equal-domains=" << r.equal_domains;
    out << '\n';
    for ( std::size_t k = 0; k < std::min( shown, r.failures.size() ); ++k )
    {
      const auto& f = r.failures[k];
      out << "  seed " << f.seed << ": " << f.message << '\n';
      out << "  left:\n" << indent( f.lhs, "    " ) << "  right:\n" << indent( f.rhs, "    " );
      for ( std::size_t i = 0; i < f.operands.size(); ++i )
        out << "  operand " << i + 1 << ":\n" << indent( f.operands[i], "    " );
    }
  }
  out << reports.size() << " identit" << ( reports.size() == 1 ? "y" : "ies" ) << ", " << failed << " not passed\n";
  return failed ? property_fails : success;
}

} // namespace

int run( const std::vector<std::string>& args, std::ostream& out, std::ostream& err )
{
  CLI::App app{ "Algebra of asynchronous systems", "asyalg" };
  app.require_subcommand( 1 );
  app.fallthrough();
  bool as_json = false;
  app.add_flag( "--json", as_json, "machine-readable output" );

  op_args op;
  auto* op_cmd = app.add_subcommand( "op", "apply an operator to system files" );
  op_cmd->add_option( "operation", op.name, "intersect|unite|dual|inverse|cartesian|parallel|serial" )->required();
  op_cmd->add_option( "files", op.files, "operand files; serial takes H then F" )->required();
  op_cmd->add_option( "--mode", op.mode, "serial connection mode: strict|generalized" );
  op_cmd->add_option( "--universe", op.universe, "input universe for unite with a signal list" );
  op_cmd->add_option( "-o,--output", op.output, "output file (default stdout)" );

  check_args check;
  auto* check_cmd = app.add_subcommand( "check", "decide a regime property" );
  check_cmd->add_option( "property", check.property, "isfs|itft" )->required();
  check_cmd->add_option( "--level", check.level, "1..6" )->required()->check( CLI::Range( 1, 6 ) );
  check_cmd->add_option( "file", check.file )->required();

  std::string constrain_file, constrain_pred, constrain_out;
  auto* constrain_cmd = app.add_subcommand( "constrain", "intersect with a state predicate" );
  constrain_cmd->add_option( "file", constrain_file )->required();
  constrain_cmd->add_option( "--predicate", constrain_pred,
                             "null-initial|monotone|at-least-one-high|single-switch|stuck-at:i:v|inertia:dr:df" )
      ->required();
  constrain_cmd->add_option( "-o,--output", constrain_out );

  std::string inertial_file, inertial_tt, inertial_dr, inertial_df, inertial_out;
  auto* inertial_cmd = app.add_subcommand( "inertial", "keep the states allowed by the inertial model of F" );
  inertial_cmd->add_option( "file", inertial_file )->required();
  inertial_cmd->add_option( "--truth-table", inertial_tt, "truth table of F" )->required();
  inertial_cmd->add_option( "--dr", inertial_dr, "rise delay" )->required();
  inertial_cmd->add_option( "--df", inertial_df, "fall delay" )->required();
  inertial_cmd->add_option( "-o,--output", inertial_out );

  verify_args verify;
  auto* verify_cmd = app.add_subcommand( "verify", "check registered identities" );
  verify_cmd->add_option( "--theorem", verify.theorem, "identity id or 'all'" )->required();
  verify_cmd->add_option( "--trials", verify.trials );
  verify_cmd->add_option( "--seed", verify.seed );
  verify.gen.attach( *verify_cmd );
  verify_cmd->add_option( "files", verify.files, "explicit operands" );

  std::string good_file, bad_file, testgen_out;
  auto* testgen_cmd = app.add_subcommand( "testgen", "inputs that tell GOOD from BAD in one measurement" );
  testgen_cmd->add_option( "good", good_file )->required();
  testgen_cmd->add_option( "bad", bad_file )->required();
  testgen_cmd->add_option( "-o,--output", testgen_out );

  std::string classify_good, classify_bad, classify_input, classify_observe;
  auto* classify_cmd = app.add_subcommand( "classify", "classify a measured state" );
  classify_cmd->add_option( "good", classify_good )->required();
  classify_cmd->add_option( "bad", classify_bad )->required();
  classify_cmd->add_option( "--input", classify_input )->required();
  classify_cmd->add_option( "--observe", classify_observe )->required();

  std::uint64_t gen_seed = 1;
  gen_flags gen;
  std::string gen_out, gen_name;
  auto* gen_cmd = app.add_subcommand( "gen", "generate a random system" );
  gen_cmd->add_option( "--seed", gen_seed )->required();
  gen.attach( *gen_cmd );
  gen_cmd->add_option( "--name", gen_name );
  gen_cmd->add_option( "-o,--output", gen_out );

  const char* color_env = std::getenv( "ASYALG_COLOR" );
  const style st{ color_env && std::string( color_env ) == "1" };

  try
  {
    std::vector<std::string> reversed( args.rbegin(), args.rend() );
    app.parse( reversed );
  }
  catch ( const CLI::ParseError& e )
  {
    const int code = app.exit( e, out, err );
    return code == 0 ? success : usage_error;
  }

  try
  {
    if ( *op_cmd )
      return run_op( op, out, err );
    if ( *check_cmd )
      return run_check( check, as_json, st, out, err );
    if ( *constrain_cmd )
    {
      const system f = load_system( constrain_file, err );
      state_predicate p = [&] {
        try
        {
          return state_predicate::parse( constrain_pred, f.state_dim() );
        }
        catch ( const std::invalid_argument& e )
        {
          throw usage_failure( e.what() );
        }
      }();
      emit( serialize_system( intersect_with_predicate( f, p ) ), constrain_out, out );
      return success;
    }
    if ( *inertial_cmd )
    {
      const system f = load_system( inertial_file, err );
      const auto tt = read_file( inertial_tt );
      const auto fn = located( inertial_tt, [&] { return bool_fn::parse( tt ); } );
      const auto dr = parse_rational_arg( inertial_dr, "--dr" ), df = parse_rational_arg( inertial_df, "--df" );
      if ( !( dr > rational( 0 ) ) || !( df > rational( 0 ) ) )
        throw usage_failure( "--dr and --df must be positive" );
      emit( serialize_system( intersect_inertial( f, fn, dr, df ) ), inertial_out, out );
      return success;
    }
    if ( *verify_cmd )
      return run_verify( verify, as_json, st, out, err );
    if ( *testgen_cmd )
    {
      const auto found = find_distinguishing_inputs( load_system( good_file, err ), load_system( bad_file, err ) );
      if ( as_json )
      {
        json list = json::array();
        for ( const auto& u : found )
          list.push_back( u.to_string() );
        out << json{ { "distinguishing_inputs", list } }.dump( 2 ) << '\n';
      }
      else
        emit( serialize_signal_set( found ), testgen_out, out );
      if ( found.empty() )
        err << "no distinguishing input\n";
      return found.empty() ? property_fails : success;
    }
    if ( *classify_cmd )
    {
      const auto v = classify_state( load_system( classify_good, err ), load_system( classify_bad, err ),
                                     parse_signal_arg( classify_input, "--input" ),
                                     parse_signal_arg( classify_observe, "--observe" ) );
      if ( as_json )
        out << json{ { "verdict", to_string( v ) } }.dump( 2 ) << '\n';
      else
        out << st.paint( to_string( v ), v != verdict::bad ) << '\n';
      return v == verdict::bad ? property_fails : success;
    }
    if ( *gen_cmd )
    {
      gen_params params;
      params.seed = gen_seed;
      gen.apply( params );
      emit( serialize_system( random_system( params ),
                              gen_name.empty() ? std::nullopt : std::optional<std::string>( gen_name ) ),
            gen_out, out );
      return success;
    }
  }
  catch ( const usage_failure& e )
  {
    err << "error: " << e.what() << '\n';
    return usage_error;
  }
  catch ( const algebra_error& e )
  {
    err << "error: " << to_string( e.code() ) << ": " << e.what() << '\n';
    return e.undefined_operation() ? undefined : usage_error;
  }
  catch ( const std::invalid_argument& e )
  {
    err << "error: " << e.what() << '\n';
    return usage_error;
  }
  return usage_error;
}

} // namespace asyalg::cli
