/*!
  \file mulsynth.cpp
  \brief Command-line front end: gen, verify, count, table, bounds, selftest

  Exit codes: 0 success, 1 verification mismatch, 2 invalid input or flags,
  3 internal invariant violation.
*/

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include <mulsynth/mulsynth.hpp>

namespace
{

using namespace mulsynth;
using json = nlohmann::ordered_json;

enum exit_code : int
{
  exit_ok = 0,
  exit_mismatch = 1,
  exit_bad_input = 2,
  exit_invariant = 3
};

class usage_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Numbers that fit in 64 bits stay numbers, larger ones become decimal strings.
json big_json( bigint const& v )
{
  if ( v >= 0 && v <= std::numeric_limits<std::uint64_t>::max() )
    return static_cast<std::uint64_t>( v );
  return v.str();
}

void check_format( std::string const& format, std::initializer_list<std::string_view> allowed )
{
  for ( auto a : allowed )
  {
    if ( format == a )
      return;
  }
  throw usage_error( "unsupported --format " + format );
}

/* ---------------------------------------------------------------------------
 * gen / count
 * ------------------------------------------------------------------------- */

struct BuildConfig
{
  std::size_t bits = 0;
  std::string method = "auto";
  bool force = false;
  bool no_sharing = false;
  std::string format = "text";
  std::string out;
};

Method resolve_method( BuildConfig const& c )
{
  if ( c.bits < 1 )
    throw usage_error( "--bits must be at least 1" );
  if ( c.method == "auto" )
    return method_policy( c.bits );
  if ( c.method == "school" )
    return Method::school;
  if ( c.bits < karatsuba_min_width )
    throw usage_error( "unsupported width " + std::to_string( c.bits ) + " for Karatsuba (needs --bits >= " +
                       std::to_string( karatsuba_min_width ) + ")" );
  if ( method_policy( c.bits ) == Method::school && !c.force )
    throw usage_error( "the standard method is cheaper at " + std::to_string( c.bits ) +
                       " bits; pass --force to build Karatsuba anyway" );
  return Method::karatsuba;
}

struct CountReport
{
  MultiplierBuild build;
  Method method;
  bigint bound;
  bool bound_asserted;
  std::vector<std::string> notes;
};

CountReport make_report( BuildConfig const& c )
{
  auto const top = resolve_method( c );
  CountReport r{ build_multiplier( c.bits, top, KaratsubaOptions{ !c.no_sharing } ), top, 0, !c.no_sharing, {} };
  auto const gates = count_gates( r.build.netlist );

  auto const v = validate( r.build.netlist );
  if ( !v.ok() )
    throw invariant_violation( "generated netlist fails validation: " + v.violations.front() );

  if ( top == Method::school )
  {
    r.bound = c.bits == 1 ? 1 : predict_school_count( c.bits );
    r.notes.push_back( c.bits == 1 ? "formula: 1 gate for 1 bit"
                                   : "formula: (11n^2 - 13n)/2 - 1 + (n mod 2) = " + r.bound.str() );
  }
  else
  {
    std::map<std::size_t, bigint> memo;
    auto const L = [&]( std::size_t w ) { return recurrence_L_value( w, memo ); };
    SplitPlan const s( c.bits );
    auto const n = s.n;
    auto const& subs = r.build.level.sub_gates;
    std::ostringstream os;
    if ( !s.odd() )
    {
      r.bound = L( n + 1 ) + 2 * L( n ) + 38 * n - 2;
      os << "recurrence: L(" << n + 1 << ") + 2 L(" << n << ") + 38*" << n << " - 2 = " << L( n + 1 ) << " + 2*" << L( n )
         << " + " << 38 * n - 2 << " = " << r.bound;
    }
    else
    {
      r.bound = L( n + 1 ) + L( n ) + L( n - 1 ) + 38 * n - 16;
      os << "recurrence: L(" << n + 1 << ") + L(" << n << ") + L(" << n - 1 << ") + 38*" << n << " - 16 = " << L( n + 1 )
         << " + " << L( n ) << " + " << L( n - 1 ) << " + " << 38 * n - 16 << " = " << r.bound;
    }
    r.notes.push_back( os.str() );
    r.notes.push_back( "sub-multipliers (middle, high, low): " + std::to_string( subs[0] ) + ", " + std::to_string( subs[1] ) +
                       ", " + std::to_string( subs[2] ) );
    r.notes.push_back( "overhead: " + std::to_string( gates - subs[0] - subs[1] - subs[2] ) + " (adders " +
                       std::to_string( r.build.level.adder_gates ) + ", final stage " +
                       std::to_string( r.build.level.final_gates ) + ")" );
    if ( c.no_sharing )
      r.notes.push_back( "sharing disabled: the bound assumes sharing and is not asserted" );
  }

  if ( r.bound_asserted && bigint( gates ) != r.bound )
    throw invariant_violation( "built " + std::to_string( gates ) + " gates, bound is " + r.bound.str() );
  return r;
}

json report_json( BuildConfig const& c, CountReport const& r )
{
  auto const gates = count_gates( r.build.netlist );
  json by_kind = json::object();
  auto const hist = gate_histogram( r.build.netlist );
  for ( auto k : all_gate_kinds )
    by_kind[std::string( to_string( k ) )] = hist[static_cast<std::size_t>( k )];
  json blocks = json::object();
  for ( auto k : all_block_kinds )
    blocks[std::string( to_string( k ) )] = r.build.census[k];

  json j;
  j["bits"] = c.bits;
  j["method"] = std::string( to_string( r.method ) );
  j["gates"] = gates;
  j["by_kind"] = std::move( by_kind );
  j["blocks"] = std::move( blocks );
  j["conversion_xors"] = r.build.census.conversion_xors;
  j["bound"] = big_json( r.bound );
  j["meets_bound"] = bigint( gates ) <= r.bound;
  return j;
}

void print_report( std::ostream& os, BuildConfig const& c, CountReport const& r )
{
  auto const gates = count_gates( r.build.netlist );
  auto const& census = r.build.census;
  os << "bits: " << c.bits << "\n";
  os << "method: " << to_string( r.method ) << "\n";
  os << "trace: " << format_trace( r.build.trace ) << "\n";
  os << "gates: " << gates << "\n";
  os << "by kind:";
  auto const hist = gate_histogram( r.build.netlist );
  for ( auto k : all_gate_kinds )
  {
    if ( hist[static_cast<std::size_t>( k )] )
      os << " " << to_string( k ) << "=" << hist[static_cast<std::size_t>( k )];
  }
  os << "\nblocks:";
  for ( auto k : all_block_kinds )
  {
    if ( census[k] )
      os << " " << to_string( k ) << "=" << census[k];
  }
  os << "\nconversion XORs: " << census.conversion_xors << "\n";
  os << "partial-product ANDs: " << census.and_gates << "\n";
  if ( census.adder_gates )
    os << "pre-adder gates: " << census.adder_gates << "\n";
  if ( census.saved_gates )
    os << "gates saved by sharing: " << census.saved_gates << "\n";
  for ( auto const& n : r.notes )
    os << n << "\n";
  os << "bound: " << r.bound << "\n";
  os << "equal: " << ( bigint( gates ) == r.bound ? "true" : "false" ) << "\n";
}

int cmd_count( BuildConfig const& c )
{
  check_format( c.format, { "text", "json" } );
  auto const r = make_report( c );
  if ( c.format == "json" )
    std::cout << report_json( c, r ).dump( 2 ) << "\n";
  else
    print_report( std::cout, c, r );
  return exit_ok;
}

int cmd_gen( BuildConfig const& c )
{
  check_format( c.format, { "text", "json" } );
  auto const r = make_report( c );
  if ( !c.out.empty() )
  {
    std::ofstream f( c.out, std::ios::binary );
    if ( !f )
      throw usage_error( "cannot write " + c.out );
    f << export_text( r.build.netlist );
    if ( !f.flush() )
      throw usage_error( "cannot write " + c.out );
  }
  if ( c.format == "json" )
  {
    std::cout << report_json( c, r ).dump( 2 ) << "\n";
    return exit_ok;
  }
  if ( !c.out.empty() )
    std::cout << "wrote " << c.out << "\n";
  print_report( std::cout, c, r );
  return exit_ok;
}

/* ---------------------------------------------------------------------------
 * verify
 * ------------------------------------------------------------------------- */

struct VerifyConfig
{
  std::string file;
  std::size_t bits = 0;
  bool exhaustive = false;
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> seed;
  std::string format = "text";
};

json verdict_json( Verdict const& v )
{
  json j;
  j["status"] = v.passed ? "pass" : "fail";
  j["mode"] = v.mode;
  j["bits"] = v.width;
  j["cases"] = v.cases;
  j["planned"] = v.planned;
  if ( v.counterexample )
  {
    auto const& ce = *v.counterexample;
    j["counterexample"] = json{ { "a", big_json( ce.a ) },
                                { "b", big_json( ce.b ) },
                                { "expected", big_json( ce.expected ) },
                                { "observed", big_json( ce.observed ) } };
  }
  else
    j["counterexample"] = nullptr;
  j["seed"] = v.seed ? json( *v.seed ) : json( nullptr );
  j["trials"] = v.trials ? json( *v.trials ) : json( nullptr );
  j["prng"] = v.prng.empty() ? json( nullptr ) : json( v.prng );
  return j;
}

Netlist load_netlist( std::string const& path )
{
  std::ifstream f( path, std::ios::binary );
  if ( !f )
    throw usage_error( "cannot read " + path );
  std::ostringstream ss;
  ss << f.rdbuf();
  try
  {
    return import_text( ss.str() );
  }
  catch ( parse_error const& e )
  {
    throw usage_error( path + ": " + e.what() );
  }
  catch ( validation_error const& e )
  {
    throw usage_error( path + ": " + e.what() );
  }
}

int cmd_verify( VerifyConfig const& c )
{
  check_format( c.format, { "text", "json" } );
  if ( c.bits < 1 )
    throw usage_error( "--bits must be at least 1" );
  if ( c.exhaustive && ( c.trials || c.seed ) )
    throw usage_error( "--exhaustive cannot be combined with --trials or --seed" );
  if ( c.exhaustive && c.bits > exhaustive_max_width )
    throw usage_error( "--exhaustive is limited to --bits <= " + std::to_string( exhaustive_max_width ) +
                       "; use --trials N --seed S" );
  if ( c.trials && *c.trials < 1 )
    throw usage_error( "--trials must be at least 1" );

  auto const ntk = load_netlist( c.file );
  bool const exhaustive = c.exhaustive || ( !c.trials && !c.seed && c.bits <= 8 );
  Verdict v;
  try
  {
    v = exhaustive ? exhaustive_equivalence( ntk, c.bits ) : random_equivalence( ntk, c.bits, c.trials.value_or( 100000 ), c.seed.value_or( 1 ) );
  }
  catch ( std::invalid_argument const& e )
  {
    throw usage_error( c.file + ": " + e.what() );
  }

  if ( c.format == "json" )
  {
    std::cout << verdict_json( v ).dump( 2 ) << "\n";
  }
  else
  {
    std::cout << ( v.passed ? "pass" : "FAIL" ) << ": " << v.mode;
    if ( v.seed )
      std::cout << " (" << v.prng << ", seed " << *v.seed << ", " << *v.trials << " trials + 4 corners)";
    std::cout << ", " << v.cases << "/" << v.planned << " cases\n";
    if ( v.counterexample )
    {
      auto const& ce = *v.counterexample;
      std::cout << "counterexample: a=" << ce.a << " b=" << ce.b << " expected=" << ce.expected << " observed=" << ce.observed
                << "\n";
    }
  }
  return v.passed ? exit_ok : exit_mismatch;
}

/* ---------------------------------------------------------------------------
 * table / bounds
 * ------------------------------------------------------------------------- */

int cmd_table( std::size_t max_m, std::string const& format )
{
  check_format( format, { "csv", "json" } );
  if ( max_m < 1 )
    throw usage_error( "--max must be at least 1" );
  auto const rows = recurrence_L_table( max_m );
  if ( format == "json" )
  {
    json j = json::array();
    for ( auto const& r : rows )
      j.push_back( json{ { "m", r.m }, { "L", big_json( r.value ) }, { "method", std::string( to_string( r.method ) ) } } );
    std::cout << j.dump( 2 ) << "\n";
    return exit_ok;
  }
  std::cout << "m,L,method\n";
  for ( auto const& r : rows )
    std::cout << r.m << "," << r.value << "," << to_string( r.method ) << "\n";
  return exit_ok;
}

int cmd_bounds( std::size_t kmax, std::string const& format )
{
  check_format( format, { "text", "csv", "json" } );
  if ( kmax < 4 )
    throw usage_error( "--kmax must be at least 4" );

  struct Row
  {
    std::size_t k;
    bigint closed, matrix, table, legacy;
    bool closed_eq_matrix, state_eq_table;
  };
  std::vector<Row> rows;
  std::map<std::size_t, bigint> memo;
  auto x = initial_state();
  bool ok = true;
  for ( std::size_t k = 4; k <= kmax; ++k )
  {
    if ( k > 4 )
      x = matrix_step( x, k - 1 );
    auto const m = std::size_t{ 1 } << k;
    Row r{ k, closed_form_K( k ), x[2], recurrence_L_value( m, memo ), legacy_karatsuba_bound( k ), false, false };
    r.closed_eq_matrix = r.closed == r.matrix;
    r.state_eq_table = x[0] == recurrence_L_value( m + 2, memo ) && x[1] == recurrence_L_value( m + 1, memo ) && x[2] == r.table;
    ok = ok && r.closed_eq_matrix;
    rows.push_back( std::move( r ) );
  }

  if ( format == "json" )
  {
    json j = json::array();
    for ( auto const& r : rows )
      j.push_back( json{ { "k", r.k },
                         { "m", std::size_t{ 1 } << r.k },
                         { "closed_form", big_json( r.closed ) },
                         { "matrix", big_json( r.matrix ) },
                         { "table", big_json( r.table ) },
                         { "legacy", big_json( r.legacy ) },
                         { "improvement", big_json( r.legacy - r.closed ) },
                         { "closed_eq_matrix", r.closed_eq_matrix },
                         { "state_eq_table", r.state_eq_table } } );
    std::cout << j.dump( 2 ) << "\n";
  }
  else if ( format == "csv" )
  {
    std::cout << "k,m,closed_form,matrix,table,legacy,improvement,closed_eq_matrix,state_eq_table\n";
    for ( auto const& r : rows )
      std::cout << r.k << "," << ( std::size_t{ 1 } << r.k ) << "," << r.closed << "," << r.matrix << "," << r.table << ","
                << r.legacy << "," << r.legacy - r.closed << "," << ( r.closed_eq_matrix ? "true" : "false" ) << ","
                << ( r.state_eq_table ? "true" : "false" ) << "\n";
  }
  else
  {
    std::cout << std::left << std::setw( 4 ) << "k" << std::setw( 9 ) << "m" << std::setw( 16 ) << "closed" << std::setw( 16 )
              << "matrix" << std::setw( 16 ) << "table" << std::setw( 16 ) << "legacy" << std::setw( 14 ) << "improvement"
              << "  equal\n";
    for ( auto const& r : rows )
      std::cout << std::setw( 4 ) << r.k << std::setw( 9 ) << ( std::size_t{ 1 } << r.k ) << std::setw( 16 ) << r.closed.str()
                << std::setw( 16 ) << r.matrix.str() << std::setw( 16 ) << r.table.str() << std::setw( 16 ) << r.legacy.str()
                << std::setw( 14 ) << bigint( r.legacy - r.closed ).str() << "  " << ( r.closed_eq_matrix && r.state_eq_table ? "true" : "false" )
                << "\n";
  }
  if ( !ok )
  {
    std::cerr << "mulsynth: closed form and matrix propagation disagree\n";
    return exit_invariant;
  }
  return exit_ok;
}

/* ---------------------------------------------------------------------------
 * selftest
 * ------------------------------------------------------------------------- */

int cmd_selftest( std::string const& format )
{
  check_format( format, { "text", "json" } );
  std::optional<BlockKind> fault;
  if ( auto const* env = std::getenv( "MULSYNTH_FAULT" ); env && *env )
  {
    fault = block_kind_from_string( env );
    if ( !fault )
      throw usage_error( std::string( "MULSYNTH_FAULT names no block kind: " ) + env );
  }

  auto const rep = selftest( fault );
  std::size_t passed = 0;
  for ( auto const& s : rep.suites )
    passed += s.passed ? 1 : 0;

  if ( format == "json" )
  {
    json suites = json::array();
    for ( auto const& s : rep.suites )
      suites.push_back( json{ { "name", s.name },
                              { "passed", s.passed },
                              { "cases", s.cases },
                              { "cost", s.cost },
                              { "expected_cost", s.expected_cost },
                              { "message", s.message } } );
    json j;
    j["status"] = rep.passed() ? "pass" : "fail";
    j["passed"] = passed;
    j["total"] = rep.suites.size();
    j["suites"] = std::move( suites );
    std::cout << j.dump( 2 ) << "\n";
  }
  else
  {
    for ( auto const& s : rep.suites )
    {
      std::cout << ( s.passed ? "PASS " : "FAIL " ) << std::left << std::setw( 16 ) << s.name << " cost " << s.cost << "/"
                << s.expected_cost << ", " << s.cases << " cases";
      if ( !s.message.empty() )
        std::cout << "  " << s.message;
      std::cout << "\n";
    }
    std::cout << "selftest: " << passed << "/" << rep.suites.size() << " suites passed\n";
  }
  return rep.passed() ? exit_ok : exit_mismatch;
}

void add_build_options( CLI::App* sub, BuildConfig& c )
{
  sub->add_option( "--bits,-m", c.bits, "operand width" )->required();
  sub->add_option( "--method", c.method, "auto, school or karatsuba" )
      ->check( CLI::IsMember( { "auto", "school", "karatsuba" } ) );
  sub->add_flag( "--force", c.force, "build Karatsuba even where the standard method is cheaper" );
  sub->add_flag( "--no-sharing", c.no_sharing, "disable gate sharing in the final addition-subtraction" );
  sub->add_option( "--format", c.format, "text or json" );
}

} // namespace

int main( int argc, char** argv )
{
  CLI::App app{ "Gate-level multiplier synthesizer" };
  app.require_subcommand( 1 );

  BuildConfig gen_cfg, count_cfg;
  auto* gen = app.add_subcommand( "gen", "build a multiplier and write it as MULNET text" );
  add_build_options( gen, gen_cfg );
  gen->add_option( "--out,-o", gen_cfg.out, "output file" );

  auto* count = app.add_subcommand( "count", "build a multiplier and report its gate count against the bound" );
  add_build_options( count, count_cfg );

  VerifyConfig ver_cfg;
  auto* ver = app.add_subcommand( "verify", "check a MULNET file against the integer oracle" );
  ver->add_option( "file", ver_cfg.file, "netlist file" )->required();
  ver->add_option( "--bits,-m", ver_cfg.bits, "operand width" )->required();
  ver->add_flag( "--exhaustive", ver_cfg.exhaustive, "all operand pairs (bits <= 12)" );
  ver->add_option( "--trials", ver_cfg.trials, "random trials after the corner vectors" );
  ver->add_option( "--seed", ver_cfg.seed, "PRNG seed" );
  ver->add_option( "--format", ver_cfg.format, "text or json" );

  std::size_t table_max = 18;
  std::string table_format = "csv";
  auto* table = app.add_subcommand( "table", "gate-count table L(1..max)" );
  table->add_option( "--max", table_max, "largest width" );
  table->add_option( "--format", table_format, "csv or json" );

  std::size_t kmax = 20;
  std::string bounds_format = "text";
  auto* bounds = app.add_subcommand( "bounds", "closed form, matrix propagation and legacy bound at m = 2^k" );
  bounds->add_option( "--kmax", kmax, "largest k" );
  bounds->add_option( "--format", bounds_format, "text, csv or json" );

  std::string selftest_format = "text";
  auto* self = app.add_subcommand( "selftest", "block, adder and construction self-checks" );
  self->add_option( "--format", selftest_format, "text or json" );

  try
  {
    app.parse( argc, argv );
  }
  catch ( CLI::CallForHelp const& e )
  {
    return app.exit( e );
  }
  catch ( CLI::CallForAllHelp const& e )
  {
    return app.exit( e );
  }
  catch ( CLI::ParseError const& e )
  {
    app.exit( e );
    return exit_bad_input;
  }

  try
  {
    if ( gen->parsed() )
      return cmd_gen( gen_cfg );
    if ( count->parsed() )
      return cmd_count( count_cfg );
    if ( ver->parsed() )
      return cmd_verify( ver_cfg );
    if ( table->parsed() )
      return cmd_table( table_max, table_format );
    if ( bounds->parsed() )
      return cmd_bounds( kmax, bounds_format );
    return cmd_selftest( selftest_format );
  }
  catch ( usage_error const& e )
  {
    std::cerr << "mulsynth: " << e.what() << "\n";
    return exit_bad_input;
  }
  catch ( construction_error const& e )
  {
    std::cerr << "mulsynth: " << e.what() << "\n";
    return exit_bad_input;
  }
  catch ( invariant_violation const& e )
  {
    std::cerr << "mulsynth: invariant violation: " << e.what() << "\n";
    return exit_invariant;
  }
  catch ( std::exception const& e )
  {
    std::cerr << "mulsynth: internal error: " << e.what() << "\n";
    return exit_invariant;
  }
}
