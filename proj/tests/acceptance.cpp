/*!
  \file acceptance.cpp
  \brief End-to-end acceptance checks; prints one PASS/FAIL line per criterion
*/

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <mulsynth/mulsynth.hpp>

using namespace mulsynth;

namespace
{

/// Records failures; a criterion passes when nothing was recorded.
struct Check
{
  std::vector<std::string> failures;
  std::string summary;

  void expect( bool ok, std::string const& what )
  {
    if ( !ok && failures.size() < 5 )
      failures.push_back( what );
  }
};

struct Criterion
{
  int id;
  std::string title;
  double limit_s;
  std::function<void( Check& )> body;
};

std::string run_cli( std::string const& args, int& code )
{
  auto const cmd = std::string( MULSYNTH_CLI ) + " " + args;
  FILE* p = popen( cmd.c_str(), "r" );
  std::string out;
  if ( !p )
  {
    code = -1;
    return out;
  }
  char buf[4096];
  std::size_t n;
  while ( ( n = fread( buf, 1, sizeof buf, p ) ) > 0 )
    out.append( buf, n );
  int const status = pclose( p );
  code = WIFEXITED( status ) ? WEXITSTATUS( status ) : -1;
  return out;
}

std::string slurp( std::string const& path )
{
  std::ifstream f( path, std::ios::binary );
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void table_one( Check& c )
{
  std::vector<int> const expected = { 1, 8, 30, 61, 105, 158, 224, 299, 387, 484, 594, 713, 845, 986, 1140, 1287, 1479, 1598 };
  int code = 0;
  auto const out = run_cli( "table --max 18", code );
  c.expect( code == 0, "table exited with " + std::to_string( code ) );
  std::string want = "m,L,method\n";
  for ( std::size_t m = 1; m <= expected.size(); ++m )
    want += std::to_string( m ) + "," + std::to_string( expected[m - 1] ) + "," +
            ( m == 16 || m == 18 ? "karatsuba" : "school" ) + "\n";
  c.expect( out == want, "table output differs from the expected rows" );
  c.expect( out == slurp( std::string( MULSYNTH_GOLDEN_DIR ) + "/gate_counts.csv" ), "table output differs from the golden file" );
  c.summary = "18 rows, karatsuba at m = 16, 18";
}

void school_formula( Check& c )
{
  for ( std::size_t n = 2; n <= 64; ++n )
  {
    auto const sb = build_school( n );
    auto const g = count_gates( sb.netlist );
    c.expect( g == predict_school_count( n ), "n=" + std::to_string( n ) + ": " + std::to_string( g ) + " gates" );
    if ( n < 4 )
      continue;
    auto const& k = sb.census;
    auto const q = ( n * n - 3 * n ) / 2 + 1 - n % 2;
    c.expect( k[BlockKind::HA] == n && k[BlockKind::FA3] == n - 3 + 2 * ( n % 2 ) && k[BlockKind::SFA3] == 1 &&
                  k[BlockKind::MDFA] == q && k.conversion_xors == q + 1 && k.and_gates == n * n,
              "n=" + std::to_string( n ) + ": census differs" );
  }
  c.summary = "n = 2..64 counts, n = 4..64 census";
}

void karatsuba_recurrences( Check& c )
{
  std::map<std::size_t, bigint> memo;
  auto const L = [&]( std::size_t w ) { return recurrence_L_value( w, memo ); };
  for ( std::size_t m = 10; m <= 64; ++m )
  {
    auto const kb = build_karatsuba( m );
    auto const total = count_gates( kb.netlist );
    auto const& s = kb.level.sub_gates;
    SplitPlan const p( m );
    auto const n = p.n;
    auto const overhead = total - s[0] - s[1] - s[2];
    c.expect( overhead == ( p.odd() ? 38 * n - 16 : 38 * n - 2 ), "m=" + std::to_string( m ) + ": overhead " + std::to_string( overhead ) );
    bigint const rec = p.odd() ? L( n + 1 ) + L( n ) + L( n - 1 ) + 38 * n - 16 : L( n + 1 ) + 2 * L( n ) + 38 * n - 2;
    c.expect( bigint( total ) == rec, "m=" + std::to_string( m ) + ": total " + std::to_string( total ) + " != " + rec.str() );
  }
  c.summary = "m = 10..64 forced builds";
}

void closed_form( Check& c )
{
  auto x = initial_state();
  for ( std::size_t k = 4; k <= 20; ++k )
  {
    bigint v;
    try
    {
      v = closed_form_K( k );
    }
    catch ( invariant_violation const& e )
    {
      c.expect( false, e.what() );
      continue;
    }
    c.expect( v == x[2], "k=" + std::to_string( k ) + ": closed " + v.str() + " matrix " + x[2].str() );
    x = matrix_step( x, k );
  }
  c.expect( closed_form_K( 4 ) == 1287, "K(16) != 1287" );
  c.expect( closed_form_K( 5 ) == 4659, "K(32) != 4659" );
  c.summary = "k = 4..20, K(16) = 1287, K(32) = 4659";
}

void functional( Check& c )
{
  auto const report = [&]( Verdict const& v, std::string const& what ) {
    c.expect( v.passed, what + " mismatch" + ( v.counterexample ? " at a=" + v.counterexample->a.str() + " b=" + v.counterexample->b.str() : "" ) );
  };
  std::uint64_t cases = 0;
  for ( std::size_t n = 1; n <= 8; ++n )
  {
    auto const v = exhaustive_equivalence( build_school( n ).netlist, n );
    report( v, "school n=" + std::to_string( n ) );
    cases += v.cases;
  }
  auto const v10 = exhaustive_equivalence( build_karatsuba( 10 ).netlist, 10 );
  report( v10, "karatsuba m=10" );
  cases += v10.cases;
  for ( std::size_t m : { 12, 16, 18, 32, 64 } )
  {
    auto const v = random_equivalence( build_auto( m ).netlist, m, 100000, 1 );
    report( v, "auto m=" + std::to_string( m ) );
    cases += v.cases;
  }
  c.summary = std::to_string( cases ) + " cases, 0 mismatches";
}

void block_suites( Check& c )
{
  std::map<BlockKind, std::size_t> const cost = {
      { BlockKind::HA, 2 },    { BlockKind::HA_PM, 2 }, { BlockKind::NHA, 2 },    { BlockKind::FA3, 5 },  { BlockKind::FA3_M, 5 },
      { BlockKind::FA3_0, 4 }, { BlockKind::SFA3, 4 },  { BlockKind::SFA3_M, 4 }, { BlockKind::MDFA, 8 }, { BlockKind::MDFA_M, 8 } };
  auto const suites = check_block_identities();
  for ( auto const& s : suites )
  {
    c.expect( s.passed, s.name + ": " + s.message );
    auto const kind = block_kind_from_string( s.name );
    if ( kind && cost.count( *kind ) )
      c.expect( s.cost == cost.at( *kind ), s.name + " cost " + std::to_string( s.cost ) );
  }
  auto const rep = selftest();
  std::size_t adders = 0;
  for ( auto const& s : rep.suites )
  {
    if ( s.name.rfind( "ADDER", 0 ) == 0 )
    {
      ++adders;
      c.expect( s.passed, s.name + ": " + s.message );
    }
  }
  c.expect( adders == 31, "expected 31 adder suites" );
  c.summary = std::to_string( suites.size() ) + " block suites, " + std::to_string( adders ) + " adder suites";
}

void profiles( Check& c )
{
  std::size_t builds = 0;
  try
  {
    for ( std::size_t n = 4; n <= 64; ++n, ++builds )
    {
      auto const sb = build_school( n );
      for ( std::size_t k = 1; k <= 2 * n; ++k )
        c.expect( sb.profile[k - 1] == expected_school_profile( n, k ), "school n=" + std::to_string( n ) + " k=" + std::to_string( k ) );
    }
    for ( std::size_t m = 10; m <= 64; ++m, ++builds )
    {
      auto const kb = build_karatsuba( m );
      auto const& pr = kb.level.final_stage.profile;
      SplitPlan const p( m );
      for ( std::size_t k = p.n; k < 2 * m; ++k )
        c.expect( pr[k - p.n] == expected_signed_profile( m, k ), "karatsuba m=" + std::to_string( m ) + " k=" + std::to_string( k ) );
    }
  }
  catch ( invariant_violation const& e )
  {
    c.expect( false, e.what() );
  }
  int code = 0;
  run_cli( "count --bits 64 --format json", code );
  c.expect( code == 0, "count --bits 64 exited with " + std::to_string( code ) );
  c.summary = std::to_string( builds ) + " builds";
}

void round_trip( Check& c )
{
  for ( std::size_t m : { 4, 8, 16, 18 } )
  {
    auto const ntk = build_auto( m ).netlist;
    auto const text = export_text( ntk );
    auto const back = import_text( text );
    c.expect( export_text( back ) == text, "m=" + std::to_string( m ) + ": text differs after round trip" );
    c.expect( back == ntk, "m=" + std::to_string( m ) + ": structure differs after round trip" );
    if ( m == 16 )
    {
      c.expect( validate( back ).ok(), "m=16 fails validation" );
      c.expect( random_equivalence( back, 16, 100000, 1 ).passed, "m=16 fails verification after round trip" );
    }
  }
  c.summary = "m = 4, 8, 16, 18";
}

void sharing( Check& c )
{
  auto const shared = build_auto( 16 );
  auto const plain = build_karatsuba( 16, KaratsubaOptions{ false } );
  auto const delta = count_gates( plain.netlist ) - count_gates( shared.netlist );
  c.expect( delta == 15, "delta " + std::to_string( delta ) );
  auto const v = random_equivalence( plain.netlist, 16, 100000, 1 );
  c.expect( v.passed, "unshared m=16 fails verification" );
  // Same outputs as the shared circuit on the same case stream.
  auto const cases = random_cases( 16, 1000, 99 );
  for ( std::size_t i = 0; i < cases.size(); i += 64 )
  {
    std::vector<std::uint64_t> words( 32, 0u );
    for ( std::size_t l = 0; l < 64 && i + l < cases.size(); ++l )
    {
      for ( unsigned b = 0; b < 16; ++b )
      {
        words[b] |= static_cast<std::uint64_t>( boost::multiprecision::bit_test( cases[i + l].first, b ) ) << l;
        words[16 + b] |= static_cast<std::uint64_t>( boost::multiprecision::bit_test( cases[i + l].second, b ) ) << l;
      }
    }
    c.expect( evaluate_words( shared.netlist, words ) == evaluate_words( plain.netlist, words ), "outputs differ" );
  }
  c.summary = std::to_string( count_gates( shared.netlist ) ) + " vs " + std::to_string( count_gates( plain.netlist ) ) +
              " gates, +" + std::to_string( delta );
}

} // namespace

int main()
{
  std::vector<Criterion> const criteria = {
      { 1, "gate-count table up to 18 bits", 10, table_one },
      { 2, "standard-method count and census", 30, school_formula },
      { 3, "Karatsuba overhead and recurrences", 120, karatsuba_recurrences },
      { 4, "closed form vs matrix propagation", 1, closed_form },
      { 5, "functional equivalence with the oracle", 300, functional },
      { 6, "block and adder suites", 1, block_suites },
      { 7, "column profiles", 120, profiles },
      { 8, "MULNET round trip", 60, round_trip },
      { 9, "sharing soundness at m = 16", 60, sharing } };

  int failed = 0;
  for ( auto const& cr : criteria )
  {
    Check c;
    auto const t0 = std::chrono::steady_clock::now();
    try
    {
      cr.body( c );
    }
    catch ( std::exception const& e )
    {
      c.failures.push_back( std::string( "exception: " ) + e.what() );
    }
    auto const secs = std::chrono::duration<double>( std::chrono::steady_clock::now() - t0 ).count();
    if ( secs > cr.limit_s )
      c.failures.push_back( "took longer than " + std::to_string( static_cast<int>( cr.limit_s ) ) + " s" );
    bool const ok = c.failures.empty();
    failed += ok ? 0 : 1;
    std::cout << ( ok ? "PASS" : "FAIL" ) << "  criterion " << cr.id << ": " << cr.title << " (" << std::fixed
              << std::setprecision( 2 ) << secs << " s)";
    if ( ok && !c.summary.empty() )
      std::cout << "  " << c.summary;
    std::cout << "\n";
    for ( auto const& f : c.failures )
      std::cout << "      " << f << "\n";
  }
  std::cout << ( criteria.size() - failed ) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
