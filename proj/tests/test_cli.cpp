#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include <gtest/gtest.h>
#include <json.hpp>

#include <mulsynth/netlist.hpp>

namespace fs = std::filesystem;

namespace
{

struct Run
{
  int code;
  std::string out;
};

Run run( std::string const& args, std::string const& env = "" )
{
  auto const cmd = env + ( env.empty() ? "" : " " ) + MULSYNTH_CLI + std::string( " " ) + args + " 2>&1";
  FILE* p = popen( cmd.c_str(), "r" );
  if ( !p )
    return { -1, "" };
  std::string out;
  char buf[4096];
  std::size_t n;
  while ( ( n = fread( buf, 1, sizeof buf, p ) ) > 0 )
    out.append( buf, n );
  int const status = pclose( p );
  return { WIFEXITED( status ) ? WEXITSTATUS( status ) : -1, out };
}

std::string slurp( fs::path const& p )
{
  std::ifstream f( p, std::ios::binary );
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test
{
protected:
  void SetUp() override
  {
    dir = fs::temp_directory_path() / ( "mulsynth_cli_" + std::to_string( getpid() ) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name() );
    fs::create_directories( dir );
  }
  void TearDown() override { fs::remove_all( dir ); }

  std::string path( std::string const& name ) const { return ( dir / name ).string(); }

  fs::path dir;
};

} // namespace

TEST_F( Cli, GenSchool4 )
{
  auto const r = run( "gen --method school --bits 4 --out " + path( "m4.net" ) );
  EXPECT_EQ( r.code, 0 ) << r.out;
  EXPECT_NE( r.out.find( "gates: 61" ), std::string::npos );
  EXPECT_EQ( mulsynth::count_gates( mulsynth::import_text( slurp( path( "m4.net" ) ) ) ), 61u );
}

TEST_F( Cli, GenAuto16 )
{
  auto const r = run( "gen --method auto --bits 16 --out " + path( "m16.net" ) );
  EXPECT_EQ( r.code, 0 ) << r.out;
  EXPECT_NE( r.out.find( "gates: 1287" ), std::string::npos );
  EXPECT_NE( r.out.find( "trace: karatsuba(16)→school(9,8,8)" ), std::string::npos );
}

TEST_F( Cli, GenKaratsubaTooNarrow )
{
  auto const r = run( "gen --method karatsuba --bits 9" );
  EXPECT_EQ( r.code, 2 );
  EXPECT_NE( r.out.find( "unsupported width" ), std::string::npos );
}

TEST_F( Cli, KaratsubaAgainstPolicyNeedsForce )
{
  auto const r = run( "count --method karatsuba --bits 12" );
  EXPECT_EQ( r.code, 2 );
  EXPECT_NE( r.out.find( "--force" ), std::string::npos );
}

TEST_F( Cli, BadFlags )
{
  EXPECT_EQ( run( "gen --bits 0" ).code, 2 );
  EXPECT_EQ( run( "gen --bits 4 --method booth" ).code, 2 );
  EXPECT_EQ( run( "count --bits 4 --format yaml" ).code, 2 );
  EXPECT_EQ( run( "frobnicate" ).code, 2 );
  EXPECT_EQ( run( "" ).code, 2 );
  EXPECT_EQ( run( "table --max 0" ).code, 2 );
  EXPECT_EQ( run( "bounds --kmax 3" ).code, 2 );
}

TEST_F( Cli, VerifyExhaustive )
{
  ASSERT_EQ( run( "gen --method school --bits 4 --out " + path( "m4.net" ) ).code, 0 );
  auto const r = run( "verify " + path( "m4.net" ) + " --bits 4 --exhaustive" );
  EXPECT_EQ( r.code, 0 ) << r.out;
  EXPECT_NE( r.out.find( "256/256 cases" ), std::string::npos );
}

TEST_F( Cli, VerifyRandom )
{
  ASSERT_EQ( run( "gen --method auto --bits 16 --out " + path( "m16.net" ) ).code, 0 );
  auto const r = run( "verify " + path( "m16.net" ) + " --bits 16 --trials 100000 --seed 7" );
  EXPECT_EQ( r.code, 0 ) << r.out;
  EXPECT_NE( r.out.find( "mt19937_64, seed 7" ), std::string::npos );
  EXPECT_NE( r.out.find( "100004/100004 cases" ), std::string::npos );
}

TEST_F( Cli, VerifyJson )
{
  ASSERT_EQ( run( "gen --method school --bits 5 --out " + path( "m5.net" ) ).code, 0 );
  auto const r = run( "verify " + path( "m5.net" ) + " --bits 5 --trials 100 --seed 3 --format json" );
  ASSERT_EQ( r.code, 0 ) << r.out;
  auto const j = nlohmann::json::parse( r.out );
  EXPECT_EQ( j["status"], "pass" );
  EXPECT_EQ( j["cases"], 104 );
  EXPECT_EQ( j["seed"], 3 );
  EXPECT_EQ( j["trials"], 100 );
  EXPECT_TRUE( j["counterexample"].is_null() );
}

TEST_F( Cli, VerifyMismatch )
{
  ASSERT_EQ( run( "gen --method school --bits 4 --out " + path( "m4.net" ) ).code, 0 );
  auto text = slurp( path( "m4.net" ) );
  auto const at = text.find( "gate g1 AND " );
  ASSERT_NE( at, std::string::npos );
  text.replace( at, 12, "gate g1 OR " );
  std::ofstream( path( "bad.net" ), std::ios::binary ) << text;
  auto const r = run( "verify " + path( "bad.net" ) + " --bits 4 --format json" );
  EXPECT_EQ( r.code, 1 ) << r.out;
  auto const j = nlohmann::json::parse( r.out );
  EXPECT_EQ( j["status"], "fail" );
  ASSERT_TRUE( j["counterexample"].is_object() );
  for ( auto const* key : { "a", "b", "expected", "observed" } )
    EXPECT_TRUE( j["counterexample"].contains( key ) ) << key;
}

TEST_F( Cli, VerifyCorruptedFile )
{
  std::ofstream( path( "c.net" ), std::ios::binary ) << "MULNET v1\ninputs a0 b0\ngate g0 AND a0\noutputs g0\n";
  auto const r = run( "verify " + path( "c.net" ) + " --bits 1" );
  EXPECT_EQ( r.code, 2 );
  EXPECT_NE( r.out.find( "line 3" ), std::string::npos ) << r.out;
}

TEST_F( Cli, VerifyUnreadableFile )
{
  EXPECT_EQ( run( "verify " + path( "missing.net" ) + " --bits 4" ).code, 2 );
}

TEST_F( Cli, VerifyContradictoryFlags )
{
  ASSERT_EQ( run( "gen --bits 16 --out " + path( "m16.net" ) ).code, 0 );
  EXPECT_EQ( run( "verify " + path( "m16.net" ) + " --bits 16 --exhaustive" ).code, 2 );
  EXPECT_EQ( run( "verify " + path( "m16.net" ) + " --bits 16 --exhaustive --trials 5" ).code, 2 );
  EXPECT_EQ( run( "verify " + path( "m16.net" ) + " --bits 15 --trials 5" ).code, 2 );
}

TEST_F( Cli, CountSchool10 )
{
  auto const r = run( "count --method school --bits 10" );
  EXPECT_EQ( r.code, 0 );
  EXPECT_NE( r.out.find( "gates: 484" ), std::string::npos );
  EXPECT_NE( r.out.find( "bound: 484" ), std::string::npos );
  EXPECT_NE( r.out.find( "equal: true" ), std::string::npos );
}

TEST_F( Cli, CountKaratsuba12 )
{
  auto const r = run( "count --method karatsuba --bits 12 --force" );
  EXPECT_EQ( r.code, 0 ) << r.out;
  EXPECT_NE( r.out.find( "gates: 766" ), std::string::npos );
  EXPECT_NE( r.out.find( "recurrence: L(7) + 2 L(6) + 38*6 - 2 = 224 + 2*158 + 226 = 766" ), std::string::npos ) << r.out;
}

TEST_F( Cli, CountJsonSchema )
{
  auto const r = run( "count --method school --bits 5 --format json" );
  ASSERT_EQ( r.code, 0 );
  auto const j = nlohmann::ordered_json::parse( r.out );
  std::vector<std::string> keys;
  for ( auto const& [k, v] : j.items() )
    keys.push_back( k );
  EXPECT_EQ( keys, ( std::vector<std::string>{ "bits", "method", "gates", "by_kind", "blocks", "conversion_xors", "bound",
                                               "meets_bound" } ) );
  EXPECT_EQ( j["blocks"]["MDFA"], 5 );
  EXPECT_EQ( j["conversion_xors"], 6 );
  EXPECT_EQ( j["gates"], 105 );
  EXPECT_EQ( j["by_kind"]["AND"].get<int>() >= 25, true );
  EXPECT_EQ( j["meets_bound"], true );
}

TEST_F( Cli, CountWithoutSharing )
{
  auto const r = run( "count --bits 16 --no-sharing --format json" );
  ASSERT_EQ( r.code, 0 ) << r.out;
  auto const j = nlohmann::json::parse( r.out );
  EXPECT_EQ( j["gates"], 1302 );
  EXPECT_EQ( j["bound"], 1287 );
  EXPECT_EQ( j["meets_bound"], false );
}

TEST_F( Cli, TableMatchesGolden )
{
  auto const r = run( "table --max 18" );
  EXPECT_EQ( r.code, 0 );
  EXPECT_EQ( r.out, slurp( fs::path( MULSYNTH_GOLDEN_DIR ) / "gate_counts.csv" ) );
}

TEST_F( Cli, TableRows )
{
  auto const r = run( "table --max 20" );
  EXPECT_NE( r.out.find( "\n16,1287,karatsuba\n" ), std::string::npos );
  EXPECT_NE( r.out.find( "\n11,594,school\n" ), std::string::npos );
  EXPECT_NE( r.out.find( "\n20,1940,karatsuba\n" ), std::string::npos );
  auto const j = nlohmann::json::parse( run( "table --max 3 --format json" ).out );
  EXPECT_EQ( j.size(), 3u );
  EXPECT_EQ( j[1]["L"], 8 );
}

TEST_F( Cli, Bounds )
{
  auto const r = run( "bounds --kmax 20 --format json" );
  ASSERT_EQ( r.code, 0 ) << r.out;
  auto const j = nlohmann::json::parse( r.out );
  ASSERT_EQ( j.size(), 17u );
  EXPECT_EQ( j[0]["closed_form"], 1287 );
  EXPECT_EQ( j[0]["matrix"], 1287 );
  EXPECT_EQ( j[0]["legacy"], 1344 );
  EXPECT_EQ( j[0]["improvement"], 57 );
  EXPECT_EQ( j[1]["closed_form"], 4659 );
  EXPECT_EQ( j[1]["matrix"], 4659 );
  for ( auto const& row : j )
  {
    EXPECT_EQ( row["closed_eq_matrix"], true );
    EXPECT_EQ( row["state_eq_table"], true );
  }
  EXPECT_EQ( run( "bounds" ).code, 0 );
  EXPECT_EQ( run( "bounds --format csv --kmax 5" ).out.substr( 0, 2 ), "k," );
}

TEST_F( Cli, Selftest )
{
  auto const r = run( "selftest" );
  EXPECT_EQ( r.code, 0 ) << r.out;
  auto const j = nlohmann::json::parse( run( "selftest --format json" ).out );
  EXPECT_EQ( j["status"], "pass" );
  EXPECT_GE( j["suites"].size(), 12u );
}

TEST_F( Cli, SelftestFaultInjection )
{
  auto const r = run( "selftest", "MULSYNTH_FAULT=MDFA" );
  EXPECT_EQ( r.code, 1 );
  EXPECT_NE( r.out.find( "FAIL MDFA" ), std::string::npos );
  EXPECT_NE( r.out.find( "MDFA cost 9 != 8" ), std::string::npos );
  EXPECT_EQ( run( "selftest", "MULSYNTH_FAULT=BOGUS" ).code, 2 );
}

TEST_F( Cli, Deterministic )
{
  EXPECT_EQ( run( "count --bits 18 --format json" ).out, run( "count --bits 18 --format json" ).out );
  ASSERT_EQ( run( "gen --bits 18 --out " + path( "a.net" ) ).code, 0 );
  ASSERT_EQ( run( "gen --bits 18 --out " + path( "b.net" ) ).code, 0 );
  EXPECT_EQ( slurp( path( "a.net" ) ), slurp( path( "b.net" ) ) );
}
