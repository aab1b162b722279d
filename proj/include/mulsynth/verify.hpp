/*!
  \file verify.hpp
  \brief Big-integer oracle, equivalence drivers and the self-test battery

  Operands are applied LSB first: the first `wa` netlist inputs carry a, the
  next `wb` carry b.  Output i is bit i of the result; outputs missing at the
  top (the single-output 1 x 1 multiplier) read as 0.
*/

#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "blocks.hpp"
#include "bounds.hpp"
#include "karatsuba.hpp"
#include "netlist.hpp"
#include "school.hpp"

namespace mulsynth
{

/// Exact product; never touches a netlist.
inline bigint oracle_multiply( bigint const& a, bigint const& b )
{
  if ( a < 0 || b < 0 )
    throw std::domain_error( "oracle_multiply: operands must be non-negative" );
  return a * b;
}

struct Counterexample
{
  bigint a;
  bigint b;
  bigint expected;
  bigint observed;
};

struct Verdict
{
  bool passed = true;
  std::string mode; ///< "exhaustive" or "random"
  std::size_t width = 0;
  std::uint64_t cases = 0; ///< cases evaluated, including a failing one
  std::uint64_t planned = 0;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
  std::string prng;
  std::optional<Counterexample> counterexample;
  double elapsed_ms = 0.0;
};

/// Largest width accepted by exhaustive_equivalence.
inline constexpr std::size_t exhaustive_max_width = 12;

inline constexpr std::string_view prng_name = "mt19937_64";

using OperandPair = std::pair<bigint, bigint>;
using BinaryOracle = std::function<bigint( bigint const&, bigint const& )>;

namespace detail
{

inline void check_shape( Netlist const& ntk, std::size_t wa, std::size_t wb, std::size_t max_outputs )
{
  if ( ntk.num_inputs() != wa + wb )
    throw std::invalid_argument( "netlist has " + std::to_string( ntk.num_inputs() ) + " inputs, expected " +
                                 std::to_string( wa + wb ) );
  if ( ntk.outputs().empty() || ntk.outputs().size() > max_outputs )
    throw std::invalid_argument( "netlist has " + std::to_string( ntk.outputs().size() ) + " outputs, expected 1.." +
                                 std::to_string( max_outputs ) );
}

/// Evaluates up to 64 cases at once; returns the index of the first mismatch.
inline std::optional<std::pair<std::size_t, bigint>> check_batch( Netlist const& ntk, std::size_t wa, std::size_t wb,
                                                                  std::span<OperandPair const> batch,
                                                                  std::span<bigint const> expected )
{
  std::vector<std::uint64_t> words( wa + wb, 0u );
  for ( std::size_t l = 0; l < batch.size(); ++l )
  {
    auto const& [a, b] = batch[l];
    for ( std::size_t i = 0; i < wa; ++i )
      words[i] |= static_cast<std::uint64_t>( boost::multiprecision::bit_test( a, static_cast<unsigned>( i ) ) ) << l;
    for ( std::size_t i = 0; i < wb; ++i )
      words[wa + i] |= static_cast<std::uint64_t>( boost::multiprecision::bit_test( b, static_cast<unsigned>( i ) ) ) << l;
  }
  auto const out = evaluate_words( ntk, words );
  for ( std::size_t l = 0; l < batch.size(); ++l )
  {
    bigint observed = 0;
    for ( std::size_t i = 0; i < out.size(); ++i )
    {
      if ( ( out[i] >> l ) & 1u )
        boost::multiprecision::bit_set( observed, static_cast<unsigned>( i ) );
    }
    if ( observed != expected[l] )
      return std::make_pair( l, std::move( observed ) );
  }
  return std::nullopt;
}

/// Runs `cases` in order, 64 at a time, stopping at the first mismatch.
template<class Next>
void run_cases( Verdict& v, Netlist const& ntk, std::size_t wa, std::size_t wb, std::uint64_t count, Next&& next,
                BinaryOracle const& oracle )
{
  auto const t0 = std::chrono::steady_clock::now();
  std::vector<OperandPair> batch;
  std::vector<bigint> expected;
  batch.reserve( 64 );
  expected.reserve( 64 );
  std::uint64_t done = 0;
  while ( done < count )
  {
    batch.clear();
    expected.clear();
    for ( std::size_t l = 0; l < 64 && done + l < count; ++l )
    {
      batch.push_back( next() );
      expected.push_back( oracle( batch.back().first, batch.back().second ) );
    }
    if ( auto bad = check_batch( ntk, wa, wb, batch, expected ) )
    {
      auto const l = bad->first;
      v.passed = false;
      v.cases = done + l + 1;
      v.counterexample = Counterexample{ batch[l].first, batch[l].second, expected[l], std::move( bad->second ) };
      break;
    }
    done += batch.size();
    v.cases = done;
  }
  v.elapsed_ms = std::chrono::duration<double, std::milli>( std::chrono::steady_clock::now() - t0 ).count();
}

} // namespace detail

/*! \brief Checks a circuit against `oracle` on every operand pair, a outer and
 * b inner, so the reported counterexample is the lexicographically smallest.
 */
inline Verdict exhaustive_binary( Netlist const& ntk, std::size_t wa, std::size_t wb, std::size_t max_outputs,
                                  BinaryOracle const& oracle )
{
  if ( wa + wb > 2 * exhaustive_max_width )
    throw std::invalid_argument( "exhaustive check limited to " + std::to_string( 2 * exhaustive_max_width ) +
                                 " input bits; use random_equivalence" );
  detail::check_shape( ntk, wa, wb, max_outputs );
  Verdict v;
  v.mode = "exhaustive";
  v.width = wa;
  v.planned = std::uint64_t{ 1 } << ( wa + wb );
  std::uint64_t idx = 0;
  auto const next = [&]() {
    auto const c = idx++;
    return OperandPair{ bigint( c >> wb ), bigint( c & ( ( std::uint64_t{ 1 } << wb ) - 1 ) ) };
  };
  detail::run_cases( v, ntk, wa, wb, v.planned, next, oracle );
  return v;
}

/// All 2^{2m} operand pairs of an m x m multiplier, m <= 12.
inline Verdict exhaustive_equivalence( Netlist const& ntk, std::size_t m )
{
  if ( m == 0 )
    throw std::invalid_argument( "width must be at least 1" );
  if ( m > exhaustive_max_width )
    throw std::invalid_argument( "exhaustive equivalence is limited to m <= " + std::to_string( exhaustive_max_width ) +
                                 "; use random_equivalence (--trials N --seed S)" );
  return exhaustive_binary( ntk, m, m, 2 * m, oracle_multiply );
}

/// Corner vectors (0,0), (2^m-1,2^m-1), (1,2^m-1), (2^{m-1},2^{m-1}).
inline std::vector<OperandPair> corner_cases( std::size_t m )
{
  bigint const top = ( bigint( 1 ) << m ) - 1;
  bigint const half = bigint( 1 ) << ( m - 1 );
  return { { 0, 0 }, { top, top }, { 1, top }, { half, half } };
}

/// Uniform m-bit operand from 64-bit draws, low word first.
inline bigint draw_operand( std::mt19937_64& rng, std::size_t m )
{
  bigint r = 0;
  for ( std::size_t shift = 0; shift < m; shift += 64 )
    r |= bigint( rng() ) << shift;
  return r & ( ( bigint( 1 ) << m ) - 1 );
}

/// The case sequence used by random_equivalence: corners, then `trials` pairs (a drawn before b).
inline std::vector<OperandPair> random_cases( std::size_t m, std::uint64_t trials, std::uint64_t seed )
{
  if ( m == 0 )
    throw std::invalid_argument( "width must be at least 1" );
  auto cases = corner_cases( m );
  cases.reserve( cases.size() + trials );
  std::mt19937_64 rng( seed );
  for ( std::uint64_t t = 0; t < trials; ++t )
  {
    auto a = draw_operand( rng, m );
    auto b = draw_operand( rng, m );
    cases.emplace_back( std::move( a ), std::move( b ) );
  }
  return cases;
}

inline Verdict random_equivalence( Netlist const& ntk, std::size_t m, std::uint64_t trials, std::uint64_t seed )
{
  if ( trials < 1 )
    throw std::invalid_argument( "trials must be at least 1" );
  detail::check_shape( ntk, m, m, 2 * m );
  auto const cases = random_cases( m, trials, seed );
  Verdict v;
  v.mode = "random";
  v.width = m;
  v.planned = cases.size();
  v.seed = seed;
  v.trials = trials;
  v.prng = std::string( prng_name );
  std::size_t idx = 0;
  detail::run_cases( v, ntk, m, m, v.planned, [&]() { return cases[idx++]; }, oracle_multiply );
  return v;
}

/* ---------------------------------------------------------------------------
 * Self-test
 * ------------------------------------------------------------------------- */

struct SelftestReport
{
  std::vector<SuiteResult> suites;

  bool passed() const
  {
    return std::all_of( suites.begin(), suites.end(), []( SuiteResult const& s ) { return s.passed; } );
  }
};

namespace detail
{

inline SuiteResult check_adder( std::size_t n, bool equal )
{
  SuiteResult r;
  r.name = std::string( equal ? "ADDER_EQ" : "ADDER_UNEQ" ) + "(" + std::to_string( n ) + ")";
  auto const wb = equal ? n : n - 1;
  r.expected_cost = equal ? 5 * n - 3 : 5 * n - 6;

  NetlistBuilder b;
  std::vector<WireRef> x, y;
  for ( std::size_t i = 0; i < n; ++i )
    x.push_back( b.add_input( "x" + std::to_string( i ) ) );
  for ( std::size_t i = 0; i < wb; ++i )
    y.push_back( b.add_input( "y" + std::to_string( i ) ) );
  auto const sum = equal ? emit_ripple_adder_equal( b, x, y ) : emit_ripple_adder_unequal( b, x, y );
  r.cost = b.num_gates();
  for ( auto w : sum )
    b.add_output( w );
  auto const ntk = std::move( b ).build();

  if ( r.cost != r.expected_cost )
  {
    r.passed = false;
    r.message = r.name + " cost " + std::to_string( r.cost ) + " != " + std::to_string( r.expected_cost );
    return r;
  }
  if ( n <= 8 )
  {
    auto const v = exhaustive_binary( ntk, n, wb, n + 1, []( bigint const& a, bigint const& c ) { return a + c; } );
    r.cases = v.cases;
    if ( !v.passed )
    {
      r.passed = false;
      r.message = r.name + " wrong sum for " + v.counterexample->a.str() + " + " + v.counterexample->b.str();
    }
  }
  return r;
}

template<class Fn>
SuiteResult guarded_suite( std::string name, Fn&& fn )
{
  SuiteResult r;
  r.name = std::move( name );
  try
  {
    fn( r );
  }
  catch ( std::exception const& e )
  {
    r.passed = false;
    r.message = e.what();
  }
  return r;
}

} // namespace detail

/*! \brief Block identities, adders up to n = 16, and build batteries for the
 * school (n <= 16) and Karatsuba (10 <= m <= 20) constructions.
 *
 * `fault` appends a redundant gate to that block's suite.
 */
inline SelftestReport selftest( std::optional<BlockKind> fault = std::nullopt )
{
  SelftestReport rep;
  rep.suites = check_block_identities( fault );

  for ( std::size_t n = 1; n <= 16; ++n )
    rep.suites.push_back( detail::check_adder( n, true ) );
  for ( std::size_t n = 2; n <= 16; ++n )
    rep.suites.push_back( detail::check_adder( n, false ) );

  for ( std::size_t n = 1; n <= 16; ++n )
  {
    rep.suites.push_back( detail::guarded_suite( "SCHOOL(" + std::to_string( n ) + ")", [n]( SuiteResult& r ) {
      auto const sb = build_school( n );
      r.cost = count_gates( sb.netlist );
      r.expected_cost = n == 1 ? 1 : predict_school_count( n );
      auto const v = n <= 6 ? exhaustive_equivalence( sb.netlist, n ) : random_equivalence( sb.netlist, n, 1000, 1 );
      r.cases = v.cases;
      if ( !v.passed )
      {
        r.passed = false;
        r.message = "school n=" + std::to_string( n ) + " wrong product for " + v.counterexample->a.str() + " * " +
                    v.counterexample->b.str();
      }
    } ) );
  }

  auto const table = recurrence_L_table( 20 );
  for ( std::size_t m = karatsuba_min_width; m <= 20; ++m )
  {
    rep.suites.push_back( detail::guarded_suite( "KARATSUBA(" + std::to_string( m ) + ")", [&, m]( SuiteResult& r ) {
      auto const kb = build_karatsuba( m );
      r.cost = count_gates( kb.netlist );
      r.expected_cost = static_cast<std::size_t>( *table[m - 1].karatsuba );
      if ( r.cost != r.expected_cost )
      {
        r.passed = false;
        r.message = "karatsuba m=" + std::to_string( m ) + " cost " + std::to_string( r.cost ) +
                    " != " + std::to_string( r.expected_cost );
        return;
      }
      auto const v = random_equivalence( kb.netlist, m, 1000, 1 );
      r.cases = v.cases;
      if ( !v.passed )
      {
        r.passed = false;
        r.message = "karatsuba m=" + std::to_string( m ) + " wrong product for " + v.counterexample->a.str() + " * " +
                    v.counterexample->b.str();
      }
    } ) );
  }
  return rep;
}

} // namespace mulsynth
