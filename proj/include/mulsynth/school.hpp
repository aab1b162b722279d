/*!
  \file school.hpp
  \brief Standard (schoolbook) multiplier with MDFA column compression

  After the n^2 partial-product ANDs, columns are summed from the least
  significant one up.  Inside a column the rule is applied until one bit is
  left: five or more bits take an MDFA, three or more a full adder (SFA3 when
  an encoded pair is still pending), two a half adder.  MDFA carries stay in
  the (x, x ^ y) encoding and feed the next column's MDFAs directly, so only
  q + 1 conversion XORs are needed for q MDFAs.
*/

#pragma once

#include <cstddef>
#include <deque>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "blocks.hpp"
#include "netlist.hpp"

namespace mulsynth
{

/// (11n^2 - 13n)/2 - 1 + (n mod 2), the gate count of the standard method for n >= 2.
inline std::size_t predict_school_count( std::size_t n )
{
  if ( n < 2 )
    throw std::domain_error( "predict_school_count: n must be at least 2" );
  return ( 11 * n * n - 13 * n ) / 2 - 1 + ( n % 2 );
}

/// Number of MDFA blocks for n >= 4.
inline std::size_t school_mdfa_count( std::size_t n )
{
  if ( n < 4 )
    throw std::domain_error( "school_mdfa_count: n must be at least 4" );
  return ( n * n - 3 * n ) / 2 + 1 - ( n % 2 );
}

inline BlockCensus expected_school_census( std::size_t n )
{
  if ( n < 4 )
    throw std::domain_error( "expected_school_census: n must be at least 4" );
  auto const q = school_mdfa_count( n );
  BlockCensus c;
  c[BlockKind::HA] = n;
  c[BlockKind::FA3] = n - 3 + 2 * ( n % 2 );
  c[BlockKind::SFA3] = 1;
  c[BlockKind::MDFA] = q;
  c.conversion_xors = q + 1;
  c.and_gates = n * n;
  return c;
}

/// Pending-bit count h(k) of column k (1-based) when it is reached, for n >= 4.
inline std::size_t expected_school_profile( std::size_t n, std::size_t k )
{
  if ( k == 1 )
    return 1;
  if ( k <= n )
    return 2 * k - 2;
  if ( k == n + 1 )
    return 2 * n - 2;
  return 2 * ( 2 * n - k ) + 1;
}

struct SchoolEmission
{
  std::vector<WireRef> product; ///< 2n bits, or a single bit for n = 1
  BlockCensus census;
  std::vector<std::size_t> profile; ///< h(k) for k = 1..2n, index k - 1
};

namespace detail
{

struct PlainColumn
{
  std::deque<WireRef> plain;
  std::deque<EncodedPair> pairs;

  std::size_t height() const { return plain.size() + 2 * pairs.size(); }

  WireRef pop_plain()
  {
    auto const w = plain.front();
    plain.pop_front();
    return w;
  }
};

} // namespace detail

/*! \brief Emits an n x n standard-method multiplier into `b`.
 *
 * For n >= 4 the column profile and block census are checked against their
 * closed forms, and for n >= 2 the gate count against predict_school_count;
 * any mismatch throws invariant_violation.
 */
inline SchoolEmission emit_school( NetlistBuilder& b, std::span<WireRef const> x, std::span<WireRef const> y )
{
  auto const n = x.size();
  if ( n == 0 || y.size() != n )
    throw construction_error( "school multiplier needs two operands of equal, non-zero width" );

  SchoolEmission res;
  auto& census = res.census;
  auto const gates_before = b.num_gates();

  std::vector<detail::PlainColumn> cols( 2 * n );
  for ( std::size_t i = 0; i < n; ++i )
  {
    for ( std::size_t j = 0; j < n; ++j )
      cols[i + j].plain.push_back( b.add_gate( GateKind::AND, x[i], y[j] ) );
  }
  census.and_gates = n * n;

  if ( n == 1 )
  {
    res.product.push_back( cols[0].plain.front() );
    res.profile.push_back( 1 );
    return res;
  }

  for ( std::size_t w = 0; w < 2 * n; ++w )
  {
    auto& col = cols[w];
    res.profile.push_back( col.height() );
    auto* next = w + 1 < cols.size() ? &cols[w + 1] : nullptr;
    auto const carry_to = [&]() -> detail::PlainColumn& {
      if ( !next )
        throw invariant_violation( "school: carry out of the top column" );
      return *next;
    };

    while ( col.height() >= 2 )
    {
      if ( col.height() >= 5 )
      {
        std::array<EncodedPair, 2> in{};
        for ( auto& p : in )
        {
          if ( !col.pairs.empty() )
          {
            p = col.pairs.front();
            col.pairs.pop_front();
            continue;
          }
          if ( col.plain.size() < 3 )
            throw invariant_violation( "school: column " + std::to_string( w + 1 ) + " cannot feed an MDFA" );
          auto const px = col.pop_plain();
          auto const py = col.pop_plain();
          p = EncodedPair{ px, b.add_gate( GateKind::XOR, px, py ), +1, static_cast<std::uint32_t>( w ) };
          ++census.conversion_xors;
        }
        if ( col.plain.empty() )
          throw invariant_violation( "school: MDFA in column " + std::to_string( w + 1 ) + " has no plain input" );
        auto const z = col.pop_plain();
        auto const r = emit_mdfa( b, in[0].x, in[0].x_xor_y, in[1].x, in[1].x_xor_y, z );
        ++census[BlockKind::MDFA];
        col.plain.push_back( r.v );
        carry_to().pairs.push_back( EncodedPair{ r.u1, r.u1_xor_u2, +1, static_cast<std::uint32_t>( w + 1 ) } );
      }
      else if ( col.height() >= 3 )
      {
        CarrySum r;
        if ( !col.pairs.empty() )
        {
          auto const p = col.pairs.front();
          col.pairs.pop_front();
          r = emit_sfa3( b, p.x, p.x_xor_y, col.pop_plain() );
          ++census[BlockKind::SFA3];
        }
        else
        {
          auto const x1 = col.pop_plain();
          auto const x2 = col.pop_plain();
          auto const x3 = col.pop_plain();
          r = emit_fa3( b, x1, x2, x3 );
          ++census[BlockKind::FA3];
        }
        col.plain.push_back( r.v );
        carry_to().plain.push_back( r.u );
      }
      else
      {
        if ( !col.pairs.empty() )
          throw invariant_violation( "school: lone encoded pair in column " + std::to_string( w + 1 ) );
        auto const x1 = col.pop_plain();
        auto const x2 = col.pop_plain();
        auto const r = emit_ha( b, x1, x2 );
        ++census[BlockKind::HA];
        col.plain.push_back( r.v );
        carry_to().plain.push_back( r.u );
      }
    }
    if ( col.height() != 1 || col.plain.size() != 1 )
      throw invariant_violation( "school: column " + std::to_string( w + 1 ) + " did not reduce to one bit" );
    res.product.push_back( col.plain.front() );
  }

  auto const emitted = b.num_gates() - gates_before;
  if ( emitted != census.predicted_gates() )
    throw invariant_violation( "school: census predicts " + std::to_string( census.predicted_gates() ) + " gates, emitted " +
                               std::to_string( emitted ) );
  if ( emitted != predict_school_count( n ) )
    throw invariant_violation( "school: n=" + std::to_string( n ) + " emitted " + std::to_string( emitted ) + " gates, formula gives " +
                               std::to_string( predict_school_count( n ) ) );
  if ( n >= 4 )
  {
    for ( std::size_t k = 1; k <= 2 * n; ++k )
    {
      if ( res.profile[k - 1] != expected_school_profile( n, k ) )
        throw invariant_violation( "school: n=" + std::to_string( n ) + " h(" + std::to_string( k ) + ") = " +
                                   std::to_string( res.profile[k - 1] ) + ", expected " +
                                   std::to_string( expected_school_profile( n, k ) ) );
    }
    auto const expected = expected_school_census( n );
    for ( auto kind : all_block_kinds )
    {
      if ( census[kind] != expected[kind] )
        throw invariant_violation( "school: n=" + std::to_string( n ) + " uses " + std::to_string( census[kind] ) + " " +
                                   std::string( to_string( kind ) ) + ", expected " + std::to_string( expected[kind] ) );
    }
    if ( census.conversion_xors != expected.conversion_xors )
      throw invariant_violation( "school: n=" + std::to_string( n ) + " uses " + std::to_string( census.conversion_xors ) +
                                 " conversion XORs, expected " + std::to_string( expected.conversion_xors ) );
  }
  return res;
}

/// Declares inputs a0..a{m-1}, b0..b{m-1} (LSB first) on a fresh builder.
inline std::pair<std::vector<WireRef>, std::vector<WireRef>> declare_operands( NetlistBuilder& b, std::size_t m )
{
  std::vector<WireRef> x, y;
  for ( std::size_t i = 0; i < m; ++i )
    x.push_back( b.add_input( "a" + std::to_string( i ) ) );
  for ( std::size_t i = 0; i < m; ++i )
    y.push_back( b.add_input( "b" + std::to_string( i ) ) );
  return { std::move( x ), std::move( y ) };
}

/// Names the product bits p0, p1, ... and declares them as outputs.
inline void declare_product( NetlistBuilder& b, std::span<WireRef const> product )
{
  for ( std::size_t i = 0; i < product.size(); ++i )
    b.add_output( product[i], "p" + std::to_string( i ) );
}

struct SchoolBuild
{
  Netlist netlist;
  BlockCensus census;
  std::vector<std::size_t> profile;
};

inline SchoolBuild build_school( std::size_t n )
{
  if ( n == 0 )
    throw construction_error( "school multiplier needs n >= 1" );
  NetlistBuilder b;
  auto const [x, y] = declare_operands( b, n );
  auto em = emit_school( b, x, y );
  declare_product( b, em.product );
  return { std::move( b ).build(), em.census, std::move( em.profile ) };
}

} // namespace mulsynth
