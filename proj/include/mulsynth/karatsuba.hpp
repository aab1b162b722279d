/*!
  \file karatsuba.hpp
  \brief Karatsuba multiplier with a signed carry-save final stage

  An m-bit operand is split as A * 2^n + B with n = ceil(m/2).  The circuit
  computes A1 + B1 and A2 + B2 with ripple adders, the three products
  (A1+B1)(A2+B2), A1A2 and B1B2 recursively, and then sums

      A1A2 * 2^(2n) + ((A1+B1)(A2+B2) - A1A2 - B1B2) * 2^n + B1B2

  column by column.  Subtrahend bits are kept as bits of sign -1; every column
  follows a fixed block plan so that its pending-bit counts (h+, h-) are known
  in closed form and checked while building.

  The pair {B1B2[n+i], A1A2[i]} shows up in column n+i as (+, -) and again in
  column 2n+i as (-, +).  Both columns consume it in the same way, so the XOR
  of the pair (and, between two FA3_M blocks, one AND-NOT) is built once.
*/

#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <deque>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "blocks.hpp"
#include "netlist.hpp"
#include "school.hpp"

namespace mulsynth
{

enum class Method : std::uint8_t
{
  school,
  karatsuba
};

inline constexpr std::string_view to_string( Method m )
{
  return m == Method::school ? "school" : "karatsuba";
}

/// Karatsuba pays off at m = 16 and from m = 18 on.
inline constexpr Method method_policy( std::size_t m ) noexcept
{
  return ( m == 16 || m >= 18 ) ? Method::karatsuba : Method::school;
}

/// Smallest width the Karatsuba final stage is defined for.
inline constexpr std::size_t karatsuba_min_width = 10;

struct SplitPlan
{
  std::size_t m;
  std::size_t n;

  explicit SplitPlan( std::size_t width ) : m( width ), n( ( width + 1 ) / 2 ) {}

  std::size_t low_width() const { return n; }
  std::size_t high_width() const { return m - n; }
  bool odd() const { return m % 2 == 1; }
};

/// Non-recursive cost of one Karatsuba level: pre-adders plus final stage.
inline std::size_t predict_overhead( std::size_t m )
{
  if ( m < karatsuba_min_width )
    throw std::domain_error( "predict_overhead: m must be at least 10" );
  SplitPlan const s( m );
  return s.odd() ? 38 * s.n - 16 : 38 * s.n - 2;
}

/// Expected (h+, h-) for column k of the final stage, n <= k <= 2m-1.
inline std::pair<std::size_t, std::size_t> expected_signed_profile( std::size_t m, std::size_t k )
{
  SplitPlan const s( m );
  auto const n = s.n;
  if ( k == n )
    return { 2, 2 };
  if ( k == n + 1 )
    return { 3, 3 };
  if ( s.odd() && ( k == 3 * n - 2 || k == 3 * n - 1 ) )
    return { 3, 3 };
  if ( k >= n + 2 && k <= 2 * m - n - 1 )
    return { 3, 4 };
  if ( k == 3 * n )
    return { 3, 2 };
  if ( k == 3 * n + 1 )
    return { 3, 1 };
  if ( k == 3 * n + 2 )
    return { 2, 1 };
  return { 2, 0 };
}

/// Block inventory of the final stage for m >= 10, before gate sharing.
inline BlockCensus expected_final_census( std::size_t m, bool sharing = true )
{
  if ( m < karatsuba_min_width )
    throw std::domain_error( "expected_final_census: m must be at least 10" );
  SplitPlan const s( m );
  auto const n = s.n;
  BlockCensus c;
  c[BlockKind::NHA] = 1;
  c[BlockKind::HA_PM] = s.odd() ? 4 : 2;
  c[BlockKind::HA] = n - 1 - c[BlockKind::NHA] - c[BlockKind::HA_PM];
  c[BlockKind::FA3_M] = 2 * m - 2 * n - 1;
  c[BlockKind::SFA3_M] = 1;
  c[BlockKind::FA3_0] = 1;
  c[BlockKind::MDFA_M] = 2 * n;
  c.conversion_xors = 2 * n + 2;
  if ( sharing )
    c.saved_gates = s.odd() ? 2 * n - 3 : 2 * n - 1;
  return c;
}

struct FinalStage
{
  std::vector<WireRef> product; ///< 2m bits
  BlockCensus census;
  std::vector<std::pair<std::size_t, std::size_t>> profile; ///< (h+, h-) for columns n..2m-1
};

namespace detail
{

struct SignedColumn
{
  std::deque<WireRef> plus;
  std::deque<WireRef> minus;
  std::deque<EncodedPair> pairs; ///< x is a summand, y a subtrahend

  std::size_t h_plus() const { return plus.size() + pairs.size(); }
  std::size_t h_minus() const { return minus.size() + pairs.size(); }

  static WireRef pop( std::deque<WireRef>& d )
  {
    if ( d.empty() )
      throw invariant_violation( "karatsuba: column ran out of bits" );
    auto const w = d.front();
    d.pop_front();
    return w;
  }

  static void take( std::deque<WireRef>& d, WireRef w )
  {
    auto const it = std::find( d.begin(), d.end(), w );
    if ( it == d.end() )
      throw invariant_violation( "karatsuba: shared bit missing from its column" );
    d.erase( it );
  }
};

/// Gates derived from the pair (a, b) = (B1B2[n+i], A1A2[i]).
struct SharePoint
{
  WireRef a;
  WireRef b;
  std::optional<WireRef> xor_ab;
  std::optional<WireRef> andnot;          ///< andnot_of.first & !andnot_of.second
  std::pair<WireRef, WireRef> andnot_of{}; ///< operands of `andnot`, in that order
};

class FinalStageBuilder
{
public:
  FinalStageBuilder( NetlistBuilder& b, std::size_t m, bool sharing ) : b_( b ), s_( m ), sharing_( sharing ) {}

  FinalStage run( std::span<WireRef const> p_hi, std::span<WireRef const> p_mid, std::span<WireRef const> p_lo )
  {
    auto const m = s_.m;
    auto const n = s_.n;
    if ( p_hi.size() != 2 * s_.high_width() || p_mid.size() != 2 * n + 2 || p_lo.size() != 2 * n )
      throw construction_error( "karatsuba: sub-product widths do not match the split" );

    cols_.assign( 2 * m, {} );
    auto const put = [&]( std::deque<WireRef> SignedColumn::*side, std::size_t w, WireRef wire ) {
      if ( w >= cols_.size() )
        throw invariant_violation( "karatsuba: row bit beyond the product width" );
      ( cols_[w].*side ).push_back( wire );
    };
    // Summand rows: B1B2, then the middle product, then A1A2 * 2^(2n).
    for ( std::size_t j = 0; j < p_lo.size(); ++j )
      put( &SignedColumn::plus, j, p_lo[j] );
    for ( std::size_t j = 0; j < p_mid.size(); ++j )
      put( &SignedColumn::plus, n + j, p_mid[j] );
    for ( std::size_t j = 0; j < p_hi.size(); ++j )
      put( &SignedColumn::plus, 2 * n + j, p_hi[j] );
    // Subtrahend rows: A1A2 * 2^n, then B1B2 * 2^n.
    for ( std::size_t j = 0; j < p_hi.size(); ++j )
      put( &SignedColumn::minus, n + j, p_hi[j] );
    for ( std::size_t j = 0; j < p_lo.size(); ++j )
      put( &SignedColumn::minus, n + j, p_lo[j] );

    shares_.clear();
    for ( std::size_t i = 0; i < n; ++i )
      shares_.push_back( SharePoint{ p_lo[n + i], p_hi[i], std::nullopt, std::nullopt, {} } );

    FinalStage res;
    auto const before = b_.num_gates();
    for ( std::size_t k = 0; k < 2 * m; ++k )
    {
      auto& col = cols_[k];
      if ( k < n )
      {
        if ( col.plus.size() != 1 || !col.minus.empty() || !col.pairs.empty() )
          throw invariant_violation( "karatsuba: low column " + std::to_string( k ) + " is not a single bit" );
        res.product.push_back( col.plus.front() );
        continue;
      }
      res.profile.emplace_back( col.h_plus(), col.h_minus() );
      auto const expected = expected_signed_profile( m, k );
      if ( res.profile.back() != expected )
        throw invariant_violation( "karatsuba: m=" + std::to_string( m ) + " column " + std::to_string( k ) + " has h+=" +
                                   std::to_string( col.h_plus() ) + " h-=" + std::to_string( col.h_minus() ) + ", expected " +
                                   std::to_string( expected.first ) + "/" + std::to_string( expected.second ) );
      res.product.push_back( process_column( k ) );
    }
    res.census = census_;

    auto const emitted = b_.num_gates() - before;
    if ( emitted != census_.predicted_gates() )
      throw invariant_violation( "karatsuba: final stage census predicts " + std::to_string( census_.predicted_gates() ) +
                                 " gates, emitted " + std::to_string( emitted ) );
    if ( m >= karatsuba_min_width && !( census_ == expected_final_census( m, sharing_ ) ) )
      throw invariant_violation( "karatsuba: m=" + std::to_string( m ) + " final-stage census deviates from the closed form" );
    return res;
  }

private:
  enum class Plan
  {
    fa3m_nha,
    mdfa_hapm,
    fa3m_mdfa,
    mdfa,
    sfa3m_hapm,
    fa3_zero,
    ha,
    top_xor
  };

  Plan plan_for( std::size_t k ) const
  {
    auto const m = s_.m;
    auto const n = s_.n;
    if ( k == n )
      return Plan::fa3m_nha;
    if ( k == n + 1 || ( s_.odd() && ( k == 3 * n - 2 || k == 3 * n - 1 ) ) )
      return Plan::mdfa_hapm;
    if ( k >= n + 2 && k <= 2 * m - n - 1 )
      return Plan::fa3m_mdfa;
    if ( k == 3 * n )
      return Plan::mdfa;
    if ( k == 3 * n + 1 )
      return Plan::sfa3m_hapm;
    if ( k == 3 * n + 2 )
      return Plan::fa3_zero;
    if ( k + 1 == 2 * m )
      return Plan::top_xor;
    return Plan::ha;
  }

  /// Share point whose pair sits in column k, with the sign of `a` there.
  std::optional<std::pair<std::size_t, int>> share_at( std::size_t k ) const
  {
    auto const n = s_.n;
    if ( k >= n && k < 2 * n )
      return std::pair{ k - n, +1 };
    if ( k >= 2 * n && k < 3 * n )
      return std::pair{ k - 2 * n, -1 };
    return std::nullopt;
  }

  void carry_plus( std::size_t k, WireRef w ) { next( k ).plus.push_back( w ); }
  void carry_minus( std::size_t k, WireRef w ) { next( k ).minus.push_back( w ); }

  SignedColumn& next( std::size_t k )
  {
    if ( k + 1 >= cols_.size() )
      throw invariant_violation( "karatsuba: carry out of the top column" );
    return cols_[k + 1];
  }

  /// The shared pair of column k as (summand, subtrahend), removed from the column.
  std::pair<WireRef, WireRef> take_shared( std::size_t k, SharePoint const& sp, int sign_a )
  {
    auto& col = cols_[k];
    auto const p = sign_a > 0 ? sp.a : sp.b;
    auto const q = sign_a > 0 ? sp.b : sp.a;
    SignedColumn::take( col.plus, p );
    SignedColumn::take( col.minus, q );
    return { p, q };
  }

  /// Emits or reuses a gate owned by a share point.
  template<class Make>
  WireRef reuse_or_make( std::optional<WireRef>& slot, Make make )
  {
    if ( slot && sharing_ )
    {
      ++census_.saved_gates;
      return *slot;
    }
    auto const w = make();
    if ( !slot )
      slot = w;
    return w;
  }

  /// Fresh encoded pair (p, p ^ q) from a summand and a subtrahend of column k.
  EncodedPair fresh_pair( std::size_t k, WireRef p, WireRef q, SharePoint* sp )
  {
    ++census_.conversion_xors;
    WireRef x;
    if ( sp )
      x = reuse_or_make( sp->xor_ab, [&] { return b_.add_gate( GateKind::XOR, p, q ); } );
    else
      x = b_.add_gate( GateKind::XOR, p, q );
    return EncodedPair{ p, x, -1, static_cast<std::uint32_t>( k ) };
  }

  /*! FA3_M on x1, x2 (same sign) and x3 (opposite sign), where (x1, x3) is
   * the shared pair.  Picks the variant whose AND-NOT is already built. */
  CarrySum shared_fa3m( WireRef x1, WireRef x2, WireRef x3, SharePoint& sp )
  {
    ++census_[BlockKind::FA3_M];
    auto variant = SharedVariant::A;
    std::optional<WireRef> andnot;
    if ( sharing_ && sp.andnot )
    {
      if ( sp.andnot_of == std::pair{ x1, x3 } )
        andnot = sp.andnot;
      else if ( sp.andnot_of == std::pair{ x3, x1 } )
      {
        variant = SharedVariant::B;
        andnot = sp.andnot;
      }
    }
    std::optional<WireRef> t;
    if ( sharing_ && sp.xor_ab )
      t = sp.xor_ab;

    auto const r = emit_fa3_minus_shared( b_, variant, x1, x2, x3, t, andnot );
    census_.saved_gates += block_cost( BlockKind::FA3_M ) - r.emitted;
    if ( !sp.xor_ab )
      sp.xor_ab = r.t;
    if ( !sp.andnot )
    {
      sp.andnot = r.andnot;
      sp.andnot_of = variant == SharedVariant::A ? std::pair{ x1, x3 } : std::pair{ x3, x1 };
    }
    return { r.u, r.v };
  }

  /// MDFA_M on the column's pending pairs, topped up with fresh ones; returns v.
  WireRef column_mdfa( std::size_t k )
  {
    auto& col = cols_[k];
    std::array<EncodedPair, 2> in{};
    auto const share = share_at( k );
    for ( auto& p : in )
    {
      if ( !col.pairs.empty() )
      {
        p = col.pairs.front();
        col.pairs.pop_front();
      }
      else if ( share && contains( col.plus, share_point( *share ), share->second ) )
      {
        auto& sp = shares_[share->first];
        auto const [sp_plus, sp_minus] = take_shared( k, sp, share->second );
        p = fresh_pair( k, sp_plus, sp_minus, &sp );
      }
      else
      {
        auto const px = SignedColumn::pop( col.plus );
        auto const py = SignedColumn::pop( col.minus );
        p = fresh_pair( k, px, py, nullptr );
      }
    }
    auto const z = SignedColumn::pop( col.plus );
    auto const r = emit_mdfa_minus( b_, in[0].x, in[0].x_xor_y, in[1].x, in[1].x_xor_y, z );
    ++census_[BlockKind::MDFA_M];
    next( k ).pairs.push_back( EncodedPair{ r.u1, r.u1_xor_u2, -1, static_cast<std::uint32_t>( k + 1 ) } );
    return r.v;
  }

  SharePoint const& share_point( std::pair<std::size_t, int> s ) const { return shares_[s.first]; }

  static bool contains( std::deque<WireRef> const& plus, SharePoint const& sp, int sign_a )
  {
    auto const p = sign_a > 0 ? sp.a : sp.b;
    return std::find( plus.begin(), plus.end(), p ) != plus.end();
  }

  /// Reduces column k to its product bit.
  WireRef process_column( std::size_t k )
  {
    auto& col = cols_[k];
    switch ( plan_for( k ) )
    {
    case Plan::fa3m_nha:
    {
      auto const share = *share_at( k );
      auto& sp = shares_[share.first];
      auto const [p, q] = take_shared( k, sp, share.second );
      auto const other = SignedColumn::pop( col.plus );
      auto const r = shared_fa3m( p, other, q, sp );
      carry_plus( k, r.u );
      col.minus.push_back( r.v );
      auto const m1 = SignedColumn::pop( col.minus );
      auto const m2 = SignedColumn::pop( col.minus );
      auto const h = emit_nha( b_, m1, m2 );
      ++census_[BlockKind::NHA];
      carry_minus( k, h.u );
      return finish( k, h.v );
    }
    case Plan::mdfa_hapm:
    {
      auto const v = column_mdfa( k );
      auto const y = SignedColumn::pop( col.minus );
      auto const h = emit_ha_pm( b_, v, y );
      ++census_[BlockKind::HA_PM];
      carry_minus( k, h.u );
      return finish( k, h.v );
    }
    case Plan::fa3m_mdfa:
    {
      // Two subtrahends and one summand: -(x1 + x2 - x3) = -2u + v.
      CarrySum r;
      if ( auto const share = share_at( k ) )
      {
        auto& sp = shares_[share->first];
        auto const [p, q] = take_shared( k, sp, share->second );
        auto const other = SignedColumn::pop( col.minus );
        r = shared_fa3m( q, other, p, sp );
      }
      else
      {
        auto const x3 = SignedColumn::pop( col.plus );
        auto const x1 = SignedColumn::pop( col.minus );
        auto const x2 = SignedColumn::pop( col.minus );
        r = emit_fa3_minus( b_, x1, x2, x3 );
        ++census_[BlockKind::FA3_M];
      }
      carry_minus( k, r.u );
      col.plus.push_back( r.v );
      return finish( k, column_mdfa( k ) );
    }
    case Plan::mdfa:
      return finish( k, column_mdfa( k ) );
    case Plan::sfa3m_hapm:
    {
      if ( col.pairs.empty() )
        throw invariant_violation( "karatsuba: column " + std::to_string( k ) + " lacks its encoded pair" );
      auto const pr = col.pairs.front();
      col.pairs.pop_front();
      auto const r = emit_sfa3_minus( b_, pr.x, pr.x_xor_y, SignedColumn::pop( col.plus ) );
      ++census_[BlockKind::SFA3_M];
      carry_plus( k, r.u );
      auto const h = emit_ha_pm( b_, SignedColumn::pop( col.plus ), r.v );
      ++census_[BlockKind::HA_PM];
      carry_minus( k, h.u );
      return finish( k, h.v );
    }
    case Plan::fa3_zero:
    {
      auto const x1 = SignedColumn::pop( col.plus );
      auto const x2 = SignedColumn::pop( col.plus );
      auto const x3 = SignedColumn::pop( col.minus );
      auto const r = emit_fa3_zero( b_, x1, x2, x3 );
      ++census_[BlockKind::FA3_0];
      carry_plus( k, r.u );
      return finish( k, r.v );
    }
    case Plan::ha:
    {
      auto const x1 = SignedColumn::pop( col.plus );
      auto const x2 = SignedColumn::pop( col.plus );
      auto const r = emit_ha( b_, x1, x2 );
      ++census_[BlockKind::HA];
      carry_plus( k, r.u );
      return finish( k, r.v );
    }
    case Plan::top_xor:
    {
      auto const x1 = SignedColumn::pop( col.plus );
      auto const x2 = SignedColumn::pop( col.plus );
      ++census_.conversion_xors;
      return finish( k, b_.add_gate( GateKind::XOR, x1, x2 ) );
    }
    }
    throw invariant_violation( "karatsuba: no plan for column " + std::to_string( k ) );
  }

  /// Checks that `bit` is the only thing left in column k.
  WireRef finish( std::size_t k, WireRef bit )
  {
    auto const& col = cols_[k];
    if ( !col.plus.empty() || !col.minus.empty() || !col.pairs.empty() )
      throw invariant_violation( "karatsuba: column " + std::to_string( k ) + " not fully reduced" );
    return bit;
  }

  NetlistBuilder& b_;
  SplitPlan s_;
  bool sharing_;
  std::vector<SignedColumn> cols_;
  std::vector<SharePoint> shares_;
  BlockCensus census_;
};

} // namespace detail

/*! \brief Emits the final addition-subtraction of a Karatsuba level.
 *
 * `p_hi` = A1A2 (2(m-n) bits), `p_mid` = (A1+B1)(A2+B2) (2n+2 bits),
 * `p_lo` = B1B2 (2n bits), all LSB first.  Returns the 2m product bits.
 */
inline FinalStage emit_final_addsub( NetlistBuilder& b, std::size_t m, std::span<WireRef const> p_hi,
                                     std::span<WireRef const> p_mid, std::span<WireRef const> p_lo, bool sharing = true )
{
  if ( m < karatsuba_min_width )
    throw construction_error( "unsupported width " + std::to_string( m ) + " for the Karatsuba final stage (needs m >= 10)" );
  return detail::FinalStageBuilder( b, m, sharing ).run( p_hi, p_mid, p_lo );
}

/* ---------------------------------------------------------------------------
 * Recursive multiplier
 * ------------------------------------------------------------------------- */

struct MethodTrace
{
  Method method = Method::school;
  std::size_t width = 0;
  std::vector<MethodTrace> children; ///< middle, high, low
};

/// e.g. "karatsuba(16)→school(9,8,8)".
inline std::string format_trace( MethodTrace const& t )
{
  auto const self = std::string( to_string( t.method ) ) + "(" + std::to_string( t.width ) + ")";
  if ( t.children.empty() )
    return self;
  bool const flat = std::all_of( t.children.begin(), t.children.end(),
                                 []( MethodTrace const& c ) { return c.method == Method::school; } );
  std::string s = self + "→";
  if ( flat )
  {
    s += "school(";
    for ( std::size_t i = 0; i < t.children.size(); ++i )
      s += ( i ? "," : "" ) + std::to_string( t.children[i].width );
    return s + ")";
  }
  s += "(";
  for ( std::size_t i = 0; i < t.children.size(); ++i )
    s += ( i ? ", " : "" ) + format_trace( t.children[i] );
  return s + ")";
}

struct KaratsubaOptions
{
  bool sharing = true;
};

struct MultiplierEmission
{
  std::vector<WireRef> product;
  BlockCensus census;
  MethodTrace trace;
};

/// Details of the top Karatsuba level.
struct KaratsubaLevel
{
  std::size_t adder_gates = 0;
  std::array<std::size_t, 3> sub_gates{}; ///< middle, high, low
  std::size_t final_gates = 0;
  FinalStage final_stage;
};

inline MultiplierEmission emit_multiplier( NetlistBuilder& b, std::span<WireRef const> x, std::span<WireRef const> y,
                                           Method top, KaratsubaOptions const& opts = {}, KaratsubaLevel* level = nullptr );

inline MultiplierEmission emit_karatsuba( NetlistBuilder& b, std::span<WireRef const> x, std::span<WireRef const> y,
                                          KaratsubaOptions const& opts = {}, KaratsubaLevel* level = nullptr )
{
  auto const m = x.size();
  if ( y.size() != m )
    throw construction_error( "karatsuba: operand widths differ" );
  if ( m < karatsuba_min_width )
    throw construction_error( "unsupported width " + std::to_string( m ) + " for Karatsuba (needs m >= 10)" );
  SplitPlan const s( m );
  auto const n = s.n;

  auto const lo_x = x.first( n );
  auto const hi_x = x.subspan( n );
  auto const lo_y = y.first( n );
  auto const hi_y = y.subspan( n );

  MultiplierEmission res;
  res.trace.method = Method::karatsuba;
  res.trace.width = m;

  auto const g0 = b.num_gates();
  auto const sum_x = s.odd() ? emit_ripple_adder_unequal( b, lo_x, hi_x ) : emit_ripple_adder_equal( b, lo_x, hi_x );
  auto const sum_y = s.odd() ? emit_ripple_adder_unequal( b, lo_y, hi_y ) : emit_ripple_adder_equal( b, lo_y, hi_y );
  auto const adders = b.num_gates() - g0;
  if ( adders != ( s.odd() ? 2 * ( 5 * n - 6 ) : 2 * ( 5 * n - 3 ) ) )
    throw invariant_violation( "karatsuba: pre-adders cost " + std::to_string( adders ) );
  res.census.adder_gates = adders;

  std::array<std::size_t, 3> sub_gates{};
  auto const sub = [&]( std::span<WireRef const> a, std::span<WireRef const> c, std::size_t slot ) {
    auto const before = b.num_gates();
    auto em = emit_multiplier( b, a, c, method_policy( a.size() ), opts );
    sub_gates[slot] = b.num_gates() - before;
    res.census += em.census;
    res.trace.children.push_back( std::move( em.trace ) );
    return std::move( em.product );
  };
  auto const p_mid = sub( sum_x, sum_y, 0 );
  auto const p_hi = sub( hi_x, hi_y, 1 );
  auto const p_lo = sub( lo_x, lo_y, 2 );

  auto const g1 = b.num_gates();
  auto fin = emit_final_addsub( b, m, p_hi, p_mid, p_lo, opts.sharing );
  auto const final_gates = b.num_gates() - g1;
  res.census += fin.census;

  if ( opts.sharing && adders + final_gates != predict_overhead( m ) )
    throw invariant_violation( "karatsuba: m=" + std::to_string( m ) + " overhead " + std::to_string( adders + final_gates ) +
                               " != " + std::to_string( predict_overhead( m ) ) );

  res.product = fin.product;
  if ( level )
  {
    level->adder_gates = adders;
    level->sub_gates = sub_gates;
    level->final_gates = final_gates;
    level->final_stage = std::move( fin );
  }
  return res;
}

inline MultiplierEmission emit_multiplier( NetlistBuilder& b, std::span<WireRef const> x, std::span<WireRef const> y,
                                           Method top, KaratsubaOptions const& opts, KaratsubaLevel* level )
{
  if ( top == Method::karatsuba )
    return emit_karatsuba( b, x, y, opts, level );
  auto em = emit_school( b, x, y );
  return { std::move( em.product ), em.census, MethodTrace{ Method::school, x.size(), {} } };
}

struct MultiplierBuild
{
  Netlist netlist;
  BlockCensus census;
  MethodTrace trace;
  KaratsubaLevel level; ///< filled when the top level is Karatsuba
};

/// Builds an m x m multiplier whose top level uses `top`; sub-multipliers follow method_policy.
inline MultiplierBuild build_multiplier( std::size_t m, Method top, KaratsubaOptions const& opts = {} )
{
  if ( m == 0 )
    throw construction_error( "multiplier width must be at least 1" );
  NetlistBuilder b;
  auto const [x, y] = declare_operands( b, m );
  MultiplierBuild res;
  auto em = emit_multiplier( b, x, y, top, opts, &res.level );
  declare_product( b, em.product );
  res.netlist = std::move( b ).build();
  res.census = em.census;
  res.trace = std::move( em.trace );
  if ( res.census.predicted_gates() != count_gates( res.netlist ) )
    throw invariant_violation( "multiplier: census does not add up to the gate count" );
  return res;
}

/// Karatsuba at the top level regardless of the policy (m >= 10).
inline MultiplierBuild build_karatsuba( std::size_t m, KaratsubaOptions const& opts = {} )
{
  return build_multiplier( m, Method::karatsuba, opts );
}

inline MultiplierBuild build_auto( std::size_t m )
{
  return build_multiplier( m, method_policy( m ) );
}

} // namespace mulsynth
