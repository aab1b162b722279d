/*!
  \file blocks.hpp
  \brief Carry-save blocks and ripple adders used by the multiplier generators

  Every block maps a handful of equal-weight bits to a sum bit `v` of the same
  weight and carry information `u` one weight up.  Some blocks consume or
  produce bits in the pair encoding (x, x ^ y), which is what lets the (5,3)
  counters get away with 8 gates.

  The wiring of each block follows the reference drawings; all that the
  generators rely on is the arithmetic identity and the gate cost, and both
  are checked exhaustively by check_block_identities().
*/

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "netlist.hpp"

namespace mulsynth
{

/// A wire with an arithmetic sign: the bit contributes sign * 2^weight.
struct SignedBit
{
  WireRef wire;
  int sign = +1;
  std::uint32_t weight = 0;

  friend bool operator==( SignedBit const&, SignedBit const& ) = default;
};

/*! \brief Two bits (x, y) of one weight carried as the wires (x, x ^ y).
 *
 * `x` is always a summand; `y` has sign `sign_y`.
 */
struct EncodedPair
{
  WireRef x;
  WireRef x_xor_y;
  int sign_y = +1;
  std::uint32_t weight = 0;

  friend bool operator==( EncodedPair const&, EncodedPair const& ) = default;
};

enum class BlockKind : std::uint8_t
{
  HA,       ///< x1 + x2 = 2u + v
  HA_PM,    ///< x1 - x2 = -2u + v
  NHA,      ///< -x1 - x2 = -2u + v
  FA3,      ///< x1 + x2 + x3 = 2u + v
  FA3_M,    ///< x1 + x2 - x3 = 2u - v
  FA3_0,    ///< x1 + x2 - x3 = 2u + v, only where the left side is non-negative
  SFA3,     ///< (x1, x1^x2, x3): x1 + x2 + x3 = 2u + v
  SFA3_M,   ///< (x1, x1^x2, x3): x1 - x2 + x3 = 2u - v
  MDFA,     ///< (x1, x1^y1, x2, x2^y2, z): x1 + y1 + x2 + y2 + z = 2(u1 + u2) + v
  MDFA_M,   ///< (x1, x1^y1, x2, x2^y2, z): x1 - y1 + x2 - y2 + z = 2(u1 - u2) + v
  SHARED3A, ///< FA3_M whose x1^x3 and x1&!x3 gates can be shared
  SHARED3B  ///< FA3_M whose x1^x3 and x3&!x1 gates can be shared
};

inline constexpr std::size_t num_block_kinds = 12;

inline constexpr std::array<BlockKind, num_block_kinds> all_block_kinds = {
    BlockKind::HA, BlockKind::HA_PM, BlockKind::NHA, BlockKind::FA3, BlockKind::FA3_M, BlockKind::FA3_0,
    BlockKind::SFA3, BlockKind::SFA3_M, BlockKind::MDFA, BlockKind::MDFA_M, BlockKind::SHARED3A, BlockKind::SHARED3B };

inline constexpr std::string_view to_string( BlockKind kind )
{
  constexpr std::array<std::string_view, num_block_kinds> names = {
      "HA", "HA_PM", "NHA", "FA3", "FA3_M", "FA3_0", "SFA3", "SFA3_M", "MDFA", "MDFA_M", "SHARED3A", "SHARED3B" };
  return names[static_cast<std::size_t>( kind )];
}

inline std::optional<BlockKind> block_kind_from_string( std::string_view s )
{
  for ( auto k : all_block_kinds )
  {
    if ( to_string( k ) == s )
      return k;
  }
  return std::nullopt;
}

/// Gate cost of a block built in isolation.
inline constexpr std::size_t block_cost( BlockKind kind )
{
  switch ( kind )
  {
  case BlockKind::HA:
  case BlockKind::HA_PM:
  case BlockKind::NHA:
    return 2;
  case BlockKind::FA3:
  case BlockKind::FA3_M:
  case BlockKind::SHARED3A:
  case BlockKind::SHARED3B:
    return 5;
  case BlockKind::FA3_0:
  case BlockKind::SFA3:
  case BlockKind::SFA3_M:
    return 4;
  case BlockKind::MDFA:
  case BlockKind::MDFA_M:
    return 8;
  }
  return 0;
}

/*! \brief Exact inventory of what a generator emitted.
 *
 * `saved_gates` are gates that a block would have emitted in isolation but
 * reused from another block instead.  With `adder_gates` covering the ripple
 * adders, predicted_gates() must equal the netlist's gate count.
 */
struct BlockCensus
{
  std::array<std::size_t, num_block_kinds> blocks{};
  std::size_t conversion_xors = 0;
  std::size_t and_gates = 0;
  std::size_t adder_gates = 0;
  std::size_t saved_gates = 0;

  std::size_t& operator[]( BlockKind k ) { return blocks[static_cast<std::size_t>( k )]; }
  std::size_t operator[]( BlockKind k ) const { return blocks[static_cast<std::size_t>( k )]; }

  std::size_t predicted_gates() const
  {
    std::size_t total = conversion_xors + and_gates + adder_gates;
    for ( auto k : all_block_kinds )
      total += ( *this )[k] * block_cost( k );
    return total - saved_gates;
  }

  BlockCensus& operator+=( BlockCensus const& o )
  {
    for ( std::size_t i = 0; i < num_block_kinds; ++i )
      blocks[i] += o.blocks[i];
    conversion_xors += o.conversion_xors;
    and_gates += o.and_gates;
    adder_gates += o.adder_gates;
    saved_gates += o.saved_gates;
    return *this;
  }

  friend bool operator==( BlockCensus const&, BlockCensus const& ) = default;
};

/* ---------------------------------------------------------------------------
 * Wire-level emitters.  Arguments are in the order of the block identity.
 * ------------------------------------------------------------------------- */

/// Carry `u` (weight w+1) and sum `v` (weight w).
struct CarrySum
{
  WireRef u;
  WireRef v;
};

/// Encoded carry pair (u1, u1 ^ u2) at weight w+1 and sum `v` at weight w.
struct PairCarrySum
{
  WireRef u1;
  WireRef u1_xor_u2;
  WireRef v;
};

inline CarrySum emit_ha( NetlistBuilder& b, WireRef x1, WireRef x2 )
{
  auto const v = b.add_gate( GateKind::XOR, x1, x2 );
  auto const u = b.add_gate( GateKind::AND, x1, x2 );
  return { u, v };
}

inline CarrySum emit_ha_pm( NetlistBuilder& b, WireRef x1, WireRef x2 )
{
  auto const v = b.add_gate( GateKind::XOR, x1, x2 );
  auto const u = b.add_gate( GateKind::ANDN1, x1, x2 );
  return { u, v };
}

/// Both inputs are subtrahends; the borrow is x1 | x2.
inline CarrySum emit_nha( NetlistBuilder& b, WireRef x1, WireRef x2 )
{
  auto const v = b.add_gate( GateKind::XOR, x1, x2 );
  auto const u = b.add_gate( GateKind::OR, x1, x2 );
  return { u, v };
}

inline CarrySum emit_fa3( NetlistBuilder& b, WireRef x1, WireRef x2, WireRef x3 )
{
  auto const t = b.add_gate( GateKind::XOR, x1, x2 );
  auto const v = b.add_gate( GateKind::XOR, t, x3 );
  auto const a = b.add_gate( GateKind::AND, x1, x2 );
  auto const r = b.add_gate( GateKind::AND, t, x3 );
  auto const u = b.add_gate( GateKind::XOR, a, r );
  return { u, v };
}

inline CarrySum emit_fa3_minus( NetlistBuilder& b, WireRef x1, WireRef x2, WireRef x3 )
{
  auto const t = b.add_gate( GateKind::XOR, x1, x2 );
  auto const v = b.add_gate( GateKind::XOR, t, x3 );
  auto const a = b.add_gate( GateKind::AND, x1, x2 );
  auto const r = b.add_gate( GateKind::ANDN2, t, x3 );
  auto const u = b.add_gate( GateKind::XOR, a, r );
  return { u, v };
}

/// The negative case (0, 0, 1) is a don't-care.
inline CarrySum emit_fa3_zero( NetlistBuilder& b, WireRef x1, WireRef x2, WireRef x3 )
{
  auto const t = b.add_gate( GateKind::XOR, x1, x2 );
  auto const v = b.add_gate( GateKind::XOR, t, x3 );
  auto const a = b.add_gate( GateKind::AND, x1, x2 );
  auto const u = b.add_gate( GateKind::ANDN2, a, x3 );
  return { u, v };
}

inline CarrySum emit_sfa3( NetlistBuilder& b, WireRef x1, WireRef x1_xor_x2, WireRef x3 )
{
  auto const e = b.add_gate( GateKind::XOR, x1, x3 );
  auto const o = b.add_gate( GateKind::OR, e, x1_xor_x2 );
  auto const v = b.add_gate( GateKind::XOR, x1_xor_x2, x3 );
  auto const u = b.add_gate( GateKind::XOR, o, v );
  return { u, v };
}

inline CarrySum emit_sfa3_minus( NetlistBuilder& b, WireRef x1, WireRef x1_xor_x2, WireRef x3 )
{
  auto const e = b.add_gate( GateKind::XOR, x1, x3 );
  auto const o = b.add_gate( GateKind::ORN2, e, x1_xor_x2 );
  auto const v = b.add_gate( GateKind::XOR, x1_xor_x2, x3 );
  auto const u = b.add_gate( GateKind::XNOR, o, v );
  return { u, v };
}

inline PairCarrySum emit_mdfa( NetlistBuilder& b, WireRef x1, WireRef x1_xor_y1, WireRef x2, WireRef x2_xor_y2, WireRef z )
{
  auto const e = b.add_gate( GateKind::XOR, x1, z );
  auto const s = b.add_gate( GateKind::XOR, x1_xor_y1, z );
  auto const o = b.add_gate( GateKind::OR, e, x1_xor_y1 );
  auto const u1 = b.add_gate( GateKind::XOR, o, s );
  auto const f = b.add_gate( GateKind::XOR, s, x2 );
  auto const g = b.add_gate( GateKind::ANDN2, f, x2_xor_y2 );
  auto const v = b.add_gate( GateKind::XOR, s, x2_xor_y2 );
  auto const w = b.add_gate( GateKind::XOR, o, g );
  return { u1, w, v };
}

inline PairCarrySum emit_mdfa_minus( NetlistBuilder& b, WireRef x1, WireRef x1_xor_y1, WireRef x2, WireRef x2_xor_y2, WireRef z )
{
  auto const e = b.add_gate( GateKind::XOR, x1, z );
  auto const s = b.add_gate( GateKind::XOR, x1_xor_y1, z );
  auto const o = b.add_gate( GateKind::ORN2, e, x1_xor_y1 );
  auto const u1 = b.add_gate( GateKind::XNOR, o, s );
  auto const f = b.add_gate( GateKind::XOR, s, x2 );
  auto const g = b.add_gate( GateKind::ORN2, f, x2_xor_y2 );
  auto const v = b.add_gate( GateKind::XOR, s, x2_xor_y2 );
  auto const w = b.add_gate( GateKind::XOR, o, g );
  return { u1, w, v };
}

/*! \brief FA3_M variants whose first-layer gates depend only on (x1, x3).
 *
 * Two columns that see the same pair of bits with opposite signs can share
 * `t = x1 ^ x3` and one AND-NOT gate.  Variant A uses x1 & !x3, variant B
 * uses x3 & !x1.  Pass the shared wires to reuse them; the result always
 * reports the wires that were used so the caller can hand them on.
 */
struct SharedFa3Out
{
  WireRef u;
  WireRef v;
  WireRef t;
  WireRef andnot;
  std::size_t emitted = 0;
};

enum class SharedVariant : std::uint8_t
{
  A,
  B
};

inline SharedFa3Out emit_fa3_minus_shared( NetlistBuilder& b, SharedVariant variant, WireRef x1, WireRef x2, WireRef x3,
                                           std::optional<WireRef> t = std::nullopt,
                                           std::optional<WireRef> andnot = std::nullopt )
{
  auto const before = b.num_gates();
  auto const tw = t ? *t : b.add_gate( GateKind::XOR, x1, x3 );
  auto const v = b.add_gate( GateKind::XOR, tw, x2 );
  WireRef u;
  WireRef an;
  if ( variant == SharedVariant::A )
  {
    an = andnot ? *andnot : b.add_gate( GateKind::ANDN2, x1, x3 );
    auto const r = b.add_gate( GateKind::ANDN1, tw, x2 );
    u = b.add_gate( GateKind::XOR, an, r );
  }
  else
  {
    an = andnot ? *andnot : b.add_gate( GateKind::ANDN1, x1, x3 );
    auto const r = b.add_gate( GateKind::OR, tw, x2 );
    u = b.add_gate( GateKind::XOR, an, r );
  }
  return { u, v, tw, an, b.num_gates() - before };
}

/* ---------------------------------------------------------------------------
 * Ripple-carry adders
 * ------------------------------------------------------------------------- */

/// a + b for two n-bit numbers (LSB first); n + 1 result bits, 5n - 3 gates.
inline std::vector<WireRef> emit_ripple_adder_equal( NetlistBuilder& b, std::span<WireRef const> x, std::span<WireRef const> y )
{
  if ( x.empty() || x.size() != y.size() )
    throw construction_error( "equal-width adder needs two non-empty operands of the same width" );
  std::vector<WireRef> sum;
  sum.reserve( x.size() + 1 );
  auto c = emit_ha( b, x[0], y[0] );
  sum.push_back( c.v );
  for ( std::size_t i = 1; i < x.size(); ++i )
  {
    c = emit_fa3( b, x[i], y[i], c.u );
    sum.push_back( c.v );
  }
  sum.push_back( c.u );
  return sum;
}

/// a + b with |a| = n >= 2 and |b| = n - 1; n + 1 result bits, 5n - 6 gates.
inline std::vector<WireRef> emit_ripple_adder_unequal( NetlistBuilder& b, std::span<WireRef const> x, std::span<WireRef const> y )
{
  if ( x.size() < 2 || y.size() + 1 != x.size() )
    throw construction_error( "unequal adder needs widths n >= 2 and n - 1" );
  std::vector<WireRef> sum;
  sum.reserve( x.size() + 1 );
  auto c = emit_ha( b, x[0], y[0] );
  sum.push_back( c.v );
  for ( std::size_t i = 1; i < y.size(); ++i )
  {
    c = emit_fa3( b, x[i], y[i], c.u );
    sum.push_back( c.v );
  }
  c = emit_ha( b, x.back(), c.u );
  sum.push_back( c.v );
  sum.push_back( c.u );
  return sum;
}

/* ---------------------------------------------------------------------------
 * Typed, sign-checked entry point
 * ------------------------------------------------------------------------- */

using BlockInput = std::variant<SignedBit, EncodedPair>;

struct BlockResult
{
  std::vector<SignedBit> bits;     ///< sum bit first, then a plain carry if the block has one
  std::optional<EncodedPair> pair; ///< encoded carry of the MDFA family
};

namespace detail
{

struct BlockSignature
{
  std::size_t pairs;
  int pair_sign_y;
  std::vector<int> bit_signs; ///< signs of the plain inputs, for the non-flipped orientation
  int u_sign;                 ///< sign of the plain carry
  int v_sign;
  bool flippable;
};

inline BlockSignature block_signature( BlockKind kind )
{
  switch ( kind )
  {
  case BlockKind::HA: return { 0, 0, { +1, +1 }, +1, +1, true };
  case BlockKind::HA_PM: return { 0, 0, { +1, -1 }, -1, +1, true };
  case BlockKind::NHA: return { 0, 0, { -1, -1 }, -1, +1, true };
  case BlockKind::FA3: return { 0, 0, { +1, +1, +1 }, +1, +1, true };
  case BlockKind::FA3_M:
  case BlockKind::SHARED3A:
  case BlockKind::SHARED3B: return { 0, 0, { +1, +1, -1 }, +1, -1, true };
  case BlockKind::FA3_0: return { 0, 0, { +1, +1, -1 }, +1, +1, true };
  case BlockKind::SFA3: return { 1, +1, { +1 }, +1, +1, false };
  case BlockKind::SFA3_M: return { 1, -1, { +1 }, +1, -1, false };
  case BlockKind::MDFA: return { 2, +1, { +1 }, 0, +1, false };
  case BlockKind::MDFA_M: return { 2, -1, { +1 }, 0, +1, false };
  }
  return {};
}

} // namespace detail

/*! \brief Emits one block after checking arity, signs, and weights.
 *
 * Pairs come first in `inputs`, then plain bits in identity order.  Blocks
 * without pair inputs may also be used with every sign negated; the output
 * signs are negated accordingly.
 */
inline BlockResult emit_block( NetlistBuilder& b, BlockKind kind, std::span<BlockInput const> inputs )
{
  auto const sig = detail::block_signature( kind );
  auto const name = std::string( to_string( kind ) );
  if ( inputs.size() != sig.pairs + sig.bit_signs.size() )
    throw construction_error( name + ": wrong number of inputs" );

  std::vector<EncodedPair> pairs;
  std::vector<SignedBit> bits;
  for ( std::size_t i = 0; i < inputs.size(); ++i )
  {
    bool const want_pair = i < sig.pairs;
    if ( want_pair != std::holds_alternative<EncodedPair>( inputs[i] ) )
      throw construction_error( name + ": input " + std::to_string( i ) + " has the wrong encoding" );
    if ( want_pair )
      pairs.push_back( std::get<EncodedPair>( inputs[i] ) );
    else
      bits.push_back( std::get<SignedBit>( inputs[i] ) );
  }

  auto const weight = pairs.empty() ? bits.front().weight : pairs.front().weight;
  for ( auto const& p : pairs )
  {
    if ( p.weight != weight )
      throw construction_error( name + ": mixed weights" );
    if ( p.sign_y != sig.pair_sign_y )
      throw construction_error( name + ": wrong pair sign" );
  }
  for ( auto const& x : bits )
  {
    if ( x.weight != weight )
      throw construction_error( name + ": mixed weights" );
  }

  int orientation = +1;
  if ( !bits.empty() && bits.front().sign != sig.bit_signs.front() )
    orientation = -1;
  if ( orientation < 0 && !sig.flippable )
    throw construction_error( name + ": wrong signs" );
  for ( std::size_t i = 0; i < bits.size(); ++i )
  {
    if ( bits[i].sign != orientation * sig.bit_signs[i] )
      throw construction_error( name + ": wrong signs" );
  }

  auto const plain = [&]( CarrySum c ) {
    BlockResult r;
    r.bits.push_back( { c.v, orientation * sig.v_sign, weight } );
    r.bits.push_back( { c.u, orientation * sig.u_sign, weight + 1 } );
    return r;
  };
  auto const encoded = [&]( PairCarrySum c ) {
    BlockResult r;
    r.bits.push_back( { c.v, sig.v_sign, weight } );
    r.pair = EncodedPair{ c.u1, c.u1_xor_u2, sig.pair_sign_y, weight + 1 };
    return r;
  };

  switch ( kind )
  {
  case BlockKind::HA: return plain( emit_ha( b, bits[0].wire, bits[1].wire ) );
  case BlockKind::HA_PM: return plain( emit_ha_pm( b, bits[0].wire, bits[1].wire ) );
  case BlockKind::NHA: return plain( emit_nha( b, bits[0].wire, bits[1].wire ) );
  case BlockKind::FA3: return plain( emit_fa3( b, bits[0].wire, bits[1].wire, bits[2].wire ) );
  case BlockKind::FA3_M: return plain( emit_fa3_minus( b, bits[0].wire, bits[1].wire, bits[2].wire ) );
  case BlockKind::FA3_0: return plain( emit_fa3_zero( b, bits[0].wire, bits[1].wire, bits[2].wire ) );
  case BlockKind::SHARED3A:
  case BlockKind::SHARED3B:
  {
    auto const variant = kind == BlockKind::SHARED3A ? SharedVariant::A : SharedVariant::B;
    auto const r = emit_fa3_minus_shared( b, variant, bits[0].wire, bits[1].wire, bits[2].wire );
    return plain( { r.u, r.v } );
  }
  case BlockKind::SFA3: return plain( emit_sfa3( b, pairs[0].x, pairs[0].x_xor_y, bits[0].wire ) );
  case BlockKind::SFA3_M: return plain( emit_sfa3_minus( b, pairs[0].x, pairs[0].x_xor_y, bits[0].wire ) );
  case BlockKind::MDFA:
    return encoded( emit_mdfa( b, pairs[0].x, pairs[0].x_xor_y, pairs[1].x, pairs[1].x_xor_y, bits[0].wire ) );
  case BlockKind::MDFA_M:
    return encoded( emit_mdfa_minus( b, pairs[0].x, pairs[0].x_xor_y, pairs[1].x, pairs[1].x_xor_y, bits[0].wire ) );
  }
  throw construction_error( name + ": unknown block kind" );
}

/* ---------------------------------------------------------------------------
 * Exhaustive block self-check
 * ------------------------------------------------------------------------- */

struct SuiteResult
{
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  std::size_t cost = 0;
  std::size_t expected_cost = 0;
  std::string message;
};

namespace detail
{

/*! Builds `kind` on fresh inputs, evaluates it on every assignment of the
 * underlying free bits, and compares the two sides of its identity.
 * `fault` appends one redundant gate, for fault-injection tests. */
inline SuiteResult check_one_block( BlockKind kind, bool fault )
{
  SuiteResult res;
  res.name = std::string( to_string( kind ) );
  res.expected_cost = block_cost( kind );

  auto const sig = block_signature( kind );
  auto const free_bits = 2 * sig.pairs + sig.bit_signs.size();

  NetlistBuilder b;
  std::vector<BlockInput> inputs;
  for ( std::size_t i = 0; i < sig.pairs; ++i )
  {
    auto const x = b.add_input( "x" + std::to_string( i ) );
    auto const p = b.add_input( "p" + std::to_string( i ) );
    inputs.emplace_back( EncodedPair{ x, p, sig.pair_sign_y, 0 } );
  }
  for ( std::size_t i = 0; i < sig.bit_signs.size(); ++i )
    inputs.emplace_back( SignedBit{ b.add_input( "z" + std::to_string( i ) ), sig.bit_signs[i], 0 } );

  auto const out = emit_block( b, kind, inputs );
  if ( fault )
    b.add_gate( GateKind::XOR, WireRef{ 0 }, WireRef{ 1 } );
  res.cost = b.num_gates();

  // Outputs: sum bit, then carry bit or pair.
  b.add_output( out.bits[0].wire );
  if ( out.pair )
  {
    b.add_output( out.pair->x );
    b.add_output( out.pair->x_xor_y );
  }
  else
  {
    b.add_output( out.bits[1].wire );
  }
  auto const ntk = std::move( b ).build();

  for ( std::uint32_t a = 0; a < ( 1u << free_bits ); ++a )
  {
    auto const bit = [&]( std::size_t i ) { return static_cast<int>( ( a >> i ) & 1u ); };
    std::vector<bool> assignment;
    int lhs = 0;
    std::size_t k = 0;
    for ( std::size_t i = 0; i < sig.pairs; ++i )
    {
      auto const x = bit( k++ );
      auto const y = bit( k++ );
      assignment.push_back( x != 0 );
      assignment.push_back( ( x ^ y ) != 0 );
      lhs += x + sig.pair_sign_y * y;
    }
    for ( auto s : sig.bit_signs )
    {
      auto const z = bit( k++ );
      assignment.push_back( z != 0 );
      lhs += s * z;
    }

    if ( kind == BlockKind::FA3_0 && lhs < 0 )
      continue;
    ++res.cases;

    auto const o = evaluate( ntk, assignment );
    int rhs = sig.v_sign * static_cast<int>( o[0] );
    if ( out.pair )
    {
      auto const u1 = static_cast<int>( o[1] );
      auto const u2 = u1 ^ static_cast<int>( o[2] );
      rhs += 2 * ( u1 + sig.pair_sign_y * u2 );
    }
    else
    {
      rhs += 2 * sig.u_sign * static_cast<int>( o[1] );
    }
    if ( lhs != rhs && res.passed )
    {
      res.passed = false;
      res.message = res.name + " identity fails on assignment " + std::to_string( a );
    }
  }

  if ( res.cost != res.expected_cost )
  {
    if ( res.passed )
      res.message = res.name + " cost " + std::to_string( res.cost ) + " != " + std::to_string( res.expected_cost );
    else
      res.message += "; cost " + std::to_string( res.cost ) + " != " + std::to_string( res.expected_cost );
    res.passed = false;
  }
  return res;
}

} // namespace detail

/// Runs the exhaustive identity and cost check for every block kind.
inline std::vector<SuiteResult> check_block_identities( std::optional<BlockKind> fault = std::nullopt )
{
  std::vector<SuiteResult> results;
  for ( auto kind : all_block_kinds )
    results.push_back( detail::check_one_block( kind, fault == kind ) );
  return results;
}

} // namespace mulsynth
