/*!
  \file netlist.hpp
  \brief Gate-level netlist over the ten non-degenerate 2-input Boolean functions

  A netlist is a DAG of 2-input gates stored in creation order.  Wires are
  dense indices: primary inputs first, then one wire per gate.  Every gate
  has unit cost, so the gate count of a netlist is its complexity.
*/

#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace mulsynth
{

/// Thrown when a builder is asked to do something structurally invalid.
class construction_error : public std::logic_error
{
public:
  using std::logic_error::logic_error;
};

/// Thrown when a generator's ledger or census disagrees with the closed forms.
class invariant_violation : public std::logic_error
{
public:
  using std::logic_error::logic_error;
};

/// Syntax error in MULNET text; carries the 1-based line number.
class parse_error : public std::runtime_error
{
public:
  parse_error( std::size_t line, std::string const& what )
      : std::runtime_error( "line " + std::to_string( line ) + ": " + what ), line_( line )
  {
  }

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/*! \brief The 2-input functions that depend on both arguments.
 *
 * The suffix of the ANDN/ORN kinds names the inverted operand:
 * ANDN1 = !a & b, ANDN2 = a & !b, ORN1 = !a | b, ORN2 = a | !b.
 */
enum class GateKind : std::uint8_t
{
  AND,
  OR,
  XOR,
  NAND,
  NOR,
  XNOR,
  ANDN1,
  ANDN2,
  ORN1,
  ORN2
};

inline constexpr std::array<GateKind, 10> all_gate_kinds = {
    GateKind::AND, GateKind::OR, GateKind::XOR, GateKind::NAND, GateKind::NOR,
    GateKind::XNOR, GateKind::ANDN1, GateKind::ANDN2, GateKind::ORN1, GateKind::ORN2 };

inline constexpr std::string_view to_string( GateKind kind )
{
  constexpr std::array<std::string_view, 10> names = {
      "AND", "OR", "XOR", "NAND", "NOR", "XNOR", "ANDN1", "ANDN2", "ORN1", "ORN2" };
  return names[static_cast<std::size_t>( kind )];
}

inline std::optional<GateKind> gate_kind_from_string( std::string_view token )
{
  for ( auto kind : all_gate_kinds )
  {
    if ( to_string( kind ) == token )
      return kind;
  }
  return std::nullopt;
}

/// Applies a gate kind bitwise; used for both scalar and 64-lane evaluation.
inline constexpr std::uint64_t apply_gate( GateKind kind, std::uint64_t a, std::uint64_t b ) noexcept
{
  switch ( kind )
  {
  case GateKind::AND: return a & b;
  case GateKind::OR: return a | b;
  case GateKind::XOR: return a ^ b;
  case GateKind::NAND: return ~( a & b );
  case GateKind::NOR: return ~( a | b );
  case GateKind::XNOR: return ~( a ^ b );
  case GateKind::ANDN1: return ~a & b;
  case GateKind::ANDN2: return a & ~b;
  case GateKind::ORN1: return ~a | b;
  case GateKind::ORN2: return a | ~b;
  }
  return 0;
}

struct WireRef
{
  std::uint32_t id{};

  friend constexpr auto operator<=>( WireRef, WireRef ) = default;
};

struct Gate
{
  std::string name;
  GateKind kind;
  WireRef a;
  WireRef b;

  friend bool operator==( Gate const&, Gate const& ) = default;
};

struct Output
{
  WireRef wire;

  friend bool operator==( Output const&, Output const& ) = default;
};

/// Per-kind gate counts, indexed by GateKind.
using KindHistogram = std::array<std::size_t, all_gate_kinds.size()>;

/*! \brief Finished, immutable netlist.
 *
 * Only NetlistBuilder (and the text importer, through it) can create one, so
 * every Netlist is topologically ordered with unique names.
 */
class Netlist
{
public:
  Netlist() = default;

  std::span<std::string const> inputs() const noexcept { return inputs_; }
  std::span<Gate const> gates() const noexcept { return gates_; }
  std::span<Output const> outputs() const noexcept { return outputs_; }

  std::size_t num_inputs() const noexcept { return inputs_.size(); }
  std::size_t num_wires() const noexcept { return inputs_.size() + gates_.size(); }

  std::string const& wire_name( WireRef w ) const
  {
    return w.id < inputs_.size() ? inputs_[w.id] : gates_[w.id - inputs_.size()].name;
  }

  friend bool operator==( Netlist const&, Netlist const& ) = default;

private:
  friend class NetlistBuilder;

  std::vector<std::string> inputs_;
  std::vector<Gate> gates_;
  std::vector<Output> outputs_;
};

inline std::size_t count_gates( Netlist const& ntk ) noexcept
{
  return ntk.gates().size();
}

inline KindHistogram gate_histogram( Netlist const& ntk )
{
  KindHistogram hist{};
  for ( auto const& g : ntk.gates() )
    ++hist[static_cast<std::size_t>( g.kind )];
  return hist;
}

inline bool is_identifier( std::string_view s )
{
  if ( s.empty() )
    return false;
  auto const alpha = []( char c ) { return ( c >= 'A' && c <= 'Z' ) || ( c >= 'a' && c <= 'z' ) || c == '_'; };
  auto const digit = []( char c ) { return c >= '0' && c <= '9'; };
  if ( !alpha( s.front() ) )
    return false;
  return std::all_of( s.begin() + 1, s.end(), [&]( char c ) { return alpha( c ) || digit( c ); } );
}

/*! \brief Single-owner builder.
 *
 * Inputs must all be declared before the first gate.  Gates without an
 * explicit name are called g0, g1, ... in creation order.
 */
class NetlistBuilder
{
public:
  WireRef add_input( std::string name )
  {
    if ( !ntk_.gates_.empty() )
      throw construction_error( "input '" + name + "' declared after the first gate" );
    claim_name( name );
    ntk_.inputs_.push_back( std::move( name ) );
    return WireRef{ static_cast<std::uint32_t>( ntk_.inputs_.size() - 1 ) };
  }

  WireRef add_gate( GateKind kind, WireRef a, WireRef b )
  {
    return add_gate( kind, a, b, "g" + std::to_string( ntk_.gates_.size() ) );
  }

  WireRef add_gate( GateKind kind, WireRef a, WireRef b, std::string name )
  {
    check_defined( a );
    check_defined( b );
    claim_name( name );
    ntk_.gates_.push_back( Gate{ std::move( name ), kind, a, b } );
    return WireRef{ static_cast<std::uint32_t>( ntk_.num_wires() - 1 ) };
  }

  /*! \brief Declares `w` as the next primary output.
   *
   * Outputs are identified by the name of the wire they expose.  Passing a
   * name renames the driving gate; inputs cannot be renamed.
   */
  void add_output( WireRef w, std::optional<std::string> name = std::nullopt )
  {
    check_defined( w );
    for ( auto const& o : ntk_.outputs_ )
    {
      if ( o.wire == w )
        throw construction_error( "wire '" + ntk_.wire_name( w ) + "' is already an output" );
    }
    if ( name && *name != ntk_.wire_name( w ) )
    {
      if ( w.id < ntk_.num_inputs() )
        throw construction_error( "cannot rename input '" + ntk_.inputs_[w.id] + "' to '" + *name + "'" );
      claim_name( *name );
      auto& gate = ntk_.gates_[w.id - ntk_.num_inputs()];
      names_.erase( gate.name );
      gate.name = std::move( *name );
    }
    ntk_.outputs_.push_back( Output{ w } );
  }

  std::size_t num_gates() const noexcept { return ntk_.gates_.size(); }
  std::size_t num_wires() const noexcept { return ntk_.num_wires(); }
  Netlist const& peek() const noexcept { return ntk_; }

  /// Retypes an existing gate.  Only used for mutation and fault-injection tests.
  void set_gate_kind( std::size_t gate_index, GateKind kind ) { ntk_.gates_.at( gate_index ).kind = kind; }

  Netlist build() && { return std::move( ntk_ ); }

private:
  void check_defined( WireRef w ) const
  {
    if ( w.id >= ntk_.num_wires() )
      throw construction_error( "wire " + std::to_string( w.id ) + " is not defined yet" );
  }

  void claim_name( std::string const& name )
  {
    if ( !is_identifier( name ) )
      throw construction_error( "invalid wire name '" + name + "'" );
    if ( !names_.insert( name ).second )
      throw construction_error( "duplicate wire name '" + name + "'" );
  }

  Netlist ntk_;
  std::unordered_set<std::string> names_;
};

/*! \brief Evaluates 64 assignments at once.
 *
 * `inputs[i]` holds bit lane j of input i for assignment j.  Returns one word
 * per output, in output order.
 */
inline std::vector<std::uint64_t> evaluate_words( Netlist const& ntk, std::span<std::uint64_t const> inputs )
{
  if ( inputs.size() != ntk.num_inputs() )
    throw std::invalid_argument( "assignment has " + std::to_string( inputs.size() ) + " inputs, netlist expects " +
                                 std::to_string( ntk.num_inputs() ) );
  std::vector<std::uint64_t> values( ntk.num_wires() );
  std::copy( inputs.begin(), inputs.end(), values.begin() );
  auto idx = ntk.num_inputs();
  for ( auto const& g : ntk.gates() )
    values[idx++] = apply_gate( g.kind, values[g.a.id], values[g.b.id] );

  std::vector<std::uint64_t> out;
  out.reserve( ntk.outputs().size() );
  for ( auto const& o : ntk.outputs() )
    out.push_back( values[o.wire.id] );
  return out;
}

inline std::vector<bool> evaluate( Netlist const& ntk, std::vector<bool> const& assignment )
{
  std::vector<std::uint64_t> words( assignment.size() );
  for ( std::size_t i = 0; i < assignment.size(); ++i )
    words[i] = assignment[i] ? 1u : 0u;
  auto const res = evaluate_words( ntk, words );
  std::vector<bool> bits( res.size() );
  for ( std::size_t i = 0; i < res.size(); ++i )
    bits[i] = ( res[i] & 1u ) != 0;
  return bits;
}

/* ---------------------------------------------------------------------------
 * MULNET v1 text format
 * ------------------------------------------------------------------------- */

/// Netlist as read from text, before any semantic checks.
struct RawNetlist
{
  struct RawGate
  {
    std::string name;
    std::string kind;
    std::string a;
    std::string b;
    std::size_t line;
  };

  std::vector<std::string> inputs;
  std::vector<RawGate> gates;
  std::vector<std::string> outputs;
};

struct ValidationReport
{
  std::vector<std::string> violations;
  KindHistogram histogram{};

  bool ok() const noexcept { return violations.empty(); }
};

/// A netlist that came out of the builder is valid by construction; this only reports the histogram.
inline ValidationReport validate( Netlist const& ntk )
{
  ValidationReport rep;
  rep.histogram = gate_histogram( ntk );
  std::unordered_set<std::string> names;
  for ( std::size_t w = 0; w < ntk.num_wires(); ++w )
  {
    if ( !names.insert( ntk.wire_name( WireRef{ static_cast<std::uint32_t>( w ) } ) ).second )
      rep.violations.push_back( "duplicate name '" + ntk.wire_name( WireRef{ static_cast<std::uint32_t>( w ) } ) + "'" );
  }
  std::size_t idx = ntk.num_inputs();
  for ( auto const& g : ntk.gates() )
  {
    if ( g.a.id >= idx || g.b.id >= idx )
      rep.violations.push_back( "gate '" + g.name + "': source out of order" );
    ++idx;
  }
  for ( auto const& o : ntk.outputs() )
  {
    if ( o.wire.id >= ntk.num_wires() )
      rep.violations.push_back( "output wire " + std::to_string( o.wire.id ) + " is undefined" );
  }
  return rep;
}

inline ValidationReport validate( RawNetlist const& raw )
{
  ValidationReport rep;
  std::unordered_map<std::string, std::size_t> defined;
  auto const define = [&]( std::string const& name, std::string const& where ) {
    if ( !is_identifier( name ) )
      rep.violations.push_back( where + ": invalid name '" + name + "'" );
    if ( !defined.emplace( name, defined.size() ).second )
      rep.violations.push_back( where + ": duplicate name '" + name + "'" );
  };

  for ( auto const& in : raw.inputs )
    define( in, "input" );

  // Names of all gates, so that forward references can be told apart from undefined ones.
  std::unordered_set<std::string> gate_names;
  for ( auto const& g : raw.gates )
    gate_names.insert( g.name );

  for ( auto const& g : raw.gates )
  {
    auto const where = "line " + std::to_string( g.line ) + " gate '" + g.name + "'";
    auto const kind = gate_kind_from_string( g.kind );
    if ( !kind )
      rep.violations.push_back( where + ": unknown gate kind '" + g.kind + "'" );
    else
      ++rep.histogram[static_cast<std::size_t>( *kind )];
    for ( auto const* src : { &g.a, &g.b } )
    {
      if ( defined.count( *src ) )
        continue;
      if ( gate_names.count( *src ) )
        rep.violations.push_back( where + ": source out of order '" + *src + "'" );
      else
        rep.violations.push_back( where + ": undefined source '" + *src + "'" );
    }
    define( g.name, where );
  }

  std::unordered_set<std::string> out_names;
  for ( auto const& o : raw.outputs )
  {
    if ( !defined.count( o ) )
      rep.violations.push_back( "output '" + o + "' is undefined" );
    if ( !out_names.insert( o ).second )
      rep.violations.push_back( "duplicate output '" + o + "'" );
  }
  return rep;
}

inline std::string export_text( Netlist const& ntk )
{
  std::string s = "MULNET v1\n";
  if ( ntk.num_inputs() > 0 )
  {
    s += "inputs";
    for ( auto const& in : ntk.inputs() )
      s += " " + in;
    s += "\n";
  }
  for ( auto const& g : ntk.gates() )
  {
    s += "gate " + g.name + " ";
    s += to_string( g.kind );
    s += " " + ntk.wire_name( g.a ) + " " + ntk.wire_name( g.b ) + "\n";
  }
  if ( !ntk.outputs().empty() )
  {
    s += "outputs";
    for ( auto const& o : ntk.outputs() )
      s += " " + ntk.wire_name( o.wire );
    s += "\n";
  }
  return s;
}

namespace detail
{

inline std::vector<std::string_view> split_tokens( std::string_view line )
{
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while ( i < line.size() )
  {
    while ( i < line.size() && ( line[i] == ' ' || line[i] == '\t' ) )
      ++i;
    auto const start = i;
    while ( i < line.size() && line[i] != ' ' && line[i] != '\t' )
      ++i;
    if ( i > start )
      tokens.push_back( line.substr( start, i - start ) );
  }
  return tokens;
}

} // namespace detail

/// Parses MULNET v1 text without semantic checks.
inline RawNetlist parse_text( std::string_view text )
{
  RawNetlist raw;
  if ( text.empty() || text.back() != '\n' )
    throw parse_error( std::max<std::size_t>( 1, static_cast<std::size_t>( std::count( text.begin(), text.end(), '\n' ) ) + 1 ),
                       "missing final newline" );

  std::size_t line_no = 0;
  bool header_seen = false;
  std::size_t pos = 0;
  while ( pos < text.size() )
  {
    auto const eol = text.find( '\n', pos );
    auto line = text.substr( pos, eol - pos );
    pos = eol + 1;
    ++line_no;

    if ( auto const hash = line.find( '#' ); hash != std::string_view::npos )
      line = line.substr( 0, hash );
    if ( line.find( '\r' ) != std::string_view::npos )
      throw parse_error( line_no, "carriage return not allowed" );
    auto const tok = detail::split_tokens( line );
    if ( tok.empty() )
      continue;

    if ( !header_seen )
    {
      if ( tok.size() != 2 || tok[0] != "MULNET" || tok[1] != "v1" )
        throw parse_error( line_no, "expected header 'MULNET v1'" );
      header_seen = true;
      continue;
    }

    auto const check_names = [&]( auto first, auto last ) {
      for ( auto it = first; it != last; ++it )
        if ( !is_identifier( *it ) )
          throw parse_error( line_no, "invalid name '" + std::string( *it ) + "'" );
    };

    if ( tok[0] == "inputs" )
    {
      if ( tok.size() < 2 )
        throw parse_error( line_no, "'inputs' needs at least one name" );
      if ( !raw.gates.empty() || !raw.outputs.empty() )
        throw parse_error( line_no, "'inputs' after gates or outputs" );
      check_names( tok.begin() + 1, tok.end() );
      for ( auto it = tok.begin() + 1; it != tok.end(); ++it )
        raw.inputs.emplace_back( *it );
    }
    else if ( tok[0] == "gate" )
    {
      if ( tok.size() != 5 )
        throw parse_error( line_no, "gate line needs exactly: gate <name> <KIND> <src> <src>" );
      if ( !raw.outputs.empty() )
        throw parse_error( line_no, "gate after outputs" );
      check_names( tok.begin() + 1, tok.end() );
      raw.gates.push_back( { std::string( tok[1] ), std::string( tok[2] ), std::string( tok[3] ), std::string( tok[4] ), line_no } );
    }
    else if ( tok[0] == "outputs" )
    {
      if ( tok.size() < 2 )
        throw parse_error( line_no, "'outputs' needs at least one name" );
      check_names( tok.begin() + 1, tok.end() );
      for ( auto it = tok.begin() + 1; it != tok.end(); ++it )
        raw.outputs.emplace_back( *it );
    }
    else
    {
      throw parse_error( line_no, "unknown directive '" + std::string( tok[0] ) + "'" );
    }
  }
  if ( !header_seen )
    throw parse_error( line_no == 0 ? 1 : line_no, "expected header 'MULNET v1'" );
  return raw;
}

/// Thrown by import_text when the text parses but fails validation.
class validation_error : public std::runtime_error
{
public:
  explicit validation_error( std::vector<std::string> violations )
      : std::runtime_error( join( violations ) ), violations_( std::move( violations ) )
  {
  }

  std::vector<std::string> const& violations() const noexcept { return violations_; }

private:
  static std::string join( std::vector<std::string> const& v )
  {
    std::string s;
    for ( auto const& x : v )
      s += ( s.empty() ? "" : "; " ) + x;
    return s;
  }

  std::vector<std::string> violations_;
};

inline Netlist import_text( std::string_view text )
{
  auto const raw = parse_text( text );
  auto rep = validate( raw );
  if ( !rep.ok() )
    throw validation_error( std::move( rep.violations ) );

  NetlistBuilder b;
  std::unordered_map<std::string, WireRef> wires;
  for ( auto const& in : raw.inputs )
    wires.emplace( in, b.add_input( in ) );
  for ( auto const& g : raw.gates )
    wires.emplace( g.name, b.add_gate( *gate_kind_from_string( g.kind ), wires.at( g.a ), wires.at( g.b ), g.name ) );
  for ( auto const& o : raw.outputs )
    b.add_output( wires.at( o ) );
  return std::move( b ).build();
}

} // namespace mulsynth
