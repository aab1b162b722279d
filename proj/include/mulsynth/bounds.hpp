/*!
  \file bounds.hpp
  \brief Exact gate-count bounds: school formula, Karatsuba recurrences, closed form

  Everything here is exact integer or rational arithmetic; values grow like
  3^k and the closed form has fractional coefficients that must cancel.
*/

#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "karatsuba.hpp"
#include "school.hpp"

namespace mulsynth
{

using bigint = boost::multiprecision::cpp_int;
using bigrat = boost::multiprecision::cpp_rational;

/// Fibonacci numbers with fib(1) = fib(2) = 1.
inline bigint fib( std::size_t k )
{
  if ( k < 1 )
    throw std::domain_error( "fib: k must be at least 1" );
  bigint prev = 0, cur = 1;
  for ( std::size_t i = 1; i < k; ++i )
  {
    bigint next = prev + cur;
    prev = std::move( cur );
    cur = std::move( next );
  }
  return cur;
}

inline bigint pow_int( unsigned base, std::size_t e )
{
  return boost::multiprecision::pow( bigint( base ), static_cast<unsigned>( e ) );
}

namespace detail
{

inline bigint require_integer( bigrat const& r, std::string const& what )
{
  if ( boost::multiprecision::denominator( r ) != 1 )
    throw invariant_violation( what + " is not an integer: " + r.str() );
  return boost::multiprecision::numerator( r );
}

} // namespace detail

/*! \brief Closed-form Karatsuba cost at m = 2^k, k >= 4:
 *
 *   (10208/405) 3^k - 38 2^k - (81/5) fib(k+2) - (37/5) fib(k+1) + 20
 */
inline bigint closed_form_K( std::size_t k )
{
  if ( k < 4 )
    throw std::domain_error( "closed_form_K: k must be at least 4" );
  bigrat v = bigrat( 10208, 405 ) * bigrat( pow_int( 3, k ) );
  v -= bigrat( 38 ) * bigrat( pow_int( 2, k ) );
  v -= bigrat( 81, 5 ) * bigrat( fib( k + 2 ) );
  v -= bigrat( 37, 5 ) * bigrat( fib( k + 1 ) );
  v += 20;
  return detail::require_integer( v, "closed_form_K(" + std::to_string( k ) + ")" );
}

/// (K(2^k + 2), K(2^k + 1), K(2^k)).
using StateVector = std::array<bigint, 3>;

/// Offset b_k of the state recursion.
inline StateVector recursion_offset( std::size_t k )
{
  bigint const t = 38 * pow_int( 2, k );
  return { t + 36, t + 22, t - 2 };
}

/// A * X with A = [[1,2,0],[1,1,1],[0,1,2]].
inline StateVector apply_recursion_matrix( StateVector const& x )
{
  return { x[0] + 2 * x[1], x[0] + x[1] + x[2], x[1] + 2 * x[2] };
}

/// X_{k+1} = A X_k + b_k.
inline StateVector matrix_step( StateVector const& x, std::size_t k )
{
  if ( k < 4 )
    throw std::domain_error( "matrix_step: k must be at least 4" );
  auto y = apply_recursion_matrix( x );
  auto const b = recursion_offset( k );
  for ( std::size_t i = 0; i < 3; ++i )
    y[i] += b[i];
  return y;
}

/// X_4 = (L(18), L(17), L(16)).
inline StateVector initial_state()
{
  return { 1598, 1479, 1287 };
}

/// X_k propagated from X_4.
inline StateVector propagate_state( std::size_t k )
{
  if ( k < 4 )
    throw std::domain_error( "propagate_state: k must be at least 4" );
  auto x = initial_state();
  for ( std::size_t j = 4; j < k; ++j )
    x = matrix_step( x, j );
  return x;
}

struct BoundsRow
{
  std::size_t m;
  bigint value;
  Method method;
  bigint school;                  ///< standard-method count (1 for m = 1)
  std::optional<bigint> karatsuba; ///< recurrence value, m >= 10
};

/*! \brief L(1..max_m): the cheaper of the standard method and one Karatsuba
 * level over smaller table entries.  Ties go to the standard method.
 */
inline std::vector<BoundsRow> recurrence_L_table( std::size_t max_m )
{
  if ( max_m < 1 )
    throw std::domain_error( "recurrence_L_table: max_m must be at least 1" );
  std::vector<BoundsRow> rows;
  rows.reserve( max_m );
  auto const L = [&]( std::size_t m ) -> bigint const& { return rows[m - 1].value; };
  for ( std::size_t m = 1; m <= max_m; ++m )
  {
    BoundsRow row{ m, 0, Method::school, m == 1 ? bigint( 1 ) : bigint( predict_school_count( m ) ), std::nullopt };
    if ( m >= karatsuba_min_width )
    {
      auto const n = ( m + 1 ) / 2;
      if ( m % 2 == 0 )
        row.karatsuba = L( n + 1 ) + 2 * L( n ) + 38 * n - 2;
      else
        row.karatsuba = L( n + 1 ) + L( n ) + L( n - 1 ) + 38 * n - 16;
    }
    if ( row.karatsuba && *row.karatsuba < row.school )
    {
      row.value = *row.karatsuba;
      row.method = Method::karatsuba;
    }
    else
    {
      row.value = row.school;
    }
    rows.push_back( std::move( row ) );
  }
  return rows;
}

/// L(m) computed only at the widths it depends on; agrees with recurrence_L_table.
inline bigint recurrence_L_value( std::size_t m, std::map<std::size_t, bigint>& memo )
{
  if ( m < 1 )
    throw std::domain_error( "recurrence_L_value: m must be at least 1" );
  if ( auto it = memo.find( m ); it != memo.end() )
    return it->second;
  bigint value = m == 1 ? bigint( 1 ) : bigint( predict_school_count( m ) );
  if ( m >= karatsuba_min_width )
  {
    auto const n = ( m + 1 ) / 2;
    bigint const k = m % 2 == 0 ? recurrence_L_value( n + 1, memo ) + 2 * recurrence_L_value( n, memo ) + 38 * n - 2
                                : recurrence_L_value( n + 1, memo ) + recurrence_L_value( n, memo ) +
                                      recurrence_L_value( n - 1, memo ) + 38 * n - 16;
    if ( k < value )
      value = k;
  }
  memo.emplace( m, value );
  return value;
}

inline bigint recurrence_L_value( std::size_t m )
{
  std::map<std::size_t, bigint> memo;
  return recurrence_L_value( m, memo );
}

/// Earlier bound for the standard method: 6n^2 - 8n.
inline bigint legacy_school_bound( std::size_t n )
{
  if ( n < 2 )
    throw std::domain_error( "legacy_school_bound: n must be at least 2" );
  return bigint( 6 ) * n * n - bigint( 8 ) * n;
}

/// Earlier Karatsuba bound at m = 2^k: (236/9) 3^k - 49 2^k + 4, an integer for k >= 2.
inline bigint legacy_karatsuba_bound( std::size_t k )
{
  if ( k < 2 )
    throw std::domain_error( "legacy_karatsuba_bound: k must be at least 2" );
  bigrat v = bigrat( 236, 9 ) * bigrat( pow_int( 3, k ) );
  v -= bigrat( 49 ) * bigrat( pow_int( 2, k ) );
  v += 4;
  return detail::require_integer( v, "legacy_karatsuba_bound(" + std::to_string( k ) + ")" );
}

} // namespace mulsynth
