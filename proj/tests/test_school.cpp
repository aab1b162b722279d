#include <gtest/gtest.h>

#include <mulsynth/school.hpp>
#include <mulsynth/verify.hpp>

using namespace mulsynth;

TEST( School, PredictedCounts )
{
  EXPECT_EQ( predict_school_count( 2 ), 8u );
  EXPECT_EQ( predict_school_count( 3 ), 30u );
  EXPECT_EQ( predict_school_count( 10 ), 484u );
  EXPECT_EQ( predict_school_count( 17 ), 1479u );
  EXPECT_THROW( predict_school_count( 1 ), std::domain_error );
}

TEST( School, ExpectedCensusClosedForms )
{
  auto const c4 = expected_school_census( 4 );
  EXPECT_EQ( c4[BlockKind::HA], 4u );
  EXPECT_EQ( c4[BlockKind::FA3], 1u );
  EXPECT_EQ( c4[BlockKind::SFA3], 1u );
  EXPECT_EQ( c4[BlockKind::MDFA], 3u );
  EXPECT_EQ( c4.conversion_xors, 4u );

  auto const c5 = expected_school_census( 5 );
  EXPECT_EQ( c5[BlockKind::HA], 5u );
  EXPECT_EQ( c5[BlockKind::FA3], 4u );
  EXPECT_EQ( c5[BlockKind::MDFA], 5u );
  EXPECT_EQ( c5.conversion_xors, 6u );

  auto const c6 = expected_school_census( 6 );
  EXPECT_EQ( c6[BlockKind::HA], 6u );
  EXPECT_EQ( c6[BlockKind::FA3], 3u );
  EXPECT_EQ( c6[BlockKind::MDFA], 10u );
  EXPECT_EQ( c6.conversion_xors, 11u );
  EXPECT_EQ( c6.predicted_gates(), 158u );

  EXPECT_THROW( expected_school_census( 3 ), std::domain_error );
}

TEST( School, BuildN4 )
{
  auto const sb = build_school( 4 );
  EXPECT_EQ( count_gates( sb.netlist ), 61u );
  EXPECT_EQ( sb.census.and_gates, 16u );
  EXPECT_EQ( sb.census, expected_school_census( 4 ) );
}

TEST( School, BuildN5 )
{
  auto const sb = build_school( 5 );
  EXPECT_EQ( count_gates( sb.netlist ), 105u );
  EXPECT_EQ( sb.census, expected_school_census( 5 ) );
}

TEST( School, SingleBit )
{
  auto const sb = build_school( 1 );
  EXPECT_EQ( count_gates( sb.netlist ), 1u );
  ASSERT_EQ( sb.netlist.outputs().size(), 1u );
  EXPECT_EQ( sb.netlist.gates()[0].kind, GateKind::AND );
  EXPECT_EQ( sb.netlist.wire_name( sb.netlist.outputs()[0].wire ), "p0" );
}

TEST( School, SmallWidthsMatchTable )
{
  EXPECT_EQ( count_gates( build_school( 2 ).netlist ), 8u );
  EXPECT_EQ( count_gates( build_school( 3 ).netlist ), 30u );
}

TEST( School, CountAndCensusUpTo64 )
{
  for ( std::size_t n = 2; n <= 64; ++n )
  {
    auto const sb = build_school( n );
    EXPECT_EQ( count_gates( sb.netlist ), predict_school_count( n ) ) << n;
    EXPECT_EQ( sb.census.predicted_gates(), count_gates( sb.netlist ) ) << n;
    if ( n >= 4 )
    {
      EXPECT_EQ( sb.census, expected_school_census( n ) ) << n;
    }
  }
}

TEST( School, ColumnProfiles )
{
  for ( std::size_t n = 4; n <= 40; ++n )
  {
    auto const sb = build_school( n );
    ASSERT_EQ( sb.profile.size(), 2 * n );
    for ( std::size_t k = 2; k <= n; ++k )
      EXPECT_EQ( sb.profile[k - 1], 2 * k - 2 );
    EXPECT_EQ( sb.profile[n], 2 * n - 2 );
    for ( std::size_t k = 0; k <= n - 2; ++k )
      EXPECT_EQ( sb.profile[2 * n - k - 1], 2 * k + 1 );
  }
}

TEST( School, OnlyBasisGatesAndValid )
{
  auto const sb = build_school( 9 );
  EXPECT_TRUE( validate( sb.netlist ).ok() );
}

TEST( School, ExhaustiveUpToEight )
{
  for ( std::size_t n = 1; n <= 8; ++n )
  {
    auto const v = exhaustive_equivalence( build_school( n ).netlist, n );
    EXPECT_TRUE( v.passed ) << n;
    EXPECT_EQ( v.cases, std::uint64_t{ 1 } << ( 2 * n ) );
  }
}

TEST( School, RandomLargeWidths )
{
  for ( std::size_t n : { 16, 24, 32, 53, 64 } )
    EXPECT_TRUE( random_equivalence( build_school( n ).netlist, n, 100000, 3 ).passed ) << n;
}

TEST( School, EmitRejectsMismatchedOperands )
{
  NetlistBuilder b;
  auto const [x, y] = declare_operands( b, 3 );
  EXPECT_THROW( emit_school( b, x, std::span( y ).first( 2 ) ), construction_error );
}
