#include <gtest/gtest.h>

#include <cstdio>
#include <random>

#include "entanglia/io.hpp"
#include "oracles.hpp"

using namespace entanglia;

TEST(Range, InclusiveWithinHalfStep) {
  EXPECT_EQ(io::parse_range("0:1:0.01").size(), 101u);
  EXPECT_EQ(io::parse_range("0:3:0.01").size(), 301u);
  EXPECT_EQ(io::parse_range("0.01:1:0.01").size(), 100u);
  EXPECT_EQ(io::parse_range("0:1:0.01").back(), 1.0);
  // The point count rounds to the nearest whole number of steps and both ends are kept.
  EXPECT_EQ(io::parse_range("0:1:0.3"), (std::vector<double>{0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0}));
  EXPECT_EQ(io::parse_range("0:1:0.45"), (std::vector<double>{0.0, 0.5, 1.0}));
  EXPECT_EQ(io::parse_range("0:1:0.1")[3], 0.3);
  EXPECT_EQ(io::parse_range("1:1:1"), (std::vector<double>{1.0}));
  EXPECT_EQ(io::parse_range("0:0:1"), (std::vector<double>{0.0}));
  EXPECT_EQ(io::parse_range("0.25"), (std::vector<double>{0.25}));
  EXPECT_THROW(io::parse_range("1:0:0.1"), io::FormatError);
  EXPECT_THROW(io::parse_range("0:1:0"), io::FormatError);
  EXPECT_THROW(io::parse_range("0:1"), io::FormatError);
  EXPECT_THROW(io::parse_range("a:1:0.1"), io::FormatError);
  EXPECT_THROW(io::parse_range("0.5x"), io::FormatError);
}

TEST(Cut, Syntax) {
  EXPECT_EQ(io::parse_cut("0|12", 3), Bipartition({0}, {1, 2}));
  EXPECT_EQ(io::parse_cut("2,0|1", 3), Bipartition({0, 2}, {1}));
  EXPECT_THROW(io::parse_cut("0|1", 3), io::FormatError);
  EXPECT_THROW(io::parse_cut("01", 2), io::FormatError);
  EXPECT_THROW(io::parse_cut("0|0", 2), io::FormatError);
  EXPECT_THROW(io::parse_cut("a|1", 2), io::FormatError);
}

TEST(Format, TwelveSignificantDigits) {
  EXPECT_EQ(io::format_double(0.1 + 0.2), "0.3");
  EXPECT_EQ(io::format_double(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(io::format_double(-0.0), "0");
  EXPECT_EQ(io::format_double(1e-17), "1e-17");
}

TEST(StateJson, RoundTripIsBitExact) {
  std::mt19937_64 rng(51);
  const DensityMatrix rho(oracle::random_density(rng, 12), {2, 3, 2});
  const auto back = io::state_from_json(io::state_to_json(rho));
  EXPECT_EQ(back.dims(), rho.dims());
  EXPECT_EQ(back.matrix(), rho.matrix());
  const auto psi = ghz(3, 2);
  const auto from_vec = io::state_from_json(io::state_to_json(psi));
  EXPECT_EQ(from_vec.matrix(), psi.projector().matrix());
}

TEST(StateJson, RejectsMalformed) {
  EXPECT_THROW(io::state_from_json("{"), io::FormatError);
  EXPECT_THROW(io::state_from_json("[]"), io::FormatError);
  EXPECT_THROW(io::state_from_json(R"({"matrix": [[[1,0]]]})"), io::FormatError);
  EXPECT_THROW(io::state_from_json(R"({"dims": [2]})"), io::FormatError);
  EXPECT_THROW(io::state_from_json(R"({"dims": [2], "matrix": [[[1,0],[0,0]],[[0,0]]]})"), io::FormatError);
  EXPECT_THROW(io::state_from_json(R"({"dims": [2], "matrix": [[1,0],[0,0]]})"), io::FormatError);
  // Well formed but not a state: trace 2.
  EXPECT_THROW(io::state_from_json(R"({"dims": [2], "matrix": [[[1,0],[0,0]],[[0,0],[1,0]]]})"),
               std::invalid_argument);
}

TEST(ChannelJson, RoundTrip) {
  const auto ch = canonical_pauli_channel(2, 2, 0.3);
  const auto back = io::channel_from_json(io::channel_to_json(ch));
  EXPECT_EQ(back.input_dims(), ch.input_dims());
  EXPECT_EQ(back.policy(), ch.policy());
  EXPECT_EQ(back.name(), ch.name());
  ASSERT_EQ(back.terms().size(), ch.terms().size());
  for (std::size_t i = 0; i < ch.terms().size(); ++i) {
    EXPECT_EQ(back.terms()[i].weight, ch.terms()[i].weight);
    EXPECT_EQ(back.terms()[i].op, ch.terms()[i].op);
  }
  EXPECT_THROW(io::channel_from_json(R"({"input_dims": [2]})"), io::FormatError);
  EXPECT_THROW(io::channel_from_json(R"({"input_dims": [2], "policy": "bad", "terms": []})"),
               std::invalid_argument);
}

TEST(Files, WriteThenRead) {
  const std::string path = ::testing::TempDir() + "entanglia_io_test.json";
  io::write_file(path, "hello");
  EXPECT_EQ(io::read_file(path), "hello");
  std::remove(path.c_str());
  EXPECT_THROW(io::read_file("/nonexistent/dir/file"), io::FormatError);
}
