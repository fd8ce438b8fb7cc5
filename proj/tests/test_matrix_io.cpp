#include <baerdec/fixtures.hpp>
#include <baerdec/matrix_io.hpp>

#include <gtest/gtest.h>

using namespace baerdec;

namespace {

void expect_parse_error(const std::string& text, std::size_t line, std::size_t column) {
  try {
    (void)parse_matrix_file(text);
    ADD_FAILURE() << "accepted:\n" << text;
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), line) << e.what();
    EXPECT_EQ(e.column(), column) << e.what();
  }
}

}  // namespace

TEST(MatrixIo, SingleEntry) {
  const auto f = parse_matrix_file("matrix a 1\n2.0\n");
  ASSERT_EQ(f.size(), 1u);
  EXPECT_EQ(f.at("a")(0, 0), cplx(2.0));
}

TEST(MatrixIo, JordanCellWithComments) {
  const auto f = parse_matrix_file("# nilpotent\n\nmatrix J 2\n0 1   # first row\n\n0 0\n");
  ComplexMatrix j = ComplexMatrix::Zero(2, 2);
  j(0, 1) = 1.0;
  EXPECT_EQ(f.at("J"), j);
  EXPECT_THROW((void)f.at("K"), LookupError);
}

TEST(MatrixIo, ComplexEntries) {
  EXPECT_EQ(parse_entry("1.5-2j"), cplx(1.5, -2.0));
  EXPECT_EQ(parse_entry("-3j"), cplx(0.0, -3.0));
  EXPECT_EQ(parse_entry("+1e-3+4.5e2j"), cplx(1e-3, 450.0));
  EXPECT_EQ(parse_entry("-0.25"), cplx(-0.25, 0.0));
  for (const char* bad : {"", "j", "1+j", "1++2j", "1+2", "1.5-2i", "inf", "nan", "1+infj", "1e400", "2j3", "0x10"})
    EXPECT_FALSE(parse_entry(bad).has_value()) << bad;
}

TEST(MatrixIo, Errors) {
  expect_parse_error("matrx a 1\n1\n", 1, 1);
  expect_parse_error("matrix 9a 1\n1\n", 1, 8);
  expect_parse_error("matrix a 0\n", 1, 10);
  expect_parse_error("matrix a 2\n1 2\n", 3, 1);
  expect_parse_error("matrix a 2\n1 2\n3\n", 3, 1);
  expect_parse_error("matrix a 2\n1 2\n3 nan\n", 3, 3);
  expect_parse_error("matrix a 1\n1\nmatrix a 1\n2\n", 3, 8);
  expect_parse_error("matrix a 1\n  1 inf\n", 2, 3);
}

TEST(MatrixIo, CarriageReturnsAndOrder) {
  const auto f = parse_matrix_file("matrix b 1\r\n1\r\nmatrix a 1\r\n2j\r\n");
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f.blocks()[0].name, "b");
  EXPECT_EQ(f.blocks()[1].matrix(0, 0), cplx(0.0, 2.0));
}

TEST(MatrixIo, RoundTripIsBitExact) {
  fixtures::Rng rng(77);
  std::uniform_real_distribution<double> expo(-300.0, 300.0);
  MatrixFile f;
  for (int k = 0; k < 40; ++k) {
    const Eigen::Index n = 1 + k % 6;
    ComplexMatrix m = fixtures::gaussian(n, n, rng);
    m(0, 0) *= std::pow(10.0, expo(rng));
    if (n > 1) m(1, 0) = cplx(-0.0, 0.0);
    f.add("m" + std::to_string(k), m);
  }
  const auto g = parse_matrix_file(serialize_matrix_file(f));
  ASSERT_EQ(g.size(), f.size());
  for (std::size_t k = 0; k < f.size(); ++k) {
    const auto& a = f.blocks()[k].matrix;
    const auto& b = g.blocks()[k].matrix;
    ASSERT_EQ(a.rows(), b.rows());
    EXPECT_EQ(std::memcmp(a.data(), b.data(), sizeof(cplx) * static_cast<std::size_t>(a.size())), 0) << k;
  }
}

TEST(MatrixIo, FileRoundTrip) {
  MatrixFile f;
  f.add("x", fixtures::truncated_shift(3));
  const std::string path = ::testing::TempDir() + "baerdec_io_roundtrip.txt";
  write_matrix_file(path, f);
  EXPECT_EQ(read_matrix_file(path).at("x"), fixtures::truncated_shift(3));
  EXPECT_THROW(read_matrix_file(path + ".missing"), InputError);
  EXPECT_THROW(f.add("x", identity(2)), InputError);
  EXPECT_THROW(f.add("1x", identity(2)), InputError);
}
