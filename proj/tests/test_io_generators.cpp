#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <random>
#include <sstream>

#include <unistd.h>

#include "test_support.hpp"
#include "triscale/error.hpp"
#include "triscale/generators.hpp"
#include "triscale/matrix_io.hpp"

using namespace triscale;

namespace {

std::string error_of(const std::string& text) {
    std::istringstream in(text);
    try {
        parse_matrix(in, "m.txt");
    } catch (const InputError& e) {
        return e.what();
    }
    return {};
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("triscale_" + std::to_string(::getpid()) + "_" + name);
}

}  // namespace

TEST(MatrixFile, WriteThenReadDiagonal) {
    const Complex d[] = {1, 2};
    const auto t = UpperTriangular::diagonal(d);
    const auto path = temp_file("diag.txt");
    write_matrix(t, path);
    EXPECT_EQ(read_matrix(path), t);
    std::filesystem::remove(path);
}

TEST(MatrixFile, EntryFormat) {
    std::istringstream in("# one entry\n1\n(1.0,-2.5)\n");
    const auto t = parse_matrix(in);
    EXPECT_EQ(t(0, 0), Complex(1.0, -2.5));
    EXPECT_EQ(format_complex(Complex(1.0, -2.5)), "(1,-2.5)");
}

TEST(MatrixFile, CommentsAndBlankLines) {
    std::istringstream in("# header\n\n2\n# row one\n(1,0)   (2,0)\n\n(0,0) (3,0)\n");
    const auto t = parse_matrix(in);
    EXPECT_EQ(t(0, 1), Complex(2));
    EXPECT_EQ(t(1, 1), Complex(3));
}

TEST(MatrixFile, Errors) {
    const auto lower = error_of("2\n(1,0) (2,0)\n(5,0) (3,0)\n");
    EXPECT_NE(lower.find("not triangular"), std::string::npos) << lower;
    EXPECT_NE(lower.find("(2,1)"), std::string::npos) << lower;
    EXPECT_NE(lower.find(":3:"), std::string::npos) << lower;

    EXPECT_NE(error_of("2\n(1,0) (2,0)\n(0,0)\n").find(":3:"), std::string::npos);
    EXPECT_NE(error_of("2\n(1,0) (2,0)\n(0,0) (1,0) (4,0)\n").find(":3:"), std::string::npos);
    EXPECT_NE(error_of("2\n(1,0) (2;0)\n(0,0) (1,0)\n").find(":2:"), std::string::npos);
    EXPECT_NE(error_of("2\n(1,0) (2,0)\n").find("m.txt"), std::string::npos);
    EXPECT_NE(error_of("x\n").find(":1:"), std::string::npos);
    EXPECT_NE(error_of("1\n(nan,0)\n").find(":2:"), std::string::npos);
    EXPECT_FALSE(error_of("").empty());
    EXPECT_THROW(read_matrix("/nonexistent/triscale.txt"), InputError);
}

TEST(MatrixFile, RoundTripIsBitExact) {
    std::mt19937_64 rng(70);
    std::uniform_int_distribution<std::uint64_t> bits;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + trial % 7;
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                double re, im;
                do {
                    re = std::bit_cast<double>(bits(rng));
                } while (!std::isfinite(re));
                do {
                    im = std::bit_cast<double>(bits(rng));
                } while (!std::isfinite(im));
                m(i, j) = Complex(re, im);
            }
        const auto t = validate_triangular(m);
        std::stringstream io;
        format_matrix(io, t);
        const auto back = parse_matrix(io);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                EXPECT_EQ(std::bit_cast<std::uint64_t>(back(i, j).real()), std::bit_cast<std::uint64_t>(t(i, j).real()));
                EXPECT_EQ(std::bit_cast<std::uint64_t>(back(i, j).imag()), std::bit_cast<std::uint64_t>(t(i, j).imag()));
            }
    }
}

TEST(MatrixFile, SpecialValuesRoundTrip) {
    Matrix m(2, 2);
    m(0, 0) = Complex(-0.0, 5e-324);
    m(0, 1) = Complex(std::numeric_limits<double>::max(), -std::numeric_limits<double>::min());
    m(1, 1) = Complex(0.1, 1.0 / 3.0);
    const auto t = validate_triangular(m);
    std::stringstream io;
    format_matrix(io, t);
    const auto back = parse_matrix(io);
    EXPECT_EQ(back, t);
    EXPECT_TRUE(std::signbit(back(0, 0).real()));
}

TEST(ReferenceMatrices, Literals) {
    const auto eq3 = gen_reference_matrix("eq3");
    EXPECT_EQ(eq3(0, 0), Complex(1));
    EXPECT_EQ(eq3(0, 1), Complex(1e6));
    EXPECT_EQ(eq3(1, 1), Complex(-1));

    const auto eq4 = gen_reference_matrix("eq4");
    ASSERT_EQ(eq4.order(), 4u);
    EXPECT_EQ(eq4(0, 0), Complex(3.2346e-1));
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j) EXPECT_EQ(eq4(i, j), Complex(3.0000e4));

    const auto t1 = gen_reference_matrix("exp1_t1");
    const double ea = std::exp(0.1);
    EXPECT_EQ(t1(0, 0), Complex(ea));
    EXPECT_EQ(t1(0, 1), Complex(ea * 1e6));
    EXPECT_EQ(t1(1, 1), Complex(ea));

    EXPECT_THROW(gen_reference_matrix("eq5"), InputError);
    EXPECT_EQ(reference_matrix_ids().size(), 3u);
}

TEST(Toeplitz, Examples) {
    const auto t = gen_toeplitz_geometric(2, 1.2);
    EXPECT_EQ(t(0, 0), Complex(1.2));
    EXPECT_DOUBLE_EQ(t(0, 1).real(), 1.44);
    EXPECT_EQ(t(1, 1), Complex(1.2));
    const auto big = gen_toeplitz_geometric(30, 1.2);
    for (std::size_t i = 0; i < 30; ++i) EXPECT_EQ(big(i, i), Complex(1.2));
    EXPECT_EQ(big(3, 9), big(10, 16));
    EXPECT_EQ(gen_toeplitz_geometric(1, 7.5)(0, 0), Complex(7.5));
}

TEST(RandomSmallDiag, DeterminismAndShape) {
    EXPECT_EQ(gen_random_smalldiag(8, 42, 0.3, 3e4), gen_random_smalldiag(8, 42, 0.3, 3e4));
    EXPECT_NE(gen_random_smalldiag(8, 42, 0.3, 3e4), gen_random_smalldiag(8, 43, 0.3, 3e4));
    EXPECT_TRUE(gen_random_smalldiag(6, 1, 1.0, 0.0).is_diagonal());
    const auto t = gen_random_smalldiag(10, 7, 0.3, 3e4);
    EXPECT_GT(nilpotent_ratio(t), 1e4);
    for (std::size_t i = 0; i < 10; ++i) {
        EXPECT_LE(std::abs(t(i, i)), 0.3);
        EXPECT_LE(std::abs(std::arg(t(i, i))), 0.75 * M_PI + 1e-15);
        for (std::size_t j = i + 1; j < 10; ++j) EXPECT_LE(std::abs(t(i, j)), 3e4);
    }
}

TEST(RandomDisk, StaysInDisk) {
    const auto t = gen_random_disk(12, 3, Complex(1.5, 0.2), 0.4, 2.0);
    for (std::size_t i = 0; i < 12; ++i) EXPECT_LE(std::abs(t(i, i) - Complex(1.5, 0.2)), 0.4);
}

TEST(RandomCoupled, Structure) {
    const auto t = gen_random_coupled(10, 5, 0.4, -0.3, 0.1, 0.02, 50.0);
    EXPECT_EQ(t, gen_random_coupled(10, 5, 0.4, -0.3, 0.1, 0.02, 50.0));
    for (std::size_t i = 0; i < 5; ++i) {
        EXPECT_LE(std::abs(t(i, i) - 0.4), 0.1);
        EXPECT_LE(std::abs(t(i + 5, i + 5) + 0.3), 0.1);
        for (std::size_t j = 5; j < 10; ++j) {
            EXPECT_GE(std::abs(t(i, j)), 25.0 - 1e-12);
            EXPECT_LE(std::abs(t(i, j)), 50.0 + 1e-12);
        }
    }
    EXPECT_THROW(gen_random_coupled(1, 5, 0.4, -0.3, 0.1, 0.02, 50.0), InputError);
}
