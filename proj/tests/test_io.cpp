#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include <sns/io.hpp>

using namespace sns;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / "sns_io_test";
    fs::create_directories(dir);
    return dir / name;
}

void write_text(const fs::path& p, const std::string& text)
{
    std::ofstream(p, std::ios::binary) << text;
}

ErrorCode code_of(const fs::path& p)
{
    try {
        io::read_matrix_csv(p);
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::UsageError;
}

} // namespace

TEST(Csv, HeaderIsDetectedAndSkipped)
{
    const auto p = scratch("h.csv");
    write_text(p, "a,b\n1,2\n3,4.5\n");
    const Matrix m = io::read_matrix_csv(p);
    ASSERT_EQ(m.rows(), 2);
    EXPECT_EQ(m(1, 1), 4.5);
    write_text(p, "1,2\r\n-3,+4e-1\r\n");
    const Matrix n = io::read_matrix_csv(p);
    EXPECT_EQ(n(1, 0), -3.0);
    EXPECT_EQ(n(1, 1), 0.4);
}

TEST(Csv, RaggedAndNonNumericRowsFail)
{
    const auto p = scratch("bad.csv");
    write_text(p, "1,2\n3\n");
    EXPECT_EQ(code_of(p), ErrorCode::ParseError);
    write_text(p, "1,2\n3,x\n");
    EXPECT_EQ(code_of(p), ErrorCode::ParseError);
    write_text(p, "a,b\n");
    EXPECT_EQ(code_of(p), ErrorCode::ParseError);
    EXPECT_EQ(code_of(scratch("missing.csv")), ErrorCode::IoError);
}

TEST(Csv, RoundTripIsExact)
{
    const auto p = scratch("rt.csv");
    Matrix m(2, 3);
    m << 0.1, -1.0 / 3.0, 1e-300, 12345.678, std::nextafter(1.0, 2.0), -0.0;
    io::write_matrix_csv(p, m, {"x", "y", "z"});
    EXPECT_EQ(io::read_matrix_csv(p), m);
}

TEST(EdgesCsv, OneBasedRoundTrip)
{
    const auto p = scratch("e.csv");
    const EdgeSet e{{0, 3}, {1, 2}};
    io::write_edges_csv(p, e);
    std::ifstream in(p);
    std::string header, first;
    std::getline(in, header);
    std::getline(in, first);
    EXPECT_EQ(header, "i,j");
    EXPECT_EQ(first, "1,4");
    EXPECT_EQ(io::read_edges_csv(p), e);
}

TEST(Digest, StableAndSensitive)
{
    const auto p = scratch("d.txt");
    write_text(p, "");
    EXPECT_EQ(io::file_digest(p), "cbf29ce484222325");
    write_text(p, "a");
    EXPECT_EQ(io::file_digest(p), "af63dc4c8601ec8c");
}
