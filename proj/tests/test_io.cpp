#include "gaclutter/raster_io.hpp"

#include <doctest.h>

#include <sstream>
#include <string>

using namespace gaclutter;
using namespace gaclutter::raster_io;

TEST_CASE("CSV rasters round-trip bit-exactly") {
    Matrix m(2, 3);
    m(0, 0) = 1.0;
    m(0, 1) = -1.0 / 3.0;
    m(0, 2) = 1e-300;
    m(1, 0) = 123456.789012345678;
    m(1, 1) = -0.0;
    m(1, 2) = 3.141592653589793;
    std::ostringstream out;
    write_csv(out, m);
    std::istringstream in(out.str());
    const Matrix r = read_csv(in);
    REQUIRE(r.rows() == 2);
    REQUIRE(r.cols() == 3);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(r(i, j) == m(i, j));
}

TEST_CASE("CSV writer uses LF endings and 17-digit decimals") {
    Matrix m(1, 2);
    m(0, 0) = 0.1;
    m(0, 1) = 2.0;
    std::ostringstream out;
    write_csv(out, m);
    CHECK(out.str() == "0.10000000000000001,2\n");
}

TEST_CASE("CSV reader skips comments and rejects malformed data") {
    std::istringstream ok("# header\n1,2\n3,4\n");
    const Matrix m = read_csv(ok);
    CHECK(m(1, 1) == 4.0);

    std::istringstream ragged("1,2\n3\n");
    CHECK_THROWS(read_csv(ragged));
    std::istringstream junk("1,abc\n");
    CHECK_THROWS(read_csv(junk));
    std::istringstream empty("");
    CHECK_THROWS(read_csv(empty));
}

TEST_CASE("PGM16 output is big-endian P5 with the stated quantization") {
    Matrix m(1, 3);
    m(0, 0) = 0.0;
    m(0, 1) = 0.5;
    m(0, 2) = 1.0;
    std::ostringstream out;
    write_pgm16(out, m, 0.0, 1.0);
    const std::string s = out.str();
    const std::string header = "P5\n3 1\n65535\n";
    REQUIRE(s.size() == header.size() + 6);
    CHECK(s.substr(0, header.size()) == header);
    const auto* p = reinterpret_cast<const unsigned char*>(s.data() + header.size());
    CHECK(p[0] == 0x00);
    CHECK(p[1] == 0x00);
    // round(65535 * 0.5) = 32768 = 0x8000
    CHECK(p[2] == 0x80);
    CHECK(p[3] == 0x00);
    CHECK(p[4] == 0xff);
    CHECK(p[5] == 0xff);
}

TEST_CASE("PGM16 clamps out-of-range values and validates bounds") {
    Matrix m(1, 2);
    m(0, 0) = -5.0;
    m(0, 1) = 7.0;
    std::ostringstream out;
    write_pgm16(out, m, 0.0, 1.0);
    const std::string s = out.str();
    const auto* p = reinterpret_cast<const unsigned char*>(s.data() + s.size() - 4);
    CHECK(p[0] == 0x00);
    CHECK(p[1] == 0x00);
    CHECK(p[2] == 0xff);
    CHECK(p[3] == 0xff);
    CHECK_THROWS(write_pgm16(out, m, 1.0, 1.0));
}

TEST_CASE("format_double survives a round trip") {
    for (double v : {0.1, -1.0 / 3.0, 1e-300, 6.02214076e23})
        CHECK(std::stod(format_double(v)) == v);
}
