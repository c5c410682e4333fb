#include "doctest.h"

#include "rdlab/boho.hpp"
#include "rdlab/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>

using namespace rdlab;

TEST_CASE("17-digit decimals round-trip doubles bit-exactly") {
    StreamRng rng(1);
    for (int k = 0; k < 200; ++k) {
        const double v = (rng.next_unit() - 0.5) * std::pow(10.0, static_cast<double>(k % 40) - 20.0);
        const double back = std::stod(io::fmt17(v));
        CHECK(back == v);
    }
    CHECK(io::fmt17(0.25) == "0.25");
}

TEST_CASE("distribution serialization") {
    StreamRng rng(2);
    std::vector<double> p(12);
    double sum = 0.0;
    for (auto& v : p) {
        v = rng.next_unit() + 0.01;
        sum += v;
    }
    for (auto& v : p) v /= sum;
    const JointDist d({Alphabet(3), Alphabet(4)}, p);
    const JointDist back = io::read_joint(io::write_joint(d));
    REQUIRE(back.cells() == d.cells());
    for (std::size_t i = 0; i < d.cells(); ++i) CHECK(back[i] == d[i]);  // bit-exact

    const CondDist c = CondDist::bsc(0.1875);
    const CondDist cback = io::read_cond(io::write_cond(c));
    for (std::size_t i = 0; i < 4; ++i) CHECK(cback.raw()[i] == c.raw()[i]);
}

TEST_CASE("key-value parsing and error reporting") {
    const std::string text = "# comment\nalpha 1 2 3\nbeta 0.5\n\ngamma x\n";
    const auto kv = io::KeyValueFile::parse(text, "test.cfg");
    CHECK(kv.has("alpha"));
    CHECK(kv.values("alpha").size() == 3);
    CHECK(kv.number("beta") == doctest::Approx(0.5));
    CHECK(kv.line_of("gamma") == 5);
    CHECK(kv.integer_or("missing", 7) == 7);
    CHECK_THROWS_WITH_AS(kv.number("gamma"), doctest::Contains("test.cfg:5"), ParseError);
    CHECK_THROWS_AS(kv.number("missing"), ParseError);
    CHECK_THROWS_AS(io::KeyValueFile::parse("a 1\na 2\n", "dup.cfg"), ParseError);
}

TEST_CASE("source files and the built-in source") {
    const DistributedSource builtin = io::parse_source("boho:p=0.3,eps=0.001");
    CHECK(builtin.x1.size == 2);
    CHECK(builtin.x2.size == 4);
    CHECK_THROWS_AS(io::parse_source("boho:p=0.3"), ParseError);
    CHECK_THROWS_AS(io::parse_source("boho:p=0.3,eps=0.1,zz=1"), ParseError);

    const auto dir = std::filesystem::temp_directory_path() / "rdlab_io_test";
    std::filesystem::create_directories(dir);
    const std::string path = (dir / "src.txt").string();
    io::write_file(path,
                   "x1_size 2\nx2_size 2\n"
                   "pmf 0.4 0.1 0.1 0.4\n"
                   "d1 0 1 1 0\n"
                   "d2 0 1 1 0\n");
    const DistributedSource fromFile = io::parse_source(path);
    CHECK(fromFile.pmf.at(std::vector<int>{0, 0}) == doctest::Approx(0.4));
    CHECK(fromFile.d1_at(0, 1) == 1.0);

    const std::string siText =
        "x1_size 2\nx2_size 2\ny1_size 1\ny2_size 2\n"
        "pmf 0.2 0.2 0.05 0.05 0.05 0.05 0.2 0.2\n"
        "d1 0 1 1 0\nd2 0 1 1 0\n";
    const SourceWithSideInfo si = io::parse_source_si(siText, "<inline>");
    CHECK(si.y2.size == 2);
    std::filesystem::remove_all(dir);
}

TEST_CASE("digest and manifest") {
    CHECK(io::fnv1a_hex("") == "cbf29ce484222325");
    CHECK(io::fnv1a_hex("a") != io::fnv1a_hex("b"));
    io::Manifest m;
    m.command = "boho";
    m.version = "0.1.0";
    m.seed = 42;
    m.config = {{"p", "0.3"}};
    m.inputDigests = {{"source", io::fnv1a_hex("data")}};
    const std::string text = m.to_text();
    CHECK(text.find("manifest rdlab") == 0);
    CHECK(text.find("config.p 0.3") != std::string::npos);
    CHECK(text.find("input.source.digest fnv1a:") != std::string::npos);
}

TEST_CASE("boundary CSV schemas") {
    const auto sweep = boho_region_sweep(0.3, 0.0, 0.15, {16, 8, 4, 16, 0.01, 0.49});
    const std::string csv = io::boho_csv({{0.0, sweep}});
    CHECK(csv.rfind("r1_bits,r2_bits,d1,d2,scheme,n,tau,provenance_id,eps,delta,delta1\n", 0) ==
          0);
    // Every boundary point produces one row.
    const auto rows = static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n'));
    CHECK(rows == sweep.boundary.points.size() + 1);
    CHECK(csv.find("boho-cc") != std::string::npos);
}
