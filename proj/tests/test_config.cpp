#include "fcmppt/config.hpp"

#include "fcmppt/errors.hpp"
#include "fcmppt/io.hpp"

#include <doctest.h>

using namespace fcmppt;

TEST_CASE("config parsing basics") {
    ConfigDoc doc = ConfigDoc::parse_string(
        "# comment line\n"
        "[stack]\n"
        "n_cells = 65   # trailing comment\n"
        "xi = -0.9 0.003 7e-5 -2e-4\n"
        "\n"
        "[scenario]\n"
        "profile_T = 0 323.15 4 343.15\n"
        "name = temperature-steps\n");

    CHECK(doc.has("stack", "n_cells"));
    CHECK_FALSE(doc.has("stack", "missing"));
    CHECK(doc.get_int("stack", "n_cells") == 65);
    CHECK(doc.get_double("stack", "n_cells") == doctest::Approx(65.0));
    CHECK(doc.get_string("scenario", "name") == "temperature-steps");
    CHECK(doc.get_double("stack", "absent", 2.5) == doctest::Approx(2.5));

    auto xi = doc.get_doubles("stack", "xi");
    REQUIRE(xi.size() == 4);
    CHECK(xi[0] == doctest::Approx(-0.9));
    CHECK(xi[3] == doctest::Approx(-2e-4));

    auto sched = doc.get_schedule("scenario", "profile_T");
    REQUIRE(sched.size() == 2);
    CHECK(sched[1].first == doctest::Approx(4.0));
    CHECK(sched[1].second == doctest::Approx(343.15));
}

TEST_CASE("config parse errors carry context") {
    CHECK_THROWS_AS(ConfigDoc::parse_string("[broken\nkey = 1\n"), config_error);
    CHECK_THROWS_AS(ConfigDoc::parse_string("[s]\nno separator here\n"), config_error);
    CHECK_THROWS_AS(ConfigDoc::parse_string("[s]\n= 3\n"), config_error);

    ConfigDoc doc = ConfigDoc::parse_string("[s]\nk = not-a-number\nodd = 1 2 3\n");
    CHECK_THROWS_WITH_AS(doc.get_double("s", "k"), doctest::Contains("bad number"),
                         config_error);
    CHECK_THROWS_WITH_AS(doc.get_string("s", "missing"), doctest::Contains("missing"),
                         config_error);
    CHECK_THROWS_AS(doc.get_schedule("s", "odd"), config_error);
    CHECK_THROWS_AS(doc.get_int("s", "k"), config_error);

    ConfigDoc frac = ConfigDoc::parse_string("[s]\nk = 2.5\n");
    CHECK_THROWS_AS(frac.get_int("s", "k"), config_error);
}

TEST_CASE("file io round trip and atomic write") {
    std::string path = "/tmp/fcmppt_test_config.cfg";
    write_file_atomic(path, "[a]\nx = 1\n");
    ConfigDoc doc = ConfigDoc::parse_file(path);
    CHECK(doc.get_int("a", "x") == 1);
    CHECK(doc.dir() == "/tmp");
    CHECK(doc.resolve_path("rel.txt") == "/tmp/rel.txt");
    CHECK(doc.resolve_path("/abs/rel.txt") == "/abs/rel.txt");

    CHECK_THROWS_AS(ConfigDoc::parse_file("/nonexistent/nope.cfg"), config_error);
}

TEST_CASE("significant-digit formatting is stable") {
    CHECK(format_sig(1.0, 9) == "1");
    CHECK(format_sig(0.1, 9) == "0.1");
    CHECK(format_sig(1234.56789, 9) == "1234.56789");
    CHECK(format_sig(1e-7, 9) == "1e-07");
}
