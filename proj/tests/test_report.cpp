#include <doctest.h>

#include <limits>
#include <sstream>

#include "diskops/errors.hpp"
#include "diskops/report.hpp"

using namespace diskops;

namespace {

VerificationReport sample()
{
    VerificationReport r;
    r.check_id = "sample_check";
    r.status = Status::pass;
    r.add("value", {0.1, -1.0 / 3.0});
    r.add("count, with comma", 42.0);
    r.expect("value", {0.1, -1.0 / 3.0}, Provenance::derived);
    r.expect("bound", std::sqrt(2.0), Provenance::paper);
    r.tolerance = 1e-8;
    r.elapsed_ms = 1.0 / 7.0;
    r.note = "a \"quoted\" note";
    return r;
}

} // namespace

TEST_CASE("enum names")
{
    for (Status s : {Status::pass, Status::fail, Status::consistent, Status::error})
        CHECK(status_from_string(to_string(s)) == s);
    for (Provenance p : {Provenance::paper, Provenance::trivial, Provenance::derived})
        CHECK(provenance_from_string(to_string(p)) == p);
    CHECK(to_string(Provenance::derived) == "DERIVED");
    CHECK(to_string(Status::consistent) == "consistent");
    CHECK(output_format_from_string("csv") == OutputFormat::csv);
    CHECK_THROWS(output_format_from_string("xml"));
    CHECK_THROWS(status_from_string("ok"));
}

TEST_CASE("ok")
{
    VerificationReport r;
    CHECK_FALSE(r.ok());
    r.status = Status::consistent;
    CHECK(r.ok());
    r.status = Status::fail;
    CHECK_FALSE(r.ok());
}

TEST_CASE("json")
{
    std::ostringstream empty;
    emit_report({}, OutputFormat::json, empty);
    CHECK(empty.str() == "[]\n");

    std::ostringstream os;
    emit_report({sample()}, OutputFormat::json, os);
    const auto j = nlohmann::json::parse(os.str());
    REQUIRE(j.is_array());
    CHECK(j[0]["status"] == "pass");
    CHECK(j[0]["reference"][1]["provenance"] == "PAPER");
    for (const char* key : {"check_id", "status", "computed", "reference", "tolerance", "elapsed_ms", "note"})
        CHECK(j[0].contains(key));

    // every field survives the round trip bit for bit
    CHECK(report_from_json(j[0]) == sample());
}

TEST_CASE("csv")
{
    std::ostringstream os;
    emit_report({sample(), sample()}, OutputFormat::csv, os);
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "check_id,status,tolerance,elapsed_ms,computed,reference,note");
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        CHECK(line.rfind("sample_check,pass,", 0) == 0);
        CHECK(line.find("\"a \"\"quoted\"\" note\"") != std::string::npos);
    }
    CHECK(rows == 2);
}

TEST_CASE("text")
{
    std::ostringstream os;
    emit_report({sample()}, OutputFormat::text, os);
    CHECK(os.str().find("sample_check") != std::string::npos);
    CHECK(os.str().find("pass") != std::string::npos);
    CHECK(os.str().find("0.1-0.333333333333333i") != std::string::npos);
}

TEST_CASE("sink failure")
{
    std::ostringstream os;
    os.setstate(std::ios::badbit);
    CHECK_THROWS_AS(emit_report({sample()}, OutputFormat::json, os), IOError);
    CHECK_THROWS_AS(emit_report({}, OutputFormat::text, os), IOError);
}

TEST_CASE("fifteen significant digits")
{
    CHECK(format_number(1.0 / 3.0) == "0.333333333333333");
    CHECK(format_number(std::sqrt(2.0)) == "1.4142135623731");
    CHECK(format_number(2.0) == "2");
    CHECK(format_number(std::complex<double>(1.0, -0.5)) == "1-0.5i");
    CHECK(format_number(std::complex<double>(1.0, 0.0)) == "1");
}
