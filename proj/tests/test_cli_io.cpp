#include <doctest.h>

#include <string>

#include "hypk/errors.hpp"
#include "hypk/report.hpp"
#include "hypk/surface_io.hpp"

using namespace hypk;

namespace {

std::string parse_message(const std::string& text) {
    try {
        parse_surface(text);
    } catch (const ParseError& e) {
        return e.what();
    }
    return {};
}

const char* kTheta =
    "hypk-surface 1\n"
    "# symmetric theta surface\n"
    "label theta\n"
    "genus 2\n"
    "pants 2\n"
    "0 0 1 2\n"
    "1 0 1 2\n"
    "edges 3\n"
    "0 0 0 1 0 2 0\n"
    "1 0 1 1 1 2 0\n"
    "2 0 2 1 2 2 0\n";

}  // namespace

TEST_CASE("presets round-trip through the surface format") {
    for (const std::string& name : preset_names()) {
        const SurfaceData s = preset_surface(name, 20, 0.5);
        const std::string text = emit_surface(s);
        const SurfaceData back = parse_surface(text);
        CHECK(back == s);
        CHECK(emit_surface(back) == text);
    }
    CHECK_THROWS_AS(preset_surface("nonesuch"), DomainError);
}

TEST_CASE("awkward reals survive the round trip") {
    SurfaceData s = preset_surface("theta");
    s.coords.lengths = {0.1, 1.0 / 3.0, 2.718281828459045};
    s.coords.twists = {-0.3, 1e-17, 0.49999999999999994};
    CHECK(parse_surface(emit_surface(s)) == s);
}

TEST_CASE("parse errors carry line numbers") {
    std::string text = kTheta;
    const SurfaceData s = parse_surface(text);
    CHECK(s.label == "theta");
    CHECK(s.graph.genus == 2);

    CHECK(parse_message("hypk-surface 2\n").find("line 1") != std::string::npos);
    CHECK(parse_message("").find("line 1") != std::string::npos);
    std::string bad_length = text;
    bad_length.replace(bad_length.find("0 0 0 1 0 2 0"), 13, "0 0 0 1 0 x 0");
    CHECK(parse_message(bad_length).find("line 9") != std::string::npos);
    std::string truncated = text.substr(0, text.find("2 0 2 1"));
    CHECK(parse_message(truncated).find("line 11") != std::string::npos);

    std::string mismatch = text;
    mismatch.replace(mismatch.find("0 0 1 2\n"), 8, "0 1 0 2\n");
    CHECK_THROWS_AS(parse_surface(mismatch), ValidationFailed);
    std::string negative = text;
    negative.replace(negative.find("0 0 0 1 0 2 0"), 13, "0 0 0 1 0 -2 0");
    CHECK_THROWS_AS(parse_surface(negative), ValidationFailed);
}

TEST_CASE("words") {
    const std::vector<std::string> names{"x0", "x1", "x2", "t1", "t2"};
    CHECK(parse_word("x0 t2^", names) == Word{1, -5});
    CHECK(parse_word("  x1   x1^ ", names) == Word{2, -2});
    CHECK(word_to_string(Word{1, -5}, names) == "x0 t2^");
    CHECK(parse_word(word_to_string(Word{3, 4, -1}, names), names) == Word{3, 4, -1});
    CHECK_THROWS_AS(parse_word("y0", names), ParseError);
    CHECK(parse_word("", names).empty());
}

TEST_CASE("report formatting") {
    CHECK(format_real(0.1) == "0.10000000000000001");
    CHECK(format_real(2.0) == "2");
    CHECK(sweep_csv({}) == "n,delta,sys,sys_h,khat,predictor,normalized_product,normalized_khat,cutoff,certified\n");
}
