#include <doctest.h>

#include <random>

#include "hypoindex/contact_data.hpp"
#include "hypoindex/error.hpp"
#include "hypoindex/winding_index.hpp"
#include "support/generators.hpp"

using namespace hypoindex;
using namespace hypoindex::testing;

namespace {

bool has_rule(const ValidationReport& r, std::string_view rule) {
    for (const auto& v : r.violations) {
        if (v.rule == rule) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("parse a minimal instance") {
    const auto inst = parse_instance(R"({
      "manifold": "S^3 with a twisted frame",
      "clearance": 0.25,
      "loops": [{"name": "L0", "samples": [[1.5, 0], [1, 0.5], [0.5, 0], [1, -0.5]]}]
    })");
    CHECK(inst.manifold_label == "S^3 with a twisted frame");
    CHECK(inst.clearance == 0.25);
    REQUIRE(inst.loops.size() == 1);
    CHECK(inst.loops[0].name == "L0");
    REQUIRE(inst.loops[0].samples.size() == 4);
    CHECK(inst.loops[0].samples[1] == Complex(1.0, 0.5));
}

TEST_CASE("empty loop list is the globally framed case") {
    const auto inst = parse_instance(R"({"manifold": "T^3", "clearance": 1e-6, "loops": []})");
    CHECK(inst.loops.empty());
    CHECK(relevant_odd_integers(inst).empty());
    CHECK(validate_instance(inst).ok);
}

TEST_CASE("parse errors") {
    SUBCASE("NaN literal") {
        try {
            parse_instance("{\"manifold\": \"m\", \"clearance\": 0.1,\n \"loops\": [{\"name\": \"a\", \"samples\": [[1.0, NaN]]}]}");
            FAIL("expected a ParseError");
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find("non-finite numeric literal") != std::string::npos);
            CHECK(e.line() == 2);
            CHECK(e.column() == 44);
        }
    }
    SUBCASE("NaN inside a string is fine") {
        CHECK_NOTHROW(parse_instance(R"({"manifold": "NaN", "clearance": 0.1, "loops": []})"));
    }
    SUBCASE("overflowing literal") {
        CHECK_THROWS_WITH_AS(parse_instance(R"({"manifold": "m", "clearance": 1e999, "loops": []})"),
                             doctest::Contains("non-finite"), ParseError);
    }
    SUBCASE("syntax error carries a position") {
        try {
            parse_instance("{\"manifold\": \"m\",\n  \"clearance\" 0.1}");
            FAIL("expected a ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 2);
            CHECK(e.column() > 1);
        }
    }
    SUBCASE("missing field") {
        CHECK_THROWS_WITH_AS(parse_instance(R"({"manifold": "m", "loops": []})"),
                             doctest::Contains("missing required field 'clearance'"), ParseError);
        CHECK_THROWS_WITH_AS(parse_instance(R"({"manifold": "m", "clearance": 1, "loops": [{"samples": []}]})"),
                             doctest::Contains("'name'"), ParseError);
    }
    SUBCASE("unknown key") {
        CHECK_THROWS_AS(parse_instance(R"({"manifold": "m", "clearance": 1, "loops": [], "genus": 2})"), ParseError);
    }
    SUBCASE("sample arity") {
        CHECK_THROWS_AS(
            parse_instance(R"({"manifold": "m", "clearance": 1, "loops": [{"name": "a", "samples": [[1, 2, 3]]}]})"),
            ParseError);
    }
}

TEST_CASE("serialize then parse preserves the structure") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        ContactInstance inst = random_instance(rng, 32);
        inst.manifold_label = "trial " + std::to_string(trial) + " \"quoted\"";
        const ContactInstance back = parse_instance(serialize_instance(inst));
        CHECK(back.manifold_label == inst.manifold_label);
        CHECK(back.clearance == inst.clearance);
        REQUIRE(back.loops.size() == inst.loops.size());
        for (std::size_t i = 0; i < inst.loops.size(); ++i) {
            CHECK(back.loops[i].name == inst.loops[i].name);
            CHECK(back.loops[i].samples == inst.loops[i].samples);
        }
    }
}

TEST_CASE("validation rules") {
    SUBCASE("constant loop at 2 clears the odd integers") {
        const auto inst = single_loop_instance(GammaLoop{"c", {2.0, 2.0, 2.0, 2.0}}, 0.5);
        const auto r = validate_instance(inst);
        CHECK(r.ok);
        CHECK(r.max_abs_gamma == 2.0);
        CHECK(r.relevant_odds == std::vector<int>{-1, 1});
        CHECK(fredholm_index(inst).index == 0);
    }
    SUBCASE("loop through 3") {
        const auto inst = single_loop_instance(sample_loop(circle({2.0, 0.0}, 1.0), 16), 0.01);
        const auto r = validate_instance(inst);
        CHECK_FALSE(r.ok);
        CHECK(has_rule(r, rules::kClearance));
    }
    SUBCASE("coarse triangle around 1") {
        // gamma - 1 visits 1, i, -1: the last step back to 1 sweeps exactly pi.
        const auto inst = single_loop_instance(GammaLoop{"tri", {{2.0, 0.0}, {1.0, 1.0}, {0.0, 0.0}}}, 0.5);
        const auto r = validate_instance(inst);
        CHECK_FALSE(r.ok);
        REQUIRE(has_rule(r, rules::kAdequacy));
        bool at_two = false;
        for (const auto& v : r.violations) at_two = at_two || (v.rule == rules::kAdequacy && v.sample_index == 2);
        CHECK(at_two);
    }
    SUBCASE("chord that grazes 1") {
        // Both endpoints are far from 1 but the chord between them is not.
        const auto inst = single_loop_instance(GammaLoop{"graze", {{0.0, 0.04}, {2.0, 0.04}, {1.0, 1.0}}}, 0.1);
        const auto r = validate_instance(inst);
        CHECK_FALSE(r.ok);
        CHECK(has_rule(r, rules::kSegmentClearance));
        CHECK_FALSE(has_rule(r, rules::kClearance));
        CHECK_FALSE(has_rule(r, rules::kAdequacy));
    }
    SUBCASE("too few samples, bad clearance, non-finite") {
        ContactInstance inst = single_loop_instance(GammaLoop{"short", {0.0, 0.5}}, -1.0);
        auto r = validate_instance(inst);
        CHECK(has_rule(r, rules::kMinSamples));
        CHECK(has_rule(r, rules::kPositiveClearance));
        inst.loops[0].samples.push_back({std::nan(""), 0.0});
        r = validate_instance(inst);
        CHECK_FALSE(r.ok);
        CHECK(has_rule(r, rules::kFinite));
    }
}

TEST_CASE("relevant odd integers follow the ceiling rule") {
    CHECK(relevant_odd_integers(single_loop_instance(GammaLoop{"a", {4.2, 0.0, 1.0}})) ==
          std::vector<int>{-5, -3, -1, 1, 3, 5});
    CHECK(relevant_odd_integers(single_loop_instance(GammaLoop{"a", {0.5, 0.0, Complex(0, 0.5)}})) ==
          std::vector<int>{-1, 1});
}

TEST_CASE("relevant odd integers cover every nonzero winding") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const auto inst = random_instance(rng, 128);
        const auto odds = relevant_odd_integers(inst);
        const int far = static_cast<int>(std::ceil(inst.max_abs_gamma())) + 4;
        for (int k = -far; k <= far; k += 1) {
            if (k % 2 == 0) continue;
            long long w = 0;
            for (const auto& loop : inst.loops) w += winding_number(loop, k);
            if (w != 0) CHECK(std::find(odds.begin(), odds.end(), k) != odds.end());
        }
    }
}
