#include <catch2/catch_amalgamated.hpp>

#include "gsr/report.hpp"

using namespace gsr;

namespace {

NumberField sqrt2_field() {
    ZPoly p;
    p.emplace_back(-2);
    p.emplace_back(0);
    p.emplace_back(1);
    return make_field(p, 128);
}

Json synthetic_instance_json() {
    Json j;
    j["field"] = Json{{"poly", Json::array({-2, 0, 1})}, {"precision_bits", 128}};
    j["alpha"] = "2";
    j["beta"] = "1/2";
    j["gamma"] = "x";
    j["sigma_index"] = 1;
    j["q"] = 4;
    j["mode"] = "synthetic";
    j["m"] = 2;
    j["n"] = 2;
    return j;
}

}  // namespace

TEST_CASE("rational parsing canonicalizes") {
    CHECK(rat_str(parse_rational("3/6")) == "1/2");
    CHECK(rat_str(parse_rational("-4/2")) == "-2");
    CHECK(rat_str(parse_rational("+7")) == "7");
    CHECK(rat_str(parse_rational(" 5/15 ")) == "1/3");
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
    CHECK_THROWS_AS(parse_rational("a"), Error);
    CHECK_THROWS_AS(parse_rational(""), Error);
}

TEST_CASE("element literals parse and render") {
    NumberField F = sqrt2_field();

    NFElement g = parse_element_literal(F, "x");
    CHECK(g == F.gen());

    NFElement e = parse_element_literal(F, "1/2 + 3*x");
    CHECK(e.coords[0] == BigRat(1, 2));
    CHECK(e.coords[1] == 3);

    // powers reduce modulo the field polynomial: x^2 = 2, x^3 = 2x
    CHECK(parse_element_literal(F, "-x^2 + 1") == F.from_rational(BigRat(-1)));
    CHECK(parse_element_literal(F, "x^3") == F.scalar_mul(BigRat(2), F.gen()));
    CHECK(parse_element_literal(F, "2 - x") == F.sub(F.from_rational(BigRat(2)), F.gen()));
    CHECK(parse_element_literal(F, "3x") == F.scalar_mul(BigRat(3), F.gen()));

    CHECK_THROWS_AS(parse_element_literal(F, "x^"), Error);
    CHECK_THROWS_AS(parse_element_literal(F, "1//2"), Error);
    CHECK_THROWS_AS(parse_element_literal(F, "++1"), Error);
    CHECK_THROWS_AS(parse_element_literal(F, "y"), Error);
    CHECK_THROWS_AS(parse_element_literal(F, ""), Error);
    CHECK_THROWS_AS(parse_element_literal(F, "1 2"), Error);
}

TEST_CASE("element rendering round-trips") {
    NumberField F = sqrt2_field();
    CHECK(element_literal(F.zero()) == "0");
    CHECK(element_literal(F.gen()) == "x");
    CHECK(element_literal(F.neg(F.gen())) == "-x");

    std::vector<std::string> cases = {"1/2 + 3*x", "-1", "2 - x", "-5/7*x", "4"};
    for (const auto& s : cases) {
        NFElement e = parse_element_literal(F, s);
        CHECK(parse_element_literal(F, element_literal(e)) == e);
    }
}

TEST_CASE("json integers accept both encodings") {
    CHECK(int_str(json_bigint(Json(7), "v")) == "7");
    CHECK(int_str(json_bigint(Json("123456789012345678901234567890"), "v")) ==
          "123456789012345678901234567890");
    CHECK(int_str(json_bigint(Json("-5"), "v")) == "-5");
    CHECK(int_str(json_bigint(Json("+5"), "v")) == "5");
    CHECK_THROWS_AS(json_bigint(Json("5a"), "v"), Error);
    CHECK_THROWS_AS(json_bigint(Json(1.5), "v"), Error);
}

TEST_CASE("field descriptors load with precision control") {
    Json j = Json{{"poly", Json::array({-2, 0, 1})}};
    NumberField F = field_from_json(j);
    CHECK(F.h == 2);
    CHECK(F.working_precision == 128);

    j["precision_bits"] = 256;
    CHECK(field_from_json(j).working_precision == 256);
    CHECK(field_from_json(j, 512).working_precision == 512);

    Json round = field_to_json(F);
    CHECK(field_from_json(round).h == 2);

    CHECK_THROWS_AS(field_from_json(Json{{"poly", Json::array({1})}}), Error);
    CHECK_THROWS_AS(field_from_json(Json{{"poly", Json::array()}}), Error);
}

TEST_CASE("rational matrices clear denominators per row") {
    Json j;
    j["field"] = "Q";
    j["rows"] = Json::array({Json::array({"1/2", "1/3"}), Json::array({"1", "-2"})});
    ParsedMatrix pm = matrix_from_json(j);
    REQUIRE(pm.over_Q);
    REQUIRE(pm.zmat.rows == 2);
    CHECK(pm.zmat.at(0, 0) == 3);
    CHECK(pm.zmat.at(0, 1) == 2);
    CHECK(pm.zmat.at(1, 0) == 1);
    CHECK(pm.zmat.at(1, 1) == -2);
}

TEST_CASE("field matrices parse element literals") {
    Json j;
    j["field"] = Json{{"poly", Json::array({-2, 0, 1})}};
    j["rows"] = Json::array({Json::array({"x", "1 - x"})});
    ParsedMatrix pm = matrix_from_json(j);
    REQUIRE_FALSE(pm.over_Q);
    REQUIRE(pm.nfmat.rows == 1);
    REQUIRE(pm.nfmat.cols == 2);
    CHECK(pm.nfmat.at(0, 0) == pm.field->gen());

    Json bad = j;
    bad["rows"] = Json::array({Json::array({"x"}), Json::array({"x", "x"})});
    CHECK_THROWS_AS(matrix_from_json(bad), Error);
}

TEST_CASE("instance files resolve parameters by mode") {
    Json j = synthetic_instance_json();
    LoadedInstance L = instance_from_json(j);
    CHECK(L.inst.mode == GSMode::synthetic);
    CHECK(L.params.m == 2);
    CHECK(L.params.n == 2);
    CHECK(L.params.t == 16);
    CHECK(L.params.rows() == 4);

    Json g = j;
    g["mode"] = "gelfond";
    g["beta"] = "x";
    g["gamma"] = "3/2";
    g["q"] = 12;
    g.erase("m");
    g.erase("n");
    LoadedInstance Lg = instance_from_json(g);
    CHECK(Lg.params.h == 2);
    CHECK(Lg.params.m == 6);
    CHECK(Lg.params.n == 12);
    CHECK(Lg.params.t == 144);
    CHECK(Lg.params.clearing_exponent() == 11 + 2 * 6 * 12);

    Json missing = j;
    missing.erase("alpha");
    CHECK_THROWS_AS(instance_from_json(missing), Error);
}

TEST_CASE("synthetic pipeline run is complete and deterministic") {
    Json j = synthetic_instance_json();
    PipelineOptions opts;
    PipelineOutcome out = run_pipeline(j, opts);
    REQUIRE(out.ok);
    CHECK(out.r == 2);
    CHECK(out.l0 == 1);

    const Json& rep = out.report;
    CHECK(rep["injectivity"] == false);
    CHECK(rep["injectivity_on_support"] == true);
    CHECK(rep["eta"]["substituted"] == true);
    CHECK(rep["eq7"]["overlap"] == true);
    CHECK(rep["eq7"]["width_combined"].get<double>() < 1e-10);
    for (const auto& [k, v] : rep["hard_assertions"].items()) {
        INFO(k);
        CHECK(v.get<bool>());
    }

    PipelineOutcome again = run_pipeline(j, opts);
    Json a = out.report, b = again.report;
    a.erase("timings");
    b.erase("timings");
    CHECK(a.dump() == b.dump());
}
