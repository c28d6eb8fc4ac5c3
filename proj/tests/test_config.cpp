#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "scarlab/basis.hpp"
#include "scarlab/config.hpp"
#include "scarlab/errors.hpp"
#include "scarlab/lattice.hpp"

TEST_SUITE_BEGIN("config");

using namespace scarlab;

TEST_CASE("configs survive a dump and parse round trip") {
    RunConfig c;
    c.experiment = Experiment::fsa;
    c.model.lattice = {LatticeKind::honeycomb, 3, 3, Boundary::periodic};
    c.model.freq.mode = FreqSpec::Mode::sublattice;
    c.model.freq.omega_a = 0.85;
    c.model.deform = Deformation{0.03, 0.061};
    c.numeric.t_max = 12.5;
    c.fsa.su2_compare = true;
    c.fsa.scan_a = GridSpec{0.0, 0.05, 0.01};
    c.fsa.scan_b = GridSpec{0.04, 0.07, 0.01};
    c.output.prefix = "roundtrip";
    RunConfig back = parse_config(dump_config(c));
    CHECK(back.experiment == Experiment::fsa);
    CHECK(back.model.lattice.kind == LatticeKind::honeycomb);
    CHECK(back.model.freq.mode == FreqSpec::Mode::sublattice);
    CHECK(back.model.freq.omega_a == 0.85);
    REQUIRE(back.model.deform.has_value());
    CHECK(back.model.deform->a == 0.03);
    CHECK(back.model.deform->b == 0.061);
    CHECK(back.numeric.t_max == 12.5);
    CHECK(back.fsa.su2_compare);
    REQUIRE(back.fsa.scan_a.has_value());
    CHECK(back.fsa.scan_a->step == 0.01);
    REQUIRE(back.fsa.scan_b.has_value());
    CHECK(back.fsa.scan_b->start == 0.04);
    CHECK(back.output.prefix == "roundtrip");
    CHECK(dump_config(back) == dump_config(c));
    CHECK(config_hash(back) == config_hash(c));
}

TEST_CASE("unknown keys are rejected at every level") {
    CHECK_THROWS_AS(parse_config(R"({"experimnt": "evolve"})"), ValidationError);
    CHECK_THROWS_AS(parse_config(R"({"model": {"lattce": {}}})"), ValidationError);
    CHECK_THROWS_AS(parse_config(R"({"model": {"lattice": {"knd": "square"}}})"),
                    ValidationError);
    CHECK_THROWS_AS(parse_config(R"({"numeric": {"dt": 0.01, "bogus": 1}})"),
                    ValidationError);
    CHECK_THROWS_AS(parse_config(R"({"output": {"prefx": "x"}})"), ValidationError);
    CHECK_THROWS_AS(parse_config(R"({"tdvp": {"episolon": 0.0}})"), ValidationError);
    // Malformed JSON is a validation failure, not a crash.
    CHECK_THROWS_AS(parse_config("{"), ValidationError);
}

TEST_CASE("parsed values are range checked") {
    CHECK_THROWS_AS(parse_config(R"({"numeric": {"dt": -0.5}})"), ValidationError);
    CHECK_THROWS_AS(parse_config(R"({"numeric": {"t_max": 0.0}})"), ValidationError);
    CHECK_THROWS_AS(parse_config(R"({"model": {"lattice": {"lx": 0}}})"), ValidationError);
    CHECK_THROWS_AS(parse_config(R"({"experiment": "frobnicate"})"), ValidationError);
    CHECK_THROWS_AS(parse_config(R"({"optimize": {"max_evals": 0}})"), ValidationError);
}

TEST_CASE("grid specs expand inclusively") {
    GridSpec g{0.0, 0.05, 0.01};
    std::vector<double> p = g.points();
    REQUIRE(p.size() == 6);
    CHECK(p.front() == 0.0);
    CHECK(p.back() == doctest::Approx(0.05));
    GridSpec single{0.7, 0.7, 0.1};
    CHECK(single.points().size() == 1);
}

TEST_CASE("preset catalog names every packaged experiment") {
    std::vector<PresetInfo> cat = list_presets();
    const char* expected[] = {"fig1b-4x4", "fig2b",  "fig2c",  "fig3b-4x4",
                              "figS1",     "figS2",  "figS3",  "figS5",
                              "figS6",     "honeycomb18", "honeycomb32"};
    for (const char* name : expected) {
        bool found = false;
        for (const PresetInfo& info : cat)
            if (info.name == name) {
                found = true;
                CHECK(!info.description.empty());
            }
        CHECK_MESSAGE(found, name);
    }
    // Every catalog entry resolves to a valid config.
    for (const PresetInfo& info : cat) {
        RunConfig c = preset_config(info.name);
        CHECK(c.preset == info.name);
        validate(c);
    }
}

TEST_CASE("unknown presets suggest the nearest name") {
    try {
        preset_config("figS66");
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("figS6") != std::string::npos);
    }
}

TEST_CASE("experiment names match the subcommand spellings") {
    CHECK(std::string(experiment_name(Experiment::evolve)) == "evolve");
    CHECK(std::string(experiment_name(Experiment::spectrum)) == "spectrum");
    CHECK(std::string(experiment_name(Experiment::fsa)) == "fsa");
    CHECK(std::string(experiment_name(Experiment::tdvp)) == "tdvp");
    CHECK(std::string(experiment_name(Experiment::optimize)) == "optimize");
    CHECK(std::string(experiment_name(Experiment::scan)) == "scan");
}

TEST_CASE("config hash is stable and key-order independent") {
    RunConfig a = preset_config("fig1b-4x4");
    RunConfig b = preset_config("fig1b-4x4");
    CHECK(config_hash(a) == config_hash(b));
    CHECK(config_hash_hex(a).size() == 16);
    // A one-knob change moves the hash.
    b.numeric.dt = 0.02;
    CHECK(config_hash(a) != config_hash(b));
    // The same document with reordered keys parses to the same hash.
    RunConfig x = parse_config(R"({"experiment": "tdvp", "numeric": {"t_max": 5.0}})");
    RunConfig y = parse_config(R"({"numeric": {"t_max": 5.0}, "experiment": "tdvp"})");
    CHECK(config_hash(x) == config_hash(y));
}

TEST_CASE("frequency schemes resolve site by site") {
    SiteGraph g = build_lattice({LatticeKind::square, 4, 4, Boundary::open});

    FreqSpec uni;
    uni.uniform = 0.9;
    std::vector<double> u = resolve_freq(g, uni);
    for (double v : u) CHECK(v == 0.9);

    FreqSpec cls;
    cls.mode = FreqSpec::Mode::site_class;
    cls.corner = 0.88;
    cls.edge = 0.97;
    cls.bulk = 1.0;
    std::vector<double> c = resolve_freq(g, cls);
    int corners = 0, edges = 0, bulks = 0;
    for (int r = 0; r < g.n_sites; ++r) {
        size_t deg = g.adjacency[r].size();
        double want = deg == 2 ? 0.88 : deg == 3 ? 0.97 : 1.0;
        CHECK(c[r] == want);
        (deg == 2 ? corners : deg == 3 ? edges : bulks)++;
    }
    CHECK(corners == 4);
    CHECK(edges == 8);
    CHECK(bulks == 4);

    FreqSpec sub;
    sub.mode = FreqSpec::Mode::sublattice;
    sub.omega_a = 0.8;
    sub.omega_b = 1.1;
    std::vector<double> s = resolve_freq(g, sub);
    for (int r = 0; r < g.n_sites; ++r)
        CHECK(s[r] == (g.sublattice[r] == Sublattice::A ? 0.8 : 1.1));
}

TEST_CASE("model resolution carries the deformation through") {
    SiteGraph g = build_lattice({LatticeKind::square, 3, 3, Boundary::open});
    ModelConfig mc;
    mc.lattice = {LatticeKind::square, 3, 3, Boundary::open};
    mc.deform = Deformation{0.02, 0.05};
    ModelSpec spec = resolve_model(g, mc);
    REQUIRE(spec.freq.size() == static_cast<size_t>(g.n_sites));
    REQUIRE(spec.deform.has_value());
    CHECK(spec.deform->a == 0.02);
    CHECK(spec.deform->b == 0.05);
    ModelConfig bare;
    bare.lattice = mc.lattice;
    ModelSpec plain = resolve_model(g, bare);
    CHECK((!plain.deform || (plain.deform->a == 0.0 && plain.deform->b == 0.0)));
}

TEST_SUITE_END();
