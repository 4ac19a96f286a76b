#include <random>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"

using namespace asmell;
using fixture::throws_kind;

TEST_SUITE("graph") {

TEST_CASE("duplicate edges collapse") {
    const auto g = build_graph(Level::Component, {{{Level::Component, "A"}}, {{Level::Component, "B"}}},
                               {{"A", "B"}, {"A", "B"}});
    CHECK(g.edge_count() == 1);
    CHECK(g.has_edge(g.index_of("A"), g.index_of("B")));
}

TEST_CASE("self loops are dropped") {
    const auto g = build_graph(Level::Component, {{{Level::Component, "A"}}}, {{"A", "A"}});
    CHECK(g.node_count() == 1);
    CHECK(g.edge_count() == 0);
}

TEST_CASE("construction errors") {
    CHECK(throws_kind([] { build_graph(Level::Component, {{{Level::Component, "A"}}}, {{"A", "B"}}); },
                      ErrorKind::DanglingEdge));
    CHECK(throws_kind([] { build_graph(Level::Component, {{{Level::File, "a.c"}, 1, "c"}}, {}); },
                      ErrorKind::LevelMismatch));
    CHECK(throws_kind(
        [] { build_graph(Level::Component, {{{Level::Component, "A"}}, {{Level::Component, "A"}}}, {}); },
        ErrorKind::DuplicateNode));
}

TEST_CASE("nodes are ordered by path and adjacency is sorted") {
    const auto g = fixture::components({{"zeta", 1}, {"alpha", 2}, {"mid", 3}},
                                       {{"zeta", "mid"}, {"zeta", "alpha"}, {"alpha", "zeta"}});
    REQUIRE(g.node_count() == 3);
    CHECK(g.node(0).path == "alpha");
    CHECK(g.node(2).path == "zeta");
    const auto succ = g.successors(2);
    REQUIRE(succ.size() == 2);
    CHECK(succ[0] < succ[1]);
    CHECK(check_invariants(g).empty());
}

TEST_CASE("projection onto components") {
    SUBCASE("two-way file edges give a component cycle") {
        const auto f = fixture::files({{"c1/a.c", "C1"}, {"c2/b.c", "C2"}}, {{"c1/a.c", "c2/b.c"}, {"c2/b.c", "c1/a.c"}});
        const auto c = project_to_components(f);
        CHECK(c.level() == Level::Component);
        CHECK(c.edge_count() == 2);
        CHECK(c.has_edge(c.index_of("C1"), c.index_of("C2")));
        CHECK(c.has_edge(c.index_of("C2"), c.index_of("C1")));
    }
    SUBCASE("intra-component edges vanish") {
        const auto f = fixture::files({{"c1/a.c", "C1"}, {"c1/b.c", "C1"}}, {{"c1/a.c", "c1/b.c"}});
        const auto c = project_to_components(f);
        CHECK(c.node_count() == 1);
        CHECK(c.edge_count() == 0);
    }
    SUBCASE("component loc is the sum of its files") {
        const auto f = fixture::files({{"c1/a.c", "C1", 10}, {"c1/b.c", "C1", 5}}, {});
        CHECK(project_to_components(f).node(0).loc == 15);
    }
    SUBCASE("files without a component are rejected") {
        const auto f = build_graph(Level::File, {{{Level::File, "a.c"}, 1, std::nullopt}}, {});
        CHECK(throws_kind([&] { project_to_components(f); }, ErrorKind::MissingComponent));
    }
}

TEST_CASE("projection properties on random graphs") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + rng() % 40;
        const std::size_t k = 1 + rng() % 6;
        std::vector<fixture::FileSpec> specs;
        for (std::size_t i = 0; i < n; ++i) specs.push_back({fixture::name(i), "C" + std::to_string(rng() % k), 1});
        std::vector<EdgeSpec> edges;
        for (auto [a, b] : fixture::random_edges(rng, n, 0.08)) edges.emplace_back(fixture::name(a), fixture::name(b));
        const auto f = fixture::files(specs, edges);
        const auto c = project_to_components(f);
        CHECK(c.edge_count() <= f.edge_count());
        CHECK(save_graph(c) == save_graph(project_to_components(f)));
        // Every component edge has a witnessing file edge, and every crossing file edge is represented.
        std::set<std::pair<std::string, std::string>> witnessed;
        for (auto [a, b] : f.edges()) {
            const auto& ca = *f.node(a).component;
            const auto& cb = *f.node(b).component;
            if (ca != cb) witnessed.emplace(ca, cb);
        }
        std::set<std::pair<std::string, std::string>> projected;
        for (auto [a, b] : c.edges()) projected.emplace(c.node(a).path, c.node(b).path);
        CHECK(projected == witnessed);
    }
}

TEST_CASE("interchange round trip") {
    const auto f = fixture::files({{"src/a b.c", "core lib", 12}, {"src/x%y.c", "core lib", 3}, {"util/u.c", "util", 0}},
                                  {{"src/a b.c", "util/u.c"}, {"src/x%y.c", "src/a b.c"}}, 4);
    const auto text = save_graph(f);
    const auto back = load_graph(text, Level::File, 4);
    CHECK(structurally_equal(f, back));
    CHECK(back.version_label() == "v4");
    CHECK(save_graph(back) == text);

    const auto c = project_to_components(f);
    CHECK(structurally_equal(c, load_graph(save_graph(c))));
}

TEST_CASE("two-node one-edge round trip") {
    const auto g = fixture::components({{"A", 1}, {"B", 2}}, {{"A", "B"}});
    CHECK(structurally_equal(g, load_graph(save_graph(g))));
}

TEST_CASE("loader errors carry line numbers") {
    try {
        load_graph(std::string_view("V x\nN component A 1\nQ what\n"));
        FAIL("expected FormatError");
    } catch (const FormatError& e) {
        CHECK(e.line() == 3);
        CHECK(e.kind() == ErrorKind::FormatError);
    }
    CHECK_THROWS_AS(load_graph(std::string_view("N component A x\n")), FormatError);
    CHECK_THROWS_AS(load_graph(std::string_view("N component A 1\nN file a.c 1 A\n")), FormatError);
    CHECK_THROWS_AS(load_graph(std::string_view("N component A 1\nE A B\n")), FormatError);
}

TEST_CASE("empty input") {
    const auto g = load_graph(std::string_view(""));
    CHECK(g.empty());
    CHECK(g.level() == Level::File);
    const auto commented = load_graph(std::string_view("# nothing here\n\n"));
    CHECK(commented.empty());
}

TEST_CASE("graph files take version and level from the name") {
    fixture::TempDir dir("graphfile");
    const auto g = fixture::components({{"A", 1}, {"B", 2}}, {{"A", "B"}}, 3);
    save_graph_file(g, dir / "3.cgraph");
    const auto back = load_graph_file(dir / "3.cgraph");
    CHECK(back.version_index() == 3);
    CHECK(structurally_equal(g, back));

    dir.write("5.cgraph", "");
    const auto empty = load_graph_file(dir / "5.cgraph");
    CHECK(empty.level() == Level::Component);
    CHECK(empty.version_index() == 5);
    CHECK(throws_kind([&] { load_graph_file(dir / "missing.fgraph"); }, ErrorKind::IoError));
}

TEST_CASE("token encoding") {
    for (std::string raw : {"plain", "with space", "tab\there", "100%", "cr\rlf\n", ""}) {
        CHECK(decode_token(encode_token(raw), 1) == raw);
    }
    CHECK(encode_token("a b").find(' ') == std::string::npos);
}

}  // TEST_SUITE
