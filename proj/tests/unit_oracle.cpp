#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "rsacomb/oracle.hpp"
#include "test_util.hpp"

using namespace rsacomb;
using testutil::mkont;
using testutil::mkquery;
using testutil::row_set;

static const std::string kH = "@prefix : <http://e/> .\n";

TEST_CASE("bounded chase") {
    SECTION("empty tbox closes the abox under top and equality only") {
        auto r = oracle::chase(mkont(kH + "fact :A(:a) .\nfact :r(:a, :b) .\n"));
        CHECK(r.terminated);
        CHECK(r.depth_used == 0);
        CHECK(r.fact_texts() ==
              std::vector<std::string>{
                  "^eq(http://e/a, http://e/a)", "^eq(http://e/b, http://e/b)",
                  "^top(http://e/a)", "^top(http://e/b)", "c:http://e/A(http://e/a)",
                  "r:http://e/r(http://e/a, http://e/b)"});
    }
    SECTION("single existential chain terminates at depth one") {
        auto r = oracle::chase(
            mkont(kH + "fact :A(:a) .\nexists :A -> :r :B .\nsome :r :B -> :C .\n"));
        CHECK(r.terminated);
        CHECK(r.depth_used == 1);
        CHECK(r.has("c:http://e/C", {r.terms.constant("http://e/a")}));
        CHECK(r.has("r:http://e/r",
                    {r.terms.constant("http://e/a"),
                     r.terms.apply("http://e/A,http://e/r,http://e/B",
                                   r.terms.constant("http://e/a"))}));
    }
    SECTION("a recursive existential truncates at the depth bound") {
        auto o = mkont(kH + "fact :A(:a) .\nexists :A -> :r :A .\n");
        auto r = oracle::chase(o, 3);
        CHECK_FALSE(r.terminated);
        CHECK(r.depth_used == 3);
        int t = r.terms.constant("http://e/a");
        for (int d = 0; d < 3; ++d) t = r.terms.apply("http://e/A,http://e/r,http://e/A", t);
        CHECK(r.has("c:http://e/A", {t}));
        // monotone in depth
        auto shallow = oracle::chase(o, 2).fact_texts();
        auto deep = r.fact_texts();
        CHECK(std::includes(deep.begin(), deep.end(), shallow.begin(), shallow.end()));
    }
    SECTION("nominals merge and congruence propagates") {
        auto r = oracle::chase(
            mkont(kH + "fact :A(:a) .\nfact :B(:b) .\nnominal :A -> :b .\n"));
        int a = r.terms.constant("http://e/a"), b = r.terms.constant("http://e/b");
        CHECK(r.has("^eq", {a, b}));
        CHECK(r.has("^eq", {b, a}));
        CHECK(r.has("c:http://e/A", {b}));
        CHECK(r.has("c:http://e/B", {a}));
    }
    SECTION("max-1 merges role successors") {
        auto r = oracle::chase(mkont(kH +
                                     "fact :r(:a, :b) .\nfact :r(:a, :c) .\n"
                                     "fact :B(:b) .\nfact :B(:c) .\nfact :E(:a) .\n"
                                     "max1 :E :r :B .\n"));
        CHECK(r.has("^eq", {r.terms.constant("http://e/b"), r.terms.constant("http://e/c")}));
    }
    SECTION("inverse roles in existentials and subroles") {
        auto r = oracle::chase(mkont(kH +
                                     "fact :A(:a) .\nexists :A -> :r- :B .\n"
                                     "sub-role :r :s- .\n"));
        int a = r.terms.constant("http://e/a");
        int f = r.terms.apply("http://e/A,http://e/r-,http://e/B", a);
        CHECK(r.has("r:http://e/r", {f, a}));
        CHECK(r.has("r:http://e/s", {a, f}));
    }
    SECTION("bottom marks unsatisfiability") {
        auto r = oracle::chase(mkont(kH + "fact :A(:a) .\nsub-class :A -> BOTTOM .\n"));
        CHECK_FALSE(r.satisfiable());
        CHECK(oracle::chase(mkont(kH + "fact :A(:a) .\n")).satisfiable());
    }
    SECTION("unions are rejected") {
        CHECK_THROWS_AS(oracle::chase(mkont(kH + "sub-class :A -> :B | :C .\n")),
                        std::invalid_argument);
    }
}

TEST_CASE("certain answers over the chase") {
    SECTION("empty ontology yields no answers") {
        auto as = oracle::certain_answers_chase(Ontology{},
                                                mkquery("SELECT ?x WHERE { ?x a <http://e/A> . }"));
        CHECK(as.rows.empty());
        CHECK(as.exact);
    }
    SECTION("fork query identifies each root with itself only") {
        auto o = mkont(kH + "fact :A(:a) .\nfact :A(:b) .\nexists :A -> :r :B .\n");
        auto q = mkquery(
            "PREFIX : <http://e/>\nSELECT ?x ?z WHERE { ?x :r ?y . ?z :r ?y . }");
        auto as = oracle::certain_answers_chase(o, q);
        CHECK(as.exact);
        CHECK(row_set(as.rows) ==
              std::set<std::vector<std::string>>{{"http://e/a", "http://e/a"},
                                                 {"http://e/b", "http://e/b"}});
    }
    SECTION("answer variables skip anonymous terms") {
        auto o = mkont(kH + "fact :A(:a) .\nexists :A -> :r :A .\n");
        auto as = oracle::certain_answers_chase(
            o, mkquery("PREFIX : <http://e/>\nSELECT ?x WHERE { ?x a :A . }"));
        CHECK_FALSE(as.exact);
        CHECK(row_set(as.rows) == std::set<std::vector<std::string>>{{"http://e/a"}});
    }
    SECTION("constants and ask queries") {
        auto o = mkont(kH + "fact :r(:a, :b) .\n");
        auto as = oracle::certain_answers_chase(
            o, mkquery("PREFIX : <http://e/>\nSELECT ?x WHERE { ?x :r :b . }"));
        CHECK(row_set(as.rows) == std::set<std::vector<std::string>>{{"http://e/a"}});
        auto yes = oracle::certain_answers_chase(
            o, mkquery("PREFIX : <http://e/>\nASK WHERE { :a :r ?y . }"));
        CHECK(yes.rows == std::vector<std::vector<std::string>>{{}});
        auto no = oracle::certain_answers_chase(
            o, mkquery("PREFIX : <http://e/>\nASK WHERE { :b :r ?y . }"));
        CHECK(no.rows.empty());
    }
    SECTION("merged individuals answer through their representatives") {
        auto o = mkont(kH + "fact :A(:a) .\nfact :B(:b) .\nnominal :A -> :b .\n");
        auto as = oracle::certain_answers_chase(
            o, mkquery("PREFIX : <http://e/>\nSELECT ?x WHERE { ?x a :B . }"));
        CHECK(row_set(as.rows) ==
              std::set<std::vector<std::string>>{{"http://e/a"}, {"http://e/b"}});
    }
}

TEST_CASE("disjunctive model enumeration") {
    using oracle::GroundRule;
    SECTION("constraint prunes one disjunct") {
        std::vector<GroundRule> p{{{}, {"A"}}, {{}, {"D"}}, {{"A"}, {"B", "C"}},
                                  {{"B", "D"}, {}}};
        CHECK(oracle::disjunctive_certain(p, {"A", "B", "C", "D"}) ==
              std::vector<std::string>{"A", "C", "D"});
    }
    SECTION("a free disjunction certifies neither side") {
        std::vector<GroundRule> p{{{}, {"A"}}, {{"A"}, {"B", "C"}}};
        CHECK(oracle::disjunctive_certain(p, {"B", "C"}).empty());
    }
    SECTION("horn programs behave like their closure") {
        std::vector<GroundRule> p{{{}, {"A"}}, {{"A"}, {"B"}}, {{"C"}, {"D"}}};
        CHECK(oracle::disjunctive_certain(p, {"A", "B", "C", "D"}) ==
              std::vector<std::string>{"A", "B"});
    }
    SECTION("an unsatisfiable program certifies everything") {
        std::vector<GroundRule> p{{{}, {"A"}}, {{"A"}, {}}};
        CHECK(oracle::disjunctive_certain(p, {"A", "Z"}) ==
              std::vector<std::string>{"A", "Z"});
    }
    SECTION("the atom limit is enforced") {
        std::vector<GroundRule> p;
        for (int i = 0; i < 17; ++i) p.push_back(oracle::ground_fact("a" + std::to_string(i)));
        CHECK_THROWS_AS(oracle::disjunctive_certain(p, {}), std::invalid_argument);
    }
    SECTION("grounding an ontology with a disjunction") {
        auto o = mkont(kH +
                       "sub-class :A -> :B | :C .\nsub-class :B & :D -> BOTTOM .\n"
                       "fact :A(:a) .\nfact :D(:a) .\n");
        auto rules = oracle::ground_rules(o);
        auto certain = oracle::disjunctive_certain(
            rules, {"http://e/B(http://e/a)", "http://e/C(http://e/a)"});
        CHECK(certain == std::vector<std::string>{"http://e/C(http://e/a)"});
    }
    SECTION("grounding rejects existentials") {
        CHECK_THROWS_AS(oracle::ground_rules(mkont(kH + "exists :A -> :r :B .\n")),
                        std::invalid_argument);
    }
}
