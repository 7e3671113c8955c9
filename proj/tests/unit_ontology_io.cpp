#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "rsacomb/text.hpp"
#include "test_util.hpp"

using namespace rsacomb;

static const std::string kHeader = "@prefix : <http://example.org/> .\n";

TEST_CASE("ontology statements parse to the expected axioms") {
    auto p = parse_ontology(kHeader +
                            "# a comment\n"
                            "sub-role :r :s- .\n"
                            "sub-class :A & :B -> :C .\n"
                            "sub-class :A -> :B | :C .\n"
                            "nominal :A -> :a .\n"
                            "some :r- :A -> :B .\n"
                            "max1 :A :r :B .\n"
                            "exists :A -> :r :B .\n"
                            "exists TOP -> :r :B .\n"
                            "fact :A(:a) .\n"
                            "fact :r(:a, :b) .\n");
    REQUIRE(p.ok());
    const auto& ax = p.ontology.axioms();
    REQUIRE(ax.size() == 10);
    CHECK(ax[0].kind == AxiomKind::SubRole);
    CHECK(ax[0].r2.inv);
    CHECK(ax[1].kind == AxiomKind::SubClass);
    CHECK(ax[1].lhs == std::vector<std::string>{"http://example.org/A", "http://example.org/B"});
    CHECK(ax[2].kind == AxiomKind::Union);
    CHECK(ax[2].rhs.size() == 2);
    CHECK(ax[3].kind == AxiomKind::Nominal);
    CHECK(ax[4].kind == AxiomKind::SomeValues);
    CHECK(ax[4].r1.inv);
    CHECK(ax[5].kind == AxiomKind::MaxOne);
    CHECK(ax[6].kind == AxiomKind::Exists);
    CHECK(ax[7].a == kTop);
    CHECK(ax[8].kind == AxiomKind::ConceptFact);
    CHECK(ax[9].kind == AxiomKind::RoleFact);
    CHECK(p.ontology.has_union());
    CHECK(validate(p.ontology).ok());       // union is a note, not a violation
    CHECK(!validate(p.ontology).empty());   // but it is reported
}

TEST_CASE("inverse role assertions normalize to the name form") {
    auto p = parse_ontology(kHeader + "fact :r-(:a, :b) .\n");
    REQUIRE(p.ok());
    const Axiom& x = p.ontology.axioms()[0];
    CHECK(!x.r1.inv);
    CHECK(x.ind == "http://example.org/b");
    CHECK(x.ind2 == "http://example.org/a");
}

TEST_CASE("parse errors carry positions and expectations") {
    SECTION("missing close paren") {
        auto p = parse_ontology(kHeader + "fact :r(:a :b .\n");
        REQUIRE(!p.ok());
        CHECK(p.errors[0].span.line == 2);
        CHECK(p.errors[0].message.find("expected") != std::string::npos);
        CHECK(!p.errors[0].expected.empty());
    }
    SECTION("unknown prefix") {
        auto p = parse_ontology("fact ex:A(ex:a) .\n");
        REQUIRE(!p.ok());
        CHECK(p.errors[0].message.find("unknown prefix") != std::string::npos);
        CHECK(p.errors[0].span.line == 1);
    }
    SECTION("duplicate prefix") {
        auto p = parse_ontology("@prefix : <http://a/> .\n@prefix : <http://b/> .\n");
        REQUIRE(!p.ok());
        CHECK(p.errors[0].span.line == 2);
    }
    SECTION("missing terminator") {
        auto p = parse_ontology(kHeader + "sub-role :r :s\n");
        REQUIRE(!p.ok());
        CHECK(p.errors[0].message == "expected '.' at end of statement");
    }
    SECTION("unknown keyword") {
        auto p = parse_ontology("frob :a .\n");
        REQUIRE(!p.ok());
    }
    SECTION("reserved name as individual") {
        auto p = parse_ontology(kHeader + "nominal :A -> TOP .\n");
        REQUIRE(!p.ok());
    }
    SECTION("union with conjunctive left side") {
        auto p = parse_ontology(kHeader + "sub-class :A & :B -> :C | :D .\n");
        REQUIRE(!p.ok());
    }
    SECTION("file name is stamped") {
        auto p = parse_ontology("frob .\n", "input.nha");
        REQUIRE(!p.ok());
        CHECK(p.errors[0].span.file == "input.nha");
        CHECK(p.errors[0].render().find("input.nha:1:") == 0);
    }
    SECTION("errors do not stop later statements") {
        auto p = parse_ontology(kHeader + "frob .\nfact :A(:a) .\n");
        CHECK(p.errors.size() == 1);
        CHECK(p.ontology.axioms().size() == 1);
    }
}

TEST_CASE("serialization round-trips and is byte-stable") {
    auto p = parse_ontology(kHeader +
                            "sub-role :r :s- .\n"
                            "sub-class :A & :B -> :C .\n"
                            "sub-class :A -> :B | :C .\n"
                            "nominal :A -> :a .\n"
                            "some :r- TOP -> :B .\n"
                            "max1 :A :r- :B .\n"
                            "exists :A -> :r :B .\n"
                            "sub-class :A -> BOTTOM .\n"
                            "fact :A(:a) .\n"
                            "fact :r(:a, :b) .\n");
    REQUIRE(p.ok());
    std::string s1 = serialize_ontology(p.ontology);
    auto p2 = parse_ontology(s1);
    REQUIRE(p2.ok());
    CHECK(p2.ontology == p.ontology);
    CHECK(serialize_ontology(p2.ontology) == s1);
}

TEST_CASE("random ontologies round-trip") {
    std::mt19937 rng(99);
    auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
    auto concept_name = [&]() -> std::string {
        int k = pick(8);
        if (k == 6) return kTop;
        if (k == 7) return kBottom;
        return "http://ex/C" + std::to_string(k);
    };
    auto plain_concept = [&]() { return "http://ex/C" + std::to_string(pick(6)); };
    auto role = [&]() { return RoleExpr{"http://ex/r" + std::to_string(pick(4)), pick(2) == 1}; };
    auto ind = [&]() { return "http://ex/i" + std::to_string(pick(5)); };
    for (int trial = 0; trial < 50; ++trial) {
        Ontology o;
        int n = 1 + pick(12);
        for (int i = 0; i < n; ++i) {
            switch (pick(9)) {
                case 0: o.add(Axiom::sub_role(role(), role())); break;
                case 1: {
                    std::vector<std::string> lhs{concept_name()};
                    for (int j = pick(3); j > 0; --j) lhs.push_back(concept_name());
                    o.add(Axiom::sub_class(lhs, concept_name()));
                    break;
                }
                case 2: {
                    std::vector<std::string> ds{plain_concept(), plain_concept()};
                    if (pick(2)) ds.push_back(plain_concept());
                    o.add(Axiom::union_of(plain_concept(), ds));
                    break;
                }
                case 3: o.add(Axiom::nominal(plain_concept(), ind())); break;
                case 4: o.add(Axiom::some_values(role(), concept_name(), concept_name())); break;
                case 5: o.add(Axiom::max_one(concept_name(), role(), concept_name())); break;
                case 6: o.add(Axiom::exists(concept_name(), role(), concept_name())); break;
                case 7: o.add(Axiom::concept_fact(plain_concept(), ind())); break;
                case 8: o.add(Axiom::role_fact(role().name, ind(), ind())); break;
            }
        }
        std::string s = serialize_ontology(o);
        auto p = parse_ontology(s);
        REQUIRE(p.ok());
        CHECK(p.ontology == o);
        CHECK(serialize_ontology(p.ontology) == s);
    }
}

TEST_CASE("validate flags malformed axioms") {
    Ontology o;
    Axiom x = Axiom::role_fact("http://ex/r", "http://ex/a", "http://ex/b");
    x.r1.inv = true;
    o.add(x);
    auto rep = validate(o);
    CHECK(!rep.ok());
}

TEST_CASE("queries parse per the published grammar") {
    SECTION("select with type and role atoms") {
        auto p = parse_query(
            "PREFIX ub: <http://swat.cse.lehigh.edu/onto/univ-bench.owl#>\n"
            "SELECT ?X WHERE { ?Y ub:member ?X . ?Y a ub:ResearchGroup }\n");
        REQUIRE(p.ok());
        CHECK(p.query.answer_vars == std::vector<std::string>{"X"});
        REQUIRE(p.query.atoms.size() == 2);
        CHECK(p.query.atoms[0].binary);
        CHECK(p.query.atoms[0].pred == "http://swat.cse.lehigh.edu/onto/univ-bench.owl#member");
        CHECK(!p.query.atoms[1].binary);
        CHECK(p.query.atoms[1].pred ==
              "http://swat.cse.lehigh.edu/onto/univ-bench.owl#ResearchGroup");
        CHECK(p.query.bound_vars() == std::vector<std::string>{"Y"});
    }
    SECTION("rdf:type expands to a concept atom") {
        auto p = parse_query(
            "PREFIX rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#>\n"
            "PREFIX : <http://ex/>\n"
            "SELECT ?X WHERE { ?X rdf:type :A }\n");
        REQUIRE(p.ok());
        CHECK(!p.query.atoms[0].binary);
        CHECK(p.query.atoms[0].pred == "http://ex/A");
    }
    SECTION("ask and zero-variable select are boolean queries") {
        auto pa = parse_query("PREFIX : <http://ex/>\nASK WHERE { ?X a :A . }\n");
        REQUIRE(pa.ok());
        CHECK(pa.query.answer_vars.empty());
        CHECK(pa.query.bound_vars() == std::vector<std::string>{"X"});
        auto ps = parse_query("PREFIX : <http://ex/>\nSELECT WHERE { ?X a :A }\n");
        REQUIRE(ps.ok());
        CHECK(ps.query.answer_vars.empty());
    }
    SECTION("constants and full iris are allowed in term positions") {
        auto p = parse_query(
            "SELECT ?X WHERE { ?X <http://ex/r> <http://ex/b> . <http://ex/a> <http://ex/r> ?X }\n");
        REQUIRE(p.ok());
        CHECK(p.query.atoms[0].t.name == "http://ex/b");
        CHECK(!p.query.atoms[0].t.is_var);
    }
    SECTION("self loop has one answer var and no bound vars") {
        auto p = parse_query("PREFIX : <http://ex/>\nSELECT ?X WHERE { ?X :r ?X . }\n");
        REQUIRE(p.ok());
        CHECK(p.query.bound_vars().empty());
    }
    SECTION("errors") {
        CHECK(!parse_query("SELECT ?X WHERE { ?X ?p ?Y }\n").ok());  // var predicate
        CHECK(!parse_query("PREFIX : <http://ex/>\nSELECT ?X ?X WHERE { ?X a :A }\n").ok());
        CHECK(!parse_query("PREFIX : <http://ex/>\nSELECT ?Z WHERE { ?X a :A }\n").ok());
        CHECK(!parse_query("SELECT ?X WHERE { }\n").ok());
        CHECK(!parse_query("PREFIX : <http://ex/>\nSELECT ?X WHERE { ?X a ?Y }\n").ok());
        CHECK(!parse_query("SELECT ?X WHERE { ?X un:known ?Y }\n").ok());
        CHECK(!parse_query("PREFIX : <http://ex/>\nSELECT ?X WHERE { ?X :r ?Y \n").ok());
    }
}

TEST_CASE("answer emission is sorted and byte-stable") {
    AnswerSet as;
    as.vars = {"X", "Y"};
    as.rows = {{"http://ex/b", "http://ex/a"}, {"http://ex/a", "http://ex/b"}};
    CHECK(emit_answers(as, "tsv") ==
          "X\tY\n<http://ex/a>\t<http://ex/b>\n<http://ex/b>\t<http://ex/a>\n");
    std::string j = emit_answers(as, "json");
    auto parsed = nlohmann::json::parse(j);
    CHECK(parsed["vars"] == nlohmann::json({"X", "Y"}));
    CHECK(parsed["count"] == 2);
    CHECK(parsed["exact"] == true);
    CHECK(parsed["rows"][0][0] == "http://ex/a");
    CHECK(parsed["schema"] == 1);

    AnswerSet empty;
    empty.vars = {"X"};
    CHECK(emit_answers(empty, "tsv") == "X\n");

    AnswerSet bcq;  // boolean query, entailed: one empty row under an empty header
    bcq.rows = {{}};
    CHECK(emit_answers(bcq, "tsv") == "\n\n");
}
