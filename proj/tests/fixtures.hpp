#pragma once

// Shared fixture corpus for the integration and acceptance suites.  Each
// fixture carries its ontology text, its query texts and the expected
// structural verdicts; the corpus linter test enforces every declared flag,
// so the suites can rely on them without re-deriving anything.

#include <string>
#include <vector>

namespace fixtures {

struct Fixture {
    std::string name;
    std::string ontology;              // ontology statement text
    std::vector<std::string> queries;  // query texts
    bool rsa = true;                   // expected membership verdict
    bool terminating = true;           // the bounded chase reaches a fixpoint
    bool satisfiable = true;
};

inline const std::string kP = "@prefix : <http://ex/> .\n";
inline const std::string kQ = "PREFIX : <http://ex/>\n";

inline std::string sel(const std::string& body) { return kQ + body + "\n"; }

// --- fixtures inside the class ------------------------------------------------

inline const std::vector<Fixture>& rsa_corpus() {
    static const std::vector<Fixture> all = {
        {"taxonomy",
         kP +
             "fact :A(:a) .\n"
             "fact :B(:b) .\n"
             "sub-class :A -> :B .\n"
             "sub-class :B -> :C .\n",
         {sel("SELECT ?x WHERE { ?x a :C }"), sel("SELECT ?x WHERE { ?x a :B }"),
          sel("ASK WHERE { ?x a :A }"), sel("SELECT ?x WHERE { ?x a :Z }")},
         true, true, true},
        {"chain1",
         kP +
             "fact :A(:a) .\n"
             "exists :A -> :r :B .\n"
             "sub-class :B -> :C .\n",
         {sel("SELECT ?x WHERE { ?x :r ?y . ?y a :C }"),
          sel("SELECT ?x ?y WHERE { ?x :r ?y }"),
          sel("ASK WHERE { ?x :r ?y . ?y a :B }")},
         true, true, true},
        {"fork",
         kP +
             "fact :A(:a) .\n"
             "fact :A(:b) .\n"
             "exists :A -> :r :B .\n",
         {sel("SELECT ?x ?z WHERE { ?x :r ?y . ?z :r ?y }"),
          sel("SELECT ?x WHERE { ?x :r ?y . ?y a :B }"), sel("ASK WHERE { ?y a :B }")},
         true, true, true},
        {"chain2",
         kP +
             "fact :A(:a) .\n"
             "exists :A -> :r :B .\n"
             "exists :B -> :s :C .\n"
             "sub-class :C -> :D .\n",
         {sel("SELECT ?x WHERE { ?x :r ?y . ?y :s ?z . ?z a :D }"),
          sel("ASK WHERE { ?x :r ?y . ?y :s ?z }"), sel("SELECT ?x WHERE { ?x a :D }"),
          sel("ASK WHERE { ?y :s ?y }")},
         true, true, true},
        {"inverse-exists",
         kP +
             "fact :A(:a) .\n"
             "exists :A -> :r- :B .\n"
             "sub-class :B -> :C .\n",
         {sel("ASK WHERE { ?x :r ?y }"), sel("SELECT ?y WHERE { ?x :r ?y }"),
          sel("SELECT ?x WHERE { ?x a :B }")},
         true, true, true},
        {"max1-named-merge",
         kP +
             "fact :A(:a) .\n"
             "fact :r(:a, :b) .\n"
             "fact :B(:b) .\n"
             "exists :A -> :r :B .\n"
             "max1 :A :r :B .\n",
         {sel("SELECT ?x ?y WHERE { ?x :r ?y }"),
          sel("SELECT ?y WHERE { ?x :r ?y . ?y a :B }"), sel("ASK WHERE { ?x :r ?x }")},
         true, true, true},
        {"nominal-merge",
         kP +
             "nominal :C -> :c .\n"
             "fact :A(:a) .\n"
             "exists :A -> :r :C .\n",
         {sel("SELECT ?x ?y WHERE { ?x :r ?y }"), sel("ASK WHERE { ?x :r :c }"),
          sel("SELECT ?x WHERE { ?x a :C }")},
         true, true, true},
        {"subrole",
         kP +
             "fact :A(:a) .\n"
             "exists :A -> :r :B .\n"
             "sub-role :r :t .\n"
             "fact :t(:c, :d) .\n",
         {sel("ASK WHERE { ?x :t ?y }"), sel("SELECT ?x ?y WHERE { ?x :t ?y }"),
          sel("SELECT ?x WHERE { ?x :t ?y . ?y a :B }")},
         true, true, true},
        {"somevalues",
         kP +
             "fact :r(:d, :e) .\n"
             "fact :B(:e) .\n"
             "fact :A(:a) .\n"
             "exists :A -> :r :B .\n"
             "some :r :B -> :C .\n",
         {sel("SELECT ?x WHERE { ?x a :C }"), sel("ASK WHERE { ?x a :C }"),
          sel("SELECT ?x ?y WHERE { ?x :r ?y }")},
         true, true, true},
        {"inv-subrole",
         kP +
             "fact :r(:a, :b) .\n"
             "fact :A(:a) .\n"
             "sub-role :r :s- .\n",
         {sel("SELECT ?x ?y WHERE { ?x :s ?y }"), sel("ASK WHERE { :b :s :a }"),
          sel("SELECT ?x WHERE { ?x :s ?y . ?y a :A }")},
         true, true, true},
        {"equality-fanin",
         kP +
             "fact :A(:a) .\n"
             "fact :r(:a, :b) .\n"
             "fact :r(:a, :c) .\n"
             "fact :B(:b) .\n"
             "fact :B(:c) .\n"
             "max1 :A :r :B .\n",
         {sel("SELECT ?x ?y WHERE { ?x :r ?y }"), sel("SELECT ?x WHERE { ?x a :B }"),
          sel("ASK WHERE { ?x :r :c }")},
         true, true, true},
        {"two-families",
         kP +
             "fact :A(:a) .\n"
             "exists :A -> :r :B .\n"
             "fact :D(:d) .\n"
             "exists :D -> :s :E .\n"
             "sub-class :B -> :C .\n"
             "sub-class :E -> :C .\n",
         {sel("SELECT ?x WHERE { ?x :r ?y . ?y a :C }"),
          sel("SELECT ?x WHERE { ?x :s ?y . ?y a :C }"),
          sel("ASK WHERE { ?x :r ?y . ?x :s ?z }")},
         true, true, true},
        {"top-lhs",
         kP +
             "fact :r(:a, :b) .\n"
             "sub-class TOP -> :P .\n",
         {sel("SELECT ?x WHERE { ?x a :P }"), sel("ASK WHERE { :a a :P }"),
          sel("SELECT ?x ?y WHERE { ?x :r ?y . ?x a :P }")},
         true, true, true},
        {"conj-body",
         kP +
             "sub-class :A & :B -> :C .\n"
             "fact :A(:a) .\n"
             "fact :B(:a) .\n"
             "fact :A(:b) .\n",
         {sel("SELECT ?x WHERE { ?x a :C }"), sel("ASK WHERE { ?x a :C }"),
          sel("SELECT ?x WHERE { ?x a :A }")},
         true, true, true},
        {"diamond-merge",
         kP +
             "fact :A(:a) .\n"
             "exists :A -> :r :B .\n"
             "exists :A -> :s :B .\n"
             "sub-role :r :u .\n"
             "sub-role :s :u .\n"
             "max1 :A :u :B .\n",
         {sel("ASK WHERE { ?p :r ?c . ?q :s ?c }"),
          sel("SELECT ?x WHERE { ?x :u ?y . ?y a :B }"), sel("ASK WHERE { ?y a :B }")},
         true, true, true},
        {"wide-abox",
         kP +
             "fact :A(:a1) .\nfact :A(:a2) .\nfact :A(:a3) .\nfact :A(:a4) .\n"
             "fact :A(:a5) .\n"
             "fact :r(:a1, :a2) .\nfact :r(:a2, :a3) .\nfact :r(:a3, :a4) .\n"
             "fact :r(:a4, :a5) .\n"
             "sub-class :A -> :V .\n",
         {sel("SELECT ?x ?z WHERE { ?x :r ?y . ?y :r ?z }"),
          sel("SELECT ?x WHERE { ?x a :V }"),
          sel("ASK WHERE { ?x :r ?y . ?y :r ?z . ?z :r ?w }")},
         true, true, true},
        {"unreachable-bottom",
         kP +
             "sub-class :Z -> BOTTOM .\n"
             "fact :A(:a) .\n"
             "exists :A -> :r :B .\n",
         {sel("SELECT ?x WHERE { ?x a :Z }"), sel("ASK WHERE { ?x :r ?y }"),
          sel("SELECT ?x WHERE { ?x a :A }")},
         true, true, true},
        {"nominal-subsume",
         kP +
             "nominal :O -> :o .\n"
             "sub-class :A -> :O .\n"
             "fact :A(:a) .\n",
         {sel("SELECT ?x WHERE { ?x a :O }"), sel("ASK WHERE { :a a :O }"),
          sel("SELECT ?x WHERE { ?x a :A }")},
         true, true, true},
        {"some-inverse",
         kP +
             "fact :r(:a, :b) .\n"
             "some :r- TOP -> :C .\n",
         {sel("SELECT ?x WHERE { ?x a :C }"), sel("ASK WHERE { :b a :C }"),
          sel("SELECT ?x WHERE { ?x a :C . ?y :r ?x }")},
         true, true, true},
        {"social",
         kP +
             "fact :Person(:alice) .\n"
             "fact :Person(:bob) .\n"
             "fact :knows(:alice, :bob) .\n"
             "exists :Person -> :hasPet :Animal .\n"
             "some :knows :Person -> :Social .\n"
             "sub-class :Animal -> :LivingThing .\n"
             "sub-role :hasPet :caresFor .\n",
         {sel("SELECT ?x WHERE { ?x a :Social }"),
          sel("SELECT ?x WHERE { ?x :caresFor ?y . ?y a :LivingThing }"),
          sel("ASK WHERE { ?x :hasPet ?y . ?y a :Animal }")},
         true, true, true},
        {"empty-tbox",
         kP +
             "fact :r(:a, :b) .\n"
             "fact :A(:a) .\n",
         {sel("SELECT ?x ?y WHERE { ?x :r ?y }"),
          sel("ASK WHERE { ?x :r ?y . ?x a :A }"), sel("SELECT ?z WHERE { ?z a :B }")},
         true, true, true},
        {"const-in-query",
         kP +
             "fact :A(:a) .\n"
             "exists :A -> :r :B .\n"
             "fact :r(:a, :c) .\n",
         {sel("SELECT ?y WHERE { :a :r ?y }"), sel("ASK WHERE { :a :r ?y }"),
          sel("SELECT ?x WHERE { ?x :r ?y }")},
         true, true, true},

        // Folding fixtures: the model wraps into a cycle, so the raw chase
        // grows forever; they stay out of the chase-equivalence runs.
        {"cycle-selfloop",
         kP +
             "fact :A(:a) .\n"
             "exists :A -> :r :A .\n",
         {sel("ASK WHERE { ?y :r ?y }"), sel("ASK WHERE { ?u :r ?v . ?v :r ?w }"),
          sel("SELECT ?x WHERE { ?x a :A }")},
         true, false, true},
        {"cycle-pair",
         kP +
             "fact :A(:a) .\n"
             "exists :A -> :r :B .\n"
             "exists :B -> :s :A .\n",
         {sel("ASK WHERE { ?x :r ?y . ?y :s ?x }"),
          sel("ASK WHERE { ?x :r ?y . ?y :s ?z }"),
          sel("SELECT ?x WHERE { ?x :r ?y }")},
         true, false, true},
        {"cycle-reply",
         kP +
             "fact :E(:e) .\n"
             "exists :E -> :p :F .\n"
             "sub-class :F -> :A .\n"
             "exists :A -> :r :B .\n"
             "sub-role :r :r- .\n"
             "sub-class :B -> :A .\n",
         {sel("ASK WHERE { ?x :p ?y }"), sel("ASK WHERE { ?x :r ?y . ?y :r ?x }"),
          sel("SELECT ?x WHERE { ?x a :E }")},
         true, false, true},

        // Bottom-deriving fixtures for the satisfiability comparisons.
        {"unsat-direct",
         kP +
             "fact :A(:a) .\n"
             "sub-class :A -> BOTTOM .\n",
         {sel("SELECT ?x WHERE { ?x a :A }")},
         true, true, false},
        {"unsat-derived",
         kP +
             "fact :A(:a) .\n"
             "exists :A -> :r :B .\n"
             "some :r :B -> :Z .\n"
             "sub-class :Z -> BOTTOM .\n",
         {sel("ASK WHERE { ?x a :Z }")},
         true, true, false},
    };
    return all;
}

// --- fixtures outside the class (all Horn, all with terminating chase) --------

inline const std::vector<Fixture>& non_rsa_corpus() {
    static const std::vector<Fixture> all = {
        {"nr-inv-self",
         kP +
             "fact :A(:a) .\n"
             "exists :A -> :r :B .\n"
             "sub-role :r :r- .\n",
         {sel("SELECT ?x WHERE { ?x a :A }"), sel("ASK WHERE { ?x :r ?y . ?y :r ?x }"),
          sel("SELECT ?x ?y WHERE { ?x :r ?y }")},
         false, true, true},
        {"nr-inv-two",
         kP +
             "fact :A(:a) .\n"
             "exists :A -> :r :B .\n"
             "sub-role :r :s- .\n",
         {sel("ASK WHERE { ?x :s ?y }"), sel("SELECT ?y WHERE { ?x :s ?y }"),
          sel("SELECT ?x WHERE { ?x a :B }")},
         false, true, true},
        {"nr-inv-chain",
         kP +
             "fact :A(:a) .\n"
             "exists :A -> :r :B .\n"
             "sub-role :r :t .\n"
             "sub-role :r :w- .\n"
             "sub-role :w :t- .\n",
         {sel("ASK WHERE { ?x :t ?y }"), sel("ASK WHERE { ?x :w ?y }"),
          sel("SELECT ?x WHERE { ?x :t ?y . ?y :w ?z }")},
         false, true, true},
        {"nr-inv-noise",
         kP +
             "fact :A(:a) .\n"
             "exists :A -> :r :B .\n"
             "sub-role :r :r- .\n"
             "sub-class :B -> :C .\n"
             "fact :D(:d) .\n"
             "fact :p(:d, :e) .\n",
         {sel("SELECT ?x WHERE { ?x a :D }"), sel("SELECT ?x ?y WHERE { ?x :p ?y }"),
          sel("ASK WHERE { ?x :r ?y . ?y a :C }")},
         false, true, true},
        {"nr-inv-multi",
         kP +
             "fact :A(:a) .\n"
             "exists :A -> :r :B .\n"
             "sub-role :r :r- .\n"
             "fact :D(:d) .\n"
             "exists :D -> :q :E .\n",
         {sel("ASK WHERE { ?x :q ?y }"), sel("SELECT ?x WHERE { ?x :q ?y . ?y a :E }"),
          sel("SELECT ?x WHERE { ?x a :A }")},
         false, true, true},
        {"nr-inv-taxo",
         kP +
             "fact :A(:a) .\n"
             "exists :A -> :r :B .\n"
             "sub-class :B -> :C .\n"
             "sub-class :C -> :D .\n"
             "sub-role :r :r- .\n",
         {sel("ASK WHERE { ?x :r ?y . ?y a :D }"), sel("SELECT ?x WHERE { ?x a :D }"),
          sel("SELECT ?x WHERE { ?x a :A }")},
         false, true, true},
        {"nr-inv-abox",
         kP +
             "fact :A(:a) .\n"
             "fact :r(:a, :c) .\n"
             "exists :A -> :r :B .\n"
             "sub-role :r :r- .\n",
         {sel("SELECT ?x ?y WHERE { ?x :r ?y }"), sel("ASK WHERE { :c :r :a }"),
          sel("SELECT ?y WHERE { :a :r ?y }")},
         false, true, true},
        {"nr-inv-seeds",
         kP +
             "fact :A(:a) .\n"
             "fact :A(:b) .\n"
             "fact :A(:c) .\n"
             "exists :A -> :r :B .\n"
             "sub-role :r :r- .\n",
         {sel("SELECT ?x WHERE { ?x a :A }"), sel("ASK WHERE { ?x :r ?y }"),
          sel("SELECT ?x ?z WHERE { ?x :r ?y . ?z :r ?y }")},
         false, true, true},
        {"nr-inv-subsume",
         kP +
             "fact :A(:a) .\n"
             "exists :A -> :r :B .\n"
             "sub-role :r :s .\n"
             "sub-role :s :r- .\n",
         {sel("ASK WHERE { ?x :s ?y }"), sel("SELECT ?x WHERE { ?x a :A }"),
          sel("SELECT ?x ?y WHERE { ?x :r ?y }")},
         false, true, true},
        {"nr-inv-two-noise",
         kP +
             "fact :A(:a) .\n"
             "exists :A -> :r :B .\n"
             "sub-role :r :s- .\n"
             "sub-class :B -> :C .\n"
             "fact :C(:k) .\n",
         {sel("SELECT ?x WHERE { ?x a :C }"), sel("ASK WHERE { ?x :s ?y }"),
          sel("SELECT ?y WHERE { ?x :s ?y }")},
         false, true, true},
        {"nr-k1-base",
         kP +
             "exists :A -> :r :B .\n"
             "fact :A(:a) .\n"
             "fact :C(:b) .\n"
             "nominal :C -> :a .\n"
             "sub-role :r :s- .\n"
             "max1 :E :s :F .\n",
         {sel("SELECT ?x WHERE { ?x a :C }"), sel("SELECT ?x WHERE { ?x a :A }"),
          sel("ASK WHERE { ?x :s ?y }")},
         false, true, true},
        {"nr-k1-max1",
         kP +
             "fact :C(:a) .\n"
             "fact :C(:b) .\n"
             "fact :m(:z, :a) .\n"
             "fact :m(:z, :b) .\n"
             "fact :Z(:z) .\n"
             "max1 :Z :m :C .\n"
             "fact :A(:a) .\n"
             "exists :A -> :r :B .\n"
             "sub-role :r :s- .\n"
             "max1 :E :s :F .\n",
         {sel("SELECT ?x ?y WHERE { ?x :m ?y }"), sel("SELECT ?x WHERE { ?x a :A }"),
          sel("ASK WHERE { :z :m :b }")},
         false, true, true},
        {"nr-k1-noise",
         kP +
             "exists :A -> :r :B .\n"
             "fact :A(:a) .\n"
             "fact :C(:b) .\n"
             "nominal :C -> :a .\n"
             "sub-role :r :s- .\n"
             "max1 :E :s :F .\n"
             "sub-class :B -> :G .\n"
             "fact :H(:h) .\n",
         {sel("SELECT ?x WHERE { ?x a :H }"), sel("ASK WHERE { ?x :r ?y . ?y a :G }"),
          sel("SELECT ?x WHERE { ?x a :C }")},
         false, true, true},
        {"nr-k1-double",
         kP +
             "exists :A -> :r :B .\n"
             "exists :D -> :p :Q .\n"
             "fact :A(:a) .\n"
             "fact :D(:a) .\n"
             "fact :C(:b) .\n"
             "nominal :C -> :a .\n"
             "sub-role :r :s- .\n"
             "max1 :E :s :F .\n",
         {sel("ASK WHERE { ?x :p ?y }"), sel("SELECT ?x WHERE { ?x a :D }"),
          sel("SELECT ?x WHERE { ?x a :C }")},
         false, true, true},
        {"nr-k1-alt",
         kP +
             "fact :C(:u) .\n"
             "fact :C(:v) .\n"
             "fact :m(:w, :u) .\n"
             "fact :m(:w, :v) .\n"
             "fact :Z(:w) .\n"
             "max1 :Z :m :C .\n"
             "fact :A(:u) .\n"
             "exists :A -> :link :B .\n"
             "sub-role :link :back- .\n"
             "max1 :E :back :F .\n",
         {sel("SELECT ?x WHERE { ?x a :C }"), sel("ASK WHERE { ?x :m ?y }"),
          sel("SELECT ?x ?y WHERE { ?x :m ?y }")},
         false, true, true},
        {"nr-k1-abox",
         kP +
             "exists :A -> :r :B .\n"
             "fact :A(:a) .\n"
             "fact :C(:b) .\n"
             "nominal :C -> :a .\n"
             "sub-role :r :s- .\n"
             "max1 :E :s :F .\n"
             "fact :p(:x1, :x2) .\n"
             "fact :p(:x2, :x3) .\n"
             "fact :K(:x1) .\n",
         {sel("SELECT ?x ?z WHERE { ?x :p ?y . ?y :p ?z }"),
          sel("SELECT ?x WHERE { ?x a :K }"), sel("ASK WHERE { ?x :p ?y . ?x a :K }")},
         false, true, true},
        {"nr-mixed",
         kP +
             "fact :A(:a) .\n"
             "exists :A -> :r :B .\n"
             "sub-role :r :r- .\n"
             "exists :G -> :p :Q .\n"
             "fact :G(:g) .\n"
             "fact :C(:b) .\n"
             "nominal :C -> :g .\n"
             "sub-role :p :s- .\n"
             "max1 :E :s :F .\n",
         {sel("SELECT ?x WHERE { ?x a :G }"), sel("ASK WHERE { ?x :p ?y }"),
          sel("SELECT ?x WHERE { ?x a :C }")},
         false, true, true},
        {"nr-mixed2",
         kP +
             "fact :A(:a) .\n"
             "exists :A -> :r :B .\n"
             "sub-role :r :s- .\n"
             "fact :C(:k) .\n"
             "fact :C(:l) .\n"
             "fact :m(:z, :k) .\n"
             "fact :m(:z, :l) .\n"
             "fact :Z(:z) .\n"
             "max1 :Z :m :C .\n",
         {sel("SELECT ?x WHERE { ?x a :C }"), sel("ASK WHERE { :z :m :l }"),
          sel("SELECT ?y WHERE { ?x :s ?y }")},
         false, true, true},
        {"nr-inv-self-b",
         kP +
             "fact :P(:p1) .\n"
             "exists :P -> :edge :Q .\n"
             "sub-role :edge :edge- .\n"
             "sub-class :Q -> :R .\n",
         {sel("SELECT ?x WHERE { ?x a :P }"), sel("ASK WHERE { ?x :edge ?y }"),
          sel("ASK WHERE { ?x :edge ?y . ?y :edge ?x }")},
         false, true, true},
        {"nr-inv-chain-b",
         kP +
             "fact :A(:a) .\n"
             "fact :A(:b) .\n"
             "exists :A -> :r :B .\n"
             "sub-role :r :t .\n"
             "sub-role :r :w- .\n"
             "sub-role :w :t- .\n"
             "sub-class :B -> :C .\n",
         {sel("SELECT ?x WHERE { ?x a :A }"), sel("ASK WHERE { ?x :t ?y . ?y a :C }"),
          sel("SELECT ?x ?y WHERE { ?x :w ?y }")},
         false, true, true},
        {"nr-k1-wide",
         kP +
             "exists :A -> :r :B .\n"
             "fact :A(:a) .\n"
             "fact :C(:b) .\n"
             "nominal :C -> :a .\n"
             "sub-role :r :s- .\n"
             "max1 :E :s :F .\n"
             "fact :A(:a2) .\n"
             "fact :N(:n1) .\nfact :N(:n2) .\nfact :N(:n3) .\n",
         {sel("SELECT ?x WHERE { ?x a :N }"), sel("SELECT ?x WHERE { ?x a :A }"),
          sel("ASK WHERE { ?x a :B }")},
         false, true, true},
    };
    return all;
}

// --- lower-bound dominance fixtures -------------------------------------------

// Compared pair: answers over "shift + drop every existential axiom" versus
// answers over the repaired approximation.  `strict_query` indexes a query
// whose answer set must grow strictly under the approximation.
struct DominanceFixture {
    std::string name;
    std::string ontology;
    std::vector<std::string> queries;
    int strict_query = -1;  // -1: only containment is required
};

inline const std::vector<DominanceFixture>& dominance_corpus() {
    static const std::vector<DominanceFixture> all = {
        {"dom-some",
         kP +
             "fact :A(:a) .\n"
             "exists :A -> :r :B .\n"
             "some :r :B -> :C .\n",
         {sel("SELECT ?x WHERE { ?x a :C }"), sel("ASK WHERE { ?x :r ?y }")},
         0},
        {"dom-safe-cycle",
         kP +
             "fact :A(:a) .\n"
             "exists :A -> :r :B .\n"
             "exists :B -> :s :A .\n",
         {sel("ASK WHERE { ?x :r ?y }"), sel("SELECT ?x WHERE { ?x a :A }")},
         0},
        {"dom-kept-branch",
         kP +
             "fact :A(:a) .\n"
             "exists :A -> :r :B .\n"
             "exists :B -> :s :A .\n"
             "max1 TOP :r TOP .\n"
             "max1 TOP :s TOP .\n"
             "fact :D(:d) .\n"
             "exists :D -> :p :E .\n",
         {sel("ASK WHERE { ?x :p ?y }"), sel("SELECT ?x WHERE { ?x a :D }")},
         0},
        {"dom-unsafe-cycle",
         kP +
             "fact :A(:a) .\n"
             "exists :A -> :r :B .\n"
             "exists :B -> :s :A .\n"
             "max1 TOP :r TOP .\n"
             "max1 TOP :s TOP .\n"
             "sub-role :r :t .\n"
             "sub-role :s :t .\n",
         {sel("ASK WHERE { ?x :t ?y }"), sel("SELECT ?x WHERE { ?x a :A }")},
         -1},
    };
    return all;
}

// --- ground disjunctive fixtures ----------------------------------------------

// Propositional cases over one individual.  `expect_equal` asserts that the
// shifted program recovers every cautious consequence; containment is checked
// on all of them.
struct GroundFixture {
    std::string name;
    std::string ontology;
    bool expect_equal = false;
};

inline const std::vector<GroundFixture>& ground_corpus() {
    static const std::vector<GroundFixture> all = {
        {"g-core",
         kP +
             "fact :A(:c) .\n"
             "fact :D(:c) .\n"
             "sub-class :A -> :B | :C .\n"
             "sub-class :B & :D -> BOTTOM .\n",
         true},
        {"g-core-open",
         kP +
             "fact :A(:c) .\n"
             "sub-class :A -> :B | :C .\n"
             "sub-class :B & :D -> BOTTOM .\n",
         true},
        {"g-core-unsat",
         kP +
             "fact :A(:c) .\n"
             "fact :B(:c) .\n"
             "fact :D(:c) .\n"
             "sub-class :A -> :B | :C .\n"
             "sub-class :B & :D -> BOTTOM .\n",
         true},
        {"g-join",
         kP +
             "fact :A(:c) .\n"
             "sub-class :A -> :B | :C .\n"
             "sub-class :B -> :E .\n"
             "sub-class :C -> :E .\n",
         false},
        {"g-left-dead",
         kP +
             "fact :A(:c) .\n"
             "sub-class :A -> :B | :C .\n"
             "sub-class :B -> BOTTOM .\n",
         true},
        {"g-right-dead",
         kP +
             "fact :A(:c) .\n"
             "sub-class :A -> :B | :C .\n"
             "sub-class :C -> BOTTOM .\n",
         true},
        {"g-three-way",
         kP +
             "fact :A(:c) .\n"
             "sub-class :A -> :B | :C | :D .\n"
             "sub-class :C -> BOTTOM .\n"
             "sub-class :D -> BOTTOM .\n",
         true},
        {"g-side-horn",
         kP +
             "fact :A(:c) .\n"
             "fact :D(:c) .\n"
             "sub-class :A -> :B | :C .\n"
             "sub-class :D -> :C .\n",
         true},
        {"g-exclusive",
         kP +
             "fact :A(:c) .\n"
             "sub-class :A -> :B | :C .\n"
             "sub-class :B & :C -> BOTTOM .\n",
         true},
        {"g-chained",
         kP +
             "fact :A(:c) .\n"
             "fact :D(:c) .\n"
             "sub-class :A -> :B | :C .\n"
             "sub-class :B & :D -> BOTTOM .\n"
             "sub-class :C -> :E .\n",
         true},
        {"g-case-split",
         kP +
             "fact :A(:c) .\n"
             "sub-class :A -> :B | :C .\n"
             "sub-class :B -> :C .\n",
         false},
        {"g-deep",
         kP +
             "fact :A(:c) .\n"
             "fact :D(:c) .\n"
             "fact :F(:c) .\n"
             "sub-class :A -> :B | :C .\n"
             "sub-class :B & :D -> BOTTOM .\n"
             "sub-class :C -> :G | :H .\n"
             "sub-class :G & :F -> BOTTOM .\n",
         true},
    };
    return all;
}

}  // namespace fixtures
