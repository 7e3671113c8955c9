#pragma once

// Interned ground terms and predicates shared by the rule engine and the
// ontology layers.  Pools hand out dense 32-bit ids; equal structures always
// intern to the same id, so id comparison is structural equality.

#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace rsacomb {

using TermId = uint32_t;
using PredId = uint32_t;
using TripleId = uint32_t;
using SymId = uint32_t;

constexpr TermId kNoTerm = 0xffffffffu;

// Label (A, R, B) of an existential axiom A subClassOf exists R.B.  The role
// is kept as written: a name plus an inversion flag.
struct TripleLabel {
    std::string a;
    std::string role;
    bool role_inv = false;
    std::string b;

    std::string role_text() const { return role_inv ? role + "-" : role; }
    std::string text() const { return a + "," + role_text() + "," + b; }
};

enum class TermKind : uint8_t {
    Const,   // named constant (IRI or plain token)
    UNode,   // u constant of a T5 triple
    VNode,   // v0/v1/v2 constant of a safe T5 triple
    SetId,   // unfold-set name of a safe T5 triple
    FnApp,   // function application (skolem or named symbol)
    Packed,  // tuple key produced by the SKOLEM builtin
    Index    // small integer constant (query variable positions)
};

enum class SymKind : uint8_t { Named, Skolem };

class TermPool {
public:
    TermId const_term(const std::string& text) {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = const_ids_.find(text);
        if (it != const_ids_.end()) return it->second;
        TermId id = add_(TermKind::Const, 0, 0, 0, {});
        terms_[id].text = text;
        const_ids_.emplace(text, id);
        return id;
    }

    TripleId triple(const TripleLabel& t) {
        std::lock_guard<std::mutex> lk(mu_);
        std::string key = t.a + '\x1f' + t.role_text() + '\x1f' + t.b;
        auto it = triple_ids_.find(key);
        if (it != triple_ids_.end()) return it->second;
        TripleId id = static_cast<TripleId>(triples_.size());
        triples_.push_back(t);
        triple_ids_.emplace(std::move(key), id);
        return id;
    }

    const TripleLabel& triple_label(TripleId t) const { return triples_[t]; }

    TermId unode(TripleId t) { return labeled_(TermKind::UNode, t, 0); }
    TermId vnode(TripleId t, int i) { return labeled_(TermKind::VNode, t, i); }
    TermId setid(TripleId t) { return labeled_(TermKind::SetId, t, 0); }

    SymId sym_named(const std::string& name) {
        std::lock_guard<std::mutex> lk(mu_);
        std::string key = "n\x1f" + name;
        auto it = sym_ids_.find(key);
        if (it != sym_ids_.end()) return it->second;
        SymId id = static_cast<SymId>(syms_.size());
        syms_.push_back(Sym{SymKind::Named, name, 0});
        sym_ids_.emplace(std::move(key), id);
        return id;
    }

    SymId sym_skolem(TripleId t) {
        std::lock_guard<std::mutex> lk(mu_);
        std::string key = "s\x1f" + std::to_string(t);
        auto it = sym_ids_.find(key);
        if (it != sym_ids_.end()) return it->second;
        SymId id = static_cast<SymId>(syms_.size());
        syms_.push_back(Sym{SymKind::Skolem, "", t});
        sym_ids_.emplace(std::move(key), id);
        return id;
    }

    SymKind sym_kind(SymId s) const { return syms_[s].kind; }
    const std::string& sym_name(SymId s) const { return syms_[s].name; }
    TripleId sym_triple(SymId s) const { return syms_[s].triple; }

    TermId fnapp(SymId sym, const std::vector<TermId>& args) {
        std::lock_guard<std::mutex> lk(mu_);
        std::string key = std::to_string(sym);
        for (TermId a : args) key += '\x1f' + std::to_string(a);
        auto it = fn_ids_.find(key);
        if (it != fn_ids_.end()) return it->second;
        int d = 1;
        for (TermId a : args) d = std::max(d, terms_[a].depth + 1);
        TermId id = add_(TermKind::FnApp, 0, 0, d, args);
        terms_[id].sym = sym;
        fn_ids_.emplace(std::move(key), id);
        return id;
    }

    TermId packed(const std::vector<TermId>& args) {
        std::lock_guard<std::mutex> lk(mu_);
        std::string key;
        for (TermId a : args) key += std::to_string(a) + '\x1f';
        auto it = packed_ids_.find(key);
        if (it != packed_ids_.end()) return it->second;
        int d = 0;
        for (TermId a : args) d = std::max(d, terms_[a].depth);
        TermId id = add_(TermKind::Packed, 0, 0, d, args);
        packed_ids_.emplace(std::move(key), id);
        return id;
    }

    TermId index_term(int i) {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = index_ids_.find(i);
        if (it != index_ids_.end()) return it->second;
        TermId id = add_(TermKind::Index, 0, i, 0, {});
        index_ids_.emplace(i, id);
        return id;
    }

    TermKind kind(TermId t) const { return terms_[t].kind; }
    int depth(TermId t) const { return terms_[t].depth; }
    TripleId term_triple(TermId t) const { return terms_[t].triple; }
    int sub_index(TermId t) const { return terms_[t].sub; }
    SymId term_sym(TermId t) const { return terms_[t].sym; }
    const std::vector<TermId>& args(TermId t) const { return terms_[t].args; }
    const std::string& const_text(TermId t) const { return terms_[t].text; }

    // Display form used by diagnostics, DOT labels and the debug rule format.
    std::string text(TermId t) const {
        const Term& tm = terms_[t];
        switch (tm.kind) {
            case TermKind::Const: return tm.text;
            case TermKind::UNode: return "u(" + triples_[tm.triple].text() + ")";
            case TermKind::VNode:
                return "v" + std::to_string(tm.sub) + "(" + triples_[tm.triple].text() + ")";
            case TermKind::SetId: return "unfold(" + triples_[tm.triple].text() + ")";
            case TermKind::FnApp: {
                const Sym& s = syms_[tm.sym];
                std::string head = s.kind == SymKind::Named
                                       ? s.name
                                       : "f[" + triples_[s.triple].text() + "]";
                std::string out = head + "(";
                for (size_t i = 0; i < tm.args.size(); ++i) {
                    if (i) out += ",";
                    out += text(tm.args[i]);
                }
                return out + ")";
            }
            case TermKind::Packed: {
                std::string out = "pack(";
                for (size_t i = 0; i < tm.args.size(); ++i) {
                    if (i) out += ",";
                    out += text(tm.args[i]);
                }
                return out + ")";
            }
            case TermKind::Index: return std::to_string(tm.sub);
        }
        return "?";
    }

    size_t size() const { return terms_.size(); }

private:
    struct Term {
        TermKind kind;
        TripleId triple = 0;
        int sub = 0;
        int depth = 0;
        SymId sym = 0;
        std::string text;
        std::vector<TermId> args;
    };
    struct Sym {
        SymKind kind;
        std::string name;
        TripleId triple;
    };

    TermId add_(TermKind k, TripleId triple, int sub, int depth,
                std::vector<TermId> args) {
        Term tm;
        tm.kind = k;
        tm.triple = triple;
        tm.sub = sub;
        tm.depth = depth;
        tm.args = std::move(args);
        terms_.push_back(std::move(tm));
        return static_cast<TermId>(terms_.size() - 1);
    }

    TermId labeled_(TermKind k, TripleId t, int i) {
        std::lock_guard<std::mutex> lk(mu_);
        std::string key =
            std::to_string(static_cast<int>(k)) + '\x1f' + std::to_string(t) + '\x1f' + std::to_string(i);
        auto it = labeled_ids_.find(key);
        if (it != labeled_ids_.end()) return it->second;
        TermId id = add_(k, t, i, 0, {});
        labeled_ids_.emplace(std::move(key), id);
        return id;
    }

    mutable std::mutex mu_;
    std::vector<Term> terms_;
    std::vector<TripleLabel> triples_;
    std::vector<Sym> syms_;
    std::unordered_map<std::string, TermId> const_ids_;
    std::unordered_map<std::string, TripleId> triple_ids_;
    std::unordered_map<std::string, SymId> sym_ids_;
    std::unordered_map<std::string, TermId> labeled_ids_;
    std::unordered_map<std::string, TermId> fn_ids_;
    std::unordered_map<std::string, TermId> packed_ids_;
    std::unordered_map<int, TermId> index_ids_;
};

enum class PredKind : uint8_t {
    Concept,  // unary, named by IRI
    Role,     // binary, named by IRI + inversion flag
    DirRole,  // binary directional copy of a role (forward/backward)
    Plain,    // free-form predicate used by the debug rule format
    Internal  // engine-internal tag
};

// Tags for the predicates the translations introduce.  Their arity is fixed
// per partition on first use, not globally (QM and friends depend on the
// query shape in reference mode).
enum class Tag : uint8_t {
    None, PE, E, U, Top, Bot, Congruent, Named, NI, In,
    QM, Id, Fk, Sp, AQf, AQb, TQf, TQb, Ans
};

inline const char* tag_name(Tag t) {
    switch (t) {
        case Tag::PE: return "PE";
        case Tag::E: return "E";
        case Tag::U: return "U";
        case Tag::Top: return "TOP";
        case Tag::Bot: return "BOT";
        case Tag::Congruent: return "congruent";
        case Tag::Named: return "named";
        case Tag::NI: return "NI";
        case Tag::In: return "in";
        case Tag::QM: return "QM";
        case Tag::Id: return "id";
        case Tag::Fk: return "fk";
        case Tag::Sp: return "sp";
        case Tag::AQf: return "AQ_f";
        case Tag::AQb: return "AQ_b";
        case Tag::TQf: return "TQ_f";
        case Tag::TQb: return "TQ_b";
        case Tag::Ans: return "Ans";
        case Tag::None: break;
    }
    return "?";
}

class PredPool {
public:
    PredId concept_pred(const std::string& iri) {
        return intern_("c\x1f" + iri, PredKind::Concept, iri, false, false, Tag::None);
    }
    PredId role_pred(const std::string& iri, bool inv) {
        return intern_(std::string("r\x1f") + (inv ? "-" : "+") + iri, PredKind::Role,
                       iri, inv, false, Tag::None);
    }
    PredId dir_pred(const std::string& iri, bool inv, bool fwd) {
        return intern_(std::string("d\x1f") + (inv ? "-" : "+") + (fwd ? "f" : "b") + iri,
                       PredKind::DirRole, iri, inv, fwd, Tag::None);
    }
    PredId plain(const std::string& name) {
        return intern_("p\x1f" + name, PredKind::Plain, name, false, false, Tag::None);
    }
    PredId internal(Tag tag) {
        return intern_(std::string("i\x1f") + tag_name(tag), PredKind::Internal, "",
                       false, false, tag);
    }

    PredKind kind(PredId p) const { return preds_[p].kind; }
    const std::string& name(PredId p) const { return preds_[p].name; }
    bool inverted(PredId p) const { return preds_[p].inv; }
    bool forward(PredId p) const { return preds_[p].fwd; }
    Tag tag(PredId p) const { return preds_[p].tag; }
    size_t size() const { return preds_.size(); }

    std::string text(PredId p) const {
        const Pred& pr = preds_[p];
        switch (pr.kind) {
            case PredKind::Concept: return pr.name;
            case PredKind::Role: return pr.inv ? pr.name + "-" : pr.name;
            case PredKind::DirRole:
                return (pr.inv ? pr.name + "-" : pr.name) + (pr.fwd ? "#f" : "#b");
            case PredKind::Plain: return pr.name;
            case PredKind::Internal: return tag_name(pr.tag);
        }
        return "?";
    }

private:
    struct Pred {
        PredKind kind;
        std::string name;
        bool inv;
        bool fwd;
        Tag tag;
    };

    PredId intern_(const std::string& key, PredKind k, const std::string& name,
                   bool inv, bool fwd, Tag tag) {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = ids_.find(key);
        if (it != ids_.end()) return it->second;
        PredId id = static_cast<PredId>(preds_.size());
        preds_.push_back(Pred{k, name, inv, fwd, tag});
        ids_.emplace(key, id);
        return id;
    }

    mutable std::mutex mu_;
    std::vector<Pred> preds_;
    std::unordered_map<std::string, PredId> ids_;
};

}  // namespace rsacomb
