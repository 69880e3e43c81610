#include <algorithm>
#include <unordered_map>

#include "cliquesh/syntax.hpp"

namespace cliquesh {

Term Term::variable(Var v) {
    Term t;
    t.is_var_ = true;
    t.var_ = v;
    return t;
}

Term Term::compound(std::string functor, std::vector<Term> args) {
    Term t;
    t.functor_ = std::move(functor);
    t.args_ = std::move(args);
    return t;
}

namespace {

void collect_mask(const Term& t, VarMask& acc) {
    if (t.is_var()) {
        if (t.var().id >= kMaxVars) {
            throw TooManyVariables("variable index " + std::to_string(t.var().id) + " exceeds the " +
                                   std::to_string(kMaxVars) + "-variable limit");
        }
        acc |= var_bit(t.var().id);
        return;
    }
    for (const Term& a : t.args()) collect_mask(a, acc);
}

void collect_order(const Term& t, std::vector<Var>& out) {
    if (t.is_var()) {
        if (std::find(out.begin(), out.end(), t.var()) == out.end()) out.push_back(t.var());
        return;
    }
    for (const Term& a : t.args()) collect_order(a, out);
}

bool linear_walk(const Term& t, std::vector<Var>& seen) {
    if (t.is_var()) {
        if (std::find(seen.begin(), seen.end(), t.var()) != seen.end()) return false;
        seen.push_back(t.var());
        return true;
    }
    return std::all_of(t.args().begin(), t.args().end(), [&](const Term& a) { return linear_walk(a, seen); });
}

bool is_list_cell(const Term& t) { return !t.is_var() && t.functor() == "." && t.arity() == 2; }

bool is_infix(const Term& t) {
    static const char* const kOps[] = {"=",  "\\=", "==",  "\\==", "is", "=:=", "=\\=", "<",  ">",   "=<",
                                       ">=", "@<",  "@>",  "@=<",  "@>=", "+",  "-",    "*",  "/",   "//",
                                       "mod", "rem", ":-", ","};
    if (t.is_var() || t.arity() != 2) return false;
    return std::any_of(std::begin(kOps), std::end(kOps), [&](const char* op) { return t.functor() == op; });
}

void render(const Term& t, const VarNames& names, std::string& out) {
    if (t.is_var()) {
        const auto id = t.var().id;
        if (id < names.size() && !names[id].empty()) {
            out += names[id];
        } else {
            out += "_" + std::to_string(id);
        }
        return;
    }
    if (is_list_cell(t)) {
        out += '[';
        const Term* cur = &t;
        bool first = true;
        while (is_list_cell(*cur)) {
            if (!first) out += ',';
            render(cur->args()[0], names, out);
            first = false;
            cur = &cur->args()[1];
        }
        if (!(cur->is_atom() && cur->functor() == "[]")) {
            out += '|';
            render(*cur, names, out);
        }
        out += ']';
        return;
    }
    if (is_infix(t)) {
        out += '(';
        render(t.args()[0], names, out);
        out += ' ' + t.functor() + ' ';
        render(t.args()[1], names, out);
        out += ')';
        return;
    }
    out += t.functor();
    if (t.arity() == 0) return;
    out += '(';
    for (std::size_t i = 0; i < t.arity(); ++i) {
        if (i != 0) out += ',';
        render(t.args()[i], names, out);
    }
    out += ')';
}

} // namespace

VarMask vars_of(const Term& t) {
    VarMask m = 0;
    collect_mask(t, m);
    return m;
}

VarMask vars_of(const Term& s, const Term& t) { return vars_of(s) | vars_of(t); }

std::vector<Var> vars_in_order(const Term& t) {
    std::vector<Var> out;
    collect_order(t, out);
    return out;
}

bool is_linear(const Term& t) {
    std::vector<Var> seen;
    return linear_walk(t, seen);
}

std::size_t max_var_id_plus_one(const Term& t) {
    if (t.is_var()) return t.var().id + 1;
    std::size_t m = 0;
    for (const Term& a : t.args()) m = std::max(m, max_var_id_plus_one(a));
    return m;
}

Term rename_vars(const Term& t, const std::map<std::uint32_t, std::uint32_t>& mapping) {
    if (t.is_var()) {
        auto it = mapping.find(t.var().id);
        return it == mapping.end() ? t : Term::variable(it->second);
    }
    std::vector<Term> args;
    args.reserve(t.arity());
    for (const Term& a : t.args()) args.push_back(rename_vars(a, mapping));
    return Term::compound(t.functor(), std::move(args));
}

std::string to_string(const Term& t, const VarNames& names) {
    std::string out;
    render(t, names, out);
    return out;
}

VarMask Clause::all_vars() const {
    VarMask m = vars_of(head);
    for (const Term& b : body) m |= vars_of(b);
    return m;
}

PredicateKey key_of(const Term& atom) { return PredicateKey{atom.functor(), atom.arity()}; }

const std::vector<Clause>* Program::clauses_of(const PredicateKey& key) const {
    auto it = predicates.find(key);
    return it == predicates.end() ? nullptr : &it->second;
}

std::size_t Program::clause_count() const {
    std::size_t n = 0;
    for (const auto& [key, clauses] : predicates) n += clauses.size();
    return n;
}

Clause rename_apart(const Clause& c, VarMask taken) {
    std::map<std::uint32_t, std::uint32_t> mapping;
    std::uint32_t next = 0;
    for (std::uint32_t old = 0; old < c.num_vars(); ++old) {
        while (next < kMaxVars && meets(taken, var_bit(next))) ++next;
        mapping[old] = next++;
    }
    Clause out;
    out.head = rename_vars(c.head, mapping);
    for (const Term& b : c.body) out.body.push_back(rename_vars(b, mapping));
    std::uint32_t width = 0;
    for (const auto& [old, fresh] : mapping) width = std::max(width, fresh + 1);
    out.var_names.assign(width, std::string{});
    for (const auto& [old, fresh] : mapping) out.var_names[fresh] = c.var_names[old] + std::to_string(fresh);
    return out;
}

} // namespace cliquesh
