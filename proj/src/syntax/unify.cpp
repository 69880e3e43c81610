#include <unordered_map>

#include "cliquesh/syntax.hpp"

namespace cliquesh {
namespace {

class Unifier {
  public:
    bool unify(const Term& a, const Term& b) {
        const Term l = walk(a);
        const Term r = walk(b);
        if (l.is_var() && r.is_var()) {
            if (l.var() != r.var()) bind(l.var(), r);
            return true;
        }
        if (l.is_var()) return bind_checked(l.var(), r);
        if (r.is_var()) return bind_checked(r.var(), l);
        if (l.functor() != r.functor() || l.arity() != r.arity()) return false;
        for (std::size_t i = 0; i < l.arity(); ++i) {
            if (!unify(l.args()[i], r.args()[i])) return false;
        }
        return true;
    }

    /// Solved form, bindings in creation order with fully resolved right-hand sides.
    EquationSet solved() const {
        EquationSet out;
        out.reserve(order_.size());
        for (Var v : order_) out.push_back(Binding{v, resolve(bindings_.at(v.id))});
        return out;
    }

  private:
    Term walk(const Term& t) const {
        Term cur = t;
        while (cur.is_var()) {
            auto it = bindings_.find(cur.var().id);
            if (it == bindings_.end()) break;
            cur = it->second;
        }
        return cur;
    }

    Term resolve(const Term& t) const {
        const Term w = walk(t);
        if (w.is_var()) return w;
        std::vector<Term> args;
        args.reserve(w.arity());
        for (const Term& a : w.args()) args.push_back(resolve(a));
        return Term::compound(w.functor(), std::move(args));
    }

    bool occurs(Var v, const Term& t) const {
        const Term w = walk(t);
        if (w.is_var()) return w.var() == v;
        for (const Term& a : w.args()) {
            if (occurs(v, a)) return true;
        }
        return false;
    }

    bool bind_checked(Var v, const Term& t) {
        if (occurs(v, t)) return false;
        bind(v, t);
        return true;
    }

    void bind(Var v, const Term& t) {
        bindings_.emplace(v.id, t);
        order_.push_back(v);
    }

    std::unordered_map<std::uint32_t, Term> bindings_;
    std::vector<Var> order_;
};

} // namespace

std::optional<EquationSet> solve(const Term& t1, const Term& t2) {
    Unifier u;
    if (!u.unify(t1, t2)) return std::nullopt;
    return u.solved();
}

Term apply(const EquationSet& eqs, const Term& t) {
    if (t.is_var()) {
        for (const Binding& b : eqs) {
            if (b.var == t.var()) return b.term;
        }
        return t;
    }
    std::vector<Term> args;
    args.reserve(t.arity());
    for (const Term& a : t.args()) args.push_back(apply(eqs, a));
    return Term::compound(t.functor(), std::move(args));
}

} // namespace cliquesh
