#include "cliquesh/engine.hpp"

#include <algorithm>
#include <set>

#include "cliquesh/oracle.hpp"

namespace cliquesh {

namespace d = domain;

AbstractSubstitution call2entry(const AbstractSubstitution& proj, const Term& goal, const Term& head,
                                bool free_head) {
    return d::unify(proj, head, goal, {.free_t1 = free_head});
}

AbstractSubstitution exit2succ(const AbstractSubstitution& exitp, const Term& goal, const Term& head) {
    return d::unify(exitp, goal, head);
}

AbstractSubstitution builtin_transfer(const Term& atom, const AbstractSubstitution& asub) {
    if (asub.is_bottom()) return asub;
    const std::string& f = atom.functor();
    const std::size_t n = atom.arity();
    if ((f == "fail" || f == "false") && n == 0) return AbstractSubstitution::bottom(asub.domain());
    if (f == "=" && n == 2) {
        auto eqs = solve(atom.args()[0], atom.args()[1]);
        if (!eqs) return AbstractSubstitution::bottom(asub.domain());
        return d::amgu_all(asub, *eqs);
    }
    static const std::set<std::string> kGroundsAll = {"is", "=:=", "=\\=", "<", ">", "=<", ">="};
    if (n == 2 && kGroundsAll.contains(f)) return d::ground(asub, vars_of(atom));
    if (n == 1 && (f == "atom" || f == "atomic" || f == "number" || f == "integer"))
        return d::ground(asub, vars_of(atom));
    return asub;
}

bool AnalysisTable::has_errors() const {
    return std::any_of(diagnostics.begin(), diagnostics.end(),
                       [](const Diagnostic& dg) { return dg.severity == Diagnostic::Severity::error; });
}

namespace {

VarMask low_mask(std::size_t k) { return k >= 64 ? ~VarMask{0} : (VarMask{1} << k) - 1; }

VarNames canonical_names(std::size_t k) {
    VarNames out;
    for (std::size_t i = 0; i < k; ++i) {
        std::string s(1, static_cast<char>('A' + i % 26));
        if (i >= 26) s += std::to_string(i / 26);
        out.push_back(std::move(s));
    }
    return out;
}

Term shift_vars(const Term& t, std::uint32_t by) {
    std::map<std::uint32_t, std::uint32_t> m;
    for (Var v : vars_in_order(t)) m[v.id] = v.id + by;
    return rename_vars(t, m);
}

// mapping[i] = i - by for i in [by, by + k)
std::vector<int> unshift_mapping(std::size_t by, std::size_t k) {
    std::vector<int> m(kMaxVars, -1);
    for (std::size_t i = 0; i < k; ++i) m[by + i] = static_cast<int>(i);
    return m;
}

struct Canonical {
    Term goal;
    std::size_t k = 0;
    std::vector<int> to_canon = std::vector<int>(kMaxVars, -1);
    std::vector<int> from_canon = std::vector<int>(kMaxVars, -1);
};

Canonical canonicalize(const Term& goal) {
    Canonical c;
    std::map<std::uint32_t, std::uint32_t> m;
    for (Var v : vars_in_order(goal)) {
        auto i = static_cast<std::uint32_t>(c.k++);
        m[v.id] = i;
        c.to_canon[v.id] = static_cast<int>(i);
        c.from_canon[i] = static_cast<int>(v.id);
    }
    c.goal = rename_vars(goal, m);
    return c;
}

bool contains_plain(const AbstractSubstitution& big, const SharingSet& small) {
    if (const auto* p = std::get_if<CliquePair>(&big.value()))
        return leq_exact_s(CliquePair(CliqueSet(small.domain()), small), *p);
    if (const auto* s = std::get_if<CliqueSharingFreeness>(&big.value()))
        return leq_exact_s(CliquePair(CliqueSet(small.domain()), small), s->p);
    return leq(small, d::sharing_view(big));
}

class Analyzer {
  public:
    Analyzer(const Program& program, const AnalysisOptions& opts, AnalysisTable& table)
        : program_(program), opts_(opts), table_(table) {
        table_.domain = opts.domain;
    }

    void run(const std::vector<EntryDecl>& entries) {
        for (;;) {
            begin_round();
            table_.entries.clear();
            for (const auto& e : entries) {
                VarMask vars = vars_of(e.goal);
                VarMask g = 0, f = 0;
                for (const auto& a : e.annotations) (a.mode == Mode::ground ? g : f) |= var_bit(a.var.id);
                auto call = d::initial_call(opts_.domain, vars, g, f);
                auto succ = solve_atom(call, e.goal);
                table_.entries.push_back({e.goal, e.var_names, std::move(call), std::move(succ)});
            }
            if (!end_round()) break;
        }
    }

    AbstractSubstitution fold_to_fixpoint(const std::vector<Term>& body, const AbstractSubstitution& entry) {
        AbstractSubstitution out;
        for (;;) {
            begin_round();
            out = entry;
            for (const auto& atom : body) {
                if (out.is_bottom()) break;
                out = solve_atom(out, atom);
            }
            if (!end_round()) break;
        }
        return out;
    }

  private:
    void begin_round() {
        changed_ = false;
        std::fill(visited_.begin(), visited_.end(), 0);
        for (auto& v : table_.variants) v.reached = false;
        table_.points.clear();
    }

    bool end_round() {
        ++table_.rounds;
        if (!changed_) return false;
        if (table_.rounds >= opts_.max_rounds) throw AnalysisError("fixpoint iteration exceeded the round limit");
        return true;
    }

    bool cliques() const { return has_cliques(opts_.domain); }

    AbstractSubstitution norm_if(const AbstractSubstitution& a, NormalizeSite site) {
        if (!cliques() || !opts_.policy.at(site)) return a;
        auto n = d::normalize(a, opts_.policy);
        if (opts_.verify) verify_normalize(a, n);
        return n;
    }

    void diagnose(std::string msg) {
        if (!seen_diagnostics_.insert(msg).second) return;
        table_.diagnostics.push_back({opts_.unknown_predicates_are_errors ? Diagnostic::Severity::error
                                                                          : Diagnostic::Severity::warning,
                                      std::move(msg)});
    }

    AbstractSubstitution solve_atom(const AbstractSubstitution& call, const Term& atom) {
        if (call.is_bottom()) return call;
        if (atom.is_var()) {
            diagnose("call to a variable goal is treated as unknown");
            return d::extend(call, vars_of(atom), d::top(opts_.domain, vars_of(atom)), opts_.extend);
        }
        PredicateKey key = key_of(atom);
        VarMask gv = vars_of(atom);
        if (is_builtin(key)) {
            auto out = builtin_transfer(atom, call);
            if (opts_.verify) verify_builtin(atom, call, out);
            return out;
        }
        const auto* clauses = program_.clauses_of(key);
        if (clauses == nullptr || clauses->empty()) {
            diagnose("unknown predicate " + key.to_string() + " treated as top");
            return checked_extend(call, gv, d::top(opts_.domain, gv));
        }

        Canonical canon = canonicalize(atom);
        auto proj_c = norm_if(d::remap(d::project(call, gv), canon.to_canon), NormalizeSite::at_compare);
        std::size_t vid = lookup(key, canon, proj_c);
        auto prime_c = evaluate(vid);
        if (table_.variants[vid].generalized && !prime_c.is_bottom()) {
            // prime over p(A1..An); specialize to this goal's variables.
            const Term generic = shift_vars(table_.variants[vid].goal, static_cast<std::uint32_t>(canon.k));
            std::vector<int> up(kMaxVars, -1);
            for (std::size_t i = 0; i < key.arity; ++i) up[i] = static_cast<int>(canon.k + i);
            prime_c = d::unify(d::remap(prime_c, up), canon.goal, generic);
        }
        auto prime = norm_if(d::remap(prime_c, canon.from_canon), NormalizeSite::at_extend);
        if (prime.is_bottom()) return AbstractSubstitution::bottom(call.domain());
        return norm_if(checked_extend(call, gv, prime), NormalizeSite::at_extend);
    }

    std::size_t create_variant(const PredicateKey& key, Term goal, std::size_t k, AbstractSubstitution call,
                               bool generalized) {
        Variant v;
        v.pred = key;
        v.goal = std::move(goal);
        v.names = canonical_names(k);
        v.success = AbstractSubstitution::bottom(low_mask(k));
        v.call = std::move(call);
        v.generalized = generalized;
        table_.variants.push_back(std::move(v));
        visited_.push_back(0);
        on_stack_.push_back(0);
        reentered_.push_back(0);
        return table_.variants.size() - 1;
    }

    std::size_t lookup(const PredicateKey& key, const Canonical& canon, const AbstractSubstitution& proj_c) {
        std::string k = key.to_string() + " " + to_string(canon.goal) + " " + d::to_string(proj_c);
        if (auto it = index_.find(k); it != index_.end()) return it->second;

        std::size_t& count = per_pred_[key];
        if (opts_.max_variants == 0 || count < opts_.max_variants) {
            ++count;
            std::size_t id = create_variant(key, canon.goal, canon.k, proj_c, false);
            index_.emplace(std::move(k), id);
            return id;
        }

        // Cap reached: fold this pattern into the predicate's generalized variant.
        std::vector<Term> args;
        for (std::size_t i = 0; i < key.arity; ++i)
            args.push_back(Term::variable(static_cast<std::uint32_t>(canon.k + i)));
        Term generic_shifted = Term::compound(key.name, args);
        auto gen_call = d::remap(d::unify(proj_c, generic_shifted, canon.goal), unshift_mapping(canon.k, key.arity));
        gen_call = norm_if(gen_call, NormalizeSite::at_compare);

        auto [it, fresh] = generalized_.try_emplace(key, 0);
        if (fresh) {
            std::vector<Term> g0;
            for (std::size_t i = 0; i < key.arity; ++i) g0.push_back(Term::variable(static_cast<std::uint32_t>(i)));
            it->second = create_variant(key, Term::compound(key.name, std::move(g0)), key.arity,
                                        AbstractSubstitution::bottom(low_mask(key.arity)), true);
        }
        std::size_t id = it->second;
        auto& v = table_.variants[id];
        if (!d::leq(gen_call, v.call)) {
            v.call = norm_if(d::lub(v.call, gen_call), NormalizeSite::at_lub);
            changed_ = true;
            if (on_stack_[id]) reentered_[id] = 1;
        }
        return id;
    }

    AbstractSubstitution evaluate(std::size_t vid) {
        if (on_stack_[vid]) {
            reentered_[vid] = 1;
            return table_.variants[vid].success;
        }
        if (visited_[vid]) return table_.variants[vid].success;
        visited_[vid] = 1;
        on_stack_[vid] = 1;
        table_.variants[vid].reached = true;

        const auto& clauses = *program_.clauses_of(table_.variants[vid].pred);
        for (;;) {
            reentered_[vid] = 0;
            ++table_.variants[vid].evaluations;
            const std::size_t k = cardinality(vars_of(table_.variants[vid].goal));
            AbstractSubstitution acc = AbstractSubstitution::bottom(low_mask(k));
            for (std::size_t ci = 0; ci < clauses.size(); ++ci)
                acc = norm_if(d::lub(acc, eval_clause(vid, ci, clauses[ci])), NormalizeSite::at_lub);
            bool grew = update(vid, acc);
            if (!(grew && reentered_[vid])) break;
        }
        on_stack_[vid] = 0;
        return table_.variants[vid].success;
    }

    bool update(std::size_t vid, AbstractSubstitution next) {
        auto& v = table_.variants[vid];
        next = norm_if(next, NormalizeSite::at_compare);
        if (d::leq(next, v.success)) return false;
        // leq_s is only sufficient; an exact containment check keeps equivalent
        // representations from looking like growth.
        if (cliques() && d::leq_exact(next, v.success)) return false;
        auto merged = d::lub(v.success, next);
        if (opts_.policy.at(NormalizeSite::at_lub) || opts_.policy.at(NormalizeSite::at_compare))
            merged = norm_if(merged, opts_.policy.at(NormalizeSite::at_lub) ? NormalizeSite::at_lub
                                                                            : NormalizeSite::at_compare);
        if (opts_.verify) {
            ++table_.verify.checks;
            if (!d::leq_exact(v.success, merged))
                table_.verify.failures.push_back("non-monotone table update for " + v.pred.to_string());
        }
        v.success = std::move(merged);
        ++table_.table_updates;
        changed_ = true;
        return true;
    }

    AbstractSubstitution eval_clause(std::size_t vid, std::size_t ci, const Clause& c) {
        ++table_.clause_evaluations;
        const Term goal = table_.variants[vid].goal;
        const AbstractSubstitution call = table_.variants[vid].call;
        const std::size_t k = cardinality(vars_of(goal));
        const std::size_t m = c.num_vars();
        if (k + m > kMaxVars)
            throw TooManyVariables("clause of " + table_.variants[vid].pred.to_string() +
                                   " needs more than 64 variables together with its call pattern");

        const Term head = shift_vars(c.head, static_cast<std::uint32_t>(k));
        auto entry = call2entry(call, goal, head, opts_.free_head_call2entry);
        if (entry.is_bottom()) return AbstractSubstitution::bottom(low_mask(k));
        entry = norm_if(d::remap(entry, unshift_mapping(k, m)), NormalizeSite::at_call2entry);
        entry = d::augment(entry, c.all_vars() & ~c.head_vars());

        record(vid, ci, 0, c, entry);
        AbstractSubstitution cur = entry;
        for (std::size_t j = 0; j < c.body.size(); ++j) {
            cur = solve_atom(cur, c.body[j]);
            if (cur.is_bottom()) return AbstractSubstitution::bottom(low_mask(k));
            record(vid, ci, j + 1, c, cur);
        }

        auto exitp = d::project(cur, c.head_vars());
        auto prime = exit2succ(exitp, shift_vars(goal, static_cast<std::uint32_t>(m)), c.head);
        return d::remap(prime, unshift_mapping(m, k));
    }

    void record(std::size_t vid, std::size_t ci, std::size_t point, const Clause& c, const AbstractSubstitution& v) {
        if (opts_.verify) {
            ++table_.verify.checks;
            if (v.domain() != c.all_vars())
                table_.verify.failures.push_back("substitution domain differs from clause variables in " +
                                                 table_.variants[vid].pred.to_string());
        }
        table_.points[PointKey{vid, ci, point}] = PointRecord{table_.variants[vid].pred, c.all_vars(), &c.var_names, v};
    }

    AbstractSubstitution checked_extend(const AbstractSubstitution& call, VarMask g,
                                        const AbstractSubstitution& prime) {
        auto out = d::extend(call, g, prime, opts_.extend);
        if (opts_.verify) verify_extend(call, g, prime, out);
        return out;
    }

    // ---- verification against the reference machinery ----

    template <class Fn>
    void guarded(Fn&& fn) {
        try {
            ++table_.verify.checks;
            fn();
        } catch (const ContractError&) {
            --table_.verify.checks;
            ++table_.verify.skipped;
        }
    }

    void fail(std::string what) { table_.verify.failures.push_back(std::move(what)); }

    void verify_extend(const AbstractSubstitution& call, VarMask g, const AbstractSubstitution& prime,
                       const AbstractSubstitution& out) {
        if (call.is_bottom() || prime.is_bottom()) return;
        guarded([&] {
            switch (opts_.domain) {
            case DomainKind::sharing:
                if (out.as<SharingSet>() != oracle::ref_extend(call.as<SharingSet>(), g, prime.as<SharingSet>()))
                    fail("extend differs from the reference");
                break;
            case DomainKind::sharing_freeness:
                if (out.as<SharingFreeness>() !=
                    oracle::ref_extend_f(call.as<SharingFreeness>(), g, prime.as<SharingFreeness>()))
                    fail("extend_f differs from the reference");
                break;
            case DomainKind::clique_sharing: {
                auto plain = extend(oracle::expand(call.as<CliquePair>()), g, oracle::expand(prime.as<CliquePair>()));
                if (!contains_plain(out, plain)) fail("extend_s result does not contain the plain extend");
                break;
            }
            case DomainKind::clique_sharing_freeness: {
                auto plain = extend_f(oracle::expand(call.as<CliqueSharingFreeness>()), g,
                                      oracle::expand(prime.as<CliqueSharingFreeness>()));
                if (!contains_plain(out, plain.sh) || !is_subset(d::freeness_of(out), plain.f))
                    fail("extend_sf result is not above the plain extend_f");
                break;
            }
            }
        });
    }

    void verify_builtin(const Term& atom, const AbstractSubstitution& in, const AbstractSubstitution& out) {
        if (in.is_bottom() || out.is_bottom() || atom.functor() != "=" || atom.arity() != 2) return;
        auto eqs = solve(atom.args()[0], atom.args()[1]);
        if (!eqs) return;
        guarded([&] {
            SharingSet ref = d::sharing_view(in);
            for (const auto& b : *eqs) ref = oracle::ref_amgu(b.var, vars_of(b.term), ref);
            switch (opts_.domain) {
            case DomainKind::sharing:
                if (out.as<SharingSet>() != ref) fail("amgu differs from the reference");
                break;
            case DomainKind::sharing_freeness:
                // freeness can only remove groups
                if (!leq(out.as<SharingFreeness>().sh, ref)) fail("amgu_f exceeds plain amgu");
                break;
            case DomainKind::clique_sharing:
                if (!contains_plain(out, ref)) fail("amgu_s result does not contain the plain amgu");
                break;
            case DomainKind::clique_sharing_freeness: {
                SharingFreeness plain = oracle::expand(in.as<CliqueSharingFreeness>());
                for (const auto& b : *eqs) plain = amgu_f(b.var, b.term, plain);
                if (!contains_plain(out, plain.sh) || !is_subset(d::freeness_of(out), plain.f))
                    fail("amgu_sf result is not above amgu_f on the expansion");
                break;
            }
            }
        });
    }

    void verify_normalize(const AbstractSubstitution& before, const AbstractSubstitution& after) {
        if (before.is_bottom()) return;
        guarded([&] {
            auto a = d::sharing_view(before);
            auto b = d::sharing_view(after);
            bool ok = opts_.policy.widening_threshold ? leq(a, b) : a == b;
            if (!ok) fail("normalization changed the represented sharing");
        });
    }

    const Program& program_;
    const AnalysisOptions& opts_;
    AnalysisTable& table_;
    std::map<std::string, std::size_t> index_;
    std::map<PredicateKey, std::size_t> per_pred_;
    std::map<PredicateKey, std::size_t> generalized_;
    std::vector<char> visited_, on_stack_, reentered_;
    std::set<std::string> seen_diagnostics_;
    bool changed_ = false;
};

} // namespace

AnalysisTable analyze(const Program& program, const std::vector<EntryDecl>& entries, const AnalysisOptions& opts) {
    AnalysisTable table;
    Analyzer(program, opts, table).run(entries);
    return table;
}

AnalysisTable analyze(const Program& program, const AnalysisOptions& opts) {
    return analyze(program, program.entries, opts);
}

AbstractSubstitution entry2exit(const Program& program, const std::vector<Term>& body,
                                const AbstractSubstitution& entry, const AnalysisOptions& opts) {
    AnalysisTable table;
    return Analyzer(program, opts, table).fold_to_fixpoint(body, entry);
}

std::map<MergedPoint, AbstractSubstitution> merge_points(const AnalysisTable& table) {
    std::map<MergedPoint, AbstractSubstitution> out;
    for (const auto& [key, rec] : table.points) {
        if (!table.variants[key.variant].reached) continue;
        MergedPoint mp{rec.pred, key.clause, key.point};
        auto [it, fresh] = out.try_emplace(mp, rec.value);
        if (!fresh) it->second = d::lub(it->second, rec.value);
    }
    return out;
}

std::vector<std::string> compare_soundness(const AnalysisTable& clique_run, const AnalysisTable& plain_run) {
    std::vector<std::string> violations;
    auto check = [&](const std::string& where, const AbstractSubstitution* big, const AbstractSubstitution& small) {
        if (small.is_bottom()) return;
        if (big == nullptr || big->is_bottom()) {
            violations.push_back(where + ": reached by the plain run only");
            return;
        }
        if (!contains_plain(*big, d::sharing_view(small)))
            violations.push_back(where + ": sharing not contained: " + d::to_string(*big) + " vs " +
                                 d::to_string(small));
        if (has_freeness(plain_run.domain) && !is_subset(d::freeness_of(*big), d::freeness_of(small)))
            violations.push_back(where + ": freeness not contained");
    };
    auto big = merge_points(clique_run);
    for (const auto& [mp, value] : merge_points(plain_run)) {
        auto it = big.find(mp);
        check(mp.pred.to_string() + " clause " + std::to_string(mp.clause) + " point " + std::to_string(mp.point),
              it == big.end() ? nullptr : &it->second, value);
    }
    for (std::size_t i = 0; i < plain_run.entries.size(); ++i)
        check("entry " + to_string(plain_run.entries[i].goal, plain_run.entries[i].names),
              i < clique_run.entries.size() ? &clique_run.entries[i].success : nullptr, plain_run.entries[i].success);
    return violations;
}

} // namespace cliquesh
