#include "cliquesh/domain.hpp"

#include "cliquesh/oracle.hpp"

namespace cliquesh {

namespace {
template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void mismatch(const char* op) {
    throw ContractError(std::string(op) + ": operands come from different domains");
}

// Applies a unary operation to whichever alternative is present; Bottom maps
// to Bottom over the domain the operation would produce.
template <class Fn>
AbstractSubstitution map_value(const AbstractSubstitution& a, VarMask bottom_domain, Fn&& fn) {
    if (a.is_bottom()) return AbstractSubstitution::bottom(bottom_domain);
    return std::visit(
        [&](const auto& v) -> AbstractSubstitution {
            if constexpr (std::is_same_v<std::decay_t<decltype(v)>, Bottom>)
                return AbstractSubstitution::bottom(bottom_domain);
            else
                return fn(v);
        },
        a.value());
}
} // namespace

std::string_view domain_name(DomainKind k) {
    switch (k) {
    case DomainKind::sharing: return "sharing";
    case DomainKind::sharing_freeness: return "sharing-freeness";
    case DomainKind::clique_sharing: return "clique-sharing";
    case DomainKind::clique_sharing_freeness: return "clique-sharing-freeness";
    }
    return "?";
}

std::optional<DomainKind> parse_domain(std::string_view name) {
    for (auto k : {DomainKind::sharing, DomainKind::sharing_freeness, DomainKind::clique_sharing,
                   DomainKind::clique_sharing_freeness})
        if (domain_name(k) == name) return k;
    return std::nullopt;
}

VarMask AbstractSubstitution::domain() const {
    return std::visit(overloaded{[](const Bottom& b) { return b.domain; },
                                 [](const auto& v) -> VarMask { return v.domain(); }},
                      value_);
}

namespace domain {

AbstractSubstitution initial_call(DomainKind kind, VarMask vars, VarMask ground_vars, VarMask free_vars) {
    VarMask nonground = vars & ~ground_vars;
    free_vars &= nonground;
    switch (kind) {
    case DomainKind::sharing: {
        auto s = cliquesh::top(nonground);
        s.set_domain(vars);
        return s;
    }
    case DomainKind::sharing_freeness: {
        auto s = cliquesh::top(nonground);
        s.set_domain(vars);
        return SharingFreeness{std::move(s), free_vars};
    }
    case DomainKind::clique_sharing: {
        auto p = top_s(nonground);
        p.cl.set_domain(vars);
        p.sh.set_domain(vars);
        return p;
    }
    case DomainKind::clique_sharing_freeness: {
        auto p = top_s(nonground);
        p.cl.set_domain(vars);
        p.sh.set_domain(vars);
        return CliqueSharingFreeness{std::move(p), free_vars};
    }
    }
    return Bottom{vars};
}

AbstractSubstitution top(DomainKind kind, VarMask vars) { return initial_call(kind, vars, 0, 0); }

AbstractSubstitution project(const AbstractSubstitution& a, VarMask vars) {
    return map_value(a, a.domain() & vars,
                     overloaded{[&](const SharingSet& s) -> AbstractSubstitution { return cliquesh::project(vars, s); },
                                [&](const SharingFreeness& s) -> AbstractSubstitution { return project_f(vars, s); },
                                [&](const CliquePair& p) -> AbstractSubstitution { return project_s(vars, p); },
                                [&](const CliqueSharingFreeness& s) -> AbstractSubstitution {
                                    return project_sf(vars, s);
                                }});
}

AbstractSubstitution augment(const AbstractSubstitution& a, VarMask vars) {
    return map_value(a, a.domain() | vars,
                     overloaded{[&](const SharingSet& s) -> AbstractSubstitution { return cliquesh::augment(vars, s); },
                                [&](const SharingFreeness& s) -> AbstractSubstitution { return augment_f(vars, s); },
                                [&](const CliquePair& p) -> AbstractSubstitution { return augment_s(vars, p); },
                                [&](const CliqueSharingFreeness& s) -> AbstractSubstitution {
                                    return augment_sf(vars, s);
                                }});
}

AbstractSubstitution amgu(const AbstractSubstitution& a, Var x, const Term& t) {
    return map_value(a, a.domain(),
                     overloaded{[&](const SharingSet& s) -> AbstractSubstitution { return cliquesh::amgu(x, t, s); },
                                [&](const SharingFreeness& s) -> AbstractSubstitution { return amgu_f(x, t, s); },
                                [&](const CliquePair& p) -> AbstractSubstitution { return amgu_s(x, t, p); },
                                [&](const CliqueSharingFreeness& s) -> AbstractSubstitution {
                                    return amgu_sf(x, t, s);
                                }});
}

AbstractSubstitution ground(const AbstractSubstitution& a, VarMask vars) {
    return map_value(a, a.domain(),
                     overloaded{[&](const SharingSet& s) -> AbstractSubstitution { return cliquesh::ground(vars, s); },
                                [&](const SharingFreeness& s) -> AbstractSubstitution { return ground_f(vars, s); },
                                [&](const CliquePair& p) -> AbstractSubstitution { return ground_s(vars, p); },
                                [&](const CliqueSharingFreeness& s) -> AbstractSubstitution {
                                    return ground_sf(vars, s);
                                }});
}

AbstractSubstitution extend(const AbstractSubstitution& call, VarMask g_vars, const AbstractSubstitution& prime,
                            const ExtendOptions& opts) {
    if (call.is_bottom() || prime.is_bottom()) return AbstractSubstitution::bottom(call.domain());
    return std::visit(
        [&](const auto& c) -> AbstractSubstitution {
            using C = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<C, Bottom>) {
                return c;
            } else {
                if (!prime.holds<C>()) mismatch("extend");
                const auto& p = prime.as<C>();
                if constexpr (std::is_same_v<C, SharingSet>)
                    return cliquesh::extend(c, g_vars, p);
                else if constexpr (std::is_same_v<C, SharingFreeness>)
                    return extend_f(c, g_vars, p);
                else if constexpr (std::is_same_v<C, CliquePair>)
                    return extend_s(c, g_vars, p, opts);
                else
                    return extend_sf(c, g_vars, p, opts);
            }
        },
        call.value());
}

AbstractSubstitution lub(const AbstractSubstitution& a, const AbstractSubstitution& b) {
    if (a.is_bottom()) return b.is_bottom() ? AbstractSubstitution::bottom(a.domain() | b.domain()) : b;
    if (b.is_bottom()) return a;
    return std::visit(
        [&](const auto& x) -> AbstractSubstitution {
            using C = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<C, Bottom>) {
                return b;
            } else {
                if (!b.holds<C>()) mismatch("lub");
                const auto& y = b.as<C>();
                if constexpr (std::is_same_v<C, SharingSet>)
                    return cliquesh::lub(x, y);
                else if constexpr (std::is_same_v<C, SharingFreeness>)
                    return lub_f(x, y);
                else if constexpr (std::is_same_v<C, CliquePair>)
                    return lub_s(x, y);
                else
                    return lub_sf(x, y);
            }
        },
        a.value());
}

namespace {
bool leq_impl(const AbstractSubstitution& a, const AbstractSubstitution& b, bool exact) {
    if (a.is_bottom()) return true;
    if (b.is_bottom()) return false;
    return std::visit(
        [&](const auto& x) -> bool {
            using C = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<C, Bottom>) {
                return true;
            } else {
                if (!b.holds<C>()) mismatch("leq");
                const auto& y = b.as<C>();
                if constexpr (std::is_same_v<C, SharingSet>)
                    return cliquesh::leq(x, y);
                else if constexpr (std::is_same_v<C, SharingFreeness>)
                    return leq_f(x, y);
                else if constexpr (std::is_same_v<C, CliquePair>)
                    return exact ? leq_exact_s(x, y) : leq_s(x, y);
                else
                    return is_subset(y.f, x.f) && (exact ? leq_exact_s(x.p, y.p) : leq_s(x.p, y.p));
            }
        },
        a.value());
}
} // namespace

bool leq(const AbstractSubstitution& a, const AbstractSubstitution& b) { return leq_impl(a, b, false); }
bool leq_exact(const AbstractSubstitution& a, const AbstractSubstitution& b) { return leq_impl(a, b, true); }

AbstractSubstitution remap(const AbstractSubstitution& a, std::span<const int> mapping) {
    if (a.is_bottom()) return AbstractSubstitution::bottom(cliquesh::remap(a.domain(), mapping));
    return std::visit(
        [&](const auto& v) -> AbstractSubstitution {
            if constexpr (std::is_same_v<std::decay_t<decltype(v)>, Bottom>)
                return v;
            else
                return cliquesh::remap(v, mapping);
        },
        a.value());
}

AbstractSubstitution normalize(const AbstractSubstitution& a, const NormalizePolicy& policy) {
    if (const auto* p = std::get_if<CliquePair>(&a.value())) return normalize_with(*p, policy);
    if (const auto* s = std::get_if<CliqueSharingFreeness>(&a.value()))
        return restore_consistency(CliqueSharingFreeness{normalize_with(s->p, policy), s->f});
    return a;
}

AbstractSubstitution amgu_all(const AbstractSubstitution& a, const EquationSet& eqs) {
    AbstractSubstitution cur = a;
    for (const auto& b : eqs) {
        if (cur.is_bottom()) break;
        cur = amgu(cur, b.var, b.term);
    }
    return cur;
}

AbstractSubstitution unify(const AbstractSubstitution& a, const Term& t1, const Term& t2, UnifyOptions opts) {
    VarMask v1 = vars_of(t1);
    if (a.is_bottom()) return AbstractSubstitution::bottom(v1);
    auto eqs = solve(t1, t2);
    if (!eqs) return AbstractSubstitution::bottom(v1);

    if (opts.free_t1) {
        if (const auto* s = std::get_if<SharingSet>(&a.value())) {
            auto lifted = augment_f(v1, SharingFreeness{*s, 0});
            for (const auto& b : *eqs) lifted = amgu_f(b.var, b.term, lifted);
            return project_f(v1, lifted).sh;
        }
        if (const auto* p = std::get_if<CliquePair>(&a.value())) {
            auto lifted = augment_sf(v1, CliqueSharingFreeness{*p, 0});
            for (const auto& b : *eqs) lifted = amgu_sf(b.var, b.term, lifted);
            return project_sf(v1, lifted).p;
        }
    }
    return project(amgu_all(augment(a, v1), *eqs), v1);
}

SharingSet sharing_view(const AbstractSubstitution& a) {
    return std::visit(overloaded{[](const Bottom& b) { return SharingSet(b.domain); },
                                 [](const SharingSet& s) { return s; },
                                 [](const SharingFreeness& s) { return s.sh; },
                                 [](const CliquePair& p) { return oracle::expand(p); },
                                 [](const CliqueSharingFreeness& s) { return oracle::expand(s.p); }},
                      a.value());
}

FreenessSet freeness_of(const AbstractSubstitution& a) {
    if (const auto* s = std::get_if<SharingFreeness>(&a.value())) return s->f;
    if (const auto* s = std::get_if<CliqueSharingFreeness>(&a.value())) return s->f;
    return 0;
}

Measure measure(const AbstractSubstitution& a) {
    Measure m;
    unsigned n = cardinality(a.domain());
    m.worst_case = n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    std::visit(overloaded{[](const Bottom&) {},
                          [&](const SharingSet& s) { m.groups = m.representation = s.size(); },
                          [&](const SharingFreeness& s) { m.groups = m.representation = s.sh.size(); },
                          [&](const CliquePair& p) {
                              m.groups = expansion_size(p);
                              m.cliques = p.cl.size();
                              m.representation = p.cl.size() + p.sh.size();
                          },
                          [&](const CliqueSharingFreeness& s) {
                              m.groups = expansion_size(s.p);
                              m.cliques = s.p.cl.size();
                              m.representation = s.p.cl.size() + s.p.sh.size();
                          }},
               a.value());
    return m;
}

std::string to_string(const AbstractSubstitution& a, const VarNames& names) {
    return std::visit(overloaded{[](const Bottom&) { return std::string("bottom"); },
                                 [&](const auto& v) { return cliquesh::to_string(v, names); }},
                      a.value());
}

} // namespace domain
} // namespace cliquesh
