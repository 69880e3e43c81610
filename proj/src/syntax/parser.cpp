#include <algorithm>
#include <array>
#include <cctype>
#include <optional>
#include <set>

#include "cliquesh/syntax.hpp"

namespace cliquesh {

ParseError::ParseError(std::string message, std::size_t line, std::size_t column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

bool is_builtin(const PredicateKey& key) {
    static const std::set<PredicateKey> kBuiltins = {
        {"true", 0},   {"fail", 0},    {"false", 0},   {"!", 0},       {"nl", 0},      {"=", 2},
        {"\\=", 2},    {"==", 2},      {"\\==", 2},    {"is", 2},      {"=:=", 2},     {"=\\=", 2},
        {"<", 2},      {">", 2},       {"=<", 2},      {">=", 2},      {"@<", 2},      {"@>", 2},
        {"@=<", 2},    {"@>=", 2},     {"var", 1},     {"nonvar", 1},  {"atom", 1},    {"atomic", 1},
        {"number", 1}, {"integer", 1}, {"write", 1},   {"display", 1},
    };
    return kBuiltins.contains(key);
}

namespace {

enum class Tok { atom, var, number, punct, end, eof };

struct Token {
    Tok kind = Tok::eof;
    std::string text;
    std::size_t line = 1;
    std::size_t column = 1;
    bool quoted = false;
    bool layout_before = false;
    bool functional = false; ///< name immediately followed by '('
};

bool is_symbol_char(char c) {
    static constexpr std::string_view kSymbols = "+-*/\\^<>=~:.?@#&$";
    return kSymbols.find(c) != std::string_view::npos;
}

class Lexer {
  public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            const bool layout = skip_layout();
            Token t = next();
            t.layout_before = layout;
            if (t.kind == Tok::atom && peek() == '(') t.functional = true;
            out.push_back(t);
            if (t.kind == Tok::eof) break;
        }
        return out;
    }

  private:
    char peek(std::size_t ahead = 0) const { return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0'; }

    char advance() {
        const char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    bool skip_layout() {
        bool any = false;
        for (;;) {
            if (pos_ >= src_.size()) return any;
            const char c = peek();
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
                any = true;
            } else if (c == '%') {
                while (pos_ < src_.size() && peek() != '\n') advance();
                any = true;
            } else if (c == '/' && peek(1) == '*') {
                const std::size_t l = line_, k = col_;
                advance();
                advance();
                while (pos_ < src_.size() && !(peek() == '*' && peek(1) == '/')) advance();
                if (pos_ >= src_.size()) throw ParseError("unterminated block comment", l, k);
                advance();
                advance();
                any = true;
            } else {
                return any;
            }
        }
    }

    Token next() {
        Token t;
        t.line = line_;
        t.column = col_;
        if (pos_ >= src_.size()) {
            t.kind = Tok::eof;
            return t;
        }
        const char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            t.kind = Tok::number;
            while (std::isdigit(static_cast<unsigned char>(peek()))) t.text += advance();
            return t;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') t.text += advance();
            t.kind = (std::isupper(static_cast<unsigned char>(c)) || c == '_') ? Tok::var : Tok::atom;
            return t;
        }
        if (c == '\'') {
            advance();
            for (;;) {
                if (pos_ >= src_.size()) throw ParseError("unterminated quoted atom", t.line, t.column);
                const char q = advance();
                if (q == '\'') {
                    if (peek() == '\'') {
                        t.text += advance();
                        continue;
                    }
                    break;
                }
                t.text += q;
            }
            t.kind = Tok::atom;
            t.quoted = true;
            return t;
        }
        if (c == '.') {
            const char after = peek(1);
            if (after == '\0' || std::isspace(static_cast<unsigned char>(after)) || after == '%') {
                advance();
                t.kind = Tok::end;
                t.text = ".";
                return t;
            }
        }
        if (c == '(' || c == ')' || c == '[' || c == ']' || c == '{' || c == '}' || c == ',' || c == '|') {
            t.kind = Tok::punct;
            t.text = std::string(1, advance());
            return t;
        }
        if (c == '!' || c == ';') {
            t.kind = Tok::atom;
            t.text = std::string(1, advance());
            return t;
        }
        if (is_symbol_char(c)) {
            while (is_symbol_char(peek())) t.text += advance();
            t.kind = Tok::atom;
            return t;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", t.line, t.column);
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

enum class Assoc { xfx, xfy, yfx };

struct InfixOp {
    std::string_view name;
    int priority;
    Assoc assoc;
};

constexpr std::array kInfix = {
    InfixOp{":-", 1200, Assoc::xfx}, InfixOp{",", 1000, Assoc::xfy},   InfixOp{"=", 700, Assoc::xfx},
    InfixOp{"\\=", 700, Assoc::xfx}, InfixOp{"==", 700, Assoc::xfx},   InfixOp{"\\==", 700, Assoc::xfx},
    InfixOp{"is", 700, Assoc::xfx},  InfixOp{"=:=", 700, Assoc::xfx},  InfixOp{"=\\=", 700, Assoc::xfx},
    InfixOp{"<", 700, Assoc::xfx},   InfixOp{">", 700, Assoc::xfx},    InfixOp{"=<", 700, Assoc::xfx},
    InfixOp{">=", 700, Assoc::xfx},  InfixOp{"@<", 700, Assoc::xfx},   InfixOp{"@>", 700, Assoc::xfx},
    InfixOp{"@=<", 700, Assoc::xfx}, InfixOp{"@>=", 700, Assoc::xfx},  InfixOp{"+", 500, Assoc::yfx},
    InfixOp{"-", 500, Assoc::yfx},   InfixOp{"*", 400, Assoc::yfx},    InfixOp{"/", 400, Assoc::yfx},
    InfixOp{"//", 400, Assoc::yfx},  InfixOp{"mod", 400, Assoc::yfx},  InfixOp{"rem", 400, Assoc::yfx},
};

std::optional<InfixOp> infix_op(const Token& t) {
    if (t.quoted) return std::nullopt;
    if (t.kind == Tok::punct && t.text == ",") return kInfix[1];
    if (t.kind != Tok::atom || t.functional) return std::nullopt;
    for (const InfixOp& op : kInfix) {
        if (op.name == t.text) return op;
    }
    return std::nullopt;
}

class Parser {
  public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    Program program() {
        Program prog;
        std::vector<std::pair<std::size_t, std::size_t>> entry_positions;
        while (peek().kind != Tok::eof) {
            names_.clear();
            const Token start = peek();
            if (peek().kind == Tok::atom && peek().text == ":-" && !peek().functional) {
                advance();
                EntryDecl decl = directive(start);
                for (const EntryDecl& seen : prog.entries) {
                    if (seen.goal == decl.goal && seen.annotations == decl.annotations) {
                        throw ParseError("duplicate entry declaration", start.line, start.column);
                    }
                }
                prog.entries.push_back(std::move(decl));
                entry_positions.emplace_back(start.line, start.column);
                continue;
            }
            Clause c = clause(start);
            prog.predicates[key_of(c.head)].push_back(std::move(c));
        }
        for (std::size_t i = 0; i < prog.entries.size(); ++i) {
            const PredicateKey key = key_of(prog.entries[i].goal);
            if (prog.clauses_of(key) == nullptr && !is_builtin(key)) {
                throw ParseError("entry refers to undefined predicate " + key.to_string(), entry_positions[i].first,
                                 entry_positions[i].second);
            }
        }
        return prog;
    }

    Term single_term(VarNames& names) {
        names_ = names;
        Term t = term(1200);
        if (peek().kind == Tok::end) advance();
        if (peek().kind != Tok::eof) fail("trailing input after term");
        names = names_;
        return t;
    }

  private:
    const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
    const Token& advance() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

    [[noreturn]] void fail(const std::string& msg) const {
        const Token& t = peek();
        const std::string near = t.kind == Tok::eof ? "end of input" : "'" + t.text + "'";
        throw ParseError(msg + " near " + near, t.line, t.column);
    }

    void expect_punct(std::string_view p) {
        if (peek().kind != Tok::punct || peek().text != p) fail("expected '" + std::string(p) + "'");
        advance();
    }

    void expect_end() {
        if (peek().kind != Tok::end) fail("expected '.' at end of clause");
        advance();
    }

    Term intern(const std::string& name) {
        if (name == "_") {
            names_.push_back("_");
            return Term::variable(static_cast<std::uint32_t>(names_.size() - 1));
        }
        auto it = std::find(names_.begin(), names_.end(), name);
        if (it != names_.end()) return Term::variable(static_cast<std::uint32_t>(it - names_.begin()));
        names_.push_back(name);
        return Term::variable(static_cast<std::uint32_t>(names_.size() - 1));
    }

    static bool is_callable(const Term& t) { return !t.is_var(); }

    Clause clause(const Token& start) {
        Term t = term(1200);
        expect_end();
        Clause c;
        if (!t.is_var() && t.functor() == ":-" && t.arity() == 2) {
            c.head = t.args()[0];
            flatten_conjunction(t.args()[1], c.body);
        } else {
            c.head = std::move(t);
        }
        if (!is_callable(c.head)) throw ParseError("clause head must be a compound term", start.line, start.column);
        if (!c.head.is_var() && (c.head.functor() == "," || c.head.functor() == ":-") && c.head.arity() == 2) {
            throw ParseError("malformed clause head", start.line, start.column);
        }
        for (const Term& b : c.body) {
            if (!is_callable(b)) throw ParseError("body goal must be a compound term", start.line, start.column);
        }
        c.var_names = names_;
        (void)vars_of(c.head); // enforce the per-clause variable limit
        for (const Term& b : c.body) (void)vars_of(b);
        return c;
    }

    static void flatten_conjunction(const Term& t, std::vector<Term>& out) {
        if (!t.is_var() && t.functor() == "," && t.arity() == 2) {
            flatten_conjunction(t.args()[0], out);
            flatten_conjunction(t.args()[1], out);
            return;
        }
        out.push_back(t);
    }

    EntryDecl directive(const Token& start) {
        if (peek().kind != Tok::atom || peek().text != "entry") fail("only ':- entry' directives are supported");
        advance();
        EntryDecl decl;
        decl.goal = term(999);
        if (decl.goal.is_var()) throw ParseError("entry goal must be a predicate atom", start.line, start.column);
        if (peek().kind == Tok::atom && peek().text == ":") {
            advance();
            for (;;) {
                const Token at = peek();
                Term ann = term(999);
                if (ann.is_var() || ann.arity() != 1 || !ann.args()[0].is_var() ||
                    (ann.functor() != "ground" && ann.functor() != "free")) {
                    throw ParseError("expected ground(V) or free(V) annotation", at.line, at.column);
                }
                const Var v = ann.args()[0].var();
                if (!meets(vars_of(decl.goal), var_bit(v.id))) {
                    throw ParseError("annotation variable does not occur in the entry goal", at.line, at.column);
                }
                decl.annotations.push_back({ann.functor() == "ground" ? Mode::ground : Mode::free, v});
                if (peek().kind == Tok::punct && peek().text == ",") {
                    advance();
                    continue;
                }
                break;
            }
        }
        expect_end();
        decl.var_names = names_;
        return decl;
    }

    Term term(int max_priority) {
        Term left = primary(max_priority);
        int left_priority = 0;
        for (;;) {
            const auto op = infix_op(peek());
            if (!op || op->priority > max_priority) break;
            const int left_max = op->assoc == Assoc::yfx ? op->priority : op->priority - 1;
            const int right_max = op->assoc == Assoc::xfy ? op->priority : op->priority - 1;
            if (left_priority > left_max) break;
            advance();
            Term right = term(right_max);
            left = Term::compound(std::string(op->name), {std::move(left), std::move(right)});
            left_priority = op->priority;
        }
        return left;
    }

    Term primary(int max_priority) {
        const Token t = peek();
        switch (t.kind) {
        case Tok::number:
            advance();
            return Term::atom(t.text);
        case Tok::var:
            advance();
            return intern(t.text);
        case Tok::punct:
            if (t.text == "(") {
                advance();
                Term inner = term(1200);
                expect_punct(")");
                return inner;
            }
            if (t.text == "[") return list();
            fail("unexpected punctuation");
        case Tok::atom: {
            advance();
            if (t.functional) {
                expect_punct("(");
                std::vector<Term> args;
                args.push_back(term(999));
                while (peek().kind == Tok::punct && peek().text == ",") {
                    advance();
                    args.push_back(term(999));
                }
                expect_punct(")");
                return Term::compound(t.text, std::move(args));
            }
            if (t.text == "-" && !t.quoted && peek().kind == Tok::number) {
                return Term::atom("-" + advance().text);
            }
            if (t.text == "-" && !t.quoted && max_priority >= 200 && starts_term(peek())) {
                return Term::compound("-", {term(200)});
            }
            if (infix_op(t) && !t.quoted && starts_term(peek()) && t.text != "-") {
                fail("operator used as an operand");
            }
            return Term::atom(t.text);
        }
        case Tok::end:
            fail("unexpected end of clause");
        case Tok::eof:
            fail("unexpected end of input");
        }
        fail("unexpected token");
    }

    static bool starts_term(const Token& t) {
        switch (t.kind) {
        case Tok::number:
        case Tok::var:
            return true;
        case Tok::atom:
            return !infix_op(t).has_value() || t.functional;
        case Tok::punct:
            return t.text == "(" || t.text == "[";
        default:
            return false;
        }
    }

    Term list() {
        expect_punct("[");
        if (peek().kind == Tok::punct && peek().text == "]") {
            advance();
            return Term::atom("[]");
        }
        std::vector<Term> items;
        items.push_back(term(999));
        while (peek().kind == Tok::punct && peek().text == ",") {
            advance();
            items.push_back(term(999));
        }
        Term tail = Term::atom("[]");
        if (peek().kind == Tok::punct && peek().text == "|") {
            advance();
            tail = term(999);
        }
        expect_punct("]");
        for (auto it = items.rbegin(); it != items.rend(); ++it) tail = Term::compound(".", {*it, std::move(tail)});
        return tail;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    VarNames names_;
};

} // namespace

Program parse_program(std::string_view source) { return Parser(Lexer(source).run()).program(); }

Term parse_term(std::string_view source, VarNames& names) {
    return Parser(Lexer(source).run()).single_term(names);
}

} // namespace cliquesh
