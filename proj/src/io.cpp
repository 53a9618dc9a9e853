#include "ocs/io.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace ocs {

ParseError::ParseError(const std::string& what, int line, int col)
    : std::runtime_error("line " + std::to_string(line) + ", col " +
                         std::to_string(col) + ": " + what),
      line(line),
      col(col) {}

namespace {

struct Token {
    enum Kind { LParen, RParen, Arrow, Comma, Ident, End };
    Kind kind;
    std::string text;
    int line;
    int col;
};

bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) {}

    const Token& peek() {
        if (!cur_) cur_ = lex();
        return *cur_;
    }
    Token next() {
        Token t = peek();
        cur_.reset();
        return t;
    }

    // Raw text up to the closing parenthesis of the current section,
    // allowing balanced nested parentheses inside. Only valid right after
    // next(), when no token is buffered.
    std::string raw_until_close() {
        std::string out;
        int depth = 0;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '(') ++depth;
            if (c == ')') {
                if (depth == 0) {
                    advance();
                    return out;
                }
                --depth;
            }
            out.push_back(c);
            advance();
        }
        throw ParseError("unterminated section", line_, col_);
    }

private:
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    Token lex() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            advance();
        int line = line_, col = col_;
        if (pos_ >= text_.size()) return {Token::End, "", line, col};
        char c = text_[pos_];
        if (c == '(') {
            advance();
            return {Token::LParen, "(", line, col};
        }
        if (c == ')') {
            advance();
            return {Token::RParen, ")", line, col};
        }
        if (c == ',') {
            advance();
            return {Token::Comma, ",", line, col};
        }
        if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
            advance();
            advance();
            return {Token::Arrow, "->", line, col};
        }
        if (ident_char(c)) {
            std::string s;
            while (pos_ < text_.size() && ident_char(text_[pos_])) {
                s.push_back(text_[pos_]);
                advance();
            }
            return {Token::Ident, s, line, col};
        }
        throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    std::optional<Token> cur_;
};

void expect(Lexer& lx, Token::Kind kind, const char* what) {
    Token t = lx.next();
    if (t.kind != kind)
        throw ParseError(std::string("expected ") + what + ", got '" + t.text + "'",
                         t.line, t.col);
}

struct PreTerm {
    std::string name;
    std::vector<PreTerm> args;
    int line;
    int col;
};

PreTerm parse_preterm(Lexer& lx) {
    Token id = lx.next();
    if (id.kind != Token::Ident)
        throw ParseError("expected a symbol, got '" + id.text + "'", id.line, id.col);
    PreTerm t{id.text, {}, id.line, id.col};
    if (lx.peek().kind == Token::LParen) {
        lx.next();
        if (lx.peek().kind == Token::RParen) {
            lx.next();
            return t;
        }
        for (;;) {
            t.args.push_back(parse_preterm(lx));
            Token sep = lx.next();
            if (sep.kind == Token::Comma) continue;
            if (sep.kind == Token::RParen) break;
            throw ParseError("expected ',' or ')' in argument list", sep.line, sep.col);
        }
    }
    return t;
}

Term to_term(const PreTerm& p, const std::set<std::string>& vars) {
    if (vars.count(p.name)) {
        if (!p.args.empty())
            throw ParseError("variable '" + p.name + "' applied to arguments", p.line,
                             p.col);
        return Term::var(p.name);
    }
    std::vector<Term> args;
    args.reserve(p.args.size());
    for (const auto& a : p.args) args.push_back(to_term(a, vars));
    return Term::fun(p.name, std::move(args));
}

void collect_symbols(const PreTerm& p, const std::set<std::string>& vars, Signature& sig) {
    if (vars.count(p.name)) return;
    try {
        sig.add(p.name, static_cast<int>(p.args.size()));
    } catch (const std::exception& e) {
        throw ParseError(e.what(), p.line, p.col);
    }
    for (const auto& a : p.args) collect_symbols(a, vars, sig);
}

int parse_number(const Token& t) {
    if (t.kind != Token::Ident || t.text.empty())
        throw ParseError("expected a number, got '" + t.text + "'", t.line, t.col);
    for (char c : t.text)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw ParseError("expected a number, got '" + t.text + "'", t.line, t.col);
    return std::stoi(t.text);
}

}  // namespace

ProblemFile parse_problem(const std::string& text) {
    Lexer lx(text);
    std::set<std::string> vars;
    std::vector<std::pair<PreTerm, PreTerm>> prerules;
    Signature sig;
    std::string strategy;
    std::string comment;

    struct MuEntry {
        std::string sym;
        std::set<int> idx;
        int line;
        int col;
    };
    std::vector<MuEntry> mu_entries;
    bool has_mu = false;
    std::set<std::string> seen;

    for (;;) {
        Token t = lx.next();
        if (t.kind == Token::End) break;
        if (t.kind != Token::LParen)
            throw ParseError("expected '(' starting a section", t.line, t.col);
        Token name = lx.next();
        if (name.kind != Token::Ident)
            throw ParseError("expected a section name", name.line, name.col);
        if (!seen.insert(name.text).second)
            throw ParseError("duplicate " + name.text + " section", name.line, name.col);

        if (name.text == "VAR") {
            while (lx.peek().kind == Token::Ident) vars.insert(lx.next().text);
            expect(lx, Token::RParen, "')'");
        } else if (name.text == "RULES") {
            while (lx.peek().kind == Token::Ident) {
                PreTerm l = parse_preterm(lx);
                expect(lx, Token::Arrow, "'->'");
                PreTerm r = parse_preterm(lx);
                prerules.emplace_back(std::move(l), std::move(r));
            }
            expect(lx, Token::RParen, "')'");
        } else if (name.text == "SIG") {
            while (lx.peek().kind == Token::LParen) {
                lx.next();
                Token f = lx.next();
                if (f.kind != Token::Ident)
                    throw ParseError("expected a symbol", f.line, f.col);
                int ar = parse_number(lx.next());
                try {
                    sig.add(f.text, ar);
                } catch (const std::exception& e) {
                    throw ParseError(e.what(), f.line, f.col);
                }
                expect(lx, Token::RParen, "')'");
            }
            expect(lx, Token::RParen, "')'");
        } else if (name.text == "STRATEGY") {
            Token tag = lx.next();
            if (tag.kind != Token::Ident)
                throw ParseError("expected a strategy name", tag.line, tag.col);
            strategy = tag.text;
            if (tag.text == "CONTEXTSENSITIVE") {
                has_mu = true;
                while (lx.peek().kind == Token::LParen) {
                    lx.next();
                    Token f = lx.next();
                    if (f.kind != Token::Ident)
                        throw ParseError("expected a symbol", f.line, f.col);
                    MuEntry e{f.text, {}, f.line, f.col};
                    while (lx.peek().kind == Token::Ident)
                        e.idx.insert(parse_number(lx.next()));
                    expect(lx, Token::RParen, "')'");
                    mu_entries.push_back(std::move(e));
                }
            } else if (tag.text != "OUTERMOST" && tag.text != "INNERMOST" &&
                       tag.text != "FULL") {
                throw ParseError("unsupported strategy '" + tag.text + "'", tag.line,
                                 tag.col);
            }
            expect(lx, Token::RParen, "')'");
        } else if (name.text == "COMMENT") {
            comment = lx.raw_until_close();
        } else {
            throw ParseError("unknown section '" + name.text + "'", name.line, name.col);
        }
    }

    for (const auto& [l, r] : prerules) {
        collect_symbols(l, vars, sig);
        collect_symbols(r, vars, sig);
    }
    std::vector<Rule> rules;
    rules.reserve(prerules.size());
    for (const auto& [l, r] : prerules)
        rules.push_back({to_term(l, vars), to_term(r, vars)});

    ProblemFile out;
    out.trs = Trs(std::move(sig), std::move(rules));
    out.strategy = std::move(strategy);
    out.comment = std::move(comment);
    if (has_mu) {
        ReplacementMap mu;
        for (const auto& e : mu_entries) {
            if (!out.trs.sig().contains(e.sym))
                throw ParseError("replacement map names unknown symbol '" + e.sym + "'",
                                 e.line, e.col);
            int ar = out.trs.sig().arity(e.sym);
            for (int i : e.idx)
                if (i < 1 || i > ar)
                    throw ParseError("argument index " + std::to_string(i) +
                                         " out of range for '" + e.sym + "'",
                                     e.line, e.col);
            mu.set(e.sym, e.idx);
        }
        out.mu = std::move(mu);
    }
    return out;
}

Trs parse_trs(const std::string& text) { return parse_problem(text).trs; }

namespace {

std::string sanitize_fragment(const std::string& name) {
    static const std::vector<std::pair<std::string, std::string>> subs = {
        {"⊤", "TOP"}, {"⊥", "bot"}, {"↑", "up_"}, {"→", "_"},
        {"^", "_"},   {",", "_"},   {"*", "_mark"},
    };
    std::string out = name;
    for (const auto& [from, to] : subs) {
        std::string next;
        std::size_t pos = 0;
        for (;;) {
            auto hit = out.find(from, pos);
            if (hit == std::string::npos) {
                next.append(out, pos, std::string::npos);
                break;
            }
            next.append(out, pos, hit - pos);
            next += to;
            pos = hit + from.size();
        }
        out = std::move(next);
    }
    return out;
}

// Injective renaming to plain identifiers. Names that are already plain
// keep themselves; the rest get their sanitized form, with a numeric
// suffix when that form s taken.
std::map<std::string, std::string> sanitize_map(const Signature& sig,
                                                const std::set<std::string>& avoid) {
    std::map<std::string, std::string> ren;
    std::set<std::string> used = avoid;
    for (const auto& [f, ar] : sig.symbols()) {
        (void)ar;
        if (sanitize_fragment(f) == f && !used.count(f)) {
            ren[f] = f;
            used.insert(f);
        }
    }
    for (const auto& [f, ar] : sig.symbols()) {
        (void)ar;
        if (ren.count(f)) continue;
        std::string base = sanitize_fragment(f);
        std::string cand = base;
        for (int i = 2; used.count(cand); ++i) cand = base + "_" + std::to_string(i);
        used.insert(cand);
        ren[f] = cand;
    }
    return ren;
}

void print_term(std::ostringstream& os, const Term& t,
                const std::map<std::string, std::string>& ren) {
    if (t.is_var()) {
        os << t.symbol();
        return;
    }
    os << ren.at(t.symbol());
    if (!t.args().empty()) {
        os << "(";
        for (std::size_t i = 0; i < t.args().size(); ++i) {
            if (i) os << ",";
            print_term(os, t.args()[i], ren);
        }
        os << ")";
    }
}

}  // namespace

std::string write_cstrs(const CsTrs& cs) {
    std::set<std::string> vars;
    for (const auto& rule : cs.trs.rules()) {
        auto v = variables(rule.lhs);
        vars.insert(v.begin(), v.end());
        v = variables(rule.rhs);
        vars.insert(v.begin(), v.end());
    }
    auto ren = sanitize_map(cs.trs.sig(), vars);

    std::ostringstream os;
    os << "(VAR";
    for (const auto& v : vars) os << " " << v;
    os << ")\n";

    os << "(STRATEGY CONTEXTSENSITIVE";
    for (const auto& [f, ar] : cs.trs.sig().symbols()) {
        std::set<int> m = cs.mu.at(f, ar);
        if (static_cast<int>(m.size()) == ar) continue;  // full by convention
        os << "\n  (" << ren.at(f);
        for (int i : m) os << " " << i;
        os << ")";
    }
    os << ")\n";

    os << "(RULES\n";
    for (const auto& rule : cs.trs.rules()) {
        os << "  ";
        print_term(os, rule.lhs, ren);
        os << " -> ";
        print_term(os, rule.rhs, ren);
        os << "\n";
    }
    os << ")\n";

    std::vector<std::string> renamed;
    for (const auto& [f, s] : ren)
        if (f != s) renamed.push_back(f + " is written " + s);
    if (!renamed.empty()) {
        os << "(COMMENT renamed symbols:";
        for (const auto& line : renamed) os << "\n  " << line;
        os << ")\n";
    }
    return os.str();
}

RedexAlgebra parse_algebra(const std::string& text, const Signature& sig) {
    Lexer lx(text);
    std::vector<std::string> elems;

    struct Entry {
        std::string f;
        std::vector<std::string> args;
        std::string result;
        int line;
        int col;
    };
    std::vector<Entry> interps;
    std::vector<Entry> redexes;
    std::set<std::string> seen;

    for (;;) {
        Token t = lx.next();
        if (t.kind == Token::End) break;
        if (t.kind != Token::LParen)
            throw ParseError("expected '(' starting a section", t.line, t.col);
        Token name = lx.next();
        if (name.kind != Token::Ident)
            throw ParseError("expected a section name", name.line, name.col);
        if (!seen.insert(name.text).second)
            throw ParseError("duplicate " + name.text + " section", name.line, name.col);

        if (name.text == "ELEMENTS") {
            while (lx.peek().kind == Token::Ident) elems.push_back(lx.next().text);
            expect(lx, Token::RParen, "')'");
        } else if (name.text == "INTERP" || name.text == "REDEX") {
            bool interp = name.text == "INTERP";
            while (lx.peek().kind == Token::LParen) {
                lx.next();
                Token f = lx.next();
                if (f.kind != Token::Ident)
                    throw ParseError("expected a symbol", f.line, f.col);
                Entry e{f.text, {}, "", f.line, f.col};
                while (lx.peek().kind == Token::Ident) e.args.push_back(lx.next().text);
                if (interp) {
                    expect(lx, Token::Arrow, "'->'");
                    Token res = lx.next();
                    if (res.kind != Token::Ident)
                        throw ParseError("expected an element", res.line, res.col);
                    e.result = res.text;
                }
                expect(lx, Token::RParen, "')'");
                (interp ? interps : redexes).push_back(std::move(e));
            }
            expect(lx, Token::RParen, "')'");
        } else {
            throw ParseError("unknown section '" + name.text + "'", name.line, name.col);
        }
    }

    if (elems.empty()) throw ParseError("missing or empty ELEMENTS section", 1, 1);
    if (std::set<std::string>(elems.begin(), elems.end()).size() != elems.size())
        throw ParseError("duplicate element name", 1, 1);

    FiniteAlgebra alg(sig, elems);
    auto resolve = [&](const Entry& e) {
        if (!sig.contains(e.f))
            throw ParseError("unknown symbol '" + e.f + "'", e.line, e.col);
        if (sig.arity(e.f) != static_cast<int>(e.args.size()))
            throw ParseError("'" + e.f + "' expects " + std::to_string(sig.arity(e.f)) +
                                 " arguments",
                             e.line, e.col);
        std::vector<Elem> out;
        for (const auto& n : e.args) {
            auto el = alg.element_by_name(n);
            if (!el) throw ParseError("unknown element '" + n + "'", e.line, e.col);
            out.push_back(*el);
        }
        return out;
    };

    for (const auto& e : interps) {
        std::vector<Elem> args = resolve(e);
        auto res = alg.element_by_name(e.result);
        if (!res)
            throw ParseError("unknown element '" + e.result + "'", e.line, e.col);
        alg.set_interp(e.f, args, *res);
    }
    alg.check_total();

    std::map<std::string, std::vector<char>> tables;
    for (const auto& [f, ar] : sig.symbols()) {
        std::size_t n = 1;
        for (int i = 0; i < ar; ++i) n *= elems.size();
        tables[f] = std::vector<char>(n, 0);
    }
    for (const auto& e : redexes) {
        std::vector<Elem> args = resolve(e);
        tables[e.f][alg.tuple_index(static_cast<int>(args.size()), args)] = 1;
    }
    return RedexAlgebra(std::move(alg), std::move(tables));
}

std::string format_algebra(const RedexAlgebra& ra) {
    const FiniteAlgebra& a = ra.alg();
    std::ostringstream os;
    os << "(ELEMENTS";
    for (const auto& n : a.element_names()) os << " " << n;
    os << ")\n(INTERP";
    for (const auto& [f, ar] : a.sig().symbols()) {
        std::size_t count = 1;
        for (int i = 0; i < ar; ++i) count *= a.size();
        for (std::size_t idx = 0; idx < count; ++idx) {
            std::vector<Elem> args = a.tuple_at(ar, idx);
            os << "\n  (" << f;
            for (Elem e : args) os << " " << a.name(e);
            os << " -> " << a.name(a.interp(f, args)) << ")";
        }
    }
    os << ")\n(REDEX";
    for (const auto& [f, ar] : a.sig().symbols()) {
        std::size_t count = 1;
        for (int i = 0; i < ar; ++i) count *= a.size();
        for (std::size_t idx = 0; idx < count; ++idx) {
            std::vector<Elem> args = a.tuple_at(ar, idx);
            if (!ra.isredex(f, args)) continue;
            os << "\n  (" << f;
            for (Elem e : args) os << " " << a.name(e);
            os << ")";
        }
    }
    os << ")\n";
    return os.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace ocs
