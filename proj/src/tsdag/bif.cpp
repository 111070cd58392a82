#include "tsdag/bif.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>

namespace tsdag {

BifError::BifError(std::string msg, int line, int col, bool semantic)
    : std::runtime_error((semantic ? "semantic error at " : "syntax error at ") + std::to_string(line) + ":" +
                         std::to_string(col) + ": " + std::move(msg)),
      line_(line), col_(col), semantic_(semantic) {}

namespace {

struct Token {
    enum Kind { Ident, Number, Punct, End } kind;
    std::string text;
    int line, col;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) {}

    Token next() {
        skip_ws();
        Token t;
        t.line = line_;
        t.col = col_;
        if (pos_ >= text_.size()) {
            t.kind = Token::End;
            return t;
        }
        char c = text_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                           text_[pos_] == '_' || text_[pos_] == '.' || text_[pos_] == '-'))
                advance();
            t.kind = Token::Ident;
            t.text = text_.substr(start, pos_ - start);
            return t;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '+') {
            size_t start = pos_;
            while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                           text_[pos_] == '.' || text_[pos_] == '-' || text_[pos_] == '+'))
                advance();
            t.kind = Token::Number;
            t.text = text_.substr(start, pos_ - start);
            return t;
        }
        if (std::string("{}()[]|,;").find(c) != std::string::npos) {
            t.kind = Token::Punct;
            t.text = std::string(1, c);
            advance();
            return t;
        }
        throw BifError(std::string("unexpected character '") + c + "'", line_, col_, false);
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
    void skip_ws() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else {
                break;
            }
        }
    }

    const std::string& text_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
};

class Parser {
public:
    explicit Parser(const std::string& text) : lex_(text) { cur_ = lex_.next(); }

    DiscreteNet parse() {
        expect_ident("network");
        expect_kind(Token::Ident, "network name");
        expect_punct("{");
        expect_punct("}");
        while (cur_.kind != Token::End) {
            if (cur_.kind == Token::Ident && cur_.text == "variable")
                parse_variable();
            else if (cur_.kind == Token::Ident && cur_.text == "probability")
                parse_probability();
            else
                fail("expected 'variable' or 'probability'");
        }
        return build();
    }

private:
    struct VarDecl {
        std::string name;
        std::vector<std::string> states;
        int line, col;
    };
    struct ProbDecl {
        std::string child;
        std::vector<std::string> parents;
        // row key = parent state names; empty key = unconditional 'table' row
        std::vector<std::pair<std::vector<std::string>, std::vector<double>>> rows;
        int line, col;
    };

    [[noreturn]] void fail(const std::string& msg, bool semantic = false) const {
        throw BifError(msg, cur_.line, cur_.col, semantic);
    }
    void bump() { cur_ = lex_.next(); }
    void expect_ident(const std::string& word) {
        if (cur_.kind != Token::Ident || cur_.text != word) fail("expected '" + word + "'");
        bump();
    }
    std::string expect_kind(Token::Kind k, const std::string& what) {
        if (cur_.kind != k) fail("expected " + what);
        std::string s = cur_.text;
        bump();
        return s;
    }
    void expect_punct(const std::string& p) {
        if (cur_.kind != Token::Punct || cur_.text != p) fail("expected '" + p + "'");
        bump();
    }
    bool at_punct(const std::string& p) const { return cur_.kind == Token::Punct && cur_.text == p; }
    std::string name_token() {
        if (cur_.kind != Token::Ident && cur_.kind != Token::Number) fail("expected a name");
        std::string s = cur_.text;
        bump();
        return s;
    }
    double number_token() {
        if (cur_.kind != Token::Number) fail("expected a number");
        try {
            size_t used = 0;
            double v = std::stod(cur_.text, &used);
            if (used != cur_.text.size()) fail("malformed number '" + cur_.text + "'");
            bump();
            return v;
        } catch (const std::logic_error&) {
            fail("malformed number '" + cur_.text + "'");
        }
    }

    void parse_variable() {
        VarDecl d;
        d.line = cur_.line;
        d.col = cur_.col;
        bump();
        d.name = expect_kind(Token::Ident, "variable name");
        expect_punct("{");
        expect_ident("type");
        expect_ident("discrete");
        expect_punct("[");
        double k = number_token();
        expect_punct("]");
        expect_punct("{");
        while (true) {
            d.states.push_back(name_token());
            if (at_punct(",")) {
                bump();
                continue;
            }
            break;
        }
        expect_punct("}");
        expect_punct(";");
        expect_punct("}");
        if (k != static_cast<double>(d.states.size()))
            throw BifError("declared cardinality disagrees with the state list", d.line, d.col, true);
        vars_.push_back(std::move(d));
    }

    void parse_probability() {
        ProbDecl p;
        p.line = cur_.line;
        p.col = cur_.col;
        bump();
        expect_punct("(");
        p.child = name_token();
        if (at_punct("|")) {
            bump();
            while (true) {
                p.parents.push_back(name_token());
                if (at_punct(",")) {
                    bump();
                    continue;
                }
                break;
            }
        }
        expect_punct(")");
        expect_punct("{");
        while (!at_punct("}")) {
            if (cur_.kind == Token::Ident && cur_.text == "table") {
                bump();
                if (p.parents.empty())
                    p.rows.emplace_back(std::vector<std::string>{}, read_prob_list());
                else
                    fail("'table' row given for a conditional distribution", true);
            } else if (at_punct("(")) {
                bump();
                std::vector<std::string> vals;
                while (true) {
                    vals.push_back(name_token());
                    if (at_punct(",")) {
                        bump();
                        continue;
                    }
                    break;
                }
                expect_punct(")");
                p.rows.emplace_back(std::move(vals), read_prob_list());
            } else {
                fail("expected 'table' or a parent value row");
            }
        }
        expect_punct("}");
        probs_.push_back(std::move(p));
    }

    std::vector<double> read_prob_list() {
        std::vector<double> out;
        while (true) {
            out.push_back(number_token());
            if (at_punct(",")) {
                bump();
                continue;
            }
            break;
        }
        expect_punct(";");
        return out;
    }

    DiscreteNet build() {
        std::map<std::string, int> var_index;
        std::vector<std::string> names;
        std::vector<int> cards;
        std::vector<std::vector<std::string>> state_names;
        for (const auto& v : vars_) {
            if (var_index.count(v.name)) throw BifError("duplicate variable " + v.name, v.line, v.col, true);
            var_index[v.name] = static_cast<int>(names.size());
            names.push_back(v.name);
            cards.push_back(static_cast<int>(v.states.size()));
            state_names.push_back(v.states);
        }
        MixedGraph g(names);
        std::vector<std::optional<ProbDecl*>> decl_of(names.size());
        // First pass wires up the graph so cycles surface before table checks.
        for (auto& p : probs_) {
            auto it = var_index.find(p.child);
            if (it == var_index.end()) throw BifError("undeclared variable " + p.child, p.line, p.col, true);
            int child = it->second;
            if (decl_of[child]) throw BifError("duplicate probability block for " + p.child, p.line, p.col, true);
            decl_of[child] = &p;
            for (const auto& pn : p.parents) {
                auto pit = var_index.find(pn);
                if (pit == var_index.end()) throw BifError("undeclared variable " + pn, p.line, p.col, true);
                if (pit->second == child || g.adjacent(pit->second, child))
                    throw BifError("bad parent list for " + p.child, p.line, p.col, true);
                g.add_directed(pit->second, child);
            }
        }
        for (size_t v = 0; v < names.size(); ++v)
            if (!decl_of[v]) throw BifError("no probability block for " + names[v], 1, 1, true);
        if (!g.directed_part_acyclic()) throw BifError("parent structure has a cycle", 1, 1, true);

        std::vector<Cpt> cpts(names.size());
        for (auto& p : probs_) {
            int child = var_index[p.child];
            std::vector<int> parents;
            for (const auto& pn : p.parents) parents.push_back(var_index[pn]);
            std::vector<int> order(parents.size());
            for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
            std::sort(order.begin(), order.end(), [&](int a, int b) { return parents[a] < parents[b]; });
            std::vector<int> sorted_parents;
            for (int i : order) sorted_parents.push_back(parents[i]);

            int64_t rows = 1;
            for (int pv : parents) rows *= cards[pv];
            int k = cards[child];
            std::vector<double> table(rows * k, -1.0);
            for (auto& [key, values] : p.rows) {
                if (static_cast<int>(values.size()) != k)
                    throw BifError("row length disagrees with the cardinality of " + p.child, p.line, p.col, true);
                double s = 0;
                for (double x : values) {
                    if (x < 0) throw BifError("negative probability in " + p.child, p.line, p.col, true);
                    s += x;
                }
                if (std::abs(s - 1.0) > 1e-6)
                    throw BifError("probability row for " + p.child + " sums to " + std::to_string(s), p.line,
                                   p.col, true);
                if (std::abs(s - 1.0) <= 1e-12) s = 1.0;  // keep already-normalized rows bit-exact
                int64_t row = 0;
                if (!key.empty()) {
                    if (key.size() != parents.size())
                        throw BifError("parent value count mismatch for " + p.child, p.line, p.col, true);
                    // Row index uses parents sorted by variable index.
                    for (int i : order) {
                        int pv = parents[i];
                        const auto& sn = state_names[pv];
                        auto sit = std::find(sn.begin(), sn.end(), key[i]);
                        if (sit == sn.end())
                            throw BifError("unknown state '" + key[i] + "' of parent " + names[pv], p.line,
                                           p.col, true);
                        row = row * cards[pv] + static_cast<int64_t>(sit - sn.begin());
                    }
                } else if (!parents.empty()) {
                    throw BifError("'table' row given for conditional " + p.child, p.line, p.col, true);
                }
                if (table[row * k] >= 0)
                    throw BifError("duplicate probability row for " + p.child, p.line, p.col, true);
                for (int i = 0; i < k; ++i) table[row * k + i] = values[i] / s;
            }
            for (double x : table)
                if (x < 0) throw BifError("missing probability rows for " + p.child, p.line, p.col, true);
            cpts[child] = Cpt{sorted_parents, std::move(table)};
        }
        return DiscreteNet(std::move(g), std::move(cards), std::move(cpts), std::move(state_names));
    }

    Lexer lex_;
    Token cur_;
    std::vector<VarDecl> vars_;
    std::vector<ProbDecl> probs_;
};

std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

DiscreteNet parse_bif(const std::string& text) { return Parser(text).parse(); }

std::string serialize_bif(const DiscreteNet& net, const std::string& network_name) {
    std::string out = "network " + network_name + " {\n}\n";
    const auto& g = net.graph();
    for (int v = 0; v < net.num_vars(); ++v) {
        out += "variable " + g.name(v) + " {\n  type discrete [ " + std::to_string(net.cards()[v]) + " ] { ";
        for (int s = 0; s < net.cards()[v]; ++s) {
            if (s) out += ", ";
            out += net.state_names()[v][s];
        }
        out += " };\n}\n";
    }
    for (int v = 0; v < net.num_vars(); ++v) {
        const Cpt& c = net.cpt(v);
        out += "probability ( " + g.name(v);
        if (!c.parents.empty()) {
            out += " |";
            for (size_t i = 0; i < c.parents.size(); ++i) out += (i ? ", " : " ") + g.name(c.parents[i]);
        }
        out += " ) {\n";
        int k = net.cards()[v];
        if (c.parents.empty()) {
            out += "  table ";
            for (int i = 0; i < k; ++i) out += (i ? ", " : "") + fmt_double(c.table[i]);
            out += ";\n";
        } else {
            int64_t rows = static_cast<int64_t>(c.table.size()) / k;
            std::vector<int> vals(c.parents.size(), 0);
            for (int64_t r = 0; r < rows; ++r) {
                out += "  ( ";
                for (size_t i = 0; i < c.parents.size(); ++i) {
                    if (i) out += ", ";
                    out += net.state_names()[c.parents[i]][vals[i]];
                }
                out += " ) ";
                for (int i = 0; i < k; ++i) out += (i ? ", " : "") + fmt_double(c.table[r * k + i]);
                out += ";\n";
                for (int i = static_cast<int>(vals.size()) - 1; i >= 0; --i) {
                    if (++vals[i] < net.cards()[c.parents[i]]) break;
                    vals[i] = 0;
                }
            }
        }
        out += "}\n";
    }
    return out;
}

}  // namespace tsdag
