#include "hageo/glang/ast.hpp"

#include <cctype>
#include <set>
#include <sstream>

#include "hageo/glang/constructors.hpp"

namespace hageo::glang {

namespace {

struct Token {
    enum Type { Ident, Number, Equals, Comma, End } type;
    std::string text;
    int line, col;
};

bool ident_start(unsigned char c) {
    return std::isalpha(c) || c == '_' || c >= 0x80;  // non-ASCII bytes: unicode names
}
bool ident_cont(unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '\'' || c >= 0x80;
}

// Splits source into logical statements at ';' or newline, strips '#' comments.
struct StatementText {
    std::string text;
    int line;
};

std::vector<StatementText> split_statements(const std::string& src) {
    std::vector<StatementText> out;
    std::string cur;
    int line = 1, start_line = 1;
    bool comment = false;
    auto flush = [&] {
        size_t a = cur.find_first_not_of(" \t\r");
        if (a != std::string::npos) {
            size_t b = cur.find_last_not_of(" \t\r");
            out.push_back({cur.substr(a, b - a + 1), start_line});
        }
        cur.clear();
        start_line = line;
    };
    for (char c : src) {
        if (c == '\n') {
            comment = false;
            flush();
            ++line;
            start_line = line;
        } else if (comment) {
            // skip
        } else if (c == '#') {
            comment = true;
        } else if (c == ';') {
            flush();
        } else {
            cur += c;
        }
    }
    flush();
    return out;
}

std::vector<Token> lex(const StatementText& st) {
    std::vector<Token> toks;
    const std::string& s = st.text;
    size_t i = 0;
    while (i < s.size()) {
        unsigned char c = s[i];
        int col = int(i) + 1;
        if (c == ' ' || c == '\t' || c == '\r') { ++i; continue; }
        if (c == '=') { toks.push_back({Token::Equals, "=", st.line, col}); ++i; continue; }
        if (c == ',') { toks.push_back({Token::Comma, ",", st.line, col}); ++i; continue; }
        if (c == '(') {
            // parenthesized identifier, the circle-naming idiom: (O)
            size_t j = i + 1;
            std::string inner;
            while (j < s.size() && s[j] != ')') inner += s[j++];
            if (j >= s.size() || inner.empty())
                throw SyntaxError(st.line, col, "unterminated '(' in name");
            for (unsigned char ic : inner)
                if (!ident_cont(ic) && !ident_start(ic))
                    throw SyntaxError(st.line, col, "bad character in parenthesized name");
            toks.push_back({Token::Ident, "(" + inner + ")", st.line, col});
            i = j + 1;
            continue;
        }
        if (std::isdigit(c) || (c == '-' && i + 1 < s.size() && std::isdigit((unsigned char)s[i + 1]))) {
            size_t j = i + (c == '-' ? 1 : 0);
            while (j < s.size() && (std::isdigit((unsigned char)s[j]) || s[j] == '.')) ++j;
            toks.push_back({Token::Number, s.substr(i, j - i), st.line, col});
            i = j;
            continue;
        }
        if (ident_start(c)) {
            size_t j = i;
            while (j < s.size() && ident_cont((unsigned char)s[j])) ++j;
            std::string w = s.substr(i, j - i);
            // 'Prove:' / 'prove:' keyword keeps its colon
            if (j < s.size() && s[j] == ':' && (w == "Prove" || w == "prove")) {
                toks.push_back({Token::Ident, "Prove:", st.line, col});
                i = j + 1;
                continue;
            }
            toks.push_back({Token::Ident, w, st.line, col});
            i = j;
            continue;
        }
        throw SyntaxError(st.line, col, std::string("unexpected character '") + (char)c + "'");
    }
    toks.push_back({Token::End, "", st.line, int(s.size()) + 1});
    return toks;
}

} // namespace

Program parse_program(const std::string& text) {
    Program prog;
    bool have_goal = false;
    std::set<std::string> defined;
    for (const auto& st : split_statements(text)) {
        auto toks = lex(st);
        if (toks.front().type == Token::End) continue;
        if (have_goal)
            throw SyntaxError(st.line, 1, "statement after Prove: clause");
        if (toks[0].type == Token::Ident && toks[0].text == "Prove:") {
            GoalStatement g;
            g.line = st.line;
            size_t i = 1;
            if (toks[i].type != Token::Ident)
                throw SyntaxError(st.line, toks[i].col, "goal predicate expected after Prove:");
            g.predicate = toks[i++].text;
            while (toks[i].type == Token::Ident || toks[i].type == Token::Number) {
                if (toks[i].type == Token::Number)
                    throw SyntaxError(st.line, toks[i].col, "numeric literals are not supported");
                g.args.push_back(toks[i++].text);
            }
            if (toks[i].type != Token::End)
                throw SyntaxError(st.line, toks[i].col, "unexpected token in goal");
            if (g.args.empty())
                throw SyntaxError(st.line, toks[1].col, "goal needs arguments");
            prog.goal = g;
            have_goal = true;
            continue;
        }
        // lhs... = constructor args...
        Statement out;
        out.line = st.line;
        size_t i = 0;
        while (toks[i].type == Token::Ident) {
            out.lhs_names.push_back(toks[i].text);
            ++i;
            if (toks[i].type == Token::Comma) ++i;
        }
        if (out.lhs_names.empty())
            throw SyntaxError(st.line, toks[i].col, "statement must start with a name");
        if (toks[i].type != Token::Equals)
            throw SyntaxError(st.line, toks[i].col, "expected '='");
        ++i;
        if (toks[i].type != Token::Ident)
            throw SyntaxError(st.line, toks[i].col, "expected constructor name");
        out.constructor = toks[i++].text;
        while (toks[i].type == Token::Ident || toks[i].type == Token::Number) {
            out.args.push_back(toks[i++].text);
        }
        if (toks[i].type != Token::End)
            throw SyntaxError(st.line, toks[i].col, "unexpected token");
        // arity check against the registered constructor table; unknown
        // constructors are deferred to validate_program
        if (const ConstructorInfo* info = find_constructor(out.constructor)) {
            bool shape_ok = false;
            for (const auto& sig : info->sigs)
                if (sig.lhs.size() == out.lhs_names.size() && sig.args.size() == out.args.size())
                    shape_ok = true;
            if (!shape_ok)
                throw SyntaxError(st.line, 1, "arity: " + out.constructor + " does not take " +
                                                  std::to_string(out.lhs_names.size()) + " names and " +
                                                  std::to_string(out.args.size()) + " arguments");
        }
        for (const auto& n : out.lhs_names) {
            if (!defined.insert(n).second) throw DuplicateDefinition(n, st.line);
        }
        prog.statements.push_back(std::move(out));
    }
    if (!have_goal) throw MissingGoal();
    return prog;
}

std::string render(const Program& p) {
    std::ostringstream os;
    for (const auto& s : p.statements) {
        for (size_t i = 0; i < s.lhs_names.size(); ++i)
            os << (i ? " " : "") << s.lhs_names[i];
        os << " = " << s.constructor;
        for (const auto& a : s.args) os << " " << a;
        os << "\n";
    }
    os << "Prove: " << p.goal.predicate;
    for (const auto& a : p.goal.args) os << " " << a;
    os << "\n";
    return os.str();
}

bool structurally_equal(const Program& a, const Program& b) {
    if (a.statements.size() != b.statements.size()) return false;
    for (size_t i = 0; i < a.statements.size(); ++i) {
        const auto &x = a.statements[i], &y = b.statements[i];
        if (x.lhs_names != y.lhs_names || x.constructor != y.constructor || x.args != y.args)
            return false;
    }
    return a.goal.predicate == b.goal.predicate && a.goal.args == b.goal.args;
}

} // namespace hageo::glang
