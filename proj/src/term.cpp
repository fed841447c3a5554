#include "qg/term.hpp"

#include <algorithm>
#include <cctype>

namespace qg {

char op_char(Op op) {
    switch (op) {
        case Op::Mul: return '*';
        case Op::RDiv: return '/';
        case Op::LDiv: return '\\';
    }
    return '?';
}

TermPtr Term::variable(std::string name) {
    auto t = std::make_shared<Term>();
    t->kind = Kind::Var;
    t->var = std::move(name);
    return t;
}

TermPtr Term::constant_u() {
    auto t = std::make_shared<Term>();
    t->kind = Kind::ConstU;
    return t;
}

TermPtr Term::binary(Op op, TermPtr l, TermPtr r) {
    auto t = std::make_shared<Term>();
    t->kind = Kind::Bin;
    t->op = op;
    t->left = std::move(l);
    t->right = std::move(r);
    return t;
}

bool term_equal(const TermPtr& a, const TermPtr& b) {
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case Term::Kind::Var: return a->var == b->var;
        case Term::Kind::ConstU: return true;
        case Term::Kind::Bin:
            return a->op == b->op && term_equal(a->left, b->left) &&
                   term_equal(a->right, b->right);
    }
    return false;
}

namespace {

void print_term(const TermPtr& t, std::string& out, bool parenthesize) {
    switch (t->kind) {
        case Term::Kind::Var: out += t->var; return;
        case Term::Kind::ConstU: out += 'u'; return;
        case Term::Kind::Bin:
            if (parenthesize) out += '(';
            print_term(t->left, out, t->left->kind == Term::Kind::Bin);
            out += op_char(t->op);
            print_term(t->right, out, t->right->kind == Term::Kind::Bin);
            if (parenthesize) out += ')';
            return;
    }
}

} // namespace

std::string to_string(const TermPtr& t) {
    std::string out;
    print_term(t, out, false);
    return out;
}

void collect_variables(const TermPtr& t, std::vector<std::string>& out) {
    switch (t->kind) {
        case Term::Kind::Var:
            if (std::find(out.begin(), out.end(), t->var) == out.end()) out.push_back(t->var);
            return;
        case Term::Kind::ConstU: return;
        case Term::Kind::Bin:
            collect_variables(t->left, out);
            collect_variables(t->right, out);
            return;
    }
}

namespace {

// recursive-descent parser over: expr := atom (op atom)* ;
// atom := varname | "u" | "(" expr ")"
class TermParser {
public:
    explicit TermParser(std::string_view text) : text_(text) {}

    TermPtr parse_full() {
        TermPtr t = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) fail("end of input or operator");
        return t;
    }

    TermPtr parse_expr() {
        TermPtr t = parse_atom();
        while (true) {
            skip_ws();
            if (pos_ >= text_.size()) return t;
            char c = text_[pos_];
            Op op;
            if (c == '*') op = Op::Mul;
            else if (c == '/') op = Op::RDiv;
            else if (c == '\\') op = Op::LDiv;
            else return t;
            ++pos_;
            TermPtr rhs = parse_atom();
            t = Term::binary(op, std::move(t), std::move(rhs));
        }
    }

    size_t position() const { return pos_; }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    [[noreturn]] void fail(const std::string& expected) {
        throw ParseError(pos_, expected,
                         "syntax error at offset " + std::to_string(pos_) + ": expected " +
                             expected);
    }

    TermPtr parse_atom() {
        skip_ws();
        if (pos_ >= text_.size()) fail("variable, 'u' or '('");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            TermPtr t = parse_expr();
            skip_ws();
            if (pos_ >= text_.size() || text_[pos_] != ')') fail("')'");
            ++pos_;
            return t;
        }
        if (c >= 'a' && c <= 'z') {
            size_t start = pos_;
            ++pos_;
            while (pos_ < text_.size() &&
                   ((text_[pos_] >= 'a' && text_[pos_] <= 'z') ||
                    (text_[pos_] >= '0' && text_[pos_] <= '9')))
                ++pos_;
            std::string name(text_.substr(start, pos_ - start));
            if (name == "u") return Term::constant_u();
            return Term::variable(std::move(name));
        }
        fail("variable, 'u' or '('");
    }

    std::string_view text_;
    size_t pos_ = 0;
};

// split "lhs = rhs" at the single top-level '='
std::pair<std::string_view, std::string_view> split_equation(std::string_view text) {
    size_t eq = text.find('=');
    if (eq == std::string_view::npos) throw MissingEqualsError("identity needs one '='");
    return {text.substr(0, eq), text.substr(eq + 1)};
}

} // namespace

TermPtr parse_term(std::string_view text) {
    return TermParser(text).parse_full();
}

Identity make_identity(TermPtr lhs, TermPtr rhs) {
    Identity id;
    id.lhs = std::move(lhs);
    id.rhs = std::move(rhs);
    collect_variables(id.lhs, id.variables);
    collect_variables(id.rhs, id.variables);
    return id;
}

Identity parse_identity(std::string_view text) {
    auto [l, r] = split_equation(text);
    TermPtr lhs = TermParser(l).parse_full();
    TermPtr rhs;
    try {
        rhs = TermParser(r).parse_full();
    } catch (const ParseError& e) {
        // report offsets relative to the whole identity string
        throw ParseError(l.size() + 1 + e.position, e.expected, e.what());
    }
    return make_identity(std::move(lhs), std::move(rhs));
}

std::string to_string(const Identity& id) {
    return to_string(id.lhs) + " = " + to_string(id.rhs);
}

Element eval(const TermPtr& t, const QuasigroupTable& q, const Assignment& assignment,
             Element u_element) {
    switch (t->kind) {
        case Term::Kind::Var: {
            auto it = assignment.find(t->var);
            if (it == assignment.end())
                throw EvalError(t->var, "unbound variable: " + t->var);
            return it->second;
        }
        case Term::Kind::ConstU: return u_element;
        case Term::Kind::Bin: {
            Element l = eval(t->left, q, assignment, u_element);
            Element r = eval(t->right, q, assignment, u_element);
            switch (t->op) {
                case Op::Mul: return q.mul(l, r);
                case Op::RDiv: return q.rdiv(l, r);
                case Op::LDiv: return q.ldiv(l, r);
            }
        }
    }
    return 0;
}

namespace {

// flat postfix program; keeps the exhaustive scans out of pointer-chasing
struct Instr {
    enum class Kind : uint8_t { PushVar, PushU, Mul, RDiv, LDiv } kind;
    int var = 0;
};

void compile_term(const TermPtr& t, const std::vector<std::string>& vars,
                  std::vector<Instr>& prog) {
    switch (t->kind) {
        case Term::Kind::Var: {
            auto it = std::find(vars.begin(), vars.end(), t->var);
            prog.push_back({Instr::Kind::PushVar, static_cast<int>(it - vars.begin())});
            return;
        }
        case Term::Kind::ConstU:
            prog.push_back({Instr::Kind::PushU, 0});
            return;
        case Term::Kind::Bin:
            compile_term(t->left, vars, prog);
            compile_term(t->right, vars, prog);
            switch (t->op) {
                case Op::Mul: prog.push_back({Instr::Kind::Mul, 0}); break;
                case Op::RDiv: prog.push_back({Instr::Kind::RDiv, 0}); break;
                case Op::LDiv: prog.push_back({Instr::Kind::LDiv, 0}); break;
            }
            return;
    }
}

Element run_program(const std::vector<Instr>& prog, const QuasigroupTable& q,
                    const std::vector<Element>& values, Element u_element,
                    std::vector<Element>& stack) {
    stack.clear();
    for (const Instr& in : prog) {
        switch (in.kind) {
            case Instr::Kind::PushVar: stack.push_back(values[static_cast<size_t>(in.var)]); break;
            case Instr::Kind::PushU: stack.push_back(u_element); break;
            case Instr::Kind::Mul: {
                Element r = stack.back(); stack.pop_back();
                stack.back() = q.mul(stack.back(), r);
                break;
            }
            case Instr::Kind::RDiv: {
                Element r = stack.back(); stack.pop_back();
                stack.back() = q.rdiv(stack.back(), r);
                break;
            }
            case Instr::Kind::LDiv: {
                Element r = stack.back(); stack.pop_back();
                stack.back() = q.ldiv(stack.back(), r);
                break;
            }
        }
    }
    return stack.back();
}

} // namespace

CheckResult check_identity(const QuasigroupTable& q, const Identity& id, long long budget,
                           Element u_element) {
    const int n = q.order();
    const int k = static_cast<int>(id.variables.size());
    long long count = 1;
    for (int i = 0; i < k; ++i) {
        if (count > budget / n + 1) { count = budget + 1; break; }
        count *= n;
    }
    if (count > budget)
        throw BudgetError(k, n,
                          "identity with " + std::to_string(k) + " variables over order " +
                              std::to_string(n) + " exceeds the evaluation budget");

    std::vector<Instr> lhs, rhs;
    compile_term(id.lhs, id.variables, lhs);
    compile_term(id.rhs, id.variables, rhs);

    std::vector<Element> values(static_cast<size_t>(k), 0);
    std::vector<Element> stack;
    stack.reserve(32);
    // odometer over the variable list: lexicographic order, last variable
    // fastest, so the first failure found is the lexicographic minimum
    while (true) {
        if (run_program(lhs, q, values, u_element, stack) !=
            run_program(rhs, q, values, u_element, stack)) {
            CheckResult res;
            res.holds = false;
            for (int i = 0; i < k; ++i)
                res.counterexample.emplace_back(id.variables[static_cast<size_t>(i)],
                                                values[static_cast<size_t>(i)]);
            return res;
        }
        int i = k - 1;
        while (i >= 0 && values[static_cast<size_t>(i)] == n - 1) {
            values[static_cast<size_t>(i)] = 0;
            --i;
        }
        if (i < 0) break;
        ++values[static_cast<size_t>(i)];
    }
    CheckResult res;
    res.holds = true;
    return res;
}

// ---- loop terms ----

LoopTermPtr LoopTerm::variable(std::string name) {
    auto t = std::make_shared<LoopTerm>();
    t->kind = Kind::Var;
    t->var = std::move(name);
    return t;
}

LoopTermPtr LoopTerm::zero() {
    auto t = std::make_shared<LoopTerm>();
    t->kind = Kind::Zero;
    return t;
}

LoopTermPtr LoopTerm::plus(LoopTermPtr l, LoopTermPtr r) {
    auto t = std::make_shared<LoopTerm>();
    t->kind = Kind::Plus;
    t->left = std::move(l);
    t->right = std::move(r);
    return t;
}

LoopTermPtr LoopTerm::neg(LoopTermPtr inner) {
    auto t = std::make_shared<LoopTerm>();
    t->kind = Kind::Neg;
    t->left = std::move(inner);
    return t;
}

namespace {

class LoopParser {
public:
    explicit LoopParser(std::string_view text) : text_(text) {}

    LoopTermPtr parse_full() {
        LoopTermPtr t = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) fail("end of input or '+'");
        return t;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    [[noreturn]] void fail(const std::string& expected) {
        throw ParseError(pos_, expected,
                         "syntax error at offset " + std::to_string(pos_) + ": expected " +
                             expected);
    }

    LoopTermPtr parse_expr() {
        LoopTermPtr t = parse_item();
        while (true) {
            skip_ws();
            if (pos_ >= text_.size() || text_[pos_] != '+') return t;
            ++pos_;
            t = LoopTerm::plus(std::move(t), parse_item());
        }
    }

    LoopTermPtr parse_item() {
        skip_ws();
        if (pos_ >= text_.size()) fail("variable, '0', '-' or '('");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            LoopTermPtr t = parse_expr();
            skip_ws();
            if (pos_ >= text_.size() || text_[pos_] != ')') fail("')'");
            ++pos_;
            return t;
        }
        if (c == '-') {
            ++pos_;
            return LoopTerm::neg(parse_item());
        }
        if (c == '0') {
            ++pos_;
            return LoopTerm::zero();
        }
        if (c >= 'a' && c <= 'z') {
            size_t start = pos_;
            ++pos_;
            while (pos_ < text_.size() &&
                   ((text_[pos_] >= 'a' && text_[pos_] <= 'z') ||
                    (text_[pos_] >= '0' && text_[pos_] <= '9')))
                ++pos_;
            std::string name(text_.substr(start, pos_ - start));
            if (name == "u")
                throw ParseError(start, "variable other than 'u'",
                                 "'u' is reserved for the quasigroup constant; rename the loop "
                                 "variable");
            return LoopTerm::variable(std::move(name));
        }
        fail("variable, '0', '-' or '('");
    }

    std::string_view text_;
    size_t pos_ = 0;
};

void collect_loop_variables(const LoopTermPtr& t, std::vector<std::string>& out) {
    switch (t->kind) {
        case LoopTerm::Kind::Var:
            if (std::find(out.begin(), out.end(), t->var) == out.end()) out.push_back(t->var);
            return;
        case LoopTerm::Kind::Zero: return;
        case LoopTerm::Kind::Neg: collect_loop_variables(t->left, out); return;
        case LoopTerm::Kind::Plus:
            collect_loop_variables(t->left, out);
            collect_loop_variables(t->right, out);
            return;
    }
}

void print_loop_term(const LoopTermPtr& t, std::string& out, bool parenthesize) {
    switch (t->kind) {
        case LoopTerm::Kind::Var: out += t->var; return;
        case LoopTerm::Kind::Zero: out += '0'; return;
        case LoopTerm::Kind::Neg:
            out += '-';
            print_loop_term(t->left, out, t->left->kind == LoopTerm::Kind::Plus);
            return;
        case LoopTerm::Kind::Plus:
            if (parenthesize) out += '(';
            print_loop_term(t->left, out, t->left->kind == LoopTerm::Kind::Plus);
            out += '+';
            print_loop_term(t->right, out, t->right->kind == LoopTerm::Kind::Plus);
            if (parenthesize) out += ')';
            return;
    }
}

} // namespace

LoopTermPtr parse_loop_term(std::string_view text) {
    return LoopParser(text).parse_full();
}

LoopIdentity parse_loop_identity(std::string_view text) {
    size_t eq = text.find('=');
    if (eq == std::string_view::npos) throw MissingEqualsError("identity needs one '='");
    LoopIdentity id;
    id.lhs = LoopParser(text.substr(0, eq)).parse_full();
    id.rhs = LoopParser(text.substr(eq + 1)).parse_full();
    collect_loop_variables(id.lhs, id.variables);
    collect_loop_variables(id.rhs, id.variables);
    return id;
}

std::string to_string(const LoopTermPtr& t) {
    std::string out;
    print_loop_term(t, out, false);
    return out;
}

} // namespace qg
