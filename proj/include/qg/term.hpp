#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qg/table.hpp"

namespace qg {

// Terms over the quasigroup signature {*, /, \, u}. '*', '/' and '\' share a
// single precedence level and associate to the left; bare `u` is the 0-ary
// constant, so variable names are [a-z][a-z0-9]* other than "u".
enum class Op { Mul, RDiv, LDiv };

char op_char(Op op);

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
    enum class Kind { Var, ConstU, Bin };
    Kind kind;
    std::string var;      // Kind::Var
    Op op = Op::Mul;      // Kind::Bin
    TermPtr left, right;  // Kind::Bin

    static TermPtr variable(std::string name);
    static TermPtr constant_u();
    static TermPtr binary(Op op, TermPtr l, TermPtr r);
};

bool term_equal(const TermPtr& a, const TermPtr& b);
// compound subterms are parenthesized, the top level is not:  (x/u1)*(v\y)
std::string to_string(const TermPtr& t);
void collect_variables(const TermPtr& t, std::vector<std::string>& out);

struct ParseError : std::runtime_error {
    size_t position;
    std::string expected;
    ParseError(size_t pos, std::string exp, const std::string& msg)
        : std::runtime_error(msg), position(pos), expected(std::move(exp)) {}
};

struct MissingEqualsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

TermPtr parse_term(std::string_view text);

struct Identity {
    TermPtr lhs, rhs;
    // the exact union of both sides' variables, in first-occurrence order
    // (lhs first)
    std::vector<std::string> variables;
};

Identity make_identity(TermPtr lhs, TermPtr rhs);
Identity parse_identity(std::string_view text);
std::string to_string(const Identity& id);

struct EvalError : std::runtime_error {
    std::string variable;
    EvalError(std::string var, const std::string& msg)
        : std::runtime_error(msg), variable(std::move(var)) {}
};

using Assignment = std::map<std::string, Element>;

Element eval(const TermPtr& t, const QuasigroupTable& q, const Assignment& assignment,
             Element u_element = 0);

struct BudgetError : std::runtime_error {
    int variables;
    int order;
    BudgetError(int k, int n, const std::string& msg)
        : std::runtime_error(msg), variables(k), order(n) {}
};

struct CheckResult {
    bool holds = false;
    // first failing assignment in lexicographic order over the identity's
    // variable list; empty when the identity holds
    std::vector<std::pair<std::string, Element>> counterexample;
};

// Exhaustive check over all n^k assignments. Throws BudgetError when n^k
// exceeds the budget (default 10^8 assignments).
CheckResult check_identity(const QuasigroupTable& q, const Identity& id,
                           long long budget = 100'000'000, Element u_element = 0);

// ---- loop terms (input language of the derived-identity generator) ----

struct LoopTerm;
using LoopTermPtr = std::shared_ptr<const LoopTerm>;

struct LoopTerm {
    enum class Kind { Var, Zero, Plus, Neg };
    Kind kind;
    std::string var;
    LoopTermPtr left, right;  // Plus; Neg uses left only

    static LoopTermPtr variable(std::string name);
    static LoopTermPtr zero();
    static LoopTermPtr plus(LoopTermPtr l, LoopTermPtr r);
    static LoopTermPtr neg(LoopTermPtr t);
};

struct LoopIdentity {
    LoopTermPtr lhs, rhs;
    std::vector<std::string> variables;
};

// grammar: expr := item ('+' item)* ; item := var | '0' | '-' item | '(' expr ')'
// '+' associates to the left; "u" is rejected (reserved in the output language)
LoopTermPtr parse_loop_term(std::string_view text);
LoopIdentity parse_loop_identity(std::string_view text);
std::string to_string(const LoopTermPtr& t);

} // namespace qg
