#include "symsearch/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <limits>

namespace symsearch {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

NodePtr make_node(Node n) { return std::make_shared<const Node>(std::move(n)); }

}  // namespace

Expression Expression::var(std::string name) {
    Node n;
    n.kind = Node::Kind::Var;
    n.name = std::move(name);
    return Expression(make_node(std::move(n)));
}

Expression Expression::constant(double value) {
    Node n;
    n.kind = Node::Kind::Const;
    n.value = value;
    return Expression(make_node(std::move(n)));
}

Expression Expression::param(int index) {
    if (index < 0 || index >= kMaxParams)
        throw std::invalid_argument("parameter index out of range: " + std::to_string(index));
    Node n;
    n.kind = Node::Kind::Param;
    n.index = index;
    return Expression(make_node(std::move(n)));
}

Expression Expression::unary(UnaryOp op, Expression child) {
    if (child.empty()) throw std::invalid_argument("unary: empty child");
    // Fold neg(const) into a negative literal so serialize/parse round-trips
    // to an identical tree.
    if (op == UnaryOp::Neg && child.root()->kind == Node::Kind::Const)
        return constant(-child.root()->value);
    Node n;
    n.kind = Node::Kind::Unary;
    n.uop = op;
    n.left = child.root();
    return Expression(make_node(std::move(n)));
}

Expression Expression::binary(BinaryOp op, Expression left, Expression right) {
    if (left.empty() || right.empty()) throw std::invalid_argument("binary: empty child");
    Node n;
    n.kind = Node::Kind::Binary;
    n.bop = op;
    n.left = left.root();
    n.right = right.root();
    return Expression(make_node(std::move(n)));
}

namespace {

int count_nodes(const NodePtr& n) {
    if (!n) return 0;
    return 1 + count_nodes(n->left) + count_nodes(n->right);
}

int node_depth(const NodePtr& n) {
    if (!n) return 0;
    return 1 + std::max(node_depth(n->left), node_depth(n->right));
}

void collect_vars(const NodePtr& n, std::set<std::string>& out) {
    if (!n) return;
    if (n->kind == Node::Kind::Var) out.insert(n->name);
    collect_vars(n->left, out);
    collect_vars(n->right, out);
}

void collect_params(const NodePtr& n, std::vector<bool>& used) {
    if (!n) return;
    if (n->kind == Node::Kind::Param) used[size_t(n->index)] = true;
    collect_params(n->left, used);
    collect_params(n->right, used);
}

bool nodes_equal(const NodePtr& a, const NodePtr& b) {
    if (!a || !b) return a == b;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case Node::Kind::Var: return a->name == b->name;
        case Node::Kind::Const: return a->value == b->value;
        case Node::Kind::Param: return a->index == b->index;
        case Node::Kind::Unary:
            return a->uop == b->uop && nodes_equal(a->left, b->left);
        case Node::Kind::Binary:
            return a->bop == b->bop && nodes_equal(a->left, b->left) &&
                   nodes_equal(a->right, b->right);
    }
    return false;
}

}  // namespace

int Expression::length() const { return count_nodes(root_); }
int Expression::depth() const { return node_depth(root_); }

std::set<std::string> Expression::free_vars() const {
    std::set<std::string> out;
    collect_vars(root_, out);
    return out;
}

std::vector<int> Expression::used_params() const {
    std::vector<bool> used(kMaxParams, false);
    collect_params(root_, used);
    std::vector<int> out;
    for (int i = 0; i < kMaxParams; ++i)
        if (used[size_t(i)]) out.push_back(i);
    return out;
}

bool Expression::structurally_equal(const Expression& other) const {
    return nodes_equal(root_, other.root_);
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

namespace {

// Precedence levels: add/sub 1, mul/div 2, unary neg 3, pow 4, atoms 5.
// Negative constant literals print as "-c" and therefore bind like a neg.
int precedence(const NodePtr& n) {
    switch (n->kind) {
        case Node::Kind::Const: return n->value < 0 ? 3 : 5;
        case Node::Kind::Var:
        case Node::Kind::Param: return 5;
        case Node::Kind::Unary: return n->uop == UnaryOp::Neg ? 3 : 5;
        case Node::Kind::Binary:
            switch (n->bop) {
                case BinaryOp::Add:
                case BinaryOp::Sub: return 1;
                case BinaryOp::Mul:
                case BinaryOp::Div: return 2;
                case BinaryOp::Pow: return 4;
                case BinaryOp::Max:
                case BinaryOp::Min: return 5;
            }
    }
    return 5;
}

std::string format_double(double v) {
    // Shortest representation among %.15g/%.16g/%.17g that parses back
    // exactly, so serialize -> parse preserves the bit pattern.
    char buf[40];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

void write_node(const NodePtr& n, std::string& out);

void write_child(const NodePtr& child, int parent_prec, bool needs_parens_at_equal,
                 std::string& out) {
    const int cp = precedence(child);
    const bool parens = cp < parent_prec || (cp == parent_prec && needs_parens_at_equal);
    if (parens) out += '(';
    write_node(child, out);
    if (parens) out += ')';
}

// Right operands whose rendering starts with '-' get parenthesized for
// readability ("x + (-3)" rather than "x + -3"); both forms reparse equally.
void write_right_operand(const NodePtr& child, int parent_prec, bool strict,
                         std::string& out) {
    std::string piece;
    write_node(child, piece);
    const int cp = precedence(child);
    const bool parens =
        cp < parent_prec || (cp == parent_prec && strict) || piece.front() == '-';
    if (parens) out += '(';
    out += piece;
    if (parens) out += ')';
}

void write_node(const NodePtr& n, std::string& out) {
    switch (n->kind) {
        case Node::Kind::Var: out += n->name; return;
        case Node::Kind::Const: out += format_double(n->value); return;
        case Node::Kind::Param:
            out += 'p';
            out += char('0' + n->index);
            return;
        case Node::Kind::Unary:
            if (n->uop == UnaryOp::Neg) {
                out += '-';
                write_child(n->left, 3, /*at_equal=*/true, out);
            } else {
                out += unary_name(n->uop);
                out += '(';
                write_node(n->left, out);
                out += ')';
            }
            return;
        case Node::Kind::Binary:
            switch (n->bop) {
                case BinaryOp::Add:
                    write_child(n->left, 1, false, out);
                    out += " + ";
                    write_right_operand(n->right, 1, true, out);
                    return;
                case BinaryOp::Sub:
                    write_child(n->left, 1, false, out);
                    out += " - ";
                    write_right_operand(n->right, 1, true, out);
                    return;
                case BinaryOp::Mul:
                    write_child(n->left, 2, false, out);
                    out += '*';
                    write_right_operand(n->right, 2, true, out);
                    return;
                case BinaryOp::Div:
                    write_child(n->left, 2, false, out);
                    out += '/';
                    write_right_operand(n->right, 2, true, out);
                    return;
                case BinaryOp::Pow:
                    // right-associative: parens on an equal-precedence left
                    write_child(n->left, 4, true, out);
                    out += '^';
                    write_right_operand(n->right, 4, false, out);
                    return;
                case BinaryOp::Max:
                case BinaryOp::Min:
                    out += binary_name(n->bop);
                    out += '(';
                    write_node(n->left, out);
                    out += ", ";
                    write_node(n->right, out);
                    out += ')';
                    return;
            }
    }
}

}  // namespace

std::string Expression::serialize() const {
    if (!root_) return "";
    std::string out;
    write_node(root_, out);
    return out;
}

const char* unary_name(UnaryOp op) {
    switch (op) {
        case UnaryOp::Neg: return "neg";
        case UnaryOp::Sin: return "sin";
        case UnaryOp::Cos: return "cos";
        case UnaryOp::Tanh: return "tanh";
        case UnaryOp::Exp: return "exp";
        case UnaryOp::Log: return "log";
        case UnaryOp::Sqrt: return "sqrt";
        case UnaryOp::Abs: return "abs";
        case UnaryOp::Step: return "step";
    }
    return "?";
}

const char* binary_name(BinaryOp op) {
    switch (op) {
        case BinaryOp::Add: return "add";
        case BinaryOp::Sub: return "sub";
        case BinaryOp::Mul: return "mul";
        case BinaryOp::Div: return "div";
        case BinaryOp::Pow: return "pow";
        case BinaryOp::Max: return "max";
        case BinaryOp::Min: return "min";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Parser: recursive descent.
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := '-' factor | power
//   power  := atom ('^' factor)?
//   atom   := number | ident | ident '(' expr (',' expr)? ')' | '(' expr ')'
// ---------------------------------------------------------------------------

namespace {

struct Parser {
    const std::string& text;
    size_t pos = 0;

    explicit Parser(const std::string& t) : text(t) {}

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool eof() {
        skip_ws();
        return pos >= text.size();
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    bool accept(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c))
            throw ParseError(std::string("expected '") + c + "'", pos);
    }

    Expression parse_expr() {
        Expression lhs = parse_term();
        while (true) {
            if (accept('+')) {
                lhs = Expression::binary(BinaryOp::Add, lhs, parse_term());
            } else if (accept('-')) {
                lhs = Expression::binary(BinaryOp::Sub, lhs, parse_term());
            } else {
                return lhs;
            }
        }
    }

    Expression parse_term() {
        Expression lhs = parse_factor();
        while (true) {
            if (accept('*')) {
                lhs = Expression::binary(BinaryOp::Mul, lhs, parse_factor());
            } else if (accept('/')) {
                lhs = Expression::binary(BinaryOp::Div, lhs, parse_factor());
            } else {
                return lhs;
            }
        }
    }

    Expression parse_factor() {
        if (accept('-')) return Expression::unary(UnaryOp::Neg, parse_factor());
        return parse_power();
    }

    Expression parse_power() {
        Expression base = parse_atom();
        if (accept('^')) return Expression::binary(BinaryOp::Pow, base, parse_factor());
        return base;
    }

    Expression parse_atom() {
        skip_ws();
        if (pos >= text.size()) throw ParseError("unexpected end of input", pos);
        const char c = text[pos];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
        if (c == '(') {
            ++pos;
            Expression inner = parse_expr();
            expect(')');
            return inner;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos);
    }

    Expression parse_number() {
        const size_t start = pos;
        while (pos < text.size() &&
               (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.'))
            ++pos;
        if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
            size_t e = pos + 1;
            if (e < text.size() && (text[e] == '+' || text[e] == '-')) ++e;
            if (e < text.size() && std::isdigit(static_cast<unsigned char>(text[e]))) {
                pos = e;
                while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
                    ++pos;
            }
        }
        const std::string tok = text.substr(start, pos - start);
        char* end = nullptr;
        const double v = std::strtod(tok.c_str(), &end);
        if (end == tok.c_str() || *end != '\0')
            throw ParseError("malformed number '" + tok + "'", start);
        return Expression::constant(v);
    }

    Expression parse_ident() {
        const size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        const std::string name = text.substr(start, pos - start);

        if (peek() == '(') {
            ++pos;
            if (name == "max" || name == "min") {
                Expression a = parse_expr();
                expect(',');
                Expression b = parse_expr();
                expect(')');
                return Expression::binary(name == "max" ? BinaryOp::Max : BinaryOp::Min, a, b);
            }
            static const std::pair<const char*, UnaryOp> kFuncs[] = {
                {"sin", UnaryOp::Sin},   {"cos", UnaryOp::Cos},  {"tanh", UnaryOp::Tanh},
                {"exp", UnaryOp::Exp},   {"log", UnaryOp::Log},  {"sqrt", UnaryOp::Sqrt},
                {"abs", UnaryOp::Abs},   {"step", UnaryOp::Step}, {"neg", UnaryOp::Neg},
            };
            for (const auto& [fname, op] : kFuncs) {
                if (name == fname) {
                    Expression a = parse_expr();
                    expect(')');
                    return Expression::unary(op, a);
                }
            }
            throw ParseError("unknown function '" + name + "'", start);
        }

        if (name.size() == 2 && name[0] == 'p' &&
            std::isdigit(static_cast<unsigned char>(name[1])))
            return Expression::param(name[1] - '0');
        return Expression::var(name);
    }
};

}  // namespace

Expression parse(const std::string& text) {
    Parser p(text);
    if (p.eof()) throw ParseError("empty expression", 0);
    Expression e = p.parse_expr();
    if (!p.eof()) throw ParseError("trailing input", p.pos);
    return e;
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

namespace {

enum Op : int {
    kPushVar, kPushConst, kPushParam,
    kNeg, kSin, kCos, kTanh, kExp, kLog, kSqrt, kAbs, kStep,
    kAdd, kSub, kMul, kDiv, kPow, kMax, kMin,
};

int unary_opcode(UnaryOp op) {
    switch (op) {
        case UnaryOp::Neg: return kNeg;
        case UnaryOp::Sin: return kSin;
        case UnaryOp::Cos: return kCos;
        case UnaryOp::Tanh: return kTanh;
        case UnaryOp::Exp: return kExp;
        case UnaryOp::Log: return kLog;
        case UnaryOp::Sqrt: return kSqrt;
        case UnaryOp::Abs: return kAbs;
        case UnaryOp::Step: return kStep;
    }
    return kNeg;
}

int binary_opcode(BinaryOp op) {
    switch (op) {
        case BinaryOp::Add: return kAdd;
        case BinaryOp::Sub: return kSub;
        case BinaryOp::Mul: return kMul;
        case BinaryOp::Div: return kDiv;
        case BinaryOp::Pow: return kPow;
        case BinaryOp::Max: return kMax;
        case BinaryOp::Min: return kMin;
    }
    return kAdd;
}

}  // namespace

Evaluator::Evaluator(const Expression& expr, const EvalTable& table, EvalGuard guard)
    : table_(table), guard_(guard) {
    if (expr.empty()) {
        compile_status_ = EvalStatus::UnboundVariable;
        compile_detail_ = "empty expression";
        return;
    }
    const int n = expr.length();
    if (n > guard_.max_nodes) {
        compile_status_ = EvalStatus::TooLarge;
        compile_detail_ = "expression has " + std::to_string(n) + " nodes (limit " +
                          std::to_string(guard_.max_nodes) + ")";
        return;
    }
    program_.reserve(size_t(n));
    compile(expr.root(), 1);
    if (compile_status_ == EvalStatus::Ok) {
        stack_.resize(size_t(max_depth_));
        for (auto& buf : stack_) buf.resize(table_.rows());
    }
}

void Evaluator::compile(const NodePtr& node, int depth) {
    if (compile_status_ != EvalStatus::Ok) return;
    switch (node->kind) {
        case Node::Kind::Var: {
            int col = -1;
            for (size_t i = 0; i < table_.names.size(); ++i)
                if (table_.names[i] == node->name) { col = int(i); break; }
            if (col < 0) {
                compile_status_ = EvalStatus::UnboundVariable;
                compile_detail_ = "unbound variable '" + node->name + "'";
                return;
            }
            program_.push_back({kPushVar, col, 0.0});
            max_depth_ = std::max(max_depth_, depth);
            return;
        }
        case Node::Kind::Const:
            program_.push_back({kPushConst, 0, node->value});
            max_depth_ = std::max(max_depth_, depth);
            return;
        case Node::Kind::Param:
            program_.push_back({kPushParam, node->index, 0.0});
            max_depth_ = std::max(max_depth_, depth);
            return;
        case Node::Kind::Unary:
            compile(node->left, depth);
            program_.push_back({unary_opcode(node->uop), 0, 0.0});
            return;
        case Node::Kind::Binary:
            compile(node->left, depth);
            compile(node->right, depth + 1);
            program_.push_back({binary_opcode(node->bop), 0, 0.0});
            return;
    }
}

EvalStatus Evaluator::eval(std::span<const double> params, std::span<const double>& out,
                           std::string* detail) {
    if (compile_status_ != EvalStatus::Ok) {
        if (detail) *detail = compile_detail_;
        return compile_status_;
    }
    const size_t n = table_.rows();
    const auto deadline = std::chrono::steady_clock::now() + guard_.timeout;
    size_t top = 0;  // next free slot

    for (const Instr& ins : program_) {
        if (std::chrono::steady_clock::now() > deadline) {
            if (detail) *detail = "evaluation timed out";
            return EvalStatus::Timeout;
        }
        switch (ins.op) {
            case kPushVar: {
                const auto col = table_.columns[size_t(ins.arg)];
                std::copy(col.begin(), col.end(), stack_[top].begin());
                ++top;
                break;
            }
            case kPushConst:
                std::fill(stack_[top].begin(), stack_[top].end(), ins.value);
                ++top;
                break;
            case kPushParam: {
                const double v = size_t(ins.arg) < params.size() ? params[size_t(ins.arg)] : 0.0;
                std::fill(stack_[top].begin(), stack_[top].end(), v);
                ++top;
                break;
            }
            default: {
                if (ins.op >= kAdd) {
                    double* a = stack_[top - 2].data();
                    const double* b = stack_[top - 1].data();
                    switch (ins.op) {
                        case kAdd: for (size_t i = 0; i < n; ++i) a[i] += b[i]; break;
                        case kSub: for (size_t i = 0; i < n; ++i) a[i] -= b[i]; break;
                        case kMul: for (size_t i = 0; i < n; ++i) a[i] *= b[i]; break;
                        case kDiv: for (size_t i = 0; i < n; ++i) a[i] /= b[i]; break;
                        case kPow: for (size_t i = 0; i < n; ++i) a[i] = std::pow(a[i], b[i]); break;
                        case kMax:
                            for (size_t i = 0; i < n; ++i)
                                a[i] = (a[i] != a[i] || b[i] != b[i]) ? kNan
                                                                      : (a[i] < b[i] ? b[i] : a[i]);
                            break;
                        case kMin:
                            for (size_t i = 0; i < n; ++i)
                                a[i] = (a[i] != a[i] || b[i] != b[i]) ? kNan
                                                                      : (b[i] < a[i] ? b[i] : a[i]);
                            break;
                    }
                    --top;
                } else {
                    double* a = stack_[top - 1].data();
                    switch (ins.op) {
                        case kNeg: for (size_t i = 0; i < n; ++i) a[i] = -a[i]; break;
                        case kSin: for (size_t i = 0; i < n; ++i) a[i] = std::sin(a[i]); break;
                        case kCos: for (size_t i = 0; i < n; ++i) a[i] = std::cos(a[i]); break;
                        case kTanh: for (size_t i = 0; i < n; ++i) a[i] = std::tanh(a[i]); break;
                        case kExp: for (size_t i = 0; i < n; ++i) a[i] = std::exp(a[i]); break;
                        case kLog: for (size_t i = 0; i < n; ++i) a[i] = std::log(a[i]); break;
                        case kSqrt: for (size_t i = 0; i < n; ++i) a[i] = std::sqrt(a[i]); break;
                        case kAbs: for (size_t i = 0; i < n; ++i) a[i] = std::fabs(a[i]); break;
                        case kStep:
                            for (size_t i = 0; i < n; ++i)
                                a[i] = (a[i] != a[i]) ? kNan : (a[i] >= 0.0 ? 1.0 : 0.0);
                            break;
                    }
                }
            }
        }
    }

    const auto& result = stack_[0];
    for (size_t i = 0; i < n; ++i) {
        if (!std::isfinite(result[i])) {
            if (detail) *detail = "non-finite output at row " + std::to_string(i);
            return EvalStatus::NonFinite;
        }
    }
    out = std::span<const double>(result.data(), n);
    return EvalStatus::Ok;
}

EvalResult evaluate(const Expression& expr, const EvalTable& table,
                    std::span<const double> params, const EvalGuard& guard) {
    EvalResult res;
    Evaluator ev(expr, table, guard);
    std::span<const double> out;
    res.status = ev.eval(params, out, &res.detail);
    if (res.status == EvalStatus::Ok) res.values.assign(out.begin(), out.end());
    return res;
}

}  // namespace symsearch
