#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace symsearch {

constexpr int kMaxParams = 10;

enum class UnaryOp { Neg, Sin, Cos, Tanh, Exp, Log, Sqrt, Abs, Step };
enum class BinaryOp { Add, Sub, Mul, Div, Pow, Max, Min };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
    enum class Kind { Var, Const, Param, Unary, Binary } kind;
    std::string name;      // Var
    double value = 0.0;    // Const
    int index = 0;         // Param
    UnaryOp uop = UnaryOp::Neg;
    BinaryOp bop = BinaryOp::Add;
    NodePtr left;           // Unary child / Binary left
    NodePtr right;          // Binary right
};

/// Immutable expression tree over named variables, numeric constants and
/// parameter slots p0..p9. Shareable across threads.
class Expression {
public:
    Expression() = default;

    static Expression var(std::string name);
    static Expression constant(double value);
    static Expression param(int index);
    static Expression unary(UnaryOp op, Expression child);
    static Expression binary(BinaryOp op, Expression left, Expression right);

    bool empty() const { return root_ == nullptr; }
    const NodePtr& root() const { return root_; }

    int length() const;                       // node count
    int depth() const;
    std::set<std::string> free_vars() const;
    std::vector<int> used_params() const;     // sorted, unique
    bool structurally_equal(const Expression& other) const;

    std::string serialize() const;            // canonical infix

private:
    explicit Expression(NodePtr root) : root_(std::move(root)) {}
    NodePtr root_;
};

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, size_t pos)
        : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"),
          position(pos) {}
    size_t position;
};

/// Parses the expression grammar: infix + - * / ^, calls sin(x)..max(a,b),
/// identifiers as variables, p0..p9 as parameter slots. Throws ParseError.
Expression parse(const std::string& text);

const char* unary_name(UnaryOp op);
const char* binary_name(BinaryOp op);

/// Column bindings for evaluation: parallel name/column arrays, all columns
/// of equal length.
struct EvalTable {
    std::vector<std::string> names;
    std::vector<std::span<const double>> columns;

    size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
    void add(std::string name, std::span<const double> column) {
        names.push_back(std::move(name));
        columns.push_back(column);
    }
};

struct EvalGuard {
    int max_nodes = 200;
    std::chrono::duration<double> timeout = std::chrono::seconds(30);
};

enum class EvalStatus { Ok, UnboundVariable, NonFinite, TooLarge, Timeout };

struct EvalResult {
    EvalStatus status = EvalStatus::Ok;
    std::string detail;
    std::vector<double> values;

    bool ok() const { return status == EvalStatus::Ok; }
};

/// Compiled form of an expression bound to a table layout; reusable across
/// parameter vectors without reallocation. Not thread-safe per instance.
class Evaluator {
public:
    Evaluator(const Expression& expr, const EvalTable& table, EvalGuard guard = {});

    bool compile_ok() const { return compile_status_ == EvalStatus::Ok; }
    EvalStatus compile_status() const { return compile_status_; }
    const std::string& compile_detail() const { return compile_detail_; }

    /// Evaluates into an internal buffer; the span is valid until the next
    /// call. params must have kMaxParams entries (extra ones are ignored).
    EvalStatus eval(std::span<const double> params, std::span<const double>& out,
                    std::string* detail = nullptr);

private:
    struct Instr {
        int op;        // encodes atom kind / unary / binary
        int arg = 0;   // column or param index
        double value = 0.0;
    };

    void compile(const NodePtr& node, int depth);

    const EvalTable& table_;
    EvalGuard guard_;
    std::vector<Instr> program_;
    std::vector<std::vector<double>> stack_;
    int max_depth_ = 0;
    EvalStatus compile_status_ = EvalStatus::Ok;
    std::string compile_detail_;
};

/// One-shot guarded evaluation. Any non-finite output is reported as a
/// guard violation.
EvalResult evaluate(const Expression& expr, const EvalTable& table,
                    std::span<const double> params, const EvalGuard& guard = {});

}  // namespace symsearch
