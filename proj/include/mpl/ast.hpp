#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace mpl {

struct SourceSpan {
  std::string file;
  int line = 1;
  int column = 1;
  int length = 0;
};

enum class Type {
  Void,
  Int,
  Float,
  Bool,
  ArrInt,
  ArrFloat,
  ArrBool,
};

inline bool is_array_type(Type t) {
  return t == Type::ArrInt || t == Type::ArrFloat || t == Type::ArrBool;
}
inline bool is_scalar_type(Type t) {
  return t == Type::Int || t == Type::Float || t == Type::Bool;
}
inline Type element_type(Type t) {
  switch (t) {
    case Type::ArrInt: return Type::Int;
    case Type::ArrFloat: return Type::Float;
    case Type::ArrBool: return Type::Bool;
    default: return Type::Void;
  }
}

inline const char* type_name(Type t) {
  switch (t) {
    case Type::Void: return "void";
    case Type::Int: return "int";
    case Type::Float: return "float";
    case Type::Bool: return "bool";
    case Type::ArrInt: return "int[]";
    case Type::ArrFloat: return "float[]";
    case Type::ArrBool: return "bool[]";
  }
  return "?";
}

enum class BinOp {
  Add, Sub, Mul, Div, Mod,
  Eq, Ne, Lt, Le, Gt, Ge,
  And, Or,
};

enum class UnOp { Neg, Not };

// Intrinsics. print writes to the single global I/O datagroup; sleep_ms is
// blocking; heavy_op(k) burns k rounds of a fixed arithmetic kernel and
// returns 0 (tunable task weight for benchmarks).
enum class Builtin {
  None,
  Print,
  Sqrt, Sin, Cos, Exp, Log, Pow, Abs, Floor,
  Min, Max,
  Itof, Ftoi,
  SleepMs,
  HeavyOp,
  ArrayInt, ArrayFloat, ArrayBool,
  Length,
};

enum class ExprKind {
  IntLit, FloatLit, BoolLit,
  Var,
  BinOp,
  UnOp,
  Index,       // args[0][args[1]]
  Call,        // user function
  BuiltinCall,
};

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct Expr {
  ExprKind kind;
  int id = -1;
  SourceSpan span;
  Type type = Type::Void;

  int64_t int_val = 0;
  double float_val = 0;
  bool bool_val = false;

  std::string name;    // Var / Call / BuiltinCall
  int slot = -1;       // Var: local slot
  int callee = -1;     // Call: function index
  BinOp bin_op = BinOp::Add;
  UnOp un_op = UnOp::Neg;
  Builtin builtin = Builtin::None;

  std::vector<ExprPtr> args;  // operands / call arguments / [base, index]
};

enum class StmtKind {
  VarDecl,
  Assign,
  ArrayStore,  // e0[e1] = e2
  If,
  While,
  For,
  ForEach,
  Return,
  Break,
  Continue,
  ExprStmt,
};

struct Stmt;
struct Block;
using StmtPtr = std::unique_ptr<Stmt>;
using BlockPtr = std::unique_ptr<Block>;

struct Block {
  int id = -1;
  std::vector<StmtPtr> stmts;
};

struct Stmt {
  StmtKind kind;
  int id = -1;
  SourceSpan span;

  std::string name;           // VarDecl / Assign target, ForEach element var
  int slot = -1;              // VarDecl / Assign / ForEach element slot
  Type decl_type = Type::Void;

  ExprPtr e0, e1, e2;         // init/cond/value/index depending on kind
  BlockPtr body, orelse;      // If: body=then, orelse=else; loops: body

  // For loops
  StmtPtr for_init;           // VarDecl or Assign, may be null
  StmtPtr for_step;           // Assign
  // True iff the induction variable is only increased or decreased by a
  // loop-invariant step and is not otherwise assigned in the body.
  bool monotone = false;
  int induction_slot = -1;
  int step_dir = +1;          // +1 or -1

  // ForEach: e0 = array expr; implicit index behaves like an induction var.
  int foreach_index_slot = -1;

  // Break/Continue: id of the targeted loop statement.
  int target_loop = -1;
};

struct Param {
  std::string name;
  Type type;
  int slot;
};

struct LocalInfo {
  std::string name;
  Type type;
};

// @reduce(op, identity) annotation: marks a two-argument function as a
// commutative/associative reduction operator usable in DO-ACROSS loops.
struct ReduceAnnotation {
  std::string op;
  double identity_f = 0;
  int64_t identity_i = 0;
  bool identity_is_float = false;
};

struct FunctionDecl {
  std::string name;
  int index = -1;
  std::vector<Param> params;
  Type return_type = Type::Void;
  BlockPtr body;
  std::vector<LocalInfo> locals;  // slot -> info (params first)
  std::optional<ReduceAnnotation> reduce;
  SourceSpan span;
};

struct Program {
  std::vector<std::unique_ptr<FunctionDecl>> functions;
  int entry = -1;      // index of main
  int next_node_id = 0;

  const FunctionDecl* find(const std::string& n) const {
    for (auto& f : functions)
      if (f->name == n) return f.get();
    return nullptr;
  }
};

struct Diagnostic {
  SourceSpan span;
  std::string message;
};

inline std::string format(const Diagnostic& d) {
  return d.span.file + ":" + std::to_string(d.span.line) + ":" +
         std::to_string(d.span.column) + ": " + d.message;
}

// Statement count used by the parallelizer's size heuristic. Counts
// desugared statement nodes: For desugars to init + While for counting,
// If contributes only its branches' statements, loop bodies are counted
// recursively, steps are not counted.
int count_statements(const Block& b);

inline int count_statements(const Stmt& s) {
  switch (s.kind) {
    case StmtKind::If:
      return count_statements(*s.body) +
             (s.orelse ? count_statements(*s.orelse) : 0);
    case StmtKind::While:
      return 1 + count_statements(*s.body);
    case StmtKind::For:
      return (s.for_init ? 1 : 0) + 1 + count_statements(*s.body);
    case StmtKind::ForEach:
      return 1 + count_statements(*s.body);
    default:
      return 1;
  }
}

inline int count_statements(const Block& b) {
  int n = 0;
  for (auto& s : b.stmts) n += count_statements(*s);
  return n;
}

inline int count_statements(const FunctionDecl& fn) {
  return count_statements(*fn.body);
}

}  // namespace mpl
