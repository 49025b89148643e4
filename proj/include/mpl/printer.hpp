#pragma once

#include <string>

#include "mpl/ast.hpp"

namespace mpl {

// Pretty-printer. Output parses back to a structurally identical program
// (parse of print of parse is a fixpoint).
class Printer {
 public:
  std::string print(const Program& p) {
    out_.clear();
    for (size_t i = 0; i < p.functions.size(); ++i) {
      if (i) out_ += "\n";
      print_function(*p.functions[i]);
    }
    return out_;
  }

  std::string print_expr_str(const Expr& e) {
    out_.clear();
    print_expr(e, 0);
    return out_;
  }

  std::string print_stmt_str(const Stmt& s) {
    out_.clear();
    print_stmt_head(s);
    return out_;
  }

  static std::string float_literal(double v) {
    char buf[64];
    snprintf(buf, sizeof(buf), "%.17g", v);
    std::string s = buf;
    if (s.find('.') == std::string::npos &&
        s.find('e') == std::string::npos &&
        s.find("inf") == std::string::npos &&
        s.find("nan") == std::string::npos)
      s += ".0";
    return s;
  }

 private:
  std::string out_;
  int indent_ = 0;

  void nl() {
    out_ += "\n";
    for (int i = 0; i < indent_; ++i) out_ += "    ";
  }
  void line_start() {
    for (int i = 0; i < indent_; ++i) out_ += "    ";
  }

  void print_function(const FunctionDecl& fn) {
    if (fn.reduce) {
      out_ += "@reduce(" + fn.reduce->op + ", ";
      if (fn.reduce->identity_is_float)
        out_ += float_literal(fn.reduce->identity_f);
      else
        out_ += std::to_string(fn.reduce->identity_i);
      out_ += ")\n";
    }
    out_ += std::string(type_name(fn.return_type)) + " " + fn.name + "(";
    for (size_t i = 0; i < fn.params.size(); ++i) {
      if (i) out_ += ", ";
      out_ += std::string(type_name(fn.params[i].type)) + " " +
              fn.params[i].name;
    }
    out_ += ") ";
    print_block(*fn.body);
    out_ += "\n";
  }

  void print_block(const Block& b) {
    out_ += "{";
    indent_++;
    for (auto& s : b.stmts) {
      nl();
      print_stmt(*s);
    }
    indent_--;
    nl();
    out_ += "}";
  }

  // header of a statement without trailing bodies; used for annotations
  void print_stmt_head(const Stmt& s) {
    switch (s.kind) {
      case StmtKind::If:
        out_ += "if (";
        print_expr(*s.e0, 0);
        out_ += ")";
        break;
      case StmtKind::While:
        out_ += "while (";
        print_expr(*s.e0, 0);
        out_ += ")";
        break;
      case StmtKind::For:
        out_ += "for (";
        if (s.for_init) print_simple(*s.for_init);
        out_ += "; ";
        print_expr(*s.e0, 0);
        out_ += "; ";
        print_simple(*s.for_step);
        out_ += ")";
        break;
      case StmtKind::ForEach:
        out_ += "foreach (" + s.name + " in ";
        print_expr(*s.e0, 0);
        out_ += ")";
        break;
      default:
        print_simple(s);
        out_ += ";";
        break;
    }
  }

  void print_stmt(const Stmt& s) {
    switch (s.kind) {
      case StmtKind::If:
        print_stmt_head(s);
        out_ += " ";
        print_block(*s.body);
        if (s.orelse) {
          out_ += " else ";
          print_block(*s.orelse);
        }
        break;
      case StmtKind::While:
      case StmtKind::For:
      case StmtKind::ForEach:
        print_stmt_head(s);
        out_ += " ";
        print_block(*s.body);
        break;
      default:
        print_stmt_head(s);
        break;
    }
  }

  void print_simple(const Stmt& s) {
    switch (s.kind) {
      case StmtKind::VarDecl:
        out_ += std::string(type_name(s.decl_type)) + " " + s.name;
        if (s.e0) {
          out_ += " = ";
          print_expr(*s.e0, 0);
        }
        break;
      case StmtKind::Assign:
        out_ += s.name + " = ";
        print_expr(*s.e0, 0);
        break;
      case StmtKind::ArrayStore:
        out_ += s.name + "[";
        print_expr(*s.e1, 0);
        out_ += "] = ";
        print_expr(*s.e2, 0);
        break;
      case StmtKind::Return:
        out_ += "return";
        if (s.e0) {
          out_ += " ";
          print_expr(*s.e0, 0);
        }
        break;
      case StmtKind::Break:
        out_ += "break";
        break;
      case StmtKind::Continue:
        out_ += "continue";
        break;
      case StmtKind::ExprStmt:
        print_expr(*s.e0, 0);
        break;
      default:
        break;
    }
  }

  static int precedence(BinOp op) {
    switch (op) {
      case BinOp::Or: return 1;
      case BinOp::And: return 2;
      case BinOp::Eq: case BinOp::Ne: case BinOp::Lt: case BinOp::Le:
      case BinOp::Gt: case BinOp::Ge: return 3;
      case BinOp::Add: case BinOp::Sub: return 4;
      default: return 5;
    }
  }

  static const char* op_str(BinOp op) {
    switch (op) {
      case BinOp::Add: return " + ";
      case BinOp::Sub: return " - ";
      case BinOp::Mul: return " * ";
      case BinOp::Div: return " / ";
      case BinOp::Mod: return " % ";
      case BinOp::Eq: return " == ";
      case BinOp::Ne: return " != ";
      case BinOp::Lt: return " < ";
      case BinOp::Le: return " <= ";
      case BinOp::Gt: return " > ";
      case BinOp::Ge: return " >= ";
      case BinOp::And: return " && ";
      case BinOp::Or: return " || ";
    }
    return "?";
  }

  void print_expr(const Expr& e, int parent_prec) {
    switch (e.kind) {
      case ExprKind::IntLit:
        out_ += std::to_string(e.int_val);
        break;
      case ExprKind::FloatLit:
        out_ += float_literal(e.float_val);
        break;
      case ExprKind::BoolLit:
        out_ += e.bool_val ? "true" : "false";
        break;
      case ExprKind::Var:
        out_ += e.name;
        break;
      case ExprKind::UnOp: {
        out_ += e.un_op == UnOp::Neg ? "-" : "!";
        bool paren = e.args[0]->kind == ExprKind::BinOp;
        if (paren) out_ += "(";
        print_expr(*e.args[0], 6);
        if (paren) out_ += ")";
        break;
      }
      case ExprKind::BinOp: {
        int prec = precedence(e.bin_op);
        bool paren = prec < parent_prec;
        if (paren) out_ += "(";
        print_expr(*e.args[0], prec);
        out_ += op_str(e.bin_op);
        // right operand needs parens at equal precedence (left assoc)
        print_expr(*e.args[1], prec + 1);
        if (paren) out_ += ")";
        break;
      }
      case ExprKind::Index:
        print_expr(*e.args[0], 7);
        out_ += "[";
        print_expr(*e.args[1], 0);
        out_ += "]";
        break;
      case ExprKind::Call:
      case ExprKind::BuiltinCall: {
        out_ += e.name + "(";
        for (size_t i = 0; i < e.args.size(); ++i) {
          if (i) out_ += ", ";
          print_expr(*e.args[i], 0);
        }
        out_ += ")";
        break;
      }
    }
  }
};

inline std::string print_program(const Program& p) {
  Printer pr;
  return pr.print(p);
}

}  // namespace mpl
