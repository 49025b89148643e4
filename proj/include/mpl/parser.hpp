#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mpl/ast.hpp"
#include "mpl/lexer.hpp"

namespace mpl {

struct ParseResult {
  std::unique_ptr<Program> program;  // null on failure
  std::vector<Diagnostic> diags;
  bool ok() const { return program != nullptr; }
};

namespace detail {

inline Builtin builtin_by_name(const std::string& n) {
  static const std::map<std::string, Builtin> tbl = {
      {"print", Builtin::Print},   {"sqrt", Builtin::Sqrt},
      {"sin", Builtin::Sin},       {"cos", Builtin::Cos},
      {"exp", Builtin::Exp},       {"log", Builtin::Log},
      {"pow", Builtin::Pow},       {"abs", Builtin::Abs},
      {"floor", Builtin::Floor},   {"min", Builtin::Min},
      {"max", Builtin::Max},       {"itof", Builtin::Itof},
      {"ftoi", Builtin::Ftoi},     {"sleep_ms", Builtin::SleepMs},
      {"heavy_op", Builtin::HeavyOp}, {"array_int", Builtin::ArrayInt},
      {"array_float", Builtin::ArrayFloat}, {"array_bool", Builtin::ArrayBool},
      {"length", Builtin::Length},
  };
  auto it = tbl.find(n);
  return it == tbl.end() ? Builtin::None : it->second;
}

}  // namespace detail

class Parser {
 public:
  Parser(std::string source, std::string file)
      : file_(file) {
    Lexer lex(std::move(source), std::move(file));
    toks_ = lex.run(diags_);
  }

  ParseResult run() {
    auto prog = std::make_unique<Program>();
    prog_ = prog.get();
    while (!at(Tok::End)) {
      if (!parse_function()) {
        // error recovery: skip to next top-level function
        while (!at(Tok::End) && !at_type_keyword() && !at(Tok::At)) bump();
        if (!had_progress_) break;
      }
    }
    prog_->next_node_id = next_id_;
    resolve();
    ParseResult r;
    r.diags = std::move(diags_);
    for (auto& d : r.diags) (void)d;
    if (!has_error_) r.program = std::move(prog);
    prog_holder_ = std::move(prog);  // keep alive if failed (unused)
    return r;
  }

 private:
  std::string file_;
  std::vector<Token> toks_;
  size_t ti_ = 0;
  std::vector<Diagnostic> diags_;
  Program* prog_ = nullptr;
  std::unique_ptr<Program> prog_holder_;
  int next_id_ = 0;
  bool has_error_ = false;
  bool had_progress_ = false;

  // --- per-function parse state
  FunctionDecl* cur_fn_ = nullptr;
  std::vector<std::map<std::string, int>> scopes_;
  std::vector<Stmt*> loop_stack_;

  const Token& cur() const { return toks_[ti_]; }
  bool at(Tok k) const { return cur().kind == k; }
  const Token& bump() { return toks_[ti_ < toks_.size() - 1 ? ti_++ : ti_]; }
  bool accept(Tok k) {
    if (at(k)) { bump(); return true; }
    return false;
  }
  void error(const SourceSpan& sp, const std::string& msg) {
    diags_.push_back({sp, msg});
    has_error_ = true;
  }
  bool expect(Tok k, const char* what) {
    if (accept(k)) return true;
    error(cur().span, std::string("expected ") + what);
    return false;
  }
  int nid() { return next_id_++; }

  bool at_type_keyword() const {
    return at(Tok::KwInt) || at(Tok::KwFloat) || at(Tok::KwBool) ||
           at(Tok::KwVoid);
  }

  std::optional<Type> parse_type() {
    Type base;
    if (accept(Tok::KwInt)) base = Type::Int;
    else if (accept(Tok::KwFloat)) base = Type::Float;
    else if (accept(Tok::KwBool)) base = Type::Bool;
    else if (accept(Tok::KwVoid)) return Type::Void;
    else return std::nullopt;
    if (accept(Tok::LBracket)) {
      if (!expect(Tok::RBracket, "']'")) return std::nullopt;
      switch (base) {
        case Type::Int: return Type::ArrInt;
        case Type::Float: return Type::ArrFloat;
        default: return Type::ArrBool;
      }
    }
    return base;
  }

  // ---------------------------------------------------------------- scopes

  void push_scope() { scopes_.emplace_back(); }
  void pop_scope() { scopes_.pop_back(); }

  int declare(const std::string& name, Type t, const SourceSpan& sp) {
    if (scopes_.back().count(name)) {
      error(sp, "duplicate declaration of '" + name + "'");
      return scopes_.back()[name];
    }
    int slot = (int)cur_fn_->locals.size();
    cur_fn_->locals.push_back({name, t});
    scopes_.back()[name] = slot;
    return slot;
  }

  int lookup(const std::string& name) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto f = it->find(name);
      if (f != it->end()) return f->second;
    }
    return -1;
  }

  // -------------------------------------------------------------- functions

  bool parse_function() {
    had_progress_ = true;
    std::optional<ReduceAnnotation> reduce;
    if (accept(Tok::At)) {
      reduce = parse_reduce_annotation();
      if (!reduce) return false;
    }
    auto rt = parse_type();
    if (!rt) {
      error(cur().span, "expected function return type");
      return false;
    }
    if (!at(Tok::Ident)) {
      error(cur().span, "expected function name");
      return false;
    }
    auto fn = std::make_unique<FunctionDecl>();
    fn->span = cur().span;
    fn->name = bump().text;
    fn->return_type = *rt;
    fn->reduce = reduce;
    cur_fn_ = fn.get();
    scopes_.clear();
    push_scope();
    if (!expect(Tok::LParen, "'('")) return false;
    if (!at(Tok::RParen)) {
      do {
        auto pt = parse_type();
        if (!pt || *pt == Type::Void) {
          error(cur().span, "expected parameter type");
          return false;
        }
        if (!at(Tok::Ident)) {
          error(cur().span, "expected parameter name");
          return false;
        }
        SourceSpan sp = cur().span;
        std::string pname = bump().text;
        int slot = declare(pname, *pt, sp);
        fn->params.push_back({pname, *pt, slot});
      } while (accept(Tok::Comma));
    }
    if (!expect(Tok::RParen, "')'")) return false;
    fn->body = parse_block();
    pop_scope();
    if (!fn->body) return false;
    fn->index = (int)prog_->functions.size();
    prog_->functions.push_back(std::move(fn));
    cur_fn_ = nullptr;
    return true;
  }

  std::optional<ReduceAnnotation> parse_reduce_annotation() {
    if (!at(Tok::Ident) || cur().text != "reduce") {
      error(cur().span, "unknown annotation");
      return std::nullopt;
    }
    bump();
    if (!expect(Tok::LParen, "'('")) return std::nullopt;
    ReduceAnnotation ra;
    if (at(Tok::Plus)) { ra.op = "+"; bump(); }
    else if (at(Tok::Star)) { ra.op = "*"; bump(); }
    else if (at(Tok::Ident)) { ra.op = bump().text; }
    else {
      error(cur().span, "expected reduction operator");
      return std::nullopt;
    }
    if (!expect(Tok::Comma, "','")) return std::nullopt;
    bool neg = accept(Tok::Minus);
    if (at(Tok::IntLit)) {
      ra.identity_i = neg ? -cur().int_val : cur().int_val;
      ra.identity_is_float = false;
      bump();
    } else if (at(Tok::FloatLit)) {
      ra.identity_f = neg ? -cur().float_val : cur().float_val;
      ra.identity_is_float = true;
      bump();
    } else {
      error(cur().span, "expected identity literal");
      return std::nullopt;
    }
    if (!expect(Tok::RParen, "')'")) return std::nullopt;
    return ra;
  }

  // ------------------------------------------------------------- statements

  BlockPtr parse_block() {
    if (!expect(Tok::LBrace, "'{'")) return nullptr;
    auto b = std::make_unique<Block>();
    b->id = nid();
    push_scope();
    while (!at(Tok::RBrace) && !at(Tok::End)) {
      auto s = parse_stmt();
      if (!s) {
        pop_scope();
        return nullptr;
      }
      b->stmts.push_back(std::move(s));
    }
    pop_scope();
    expect(Tok::RBrace, "'}'");
    return b;
  }

  StmtPtr make_stmt(StmtKind k, SourceSpan sp) {
    auto s = std::make_unique<Stmt>();
    s->kind = k;
    s->id = nid();
    s->span = sp;
    return s;
  }

  StmtPtr parse_stmt() {
    SourceSpan sp = cur().span;
    if (at_type_keyword()) {
      auto s = parse_var_decl();
      if (s && !expect(Tok::Semi, "';'")) return nullptr;
      return s;
    }
    if (at(Tok::KwIf)) return parse_if();
    if (at(Tok::KwWhile)) return parse_while();
    if (at(Tok::KwFor)) return parse_for();
    if (at(Tok::KwForeach)) return parse_foreach();
    if (accept(Tok::KwReturn)) {
      auto s = make_stmt(StmtKind::Return, sp);
      if (!at(Tok::Semi)) {
        s->e0 = parse_expr();
        if (!s->e0) return nullptr;
      }
      if (!expect(Tok::Semi, "';'")) return nullptr;
      return s;
    }
    if (accept(Tok::KwBreak)) {
      auto s = make_stmt(StmtKind::Break, sp);
      if (loop_stack_.empty()) error(sp, "'break' outside of loop");
      else s->target_loop = loop_stack_.back()->id;
      if (!expect(Tok::Semi, "';'")) return nullptr;
      return s;
    }
    if (accept(Tok::KwContinue)) {
      auto s = make_stmt(StmtKind::Continue, sp);
      if (loop_stack_.empty()) error(sp, "'continue' outside of loop");
      else s->target_loop = loop_stack_.back()->id;
      if (!expect(Tok::Semi, "';'")) return nullptr;
      return s;
    }
    auto s = parse_simple_stmt();
    if (s && !expect(Tok::Semi, "';'")) return nullptr;
    return s;
  }

  StmtPtr parse_var_decl() {
    SourceSpan sp = cur().span;
    auto t = parse_type();
    if (!t || *t == Type::Void) {
      error(sp, "invalid variable type");
      return nullptr;
    }
    if (!at(Tok::Ident)) {
      error(cur().span, "expected variable name");
      return nullptr;
    }
    auto s = make_stmt(StmtKind::VarDecl, sp);
    s->name = cur().text;
    s->decl_type = *t;
    SourceSpan nsp = bump().span;
    if (accept(Tok::Assign)) {
      s->e0 = parse_expr();
      if (!s->e0) return nullptr;
    }
    // declared after the initializer so `int x = x;` is an error
    s->slot = declare(s->name, *t, nsp);
    return s;
  }

  // assignment, array store or expression statement (no trailing ';')
  StmtPtr parse_simple_stmt() {
    SourceSpan sp = cur().span;
    if (at(Tok::Ident)) {
      // lookahead for "ident =" and "ident [ e ] ="
      if (toks_[ti_ + 1].kind == Tok::Assign) {
        auto s = make_stmt(StmtKind::Assign, sp);
        s->name = bump().text;
        s->slot = lookup(s->name);
        if (s->slot < 0) error(sp, "undefined identifier '" + s->name + "'");
        bump();  // '='
        s->e0 = parse_expr();
        if (!s->e0) return nullptr;
        return s;
      }
      if (toks_[ti_ + 1].kind == Tok::LBracket) {
        size_t save = ti_;
        std::string name = bump().text;
        bump();  // '['
        auto idx = parse_expr();
        if (!idx) return nullptr;
        if (at(Tok::RBracket) && toks_[ti_ + 1].kind == Tok::Assign) {
          bump();  // ']'
          bump();  // '='
          auto s = make_stmt(StmtKind::ArrayStore, sp);
          s->name = name;
          s->slot = lookup(name);
          if (s->slot < 0) error(sp, "undefined identifier '" + name + "'");
          s->e1 = std::move(idx);
          s->e2 = parse_expr();
          if (!s->e2) return nullptr;
          return s;
        }
        ti_ = save;  // plain indexing expression statement
      }
    }
    auto s = make_stmt(StmtKind::ExprStmt, sp);
    s->e0 = parse_expr();
    if (!s->e0) return nullptr;
    return s;
  }

  StmtPtr parse_if() {
    SourceSpan sp = bump().span;  // 'if'
    auto s = make_stmt(StmtKind::If, sp);
    if (!expect(Tok::LParen, "'('")) return nullptr;
    s->e0 = parse_expr();
    if (!s->e0) return nullptr;
    if (!expect(Tok::RParen, "')'")) return nullptr;
    s->body = parse_block();
    if (!s->body) return nullptr;
    if (accept(Tok::KwElse)) {
      if (at(Tok::KwIf)) {
        auto inner = parse_if();
        if (!inner) return nullptr;
        auto b = std::make_unique<Block>();
        b->id = nid();
        b->stmts.push_back(std::move(inner));
        s->orelse = std::move(b);
      } else {
        s->orelse = parse_block();
        if (!s->orelse) return nullptr;
      }
    }
    return s;
  }

  StmtPtr parse_while() {
    SourceSpan sp = bump().span;
    auto s = make_stmt(StmtKind::While, sp);
    if (!expect(Tok::LParen, "'('")) return nullptr;
    s->e0 = parse_expr();
    if (!s->e0) return nullptr;
    if (!expect(Tok::RParen, "')'")) return nullptr;
    loop_stack_.push_back(s.get());
    s->body = parse_block();
    loop_stack_.pop_back();
    if (!s->body) return nullptr;
    return s;
  }

  StmtPtr parse_for() {
    SourceSpan sp = bump().span;
    auto s = make_stmt(StmtKind::For, sp);
    if (!expect(Tok::LParen, "'('")) return nullptr;
    push_scope();  // init declaration scoped to the loop
    if (!at(Tok::Semi)) {
      if (at_type_keyword()) s->for_init = parse_var_decl();
      else s->for_init = parse_simple_stmt();
      if (!s->for_init) { pop_scope(); return nullptr; }
    }
    if (!expect(Tok::Semi, "';'")) { pop_scope(); return nullptr; }
    s->e0 = parse_expr();
    if (!s->e0) { pop_scope(); return nullptr; }
    if (!expect(Tok::Semi, "';'")) { pop_scope(); return nullptr; }
    s->for_step = parse_simple_stmt();
    if (!s->for_step) { pop_scope(); return nullptr; }
    if (!expect(Tok::RParen, "')'")) { pop_scope(); return nullptr; }
    loop_stack_.push_back(s.get());
    s->body = parse_block();
    loop_stack_.pop_back();
    pop_scope();
    if (!s->body) return nullptr;
    return s;
  }

  StmtPtr parse_foreach() {
    SourceSpan sp = bump().span;
    auto s = make_stmt(StmtKind::ForEach, sp);
    if (!expect(Tok::LParen, "'('")) return nullptr;
    if (!at(Tok::Ident)) {
      error(cur().span, "expected element variable name");
      return nullptr;
    }
    s->name = cur().text;
    SourceSpan nsp = bump().span;
    if (!expect(Tok::KwIn, "'in'")) return nullptr;
    s->e0 = parse_expr();
    if (!s->e0) return nullptr;
    if (!expect(Tok::RParen, "')'")) return nullptr;
    push_scope();
    // element type fixed up during resolution from the array type
    s->slot = declare(s->name, Type::Int, nsp);
    s->foreach_index_slot = (int)cur_fn_->locals.size();
    cur_fn_->locals.push_back({"$idx" + std::to_string(s->id), Type::Int});
    loop_stack_.push_back(s.get());
    s->body = parse_block();
    loop_stack_.pop_back();
    pop_scope();
    if (!s->body) return nullptr;
    s->monotone = true;  // implicit index only ever increases
    s->induction_slot = s->foreach_index_slot;
    return s;
  }

  // ------------------------------------------------------------ expressions

  ExprPtr make_expr(ExprKind k, SourceSpan sp) {
    auto e = std::make_unique<Expr>();
    e->kind = k;
    e->id = nid();
    e->span = sp;
    return e;
  }

  ExprPtr parse_expr() { return parse_or(); }

  ExprPtr parse_or() {
    auto lhs = parse_and();
    if (!lhs) return nullptr;
    while (at(Tok::OrOr)) {
      SourceSpan sp = bump().span;
      auto rhs = parse_and();
      if (!rhs) return nullptr;
      auto e = make_expr(ExprKind::BinOp, sp);
      e->bin_op = BinOp::Or;
      e->args.push_back(std::move(lhs));
      e->args.push_back(std::move(rhs));
      lhs = std::move(e);
    }
    return lhs;
  }

  ExprPtr parse_and() {
    auto lhs = parse_cmp();
    if (!lhs) return nullptr;
    while (at(Tok::AndAnd)) {
      SourceSpan sp = bump().span;
      auto rhs = parse_cmp();
      if (!rhs) return nullptr;
      auto e = make_expr(ExprKind::BinOp, sp);
      e->bin_op = BinOp::And;
      e->args.push_back(std::move(lhs));
      e->args.push_back(std::move(rhs));
      lhs = std::move(e);
    }
    return lhs;
  }

  ExprPtr parse_cmp() {
    auto lhs = parse_add();
    if (!lhs) return nullptr;
    while (at(Tok::EqEq) || at(Tok::NotEq) || at(Tok::Lt) || at(Tok::Le) ||
           at(Tok::Gt) || at(Tok::Ge)) {
      Tok k = cur().kind;
      SourceSpan sp = bump().span;
      auto rhs = parse_add();
      if (!rhs) return nullptr;
      auto e = make_expr(ExprKind::BinOp, sp);
      switch (k) {
        case Tok::EqEq: e->bin_op = BinOp::Eq; break;
        case Tok::NotEq: e->bin_op = BinOp::Ne; break;
        case Tok::Lt: e->bin_op = BinOp::Lt; break;
        case Tok::Le: e->bin_op = BinOp::Le; break;
        case Tok::Gt: e->bin_op = BinOp::Gt; break;
        default: e->bin_op = BinOp::Ge; break;
      }
      e->args.push_back(std::move(lhs));
      e->args.push_back(std::move(rhs));
      lhs = std::move(e);
    }
    return lhs;
  }

  ExprPtr parse_add() {
    auto lhs = parse_mul();
    if (!lhs) return nullptr;
    while (at(Tok::Plus) || at(Tok::Minus)) {
      Tok k = cur().kind;
      SourceSpan sp = bump().span;
      auto rhs = parse_mul();
      if (!rhs) return nullptr;
      auto e = make_expr(ExprKind::BinOp, sp);
      e->bin_op = k == Tok::Plus ? BinOp::Add : BinOp::Sub;
      e->args.push_back(std::move(lhs));
      e->args.push_back(std::move(rhs));
      lhs = std::move(e);
    }
    return lhs;
  }

  ExprPtr parse_mul() {
    auto lhs = parse_unary();
    if (!lhs) return nullptr;
    while (at(Tok::Star) || at(Tok::Slash) || at(Tok::Percent)) {
      Tok k = cur().kind;
      SourceSpan sp = bump().span;
      auto rhs = parse_unary();
      if (!rhs) return nullptr;
      auto e = make_expr(ExprKind::BinOp, sp);
      e->bin_op = k == Tok::Star    ? BinOp::Mul
                  : k == Tok::Slash ? BinOp::Div
                                    : BinOp::Mod;
      e->args.push_back(std::move(lhs));
      e->args.push_back(std::move(rhs));
      lhs = std::move(e);
    }
    return lhs;
  }

  ExprPtr parse_unary() {
    if (at(Tok::Minus) || at(Tok::Not)) {
      Tok k = cur().kind;
      SourceSpan sp = bump().span;
      auto inner = parse_unary();
      if (!inner) return nullptr;
      auto e = make_expr(ExprKind::UnOp, sp);
      e->un_op = k == Tok::Minus ? UnOp::Neg : UnOp::Not;
      e->args.push_back(std::move(inner));
      return e;
    }
    return parse_postfix();
  }

  ExprPtr parse_postfix() {
    auto e = parse_primary();
    if (!e) return nullptr;
    while (at(Tok::LBracket)) {
      SourceSpan sp = bump().span;
      auto idx = parse_expr();
      if (!idx) return nullptr;
      if (!expect(Tok::RBracket, "']'")) return nullptr;
      auto ix = make_expr(ExprKind::Index, sp);
      ix->args.push_back(std::move(e));
      ix->args.push_back(std::move(idx));
      e = std::move(ix);
    }
    return e;
  }

  ExprPtr parse_primary() {
    SourceSpan sp = cur().span;
    if (at(Tok::IntLit)) {
      auto e = make_expr(ExprKind::IntLit, sp);
      e->int_val = bump().int_val;
      return e;
    }
    if (at(Tok::FloatLit)) {
      auto e = make_expr(ExprKind::FloatLit, sp);
      e->float_val = bump().float_val;
      return e;
    }
    if (at(Tok::KwTrue) || at(Tok::KwFalse)) {
      auto e = make_expr(ExprKind::BoolLit, sp);
      e->bool_val = at(Tok::KwTrue);
      bump();
      return e;
    }
    if (accept(Tok::LParen)) {
      auto e = parse_expr();
      if (!e) return nullptr;
      if (!expect(Tok::RParen, "')'")) return nullptr;
      return e;
    }
    if (at(Tok::Ident)) {
      std::string name = cur().text;
      bump();
      if (accept(Tok::LParen)) {
        Builtin b = detail::builtin_by_name(name);
        auto e = make_expr(b != Builtin::None ? ExprKind::BuiltinCall
                                              : ExprKind::Call,
                           sp);
        e->name = name;
        e->builtin = b;
        if (!at(Tok::RParen)) {
          do {
            auto a = parse_expr();
            if (!a) return nullptr;
            e->args.push_back(std::move(a));
          } while (accept(Tok::Comma));
        }
        if (!expect(Tok::RParen, "')'")) return nullptr;
        return e;
      }
      auto e = make_expr(ExprKind::Var, sp);
      e->name = name;
      e->slot = lookup(name);
      if (e->slot < 0) error(sp, "undefined identifier '" + name + "'");
      return e;
    }
    error(sp, "expected expression");
    bump();
    return nullptr;
  }

  // -------------------------------------------------------------- resolution

  void resolve() {
    std::map<std::string, int> fn_index;
    for (auto& f : prog_->functions) {
      if (fn_index.count(f->name))
        error(f->span, "duplicate function '" + f->name + "'");
      else
        fn_index[f->name] = f->index;
      if (detail::builtin_by_name(f->name) != Builtin::None)
        error(f->span, "'" + f->name + "' shadows a builtin");
    }
    auto entry = fn_index.find("main");
    if (entry == fn_index.end()) {
      error({file_, 1, 1, 0}, "no entry function 'main'");
    } else {
      prog_->entry = entry->second;
      for (auto& p : prog_->functions[entry->second]->params)
        if (!is_scalar_type(p.type))
          error(prog_->functions[entry->second]->span,
                "entry function parameters must be scalars");
    }
    if (has_error_) return;
    for (auto& f : prog_->functions) {
      cur_fn_ = f.get();
      check_block(*f->body, fn_index);
    }
    cur_fn_ = nullptr;
  }

  Type slot_type(int slot) const {
    return slot >= 0 && slot < (int)cur_fn_->locals.size()
               ? cur_fn_->locals[slot].type
               : Type::Void;
  }

  // Inserts no conversion nodes: int-to-float promotion is implicit and
  // handled by the interpreters; the checker only validates it.
  bool assignable(Type dst, Type src) const {
    if (dst == src) return true;
    return dst == Type::Float && src == Type::Int;
  }

  void check_block(Block& b, const std::map<std::string, int>& fns) {
    for (auto& s : b.stmts) check_stmt(*s, fns);
  }

  void check_stmt(Stmt& s, const std::map<std::string, int>& fns) {
    switch (s.kind) {
      case StmtKind::VarDecl:
        if (s.e0) {
          Type t = check_expr(*s.e0, fns);
          if (!assignable(s.decl_type, t))
            error(s.span, std::string("cannot initialize ") +
                              type_name(s.decl_type) + " from " + type_name(t));
        } else if (is_array_type(s.decl_type)) {
          error(s.span, "array variable requires an initializer");
        }
        break;
      case StmtKind::Assign: {
        Type t = check_expr(*s.e0, fns);
        if (s.slot >= 0 && !assignable(slot_type(s.slot), t))
          error(s.span, std::string("cannot assign ") + type_name(t) + " to " +
                            type_name(slot_type(s.slot)));
        break;
      }
      case StmtKind::ArrayStore: {
        Type at = slot_type(s.slot);
        if (!is_array_type(at)) error(s.span, "indexed store into non-array");
        Type it = check_expr(*s.e1, fns);
        if (it != Type::Int) error(s.span, "array index must be int");
        Type vt = check_expr(*s.e2, fns);
        if (is_array_type(at) && !assignable(element_type(at), vt))
          error(s.span, "element type mismatch in array store");
        break;
      }
      case StmtKind::If: {
        if (check_expr(*s.e0, fns) != Type::Bool)
          error(s.span, "if condition must be bool");
        check_block(*s.body, fns);
        if (s.orelse) check_block(*s.orelse, fns);
        break;
      }
      case StmtKind::While: {
        if (check_expr(*s.e0, fns) != Type::Bool)
          error(s.span, "while condition must be bool");
        check_block(*s.body, fns);
        break;
      }
      case StmtKind::For: {
        if (s.for_init) check_stmt(*s.for_init, fns);
        if (check_expr(*s.e0, fns) != Type::Bool)
          error(s.span, "for condition must be bool");
        check_stmt(*s.for_step, fns);
        check_block(*s.body, fns);
        classify_for(s);
        break;
      }
      case StmtKind::ForEach: {
        Type at = check_expr(*s.e0, fns);
        if (!is_array_type(at)) {
          error(s.span, "foreach requires an array");
        } else {
          cur_fn_->locals[s.slot].type = element_type(at);
        }
        check_block(*s.body, fns);
        if (slot_assigned_in(*s.body, s.slot)) s.monotone = false;
        break;
      }
      case StmtKind::Return: {
        Type t = s.e0 ? check_expr(*s.e0, fns) : Type::Void;
        if (!assignable(cur_fn_->return_type, t) &&
            !(cur_fn_->return_type == Type::Void && !s.e0))
          error(s.span, std::string("return type mismatch: expected ") +
                            type_name(cur_fn_->return_type) + ", got " +
                            type_name(t));
        break;
      }
      case StmtKind::ExprStmt:
        check_expr(*s.e0, fns);
        break;
      default:
        break;
    }
  }

  // The monotone-induction flag: step must be `i = i + c` or `i = i - c`
  // with c a literal or loop-invariant variable, and i not assigned in
  // the body.
  void classify_for(Stmt& s) {
    s.monotone = false;
    Stmt& step = *s.for_step;
    if (step.kind != StmtKind::Assign || step.slot < 0) return;
    int iv = step.slot;
    const Expr& e = *step.e0;
    if (e.kind != ExprKind::BinOp ||
        (e.bin_op != BinOp::Add && e.bin_op != BinOp::Sub))
      return;
    const Expr& lhs = *e.args[0];
    const Expr& rhs = *e.args[1];
    if (lhs.kind != ExprKind::Var || lhs.slot != iv) return;
    bool rhs_ok = rhs.kind == ExprKind::IntLit;
    if (rhs.kind == ExprKind::Var && rhs.slot != iv &&
        !slot_assigned_in(*s.body, rhs.slot))
      rhs_ok = true;
    if (!rhs_ok) return;
    if (slot_assigned_in(*s.body, iv)) return;
    s.monotone = true;
    s.induction_slot = iv;
    s.step_dir = e.bin_op == BinOp::Add ? +1 : -1;
  }

  static bool slot_assigned_in(const Block& b, int slot) {
    for (auto& s : b.stmts)
      if (slot_assigned_in(*s, slot)) return true;
    return false;
  }

  static bool slot_assigned_in(const Stmt& s, int slot) {
    if ((s.kind == StmtKind::Assign || s.kind == StmtKind::VarDecl) &&
        s.slot == slot)
      return true;
    if (s.for_init && slot_assigned_in(*s.for_init, slot)) return true;
    if (s.for_step && slot_assigned_in(*s.for_step, slot)) return true;
    if (s.body && slot_assigned_in(*s.body, slot)) return true;
    if (s.orelse && slot_assigned_in(*s.orelse, slot)) return true;
    return false;
  }

  Type check_expr(Expr& e, const std::map<std::string, int>& fns) {
    switch (e.kind) {
      case ExprKind::IntLit: return e.type = Type::Int;
      case ExprKind::FloatLit: return e.type = Type::Float;
      case ExprKind::BoolLit: return e.type = Type::Bool;
      case ExprKind::Var:
        return e.type = slot_type(e.slot);
      case ExprKind::UnOp: {
        Type t = check_expr(*e.args[0], fns);
        if (e.un_op == UnOp::Not) {
          if (t != Type::Bool) error(e.span, "'!' requires bool");
          return e.type = Type::Bool;
        }
        if (t != Type::Int && t != Type::Float)
          error(e.span, "unary '-' requires a numeric operand");
        return e.type = t;
      }
      case ExprKind::BinOp: {
        Type a = check_expr(*e.args[0], fns);
        Type b = check_expr(*e.args[1], fns);
        switch (e.bin_op) {
          case BinOp::And:
          case BinOp::Or:
            if (a != Type::Bool || b != Type::Bool)
              error(e.span, "logical operator requires bool operands");
            return e.type = Type::Bool;
          case BinOp::Eq:
          case BinOp::Ne:
          case BinOp::Lt:
          case BinOp::Le:
          case BinOp::Gt:
          case BinOp::Ge:
            if (!numeric_pair(a, b) && !(a == b && a == Type::Bool))
              error(e.span, "invalid comparison operand types");
            return e.type = Type::Bool;
          default:
            if (!numeric_pair(a, b))
              error(e.span, "arithmetic requires numeric operands");
            if (e.bin_op == BinOp::Mod && (a != Type::Int || b != Type::Int))
              error(e.span, "'%' requires int operands");
            return e.type =
                       (a == Type::Float || b == Type::Float) ? Type::Float
                                                              : Type::Int;
        }
      }
      case ExprKind::Index: {
        Type a = check_expr(*e.args[0], fns);
        Type i = check_expr(*e.args[1], fns);
        if (!is_array_type(a)) error(e.span, "indexing a non-array value");
        if (i != Type::Int) error(e.span, "array index must be int");
        return e.type = element_type(a);
      }
      case ExprKind::Call: {
        auto it = fns.find(e.name);
        if (it == fns.end()) {
          error(e.span, "undefined identifier '" + e.name + "'");
          return e.type = Type::Void;
        }
        e.callee = it->second;
        const FunctionDecl& fn = *prog_->functions[e.callee];
        if (e.args.size() != fn.params.size())
          error(e.span, "wrong number of arguments to '" + e.name + "'");
        for (size_t i = 0; i < e.args.size() && i < fn.params.size(); ++i) {
          Type t = check_expr(*e.args[i], fns);
          if (!assignable(fn.params[i].type, t))
            error(e.args[i]->span, "argument type mismatch in call to '" +
                                       e.name + "'");
        }
        return e.type = fn.return_type;
      }
      case ExprKind::BuiltinCall:
        return e.type = check_builtin(e, fns);
    }
    return Type::Void;
  }

  static bool numeric_pair(Type a, Type b) {
    return (a == Type::Int || a == Type::Float) &&
           (b == Type::Int || b == Type::Float);
  }

  Type check_builtin(Expr& e, const std::map<std::string, int>& fns) {
    auto arity = [&](size_t n) {
      if (e.args.size() != n)
        error(e.span, "wrong number of arguments to '" + e.name + "'");
    };
    std::vector<Type> at;
    for (auto& a : e.args) at.push_back(check_expr(*a, fns));
    auto num = [&](size_t i) {
      if (i < at.size() && at[i] != Type::Int && at[i] != Type::Float)
        error(e.args[i]->span, "'" + e.name + "' requires numeric arguments");
    };
    switch (e.builtin) {
      case Builtin::Print:
        return Type::Void;
      case Builtin::Sqrt: case Builtin::Sin: case Builtin::Cos:
      case Builtin::Exp: case Builtin::Log: case Builtin::Floor:
        arity(1); num(0);
        return Type::Float;
      case Builtin::Pow:
        arity(2); num(0); num(1);
        return Type::Float;
      case Builtin::Abs:
        arity(1); num(0);
        return at.empty() ? Type::Int : at[0];
      case Builtin::Min: case Builtin::Max:
        arity(2); num(0); num(1);
        if (at.size() == 2 && at[0] == Type::Int && at[1] == Type::Int)
          return Type::Int;
        return Type::Float;
      case Builtin::Itof:
        arity(1);
        if (!at.empty() && at[0] != Type::Int)
          error(e.span, "itof requires int");
        return Type::Float;
      case Builtin::Ftoi:
        arity(1);
        if (!at.empty() && at[0] != Type::Float)
          error(e.span, "ftoi requires float");
        return Type::Int;
      case Builtin::SleepMs: case Builtin::HeavyOp:
        arity(1);
        if (!at.empty() && at[0] != Type::Int)
          error(e.span, "'" + e.name + "' requires an int argument");
        return Type::Int;
      case Builtin::ArrayInt:
        arity(1);
        return Type::ArrInt;
      case Builtin::ArrayFloat:
        arity(1);
        return Type::ArrFloat;
      case Builtin::ArrayBool:
        arity(1);
        return Type::ArrBool;
      case Builtin::Length:
        arity(1);
        if (!at.empty() && !is_array_type(at[0]))
          error(e.span, "length requires an array");
        return Type::Int;
      default:
        return Type::Void;
    }
  }
};

inline ParseResult parse_program(const std::string& source,
                                 const std::string& file = "<input>") {
  Parser p(source, file);
  return p.run();
}

}  // namespace mpl
