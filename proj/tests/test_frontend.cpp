#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mpl/parser.hpp"
#include "mpl/printer.hpp"

using namespace mpl;

static const char* kFib = R"(
int f(int n) {
    if (n < 2) {
        return n;
    }
    int a = f(n - 1);
    int b = f(n - 2);
    return a + b;
}

int main(int n) {
    int r = f(n);
    print(r);
    return r;
}
)";

TEST_CASE("fib parses into the expected shape") {
  auto r = parse_program(kFib, "fib.mpl");
  REQUIRE(r.ok());
  const Program& p = *r.program;
  REQUIRE(p.functions.size() == 2);
  const FunctionDecl& f = *p.functions[0];
  CHECK(f.name == "f");
  CHECK(f.params.size() == 1);
  CHECK(f.return_type == Type::Int);
  REQUIRE(f.body->stmts.size() == 4);
  CHECK(f.body->stmts[0]->kind == StmtKind::If);
  CHECK(f.body->stmts[1]->kind == StmtKind::VarDecl);
  CHECK(f.body->stmts[3]->kind == StmtKind::Return);
  CHECK(p.entry == 1);
}

TEST_CASE("empty file reports missing entry function") {
  auto r = parse_program("", "empty.mpl");
  CHECK(!r.ok());
  REQUIRE(!r.diags.empty());
  CHECK(r.diags[0].message.find("no entry function") != std::string::npos);
}

TEST_CASE("undefined callee is diagnosed with a span") {
  auto r = parse_program("int main() { return g(); }\n", "t.mpl");
  CHECK(!r.ok());
  bool found = false;
  for (auto& d : r.diags)
    if (d.message.find("'g'") != std::string::npos && d.span.line == 1)
      found = true;
  CHECK(found);
}

TEST_CASE("statement counting follows the desugaring rule") {
  auto r = parse_program(kFib, "fib.mpl");
  REQUIRE(r.ok());
  CHECK(count_statements(*r.program->functions[0]) == 4);

  auto r2 = parse_program(R"(
int main() {
    for (int i = 0; i < 3; i = i + 1) {
        int a = 1;
        int b = 2;
        int c = 3;
    }
    return 0;
}
)");
  REQUIRE(r2.ok());
  // 1 (init) + 1 (while) + 3 (body) + 1 (return)
  CHECK(count_statements(*r2.program->functions[0]) == 6);

  auto r3 = parse_program("int main() { return 0; }");
  REQUIRE(r3.ok());
  CHECK(count_statements(*r3.program->functions[0]) == 1);
}

TEST_CASE("monotone induction flag") {
  auto r = parse_program(R"(
int main(int n) {
    int s = 0;
    int c = 2;
    for (int i = 0; i < n; i = i + 1) { s = s + i; }
    for (int j = n; j > 0; j = j - c) { s = s + j; }
    for (int k = 0; k < n; k = k * 2) { s = s + k; }
    for (int m = 0; m < n; m = m + 1) { m = 0; }
    return s;
}
)");
  REQUIRE(r.ok());
  auto& b = *r.program->functions[0]->body;
  CHECK(b.stmts[2]->monotone);
  CHECK(b.stmts[2]->step_dir == 1);
  CHECK(b.stmts[3]->monotone);
  CHECK(b.stmts[3]->step_dir == -1);
  CHECK(!b.stmts[4]->monotone);  // multiplicative step
  CHECK(!b.stmts[5]->monotone);  // induction variable assigned in body
}

TEST_CASE("pretty-print parse is a fixpoint") {
  const char* sources[] = {
      kFib,
      R"(
float main(int n) {
    float s = 0.0;
    float[] a = array_float(n);
    foreach (x in a) { s = s + x; }
    for (int i = 0; i < n; i = i + 1) {
        a[i] = itof(i) * 2.5;
        if (a[i] > 10.0 && i % 2 == 0) { s = s - 1.0; } else { continue; }
    }
    while (s < 100.0) {
        s = s + sqrt(2.0) * (s + 1.0);
        if (s > 50.0) { break; }
    }
    return s;
}
)",
  };
  for (auto* src : sources) {
    auto r1 = parse_program(src);
    REQUIRE(r1.ok());
    std::string printed = print_program(*r1.program);
    auto r2 = parse_program(printed);
    REQUIRE(r2.ok());
    CHECK(print_program(*r2.program) == printed);
  }
}

TEST_CASE("type errors are caught") {
  auto r = parse_program("int main() { int x = true; return x; }");
  CHECK(!r.ok());
  auto r2 = parse_program("int main() { int x = 1; int x = 2; return x; }");
  CHECK(!r2.ok());
  auto r3 = parse_program("int main() { if (1) { } return 0; }");
  CHECK(!r3.ok());
}

TEST_CASE("main must take scalar parameters") {
  auto r = parse_program("int main(int[] a) { return 0; }");
  CHECK(!r.ok());
}
