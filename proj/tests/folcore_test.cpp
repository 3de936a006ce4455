#include <catch2/catch_amalgamated.hpp>

#include "agape/folcore.hpp"

using namespace agape;
using namespace agape::folcore;

namespace {

Signature group_sig() {
  return declare_signature(
      "L0", {{"G", {}}},
      {{"1", SymbolKind::Constant, {}, "G"},
       {"o", SymbolKind::Function, {"G", "G"}, "G"},
       {"inv", SymbolKind::Function, {"G"}, "G"}});
}

Signature action_sig() {
  return declare_signature(
      "L1", {{"G", {}}, {"RO", {}}},
      {{"1", SymbolKind::Constant, {}, "G"},
       {"o", SymbolKind::Function, {"G", "G"}, "G"},
       {"inv", SymbolKind::Function, {"G"}, "G"},
       {"sub", SymbolKind::Relation, {"RO", "RO"}, ""},
       {"cap", SymbolKind::Function, {"RO", "RO"}, "RO"},
       {"suppe", SymbolKind::Function, {"G"}, "RO"},
       {"appl", SymbolKind::Function, {"G", "RO"}, "RO"}});
}

}  // namespace

TEST_CASE("declare_signature basics") {
  Signature l0 = group_sig();
  CHECK(l0.sorts().size() == 1);
  CHECK(l0.symbols().size() == 3);

  // degenerate: one sort, no symbols
  Signature empty = declare_signature("E", {{"A", {}}}, {});
  CHECK(empty.symbols().empty());

  // duplicate symbol name
  CHECK_THROWS_AS(declare_signature("D", {{"G", {}}, {"RO", {}}},
                                    {{"appl", SymbolKind::Function, {"G", "RO"}, "RO"},
                                     {"appl", SymbolKind::Function, {"G", "G"}, "G"}}),
                  SignatureError);

  // dangling sort reference
  CHECK_THROWS_AS(
      declare_signature("D2", {{"G", {}}}, {{"suppe", SymbolKind::Function, {"G"}, "RO"}}),
      SignatureError);

  Signature l1 = action_sig();
  CHECK(l1.extends(l0));
  CHECK_FALSE(l0.extends(l1));
}

TEST_CASE("hash consing identity") {
  Store st;
  TermId u = st.var("u", "RO");
  TermId v = st.var("v", "RO");
  FormulaId e = st.eq(u, v);
  FormulaId a1 = st.conj({e, e});
  FormulaId a2 = st.conj({st.eq(st.var("u", "RO"), st.var("v", "RO")), e});
  CHECK(a1 == a2);
  CHECK(st.eq(u, v) == e);
  CHECK(st.eq(v, u) != e);  // structural, not canonicalized
}

TEST_CASE("build-time and check-time sort errors") {
  Store st;
  Signature l1 = action_sig();
  TermId g = st.var("g", "G");
  TermId u = st.var("u", "RO");
  // equality between a G-sorted and an RO-sorted term
  FormulaId bad = st.eq(g, u);
  CHECK_THROWS_AS(sort_check(st, l1, bad), SortError);
  // arity violation
  FormulaId badar = st.atom("sub", {u});
  CHECK_THROWS_AS(sort_check(st, l1, badar), SortError);
  // symbol not in signature: suppe under L0
  Signature l0 = group_sig();
  FormulaId f = st.eq(st.fn("suppe", {g}), st.fn("suppe", {g}));
  CHECK_THROWS_AS(sort_check(st, l0, f), SortError);
  CHECK_NOTHROW(sort_check(st, l1, f));
}

TEST_CASE("sentence over L1: forall g exists u suppe(g)=u") {
  Store st;
  Signature l1 = action_sig();
  FormulaId body = st.eq(st.fn("suppe", {st.var("g", "G")}), st.var("u", "RO"));
  FormulaId s = st.forall({st.bind("g", "G")}, st.exists({st.bind("u", "RO")}, body));
  auto fv = sort_check(st, l1, s);
  CHECK(fv.empty());
  auto fv_body = sort_check(st, l1, body);
  REQUIRE(fv_body.size() == 2);
  CHECK(fv_body[0] == TypedVar{"g", "G"});
  CHECK(fv_body[1] == TypedVar{"u", "RO"});
}

TEST_CASE("substitution: identity, capture avoidance, free-variable recount") {
  Store st;
  Signature l1 = action_sig();

  // identity map returns the same handle
  FormulaId f = st.atom("sub", {st.var("u", "RO"), st.var("v", "RO")});
  CHECK(substitute(st, f, std::map<NameId, TermId>{}) == f);

  // substitute u -> v in (exists v) sub(u, v): bound v must be renamed
  FormulaId g = st.exists({st.bind("v", "RO")}, f);
  FormulaId h = sorted_substitute(st, l1, g, {{"u", st.var("v", "RO")}});
  const FormulaNode& hn = st.node(h);
  REQUIRE(hn.kind == FKind::Exists);
  CHECK(st.name(hn.binds[0].var) != "v");
  auto fv = sort_check(st, l1, h);
  REQUIRE(fv.size() == 1);
  CHECK(fv[0].name == "v");

  // substitute into cc-style atom: u -> suppe(g) leaves {g, v}
  FormulaId cc = st.atom("sub", {st.var("u", "RO"), st.var("v", "RO")});
  FormulaId cc2 = sorted_substitute(st, l1, cc, {{"u", st.fn("suppe", {st.var("g", "G")})}});
  auto fv2 = sort_check(st, l1, cc2);
  REQUIRE(fv2.size() == 2);
  CHECK(fv2[0] == TypedVar{"g", "G"});
  CHECK(fv2[1] == TypedVar{"v", "RO"});

  // sort mismatch rejected
  CHECK_THROWS_AS(sorted_substitute(st, l1, cc, {{"u", st.var("g", "G")}}), SortError);
}

TEST_CASE("definition expansion") {
  Store st;
  Signature l1 = action_sig();
  DefTable t;

  // cc(u,v) := sub(u,v)  (stand-in body for expansion mechanics)
  NamedDef cc{"cc",
              {st.bind("u", "RO"), st.bind("v", "RO")},
              st.atom("sub", {st.var("u", "RO"), st.var("v", "RO")}),
              {}};
  t.add(st, cc);
  // ucc(a,b) := forall w [cc(w,a) -> cc(w,b)]
  FormulaId ucc_body = st.forall(
      {st.bind("w", "RO")},
      st.imp(st.call("cc", {st.var("w", "RO"), st.var("a", "RO")}),
             st.call("cc", {st.var("w", "RO"), st.var("b", "RO")})));
  t.add(st, NamedDef{"ucc", {st.bind("a", "RO"), st.bind("b", "RO")}, ucc_body, {}});

  FormulaId use = st.call("ucc", {st.var("x", "RO"), st.var("y", "RO")});
  FormulaId ex = expand_defs(st, use, t);
  SymbolScan scan = scan_symbols(st, ex);
  CHECK(scan.calls.empty());
  CHECK(scan.relations.count("sub"));
  CHECK_NOTHROW(sort_check(st, l1, ex));

  // no calls: same handle
  FormulaId plain = st.atom("sub", {st.var("x", "RO"), st.var("y", "RO")});
  CHECK(expand_defs(st, plain, t) == plain);

  // missing definition
  CHECK_THROWS_AS(expand_defs(st, st.call("nope", {}), t), DefError);

  // A calls B calls A: cycle
  Store st2;
  DefTable t2;
  t2.add(st2, NamedDef{"A", {st2.bind("x", "RO")}, st2.call("B", {st2.var("x", "RO")}), {}});
  t2.add(st2, NamedDef{"B", {st2.bind("x", "RO")}, st2.call("A", {st2.var("x", "RO")}), {}});
  CHECK_THROWS_AS(expand_defs(st2, st2.call("A", {st2.var("u", "RO")}), t2), DefError);
}

TEST_CASE("stats") {
  Store st;
  TermId u = st.var("u", "RO");
  TermId v = st.var("v", "RO");
  FormulaId e = st.eq(u, v);
  FormulaId a = st.conj({e, e});
  FormulaStats s = stats(st, a);
  CHECK(s.dag_nodes == 2);
  CHECK(s.tree_size == 3);
  CHECK(s.quantifier_depth == 0);
  CHECK(s.alternation_depth == 0);

  FormulaId q = st.forall({st.bind("x", "G")},
                          st.exists({st.bind("y", "G")},
                                    st.forall({st.bind("z", "G")},
                                              st.eq(st.var("x", "G"), st.var("y", "G")))));
  FormulaStats qs = stats(st, q);
  CHECK(qs.quantifier_depth == 3);
  CHECK(qs.alternation_depth == 3);

  FormulaId q2 = st.forall({st.bind("x", "G")},
                           st.forall({st.bind("y", "G")},
                                     st.eq(st.var("x", "G"), st.var("y", "G"))));
  CHECK(stats(st, q2).alternation_depth == 1);

  // tree_size >= dag_nodes, equality iff no sharing
  CHECK(stats(st, e).tree_size == stats(st, e).dag_nodes);
}

TEST_CASE("print/parse round trip") {
  Store st;
  Signature l1 = action_sig();
  FormulaId body = st.imp(
      st.atom("sub", {st.var("u", "RO"), st.fn("appl", {st.var("g", "G"), st.var("u", "RO")})}),
      st.eq(st.var("g", "G"), st.cst("1")));
  FormulaId f = st.forall({st.bind("g", "G")}, body);
  std::string text = print(st, f);
  FormulaId back = parse(text, st, l1);
  CHECK(back == f);

  // whitespace and comments are insignificant
  FormulaId c = parse("; comment\n(and (= u \n v) (rel sub u v))", st, l1);
  CHECK(c == st.conj({st.eq(st.var("u", "RO"), st.var("v", "RO")),
                      st.atom("sub", {st.var("u", "RO"), st.var("v", "RO")})}));

  // malformed binding: missing sort
  CHECK_THROWS_AS(parse("(forall ((x)) (= x x))", st, l1), ParseError);
  // unknown symbol
  CHECK_THROWS_AS(parse("(rel nosuch u)", st, l1), ParseError);
  // free variable with uninferrable sort
  CHECK_THROWS_AS(parse("(= x y)", st, l1), ParseError);
  // ... but inference through equality chains works
  FormulaId inf = parse("(and (= x y) (rel sub y z))", st, l1);
  auto fv = sort_check(st, l1, inf);
  REQUIRE(fv.size() == 3);
  CHECK(fv[0] == TypedVar{"x", "RO"});
}

TEST_CASE("definition files round trip with meta") {
  Store st;
  Signature l1 = action_sig();
  std::string src = R"(
(def contained ((g G) (u RO))
  (rel sub (fn suppe g) u)
  (meta "basic formulas" "the support of g lies inside u" plain))
(def fixed ((g G) (u RO))
  (= (fn appl g u) u))
)";
  DefTable t = read_defs(src, st, l1);
  CHECK(t.has("contained"));
  CHECK(t.get("contained").meta.paper_loc == "basic formulas");
  std::string out = write_defs(st, t);
  DefTable t2 = read_defs(out, st, l1);
  CHECK(t2.get("contained").body == t.get("contained").body);
  CHECK(t2.get("fixed").body == t.get("fixed").body);
}
