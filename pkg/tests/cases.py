"""Shared test data: one well-typed entity per constructor of the theory."""

from ttk.syntax import (
    App, Bool, Code, Comp, Ctx, EMPTY, El, Eps, Ext, FalseLit, Fst, IdSub,
    IdTy, If, J, Lam, Pair, Pi, Refl, Sigma, Snd, Top, TrueLit, Tt, TmSub,
    TySub, Univ, Var0, Wk,
)

_PAIR = Pair(Bool(), TySub(Top(), Wk()), TrueLit(), Tt())
_J_CTX = Ctx.of(Bool(), IdTy(TySub(Bool(), Wk()), TrueLit(), Var0()))

# (sort, context, entity); the two context formers appear as the empty and
# the extended telescope
CONSTRUCTOR_CASES = (
    ("ctx", EMPTY, None),
    ("ctx", Ctx.of(Bool()), None),
    ("sub", EMPTY, IdSub()),
    ("sub", Ctx.of(Bool()), Comp(Eps(), Wk())),
    ("sub", EMPTY, Eps()),
    ("sub", EMPTY, Ext(Eps(), Bool(), TrueLit())),
    ("sub", Ctx.of(Bool()), Wk()),
    ("ty", EMPTY, TySub(Bool(), IdSub())),
    ("ty", EMPTY, Pi(Bool(), Bool())),
    ("ty", EMPTY, Sigma(Bool(), Top())),
    ("ty", EMPTY, Top()),
    ("ty", EMPTY, Univ(1)),
    ("ty", Ctx.of(Univ(0)), El(Var0())),
    ("ty", EMPTY, Bool()),
    ("ty", EMPTY, IdTy(Bool(), TrueLit(), TrueLit())),
    ("tm", EMPTY, TmSub(Tt(), Eps())),
    ("tm", Ctx.of(Bool()), Var0()),
    ("tm", EMPTY, Lam(Bool(), Var0())),
    ("tm", Ctx.of(Bool()), App(Lam(Bool(), Var0()))),
    ("tm", EMPTY, _PAIR),
    ("tm", EMPTY, Fst(_PAIR)),
    ("tm", EMPTY, Snd(_PAIR)),
    ("tm", EMPTY, Tt()),
    ("tm", EMPTY, Code(Bool())),
    ("tm", EMPTY, TrueLit()),
    ("tm", EMPTY, FalseLit()),
    ("tm", Ctx.of(Bool()),
     If(TySub(Bool(), Wk()), TrueLit(), FalseLit(), Var0())),
    ("tm", EMPTY, Refl(TrueLit())),
    ("tm", _J_CTX, J(TySub(Bool(), Comp(Wk(), Wk())), FalseLit(), Var0())),
)
assert len(CONSTRUCTOR_CASES) == 29
