"""Indexed unary parametricity as a syntactic translation.

Sorts:

    a context Γ       becomes a predicate: a type over Γ itself
    a type A over Γ   becomes a predicate over its elements, living in
                      Γ ▷ Γᴾ ▷ A[p]
    a substitution    becomes a term showing it preserves the predicates:
                      Tm (Γ ▷ Γᴾ) (Δᴾ[σ ∘ p])
    a term t : A      becomes a witness: Tm (Γ ▷ Γᴾ) (Aᴾ[id, t[p]])

Predicate choices at the base types, with their rationale:

  * the unit type and booleans carry the trivial (unit) predicate; both
    live at level 0, every inhabitant is related, and the boolean
    eliminator's witness is built by a boolean elimination whose motive
    re-runs the branch selection inside the predicate of the motive type.
  * a universe at level i sends a code to the space of predicate families
    over its decoding, ``El q ⇒ U i``, which again lands at level i+1.
  * an equality type ``Id A u v`` relates a proof e to the pair of
    witnesses for its endpoints: its predicate says that transporting the
    witness for u along e reaches the witness for v.  The transport is an
    identity elimination with a function-typed motive, so the witness for
    ``refl u`` is just ``refl`` of the witness for u, and the witness for
    an elimination ``J C w e`` is produced by two nested eliminations:
    first along the underlying equation (canonicalizing the endpoint
    witness to a transport), then along the predicate-level equation
    carried by eᴾ.

Every clause is validated after the fact by the kernel typechecker; a
failure raises ``TranslationIllTyped`` naming the constructor.
"""

from __future__ import annotations

from dataclasses import dataclass

from .syntax import (
    App, Bool, Code, Comp, Ctx, El, Eps, Ext, FalseLit, Fst, IdSub, IdTy,
    If, J, Lam, Pair, Pi, Refl, Sigma, Snd, SubExpr, Top, TrueLit, Tt,
    TmExpr, TmSub, TyExpr, TySub, Univ, Var0, Wk, apply1, lift, v, wk,
)
from .caches import memoized
from .typecheck import (
    TypeCheckError, check_ctx, infer_ty, normalize_ty_in, synth_sub,
    synth_tm, types_convertible,
)


class TranslationIllTyped(TypeCheckError):
    def __init__(self, constructor: str, cause: TypeCheckError) -> None:
        super().__init__(f"parametricity clause for {constructor} produced an "
                         f"ill-typed output: {cause}")
        self.constructor = constructor


def _pair_at(ctx: Ctx, sigma_ty: TyExpr, a: TmExpr, b: TmExpr) -> TmExpr:
    """Annotated pair inhabiting a type convertible to ``sigma_ty``."""
    nf = normalize_ty_in(ctx, sigma_ty)
    match nf:
        case Sigma(dom, cod):
            return Pair(dom, cod, a, b)
    raise TypeCheckError("expected a pair-shaped predicate", actual=nf)


def _eq_components(ctx: Ctx, eq: TmExpr) -> tuple[TyExpr, TmExpr, TmExpr]:
    nf = normalize_ty_in(ctx, synth_tm(ctx, eq))
    match nf:
        case IdTy(dom, lhs, rhs):
            return dom, lhs, rhs
    raise TypeCheckError("expected an equality type", expr=eq, actual=nf)


# ---------------------------------------------------------------------------
# Contexts
# ---------------------------------------------------------------------------

@memoized
def param_ctx(ctx: Ctx) -> TyExpr:
    """The predicate of a context, as a type over that context."""
    if len(ctx) == 0:
        return Top()
    base = ctx.pop()
    entry = ctx.last
    base_pred = param_ctx(base)
    entry_pred = param_ty(base, entry)
    # reshuffle (x : entry, pred-of-base) into entry_pred's scope
    reorder = Ext(
        Ext(Comp(Wk(), Wk()), base_pred, Var0()),
        TySub(entry, Wk()), TmSub(Var0(), Wk()))
    return Sigma(TySub(base_pred, Wk()), TySub(entry_pred, reorder))


# ---------------------------------------------------------------------------
# Types
# ---------------------------------------------------------------------------

@memoized
def param_ty(ctx: Ctx, ty: TyExpr) -> TyExpr:
    """The predicate of a type, over ``ctx ▷ ctxᴾ ▷ ty[p]``."""
    pred = param_ctx(ctx)
    match ty:
        case TySub(t, sub):
            cod = synth_sub(ctx, sub)
            inner = param_ty(cod, t)
            reindex = Ext(
                Ext(Comp(sub, Comp(Wk(), Wk())), param_ctx(cod),
                    TmSub(param_sub(ctx, sub), Wk())),
                TySub(t, Wk()), Var0())
            return TySub(inner, reindex)
        case Pi(dom, cod):
            extended = ctx.extend(dom)
            dom_pred = param_ty(ctx, dom)
            cod_pred = param_ty(extended, cod)
            sig = param_ctx(extended)
            arg = TySub(dom, Comp(Wk(), Wk()))
            arg_rel = TySub(dom_pred, Ext(
                Ext(wk(3), pred, v(2)), TySub(dom, Wk()), Var0()))
            into_syntax = Ext(wk(4), dom, v(1))
            packed = _pair_at(
                ctx.extend(pred).extend(TySub(Pi(dom, cod), Wk()))
                   .extend(arg).extend(arg_rel),
                TySub(sig, into_syntax), v(3), Var0())
            applied = apply1(v(2), v(1))
            result = Ext(Ext(into_syntax, sig, packed), TySub(cod, Wk()), applied)
            return Pi(arg, Pi(arg_rel, TySub(cod_pred, result)))
        case Sigma(dom, cod):
            extended = ctx.extend(dom)
            dom_pred = param_ty(ctx, dom)
            cod_pred = param_ty(extended, cod)
            sig = param_ctx(extended)
            fst_rel = TySub(dom_pred, Ext(
                Ext(Comp(Wk(), Wk()), pred, v(1)),
                TySub(dom, Wk()), Fst(Var0())))
            scope = ctx.extend(pred).extend(TySub(Sigma(dom, cod), Wk())) \
                       .extend(fst_rel)
            into_syntax = Ext(wk(3), dom, Fst(v(1)))
            packed = _pair_at(scope, TySub(sig, into_syntax), v(2), Var0())
            result = Ext(Ext(into_syntax, sig, packed),
                         TySub(cod, Wk()), Snd(v(1)))
            return Sigma(fst_rel, TySub(cod_pred, result))
        case Top():
            return Top()
        case Bool():
            return Top()
        case Univ(level):
            return Pi(El(Var0()), TySub(Univ(level), Wk()))
        case El(code):
            code_pred = param_tm(ctx, code)
            return El(apply1(TmSub(code_pred, Wk()), Var0()))
        case IdTy(dom, lhs, rhs):
            dom_pred = param_ty(ctx, dom)
            lhs_pred = param_tm(ctx, lhs)
            rhs_pred = param_tm(ctx, rhs)
            at_rhs = Ext(Wk(), TySub(dom, Wk()), TmSub(rhs, Comp(Wk(), Wk())))
            carried = _transport_along(
                ctx, dom, dom_pred, lhs, TmSub(lhs_pred, Wk()), Var0(), 1)
            return IdTy(TySub(dom_pred, at_rhs), carried, TmSub(rhs_pred, Wk()))
    raise TypeCheckError("not a type expression", expr=ty)


def _transport_along(ctx: Ctx, dom: TyExpr, dom_pred: TyExpr, point: TmExpr,
                     point_pred: TmExpr, eq: TmExpr, depth: int) -> TmExpr:
    """Carry a predicate witness for ``point`` along ``eq``.

    ``depth`` counts binders between ``ctx ▷ ctxᴾ`` and the scope where the
    result lives; ``eq`` and ``point_pred`` are given in that scope.  The
    carrier is an identity elimination whose motive is the function space
    from the predicate at ``point`` to the predicate at the moving
    endpoint.
    """
    pred_at = lambda n, pt: Ext(wk(n), TySub(dom, Wk()), pt)
    # motive scope adds the endpoint and the equation on top of the caller's
    motive = Pi(
        TySub(dom_pred, pred_at(depth + 2, TmSub(point, wk(depth + 3)))),
        TySub(TySub(dom_pred, pred_at(depth + 2, v(1))), Wk()))
    base = Lam(
        TySub(dom_pred, pred_at(depth, TmSub(point, wk(depth + 1)))),
        Var0())
    return apply1(J(motive, base, eq), point_pred)


# ---------------------------------------------------------------------------
# Substitutions
# ---------------------------------------------------------------------------

@memoized
def param_sub(ctx: Ctx, sub: SubExpr) -> TmExpr:
    """Preservation witness: ``Tm (ctx ▷ ctxᴾ) (codᴾ[sub ∘ p])``."""
    match sub:
        case IdSub():
            return Var0()
        case Comp(outer, inner):
            mid = synth_sub(ctx, inner)
            return TmSub(param_sub(mid, outer),
                         Ext(Comp(inner, Wk()), param_ctx(mid),
                             param_sub(ctx, inner)))
        case Eps():
            return Tt()
        case Ext(s, ann, tm):
            cod = synth_sub(ctx, s)
            entry = ann if ann is not None else synth_tm(ctx, tm)
            target = TySub(param_ctx(cod.extend(entry)), Comp(sub, Wk()))
            return _pair_at(ctx.extend(param_ctx(ctx)), target,
                            param_sub(ctx, s), param_tm(ctx, tm))
        case Wk():
            ctx.pop()
            return Fst(Var0())
    raise TypeCheckError("not a substitution expression", expr=sub)


# ---------------------------------------------------------------------------
# Terms
# ---------------------------------------------------------------------------

@memoized
def param_tm(ctx: Ctx, tm: TmExpr) -> TmExpr:
    """Witness that ``tm`` satisfies its type's predicate:
    ``Tm (ctx ▷ ctxᴾ) (tyᴾ[id, tm[p]])``."""
    pred = param_ctx(ctx)
    match tm:
        case TmSub(t, sub):
            cod = synth_sub(ctx, sub)
            return TmSub(param_tm(cod, t),
                         Ext(Comp(sub, Wk()), param_ctx(cod),
                             param_sub(ctx, sub)))
        case Var0():
            ctx.pop()
            return Snd(Var0())
        case Lam(dom, body):
            extended = ctx.extend(dom)
            dom_pred = param_ty(ctx, dom)
            sig = param_ctx(extended)
            into_syntax = Ext(Comp(Wk(), Comp(Wk(), Wk())), dom, v(1))
            packed = _pair_at(
                ctx.extend(pred).extend(TySub(dom, Wk())).extend(dom_pred),
                TySub(sig, into_syntax), v(2), Var0())
            reorg = Ext(into_syntax, sig, packed)
            return Lam(TySub(dom, Wk()),
                       Lam(dom_pred, TmSub(param_tm(extended, body), reorg)))
        case App(fn):
            base = ctx.pop()
            fn_pred = param_tm(base, fn)
            unpack = Ext(Comp(Wk(), Wk()), param_ctx(base), Fst(Var0()))
            return apply1(apply1(TmSub(fn_pred, unpack), v(1)), Snd(Var0()))
        case Pair(fst_ty, snd_ty, a, b):
            target = TySub(
                param_ty(ctx, Sigma(fst_ty, snd_ty)),
                Ext(IdSub(), TySub(Sigma(fst_ty, snd_ty), Wk()), TmSub(tm, Wk())))
            return _pair_at(ctx.extend(pred), target,
                            param_tm(ctx, a), param_tm(ctx, b))
        case Fst(p):
            return Fst(param_tm(ctx, p))
        case Snd(p):
            return Snd(param_tm(ctx, p))
        case Tt():
            return Tt()
        case Code(t):
            t_pred = param_ty(ctx, t)
            reorder = Ext(Ext(Comp(Wk(), Wk()), pred, v(1)),
                          TySub(t, Wk()), Var0())
            return Lam(TySub(El(Code(t)), Wk()), Code(TySub(t_pred, reorder)))
        case TrueLit() | FalseLit():
            return Tt()
        case If(motive, on_true, on_false, scrut):
            return _param_if(ctx, motive, on_true, on_false, scrut)
        case Refl(arg):
            return Refl(param_tm(ctx, arg))
        case J(motive, base, eq):
            return _param_j(ctx, tm, motive, base, eq)
    raise TypeCheckError("not a term expression", expr=tm)


def _param_if(ctx: Ctx, motive: TyExpr, on_true: TmExpr, on_false: TmExpr,
              scrut: TmExpr) -> TmExpr:
    extended = ctx.extend(Bool())
    motive_pred = param_ty(extended, motive)
    sig = param_ctx(extended)
    # the predicate-level motive re-runs the branch selection at its value slot
    into_syntax = Ext(Comp(Wk(), Wk()), Bool(), Var0())
    scope = ctx.extend(param_ctx(ctx)).extend(Bool())
    packed = _pair_at(scope, TySub(sig, into_syntax), v(1), Tt())
    selected = If(TySub(motive, lift(Comp(Wk(), Wk()), Bool())),
                  TmSub(on_true, Comp(Wk(), Wk())),
                  TmSub(on_false, Comp(Wk(), Wk())),
                  Var0())
    lifted_motive = TySub(motive_pred,
                          Ext(Ext(into_syntax, sig, packed),
                              TySub(motive, Wk()), selected))
    return If(lifted_motive,
              param_tm(ctx, on_true),
              param_tm(ctx, on_false),
              TmSub(scrut, Wk()))


def _param_j(ctx: Ctx, whole: TmExpr, motive: TyExpr, base: TmExpr,
             eq: TmExpr) -> TmExpr:
    dom, lhs, rhs = _eq_components(ctx, eq)
    pred = param_ctx(ctx)
    dom_pred = param_ty(ctx, dom)
    lhs_pred = param_tm(ctx, lhs)
    rhs_pred = param_tm(ctx, rhs)
    eq_pred = param_tm(ctx, eq)
    base_pred = param_tm(ctx, base)
    eq_entry = IdTy(TySub(dom, Wk()), TmSub(lhs, Wk()), Var0())
    with_eq = ctx.extend(dom).extend(eq_entry)
    motive_pred = param_ty(with_eq, motive)
    sig = param_ctx(with_eq)
    sig_dom = param_ctx(ctx.extend(dom))

    # Stage one: eliminate the underlying equation.  The motive's witness
    # slots are canonical in the bound endpoint: the endpoint witness is the
    # transported lhs witness and the equation witness is reflexivity.
    scope1 = ctx.extend(pred).extend(TySub(dom, Wk())) \
                .extend(IdTy(TySub(dom, Comp(Wk(), Wk())),
                             TmSub(lhs, Comp(Wk(), Wk())), Var0()))
    carried = _transport_along(ctx, dom, dom_pred, lhs,
                               TmSub(lhs_pred, Comp(Wk(), Wk())), Var0(), 2)
    syntax1 = Ext(Ext(wk(3), dom, v(1)), eq_entry, Var0())
    packed_dom1 = _pair_at(scope1, TySub(sig_dom, Ext(wk(3), dom, v(1))),
                           v(2), carried)
    packed1 = _pair_at(scope1, TySub(sig, syntax1), packed_dom1, Refl(carried))
    rebuilt = J(TySub(motive, Ext(Ext(wk(5), dom, v(1)), eq_entry, Var0())),
                TmSub(base, wk(3)), Var0())
    stage1_motive = TySub(motive_pred,
                          Ext(Ext(syntax1, sig, packed1),
                              TySub(motive, Wk()), rebuilt))
    stage1 = J(stage1_motive, base_pred, TmSub(eq, Wk()))

    # Stage two: eliminate the predicate-level equation carried by eqᴾ,
    # moving the endpoint witness from the transport to rhsᴾ.
    at_rhs = Ext(IdSub(), TySub(dom, Wk()), TmSub(rhs, Wk()))
    endpoint_rel = TySub(dom_pred, at_rhs)
    scope2 = ctx.extend(pred).extend(endpoint_rel).extend(
        IdTy(TySub(endpoint_rel, Wk()),
             _transport_along(ctx, dom, dom_pred, lhs,
                              TmSub(lhs_pred, Wk()), TmSub(eq, wk(2)), 1),
             Var0()))
    syntax2 = Ext(Ext(wk(3), dom, TmSub(rhs, wk(3))), eq_entry, TmSub(eq, wk(3)))
    packed_dom2 = _pair_at(scope2, TySub(sig_dom, Ext(wk(3), dom, TmSub(rhs, wk(3)))),
                           v(2), v(1))
    packed2 = _pair_at(scope2, TySub(sig, syntax2), packed_dom2, Var0())
    stage2_motive = TySub(motive_pred,
                          Ext(Ext(syntax2, sig, packed2),
                              TySub(motive, Wk()), TmSub(whole, wk(3))))
    return J(stage2_motive, stage1, eq_pred)


# ---------------------------------------------------------------------------
# Entity-level interface
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ParamEntity:
    sort: str          # "ctx" | "ty" | "sub" | "tm"
    scope: Ctx         # context the payload lives in
    payload: object    # TyExpr for ctx/ty, TmExpr for sub/tm
    classifier: object  # Level for ctx/ty, TyExpr for sub/tm

    def verify(self) -> None:
        if self.sort in ("ctx", "ty"):
            level = infer_ty(self.scope, self.payload)
            if level != self.classifier:
                raise TypeCheckError(
                    "predicate level mismatch", expr=self.payload,
                    expected=self.classifier, actual=level)
        else:
            infer_ty(self.scope, self.classifier)
            actual = synth_tm(self.scope, self.payload)
            if not types_convertible(self.scope, actual, self.classifier):
                raise TypeCheckError(
                    "witness does not check at its classifier",
                    expr=self.payload, expected=self.classifier, actual=actual)


def param_entity(sort: str, ctx: Ctx, entity=None) -> ParamEntity:
    """Translate one entity, package it with scope and classifier, and
    validate the result with the kernel typechecker."""
    try:
        match sort:
            case "ctx":
                out = ParamEntity("ctx", ctx, param_ctx(ctx), check_ctx(ctx))
            case "ty":
                scope = ctx.extend(param_ctx(ctx)).extend(TySub(entity, Wk()))
                out = ParamEntity("ty", scope, param_ty(ctx, entity),
                                  infer_ty(ctx, entity))
            case "sub":
                cod = synth_sub(ctx, entity)
                scope = ctx.extend(param_ctx(ctx))
                classifier = TySub(param_ctx(cod), Comp(entity, Wk()))
                out = ParamEntity("sub", scope, param_sub(ctx, entity), classifier)
            case "tm":
                ty = synth_tm(ctx, entity)
                scope = ctx.extend(param_ctx(ctx))
                classifier = TySub(
                    param_ty(ctx, ty),
                    Ext(IdSub(), TySub(ty, Wk()), TmSub(entity, Wk())))
                out = ParamEntity("tm", scope, param_tm(ctx, entity), classifier)
            case _:
                raise ValueError(f"unknown sort {sort!r}")
    except TypeCheckError as err:
        name = type(entity).__name__ if entity is not None else "ctx"
        raise TranslationIllTyped(name, err) from err
    try:
        out.verify()
    except TypeCheckError as err:
        name = type(entity).__name__ if entity is not None else "ctx"
        raise TranslationIllTyped(name, err) from err
    return out
