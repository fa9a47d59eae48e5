"""Synthesizing typechecker for the four sorts.

Levels of types, codomains of substitutions, and types of terms are all
synthesized; side conditions are decided up to conversion by evaluating
both candidates and comparing readbacks.  Typechecking and conversion are
therefore mutually recursive through the evaluator.

All checks are pure and deterministic.  Preconditions follow the sort
structure: ``infer_ty``/``synth_sub``/``synth_tm`` assume their context is
well-formed (``check_ctx`` establishes this for telescopes built from
unchecked input).
"""

from __future__ import annotations

from .syntax import (
    App, Bool, Code, Comp, Ctx, EMPTY, El, Eps, Ext, FalseLit, Fst, IdSub,
    IdTy, If, J, Lam, Level, Pair, Pi, Refl, Sigma, Snd, SubExpr, Tt, Top,
    TmExpr, TmSub, TrueLit, TyExpr, TySub, Univ, Var0, Wk,
)
from .caches import memoized
from .semantics import eval_ty, generic_env, readback_ty


class TypeCheckError(Exception):
    """Ill-typed input; carries the offending subtree and, for conversion
    failures, the two non-convertible classifiers."""

    def __init__(self, message: str, expr: object = None,
                 expected: object = None, actual: object = None) -> None:
        super().__init__(message)
        self.message = message
        self.expr = expr
        self.expected = expected
        self.actual = actual

    def __str__(self) -> str:
        parts = [self.message]
        if self.expr is not None:
            parts.append(f"at: {self.expr!r}")
        if self.expected is not None:
            parts.append(f"expected: {self.expected!r}")
        if self.actual is not None:
            parts.append(f"actual: {self.actual!r}")
        return "\n  ".join(parts)


class IllFormedEntry(TypeCheckError):
    def __init__(self, index: int, entry: TyExpr) -> None:
        super().__init__(f"context entry {index} is ill-formed", expr=entry)
        self.index = index


class ProjectionOfEmpty(TypeCheckError):
    def __init__(self) -> None:
        super().__init__("weakening projects out of the empty context")


class VarInEmptyContext(TypeCheckError):
    def __init__(self) -> None:
        super().__init__("variable used in the empty context")


# ---------------------------------------------------------------------------
# Conversion helpers (internal: inputs are already known to be well-typed)
# ---------------------------------------------------------------------------

@memoized
def normalize_ty_in(ctx: Ctx, ty: TyExpr) -> TyExpr:
    env, depth = generic_env(ctx)
    return readback_ty(depth, eval_ty(env, ty))


@memoized
def types_convertible(ctx: Ctx, a: TyExpr, b: TyExpr) -> bool:
    if a == b:
        return True
    env, depth = generic_env(ctx)
    return readback_ty(depth, eval_ty(env, a)) == readback_ty(depth, eval_ty(env, b))


@memoized
def ctxs_convertible(a: Ctx, b: Ctx) -> bool:
    if len(a) != len(b):
        return False
    prefix = EMPTY
    for ea, eb in zip(a.entries, b.entries):
        if not types_convertible(prefix, ea, eb):
            return False
        prefix = prefix.extend(ea)
    return True


def _require_conv(ctx: Ctx, expr: object, actual: TyExpr, expected: TyExpr) -> None:
    if not types_convertible(ctx, actual, expected):
        raise TypeCheckError(
            "type mismatch", expr=expr, expected=expected, actual=actual)


def _force_pi(ctx: Ctx, ty: TyExpr, expr: object) -> tuple[TyExpr, TyExpr]:
    nf = normalize_ty_in(ctx, ty)
    match nf:
        case Pi(dom, cod):
            return dom, cod
    raise TypeCheckError("expected a function type", expr=expr, actual=nf)


def _force_sigma(ctx: Ctx, ty: TyExpr, expr: object) -> tuple[TyExpr, TyExpr]:
    nf = normalize_ty_in(ctx, ty)
    match nf:
        case Sigma(dom, cod):
            return dom, cod
    raise TypeCheckError("expected a pair type", expr=expr, actual=nf)


def _force_id(ctx: Ctx, ty: TyExpr, expr: object) -> tuple[TyExpr, TmExpr, TmExpr]:
    nf = normalize_ty_in(ctx, ty)
    match nf:
        case IdTy(dom, lhs, rhs):
            return dom, lhs, rhs
    raise TypeCheckError("expected an equality type", expr=expr, actual=nf)


def _force_univ(ctx: Ctx, ty: TyExpr, expr: object) -> Level:
    nf = normalize_ty_in(ctx, ty)
    match nf:
        case Univ(level):
            return level
    raise TypeCheckError("expected a universe", expr=expr, actual=nf)


# ---------------------------------------------------------------------------
# The four checking operations
# ---------------------------------------------------------------------------

@memoized
def check_ctx(ctx: Ctx) -> Level:
    """Check every telescope entry in its prefix; return the context level."""
    level = 0
    prefix = EMPTY
    for index, entry in enumerate(ctx.entries):
        try:
            level = max(level, infer_ty(prefix, entry))
        except TypeCheckError as err:
            raise IllFormedEntry(index, entry) from err
        prefix = prefix.extend(entry)
    return level


@memoized
def infer_ty(ctx: Ctx, ty: TyExpr) -> Level:
    match ty:
        case TySub(t, sub):
            return infer_ty(synth_sub(ctx, sub), t)
        case Pi(dom, cod) | Sigma(dom, cod):
            i = infer_ty(ctx, dom)
            j = infer_ty(ctx.extend(dom), cod)
            return max(i, j)
        case Top() | Bool():
            return 0
        case Univ(level):
            if level < 0:
                raise TypeCheckError("negative universe level", expr=ty)
            return level + 1
        case El(code):
            return _force_univ(ctx, synth_tm(ctx, code), ty)
        case IdTy(t, lhs, rhs):
            level = infer_ty(ctx, t)
            _require_conv(ctx, lhs, synth_tm(ctx, lhs), t)
            _require_conv(ctx, rhs, synth_tm(ctx, rhs), t)
            return level
    raise TypeCheckError("not a type expression", expr=ty)


@memoized
def synth_sub(ctx: Ctx, sub: SubExpr) -> Ctx:
    match sub:
        case IdSub():
            return ctx
        case Comp(outer, inner):
            return synth_sub(synth_sub(ctx, inner), outer)
        case Eps():
            return EMPTY
        case Ext(s, ann, tm):
            cod = synth_sub(ctx, s)
            if ann is None:
                if not isinstance(s, IdSub):
                    raise TypeCheckError(
                        "extension without annotation only over the identity",
                        expr=sub)
                return cod.extend(synth_tm(ctx, tm))
            infer_ty(cod, ann)
            _require_conv(ctx, sub, synth_tm(ctx, tm), TySub(ann, s))
            return cod.extend(ann)
        case Wk():
            if len(ctx) == 0:
                raise ProjectionOfEmpty()
            return ctx.pop()
    raise TypeCheckError("not a substitution expression", expr=sub)


@memoized
def synth_tm(ctx: Ctx, tm: TmExpr) -> TyExpr:
    match tm:
        case TmSub(t, sub):
            return TySub(synth_tm(synth_sub(ctx, sub), t), sub)
        case Var0():
            if len(ctx) == 0:
                raise VarInEmptyContext()
            return TySub(ctx.last, Wk())
        case Lam(dom, body):
            infer_ty(ctx, dom)
            return Pi(dom, synth_tm(ctx.extend(dom), body))
        case App(fn):
            if len(ctx) == 0:
                raise TypeCheckError(
                    "un-application requires a nonempty context", expr=tm)
            tail = ctx.pop()
            dom, cod = _force_pi(tail, synth_tm(tail, fn), tm)
            _require_conv(tail, tm, ctx.last, dom)
            return cod
        case Pair(fst_ty, snd_ty, a, b):
            infer_ty(ctx, fst_ty)
            infer_ty(ctx.extend(fst_ty), snd_ty)
            _require_conv(ctx, a, synth_tm(ctx, a), fst_ty)
            b_expected = TySub(snd_ty, Ext(IdSub(), fst_ty, a))
            _require_conv(ctx, b, synth_tm(ctx, b), b_expected)
            return Sigma(fst_ty, snd_ty)
        case Fst(p):
            dom, _ = _force_sigma(ctx, synth_tm(ctx, p), tm)
            return dom
        case Snd(p):
            dom, cod = _force_sigma(ctx, synth_tm(ctx, p), tm)
            return TySub(cod, Ext(IdSub(), dom, Fst(p)))
        case Tt():
            return Top()
        case Code(t):
            return Univ(infer_ty(ctx, t))
        case TrueLit() | FalseLit():
            return Bool()
        case If(motive, on_true, on_false, scrut):
            _require_conv(ctx, scrut, synth_tm(ctx, scrut), Bool())
            infer_ty(ctx.extend(Bool()), motive)
            true_expected = TySub(motive, Ext(IdSub(), Bool(), TrueLit()))
            _require_conv(ctx, on_true, synth_tm(ctx, on_true), true_expected)
            false_expected = TySub(motive, Ext(IdSub(), Bool(), FalseLit()))
            _require_conv(ctx, on_false, synth_tm(ctx, on_false), false_expected)
            return TySub(motive, Ext(IdSub(), Bool(), scrut))
        case Refl(arg):
            arg_ty = synth_tm(ctx, arg)
            return IdTy(arg_ty, arg, arg)
        case J(motive, base, eq):
            dom, lhs, rhs = _force_id(ctx, synth_tm(ctx, eq), tm)
            eq_entry = IdTy(TySub(dom, Wk()), TmSub(lhs, Wk()), Var0())
            infer_ty(ctx.extend(dom).extend(eq_entry), motive)
            at_refl = Ext(Ext(IdSub(), dom, lhs), eq_entry, Refl(lhs))
            _require_conv(ctx, base, synth_tm(ctx, base), TySub(motive, at_refl))
            return TySub(motive, Ext(Ext(IdSub(), dom, rhs), eq_entry, eq))
    raise TypeCheckError("not a term expression", expr=tm)


def check_tm(ctx: Ctx, tm: TmExpr, ty: TyExpr) -> None:
    """Check ``tm`` against ``ty`` (which must itself be well-formed)."""
    _require_conv(ctx, tm, synth_tm(ctx, tm), ty)


def check_sub(ctx: Ctx, sub: SubExpr, cod: Ctx) -> None:
    actual = synth_sub(ctx, sub)
    if not ctxs_convertible(actual, cod):
        raise TypeCheckError(
            "substitution codomain mismatch", expr=sub, expected=cod,
            actual=actual)
