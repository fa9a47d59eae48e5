"""Seeded, type-directed generation of well-typed entities.

Generation picks a goal classifier first and then a constructor that fits,
so every emitted context, type, substitution, and term typechecks by
construction (and is re-checked by the kernel in ``gen_instance``).
Eliminators are reachable through wrapper moves that keep the goal type:
a beta redex around the goal, a boolean branch on both sides, projections
from an ad-hoc pair, and an identity elimination of ``Refl``.  These carry
extra weight so beta rules actually fire in downstream suites; the weights
are 5 canonical / 3 variable / 2 each for redex, branch, and identity
elimination / 1 each for projections and an identity substitution.

Identical configurations yield identical output: all randomness flows
through one ``random.Random`` seeded from the config.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass

from .syntax import (
    Bool, Code, Comp, Ctx, EMPTY, El, Eps, Ext, FalseLit, Fst, IdSub, IdTy,
    If, J, Lam, Pair, Pi, Refl, Sigma, Snd, SubExpr, Top, TrueLit, Tt,
    TmExpr, TmSub, TyExpr, TySub, Univ, Wk, apply1, v, walk_constructors, wk,
)
from .typecheck import (
    check_ctx, ctxs_convertible, infer_ty, normalize_ty_in, synth_sub,
    synth_tm, types_convertible,
)


class GenExhausted(Exception):
    """Fuel ran out before a well-typed entity was found."""


@dataclass(frozen=True)
class GenConfig:
    seed: int
    max_nodes: int = 12
    max_level: int = 2
    max_ctx_len: int = 4
    fuel: int = 600


def derive_seed(seed: int, *parts: object) -> int:
    """Stable 64-bit seed derivation for per-case generators."""
    h = hashlib.blake2b(digest_size=8)
    h.update(repr((seed,) + parts).encode())
    return int.from_bytes(h.digest(), "big")


class InstanceGen:
    def __init__(self, cfg: GenConfig) -> None:
        self.cfg = cfg
        self.rng = random.Random(cfg.seed)
        self.fuel = cfg.fuel
        self.budget = cfg.max_nodes
        self.coverage: set[str] = set()

    # -- bookkeeping --------------------------------------------------------

    def _spend(self, cost: int = 1) -> None:
        self.fuel -= 1
        self.budget -= cost
        if self.fuel <= 0:
            raise GenExhausted("generator fuel exhausted")

    def _reset_budget(self) -> None:
        self.budget = self.cfg.max_nodes

    def _pick(self, options: list[tuple[int, object]]):
        weights = [w for w, _ in options]
        return self.rng.choices(options, weights=weights, k=1)[0][1]

    def _record(self, entity) -> None:
        walk_constructors(entity, self.coverage)

    # -- contexts ------------------------------------------------------------

    def ctx(self, max_len: int | None = None) -> Ctx:
        limit = self.cfg.max_ctx_len if max_len is None else max_len
        length = self.rng.randint(0, min(limit, self.cfg.max_nodes))
        out = EMPTY
        for _ in range(length):
            self.budget = max(self.budget, 4)
            out = out.extend(self.ty(out))
        self._record(out)
        return out

    # -- types ---------------------------------------------------------------

    def ty(self, ctx: Ctx, cap: int | None = None) -> TyExpr:
        """A type over ``ctx`` of level at most ``cap``."""
        cap = self.cfg.max_level if cap is None else cap
        self._spend()
        opts: list[tuple[int, str]] = [(3, "bool"), (1, "top")]
        if cap >= 1:
            opts.append((2, "univ"))
        if self.budget > 2:
            opts += [(3, "pi"), (2, "sigma"), (2, "id"), (1, "el"), (1, "tysub")]
        match self._pick(opts):
            case "bool":
                return Bool()
            case "top":
                return Top()
            case "univ":
                return Univ(self.rng.randint(0, cap - 1))
            case "pi":
                dom = self.ty(ctx, cap)
                return Pi(dom, self.ty(ctx.extend(dom), cap))
            case "sigma":
                dom = self.ty(ctx, cap)
                return Sigma(dom, self.ty(ctx.extend(dom), cap))
            case "id":
                dom = self.ty(ctx, cap)
                lhs = self.tm(ctx, dom)
                return IdTy(dom, lhs, self.tm(ctx, dom))
            case "el":
                level = self.rng.randint(0, max(cap, 1) - 1) if cap >= 1 else 0
                return El(self.tm(ctx, Univ(level)))
            case "tysub":
                inner = self.ctx(max_len=1)
                target = self.ty(inner, cap)
                return TySub(target, self.sub(ctx, inner))
        raise AssertionError

    def ty_at_level(self, ctx: Ctx, level: int) -> TyExpr:
        """A type over ``ctx`` of exactly the given level."""
        self._spend()
        if level == 0:
            base: TyExpr = self._pick([(3, Bool()), (1, Top())])
        else:
            base = Univ(level - 1)
        if self.budget > 2 and self.rng.random() < 0.4:
            match self.rng.randint(0, 2):
                case 0:
                    dom = self.ty(ctx, level)
                    return Pi(dom, self.ty_at_level(ctx.extend(dom), level))
                case 1:
                    dom = self.ty(ctx, level)
                    return Sigma(dom, self.ty_at_level(ctx.extend(dom), level))
                case 2:
                    lhs = self.tm(ctx, base)
                    return IdTy(base, lhs, self.tm(ctx, base))
        return base

    # -- terms ---------------------------------------------------------------

    def tm(self, ctx: Ctx, goal: TyExpr) -> TmExpr:
        self._spend()
        nf = normalize_ty_in(ctx, goal)
        opts: list[tuple[int, str]] = []
        variables = self._var_candidates(ctx, nf)
        if variables:
            opts.append((3, "var"))
        canonical = self._canonical_kind(nf)
        if canonical is not None:
            opts.append((5, "canonical"))
        if self.budget > 3:
            opts += [(2, "beta"), (2, "ite"), (1, "fst"), (1, "snd"),
                     (2, "jelim"), (1, "sub_id")]
        if not opts:
            raise GenExhausted(f"no way to inhabit {nf!r}")
        match self._pick(opts):
            case "var":
                return v(self.rng.choice(variables))
            case "canonical":
                return self._canonical(ctx, nf)
            case "beta":
                aux = self._small_ty()
                body = self.tm(ctx.extend(aux), TySub(goal, Wk()))
                return apply1(Lam(aux, body), self.tm(ctx, aux))
            case "ite":
                motive = TySub(goal, Wk())
                return If(motive, self.tm(ctx, goal), self.tm(ctx, goal),
                          self.tm(ctx, Bool()))
            case "fst":
                snd_ty = TySub(Top(), Wk())
                pair = Pair(goal, snd_ty, self.tm(ctx, goal), Tt())
                return Fst(pair)
            case "snd":
                aux = self._small_ty()
                pair = Pair(aux, TySub(goal, Wk()), self.tm(ctx, aux),
                            self.tm(ctx, goal))
                return Snd(pair)
            case "jelim":
                aux = self._small_ty()
                x = self.tm(ctx, aux)
                motive = TySub(goal, Comp(Wk(), Wk()))
                return J(motive, self.tm(ctx, goal), Refl(x))
            case "sub_id":
                return TmSub(self.tm(ctx, goal), IdSub())
        raise AssertionError

    def _small_ty(self) -> TyExpr:
        return self._pick([(3, Bool()), (1, Top())])

    def _var_candidates(self, ctx: Ctx, goal_nf: TyExpr) -> list[int]:
        found = []
        for k in range(len(ctx)):
            var_ty = TySub(ctx.entries[-1 - k], wk(k + 1))
            if types_convertible(ctx, var_ty, goal_nf):
                found.append(k)
        return found

    def _canonical_kind(self, nf: TyExpr) -> str | None:
        match nf:
            case Pi(_, _):
                return "lam"
            case Sigma(_, _):
                return "pair"
            case Top():
                return "tt"
            case Bool():
                return "lit"
            case Univ(_):
                return "code"
            case IdTy(_, lhs, rhs):
                return "refl" if lhs == rhs else None
            case El(_):
                return None
        return None

    def _canonical(self, ctx: Ctx, nf: TyExpr) -> TmExpr:
        match nf:
            case Pi(dom, cod):
                return Lam(dom, self.tm(ctx.extend(dom), cod))
            case Sigma(dom, cod):
                a = self.tm(ctx, dom)
                b = self.tm(ctx, TySub(cod, Ext(IdSub(), dom, a)))
                return Pair(dom, cod, a, b)
            case Top():
                return Tt()
            case Bool():
                return self._pick([(1, TrueLit()), (1, FalseLit())])
            case Univ(level):
                return Code(self.ty_at_level(ctx, level))
            case IdTy(_, lhs, _):
                return Refl(lhs)
        raise AssertionError(f"no canonical form at {nf!r}")

    # -- substitutions -------------------------------------------------------

    def sub(self, ctx: Ctx, cod: Ctx) -> SubExpr:
        self._spend()
        opts: list[tuple[int, str]] = []
        if len(cod) == 0:
            opts.append((4, "eps"))
        if ctxs_convertible(ctx, cod):
            opts.append((3, "id"))
        if len(ctx) > 0 and ctxs_convertible(ctx.pop(), cod):
            opts.append((3, "wk"))
        if len(cod) > 0:
            opts.append((4, "ext"))
        if self.budget > 3:
            opts.append((1, "comp"))
        if not opts:
            raise GenExhausted(f"no substitution into {cod!r}")
        match self._pick(opts):
            case "eps":
                return Eps()
            case "id":
                return IdSub()
            case "wk":
                return Wk()
            case "ext":
                head = self.sub(ctx, cod.pop())
                tm = self.tm(ctx, TySub(cod.last, head))
                return Ext(head, cod.last, tm)
            case "comp":
                mid = self._pick([(2, EMPTY), (2, ctx)])
                inner = self.sub(ctx, mid)
                outer = self.sub(mid, cod)
                return Comp(outer, inner)
        raise AssertionError

    # -- public draws --------------------------------------------------------

    def draw_ctx(self) -> Ctx:
        self._reset_budget()
        out = self.ctx()
        return out

    def draw_ty(self, ctx: Ctx) -> TyExpr:
        self._reset_budget()
        out = self.ty(ctx)
        self._record(out)
        return out

    def draw_ty_at_level(self, ctx: Ctx, level: int) -> TyExpr:
        self._reset_budget()
        out = self.ty_at_level(ctx, level)
        self._record(out)
        return out

    def draw_tm(self, ctx: Ctx, goal: TyExpr) -> TmExpr:
        self._reset_budget()
        out = self.tm(ctx, goal)
        self._record(out)
        return out

    def draw_sub(self, ctx: Ctx, cod: Ctx) -> SubExpr:
        self._reset_budget()
        out = self.sub(ctx, cod)
        self._record(out)
        return out


def gen_instance(cfg: GenConfig, shape: tuple):
    """Draw one entity of the requested shape and re-check it.

    Shapes: ``("ctx",)``, ``("ty", ctx)``, ``("tm", ctx, goal)``,
    ``("sub", ctx, cod)``, ``("eq", schema_name)``.
    """
    gen = InstanceGen(cfg)
    match shape:
        case ("ctx",):
            out = gen.draw_ctx()
            check_ctx(out)
            return out
        case ("ty", ctx):
            out = gen.draw_ty(ctx)
            infer_ty(ctx, out)
            return out
        case ("tm", ctx, goal):
            out = gen.draw_tm(ctx, goal)
            if not types_convertible(ctx, synth_tm(ctx, out), goal):
                raise AssertionError(f"generator emitted ill-typed term {out!r}")
            return out
        case ("sub", ctx, cod):
            out = gen.draw_sub(ctx, cod)
            if not ctxs_convertible(synth_sub(ctx, out), cod):
                raise AssertionError(f"generator emitted ill-typed substitution {out!r}")
            return out
        case ("eq", name):
            from .equations import build_instance
            return build_instance(name, gen)
    raise ValueError(f"unknown shape {shape!r}")
