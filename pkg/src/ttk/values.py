"""Semantic domain for normalization by evaluation.

Values are built from canonical forms plus neutral spines stuck on
variables.  Variables are absolute depth levels; readback converts them
back to de Bruijn spines.  Closures capture an immutable environment and a
raw body; applying one extends the environment.

Coded types collapse eagerly: evaluating ``El(Code A)`` yields the value of
``A`` and coding a neutral decoded type returns the underlying neutral, so
no value contains a code/decode roundtrip.
"""

from __future__ import annotations

from typing import Union

from .syntax import Level, TmExpr, TyExpr, node

Env = tuple["Val", ...]


class InternalStuck(Exception):
    """An eliminator met a non-canonical, non-neutral value.

    This is a kernel bug by construction: evaluation is only run on
    typechecked input."""


@node
class Closure:
    """Suspended term body awaiting one value per extra binder."""
    env: Env
    body: TmExpr


@node
class TyClosure:
    """Suspended type body; ``J`` motives take two values."""
    env: Env
    body: TyExpr


# -- neutral spines ---------------------------------------------------------

@node
class NVar:
    lvl: int
    ty: TyVal


@node
class NApp:
    fn: Neutral
    arg: Val


@node
class NFst:
    pair: Neutral


@node
class NSnd:
    pair: Neutral


@node
class NIf:
    motive: TyClosure
    on_true: Val
    on_false: Val
    scrut: Neutral


@node
class NJ:
    motive: TyClosure  # two binders: the endpoint and the equation
    base: Val
    scrut: Neutral
    eq_ty: VId


Neutral = Union[NVar, NApp, NFst, NSnd, NIf, NJ]


# -- type values ------------------------------------------------------------

@node
class VPi:
    dom: TyVal
    cod: TyClosure


@node
class VSigma:
    dom: TyVal
    cod: TyClosure


@node
class VTop:
    pass


@node
class VBool:
    pass


@node
class VU:
    level: Level


@node
class VId:
    ty: TyVal
    lhs: Val
    rhs: Val


@node
class VElNe:
    """Decoded neutral code; the level is the code's universe index."""
    ne: Neutral
    level: Level


TyVal = Union[VPi, VSigma, VTop, VBool, VU, VId, VElNe]


# -- term values ------------------------------------------------------------

@node
class VLam:
    closure: Closure


@node
class VPair:
    fst: Val
    snd: Val


@node
class VTt:
    pass


@node
class VTrue:
    pass


@node
class VFalse:
    pass


@node
class VRefl:
    arg: Val


@node
class VCode:
    ty: TyVal


@node
class VNe:
    ne: Neutral
    ty: TyVal


Val = Union[VLam, VPair, VTt, VTrue, VFalse, VRefl, VCode, VNe]


def fresh(lvl: int, ty: TyVal) -> VNe:
    """A fresh variable value at the given absolute depth."""
    return VNe(NVar(lvl, ty), ty)
