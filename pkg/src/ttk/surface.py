"""S-expression surface syntax: parser, canonical printer, directives.

The surface is nameless like the core calculus, so no elaboration happens
here; ``(v n)`` is sugar for the n-fold weakening spine, ``(arrow a b)``,
``(dollar f x)`` and ``(lift s a)`` expand to their derived forms at parse
time.  Printing is canonical: lowercase keywords, single spaces, full
parenthesization, and weakening spines re-sugared to ``(v n)``.

A directive file holds exactly one directive s-expression; ``;`` starts a
comment.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .syntax import (
    App, Bool, Code, Comp, Ctx, EMPTY, El, Eps, Ext, FalseLit, Fst, IdSub,
    IdTy, If, J, Lam, Pair, Pi, Refl, Sigma, Snd, SubExpr, Top, TrueLit, Tt,
    TmExpr, TmSub, TyExpr, TySub, Univ, Var0, Wk, apply1, arrow, lift, v,
    var_index,
)


class ParseError(Exception):
    def __init__(self, message: str, line: int, col: int) -> None:
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col


# ---------------------------------------------------------------------------
# Tokenizer and generic s-expressions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Token:
    text: str
    line: int
    col: int


@dataclass(frozen=True)
class SExpr:
    head: Optional[str]          # None for a bare atom
    items: tuple                  # sub-SExprs (for lists, excluding head)
    atom: Optional[str]           # set for bare atoms
    line: int
    col: int

    def expect_len(self, n: int, what: str) -> None:
        if len(self.items) != n:
            raise ParseError(
                f"{what} takes {n} argument(s), got {len(self.items)}",
                self.line, self.col)


def _tokenize(text: str) -> list[Token]:
    tokens = []
    line, col = 1, 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
        elif ch in " \t\r":
            col += 1
            i += 1
        elif ch == ";":
            while i < len(text) and text[i] != "\n":
                i += 1
        elif ch in "()":
            tokens.append(Token(ch, line, col))
            col += 1
            i += 1
        else:
            start = i
            start_col = col
            while i < len(text) and text[i] not in " \t\r\n();":
                i += 1
                col += 1
            tokens.append(Token(text[start:i], line, start_col))
    return tokens


def _read(tokens: list[Token], pos: int) -> tuple[SExpr, int]:
    if pos >= len(tokens):
        raise ParseError("unexpected end of input", 0, 0)
    tok = tokens[pos]
    if tok.text == ")":
        raise ParseError("unexpected ')'", tok.line, tok.col)
    if tok.text != "(":
        return SExpr(None, (), tok.text, tok.line, tok.col), pos + 1
    pos += 1
    if pos >= len(tokens):
        raise ParseError("unclosed '('", tok.line, tok.col)
    head_tok = tokens[pos]
    if head_tok.text in ("(", ")"):
        raise ParseError("expected a keyword after '('", head_tok.line, head_tok.col)
    pos += 1
    items = []
    while True:
        if pos >= len(tokens):
            raise ParseError("unclosed '('", tok.line, tok.col)
        if tokens[pos].text == ")":
            return SExpr(head_tok.text, tuple(items), None, tok.line, tok.col), pos + 1
        item, pos = _read(tokens, pos)
        items.append(item)


def read_sexpr(text: str) -> SExpr:
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty input", 1, 1)
    sexpr, pos = _read(tokens, 0)
    if pos != len(tokens):
        extra = tokens[pos]
        raise ParseError("trailing content after the directive",
                         extra.line, extra.col)
    return sexpr


# ---------------------------------------------------------------------------
# Entity parsing
# ---------------------------------------------------------------------------

SUB_HEADS = {"id", "comp", "eps", "ext", "p", "lift"}
TY_HEADS = {"tysub", "pi", "sigma", "top", "u", "el", "bool", "idt", "arrow"}
TM_HEADS = {"tmsub", "q", "lam", "app", "pair", "fst", "snd", "tt", "code",
            "true", "false", "if", "refl", "j", "v", "dollar"}


def _nat(s: SExpr, what: str) -> int:
    if s.atom is None or not s.atom.isdigit():
        raise ParseError(f"expected a decimal natural for {what}",
                         s.line, s.col)
    return int(s.atom)


def parse_ctx(s: SExpr) -> Ctx:
    if s.head != "ctx":
        raise ParseError("expected a context (ctx ...)", s.line, s.col)
    ctx = EMPTY
    for item in s.items:
        ctx = ctx.extend(parse_ty(item))
    return ctx


def parse_sub(s: SExpr) -> SubExpr:
    if s.head is None:
        raise ParseError("expected a substitution", s.line, s.col)
    match s.head:
        case "id":
            s.expect_len(0, "id")
            return IdSub()
        case "comp":
            s.expect_len(2, "comp")
            return Comp(parse_sub(s.items[0]), parse_sub(s.items[1]))
        case "eps":
            s.expect_len(0, "eps")
            return Eps()
        case "ext":
            if len(s.items) == 2:
                return Ext(parse_sub(s.items[0]), None, parse_tm(s.items[1]))
            s.expect_len(3, "ext")
            return Ext(parse_sub(s.items[0]), parse_ty(s.items[1]),
                       parse_tm(s.items[2]))
        case "p":
            s.expect_len(0, "p")
            return Wk()
        case "lift":
            s.expect_len(2, "lift")
            return lift(parse_sub(s.items[0]), parse_ty(s.items[1]))
    raise ParseError(f"unknown substitution keyword '{s.head}'", s.line, s.col)


def parse_ty(s: SExpr) -> TyExpr:
    if s.head is None:
        raise ParseError("expected a type", s.line, s.col)
    match s.head:
        case "tysub":
            s.expect_len(2, "tysub")
            return TySub(parse_ty(s.items[0]), parse_sub(s.items[1]))
        case "pi":
            s.expect_len(2, "pi")
            return Pi(parse_ty(s.items[0]), parse_ty(s.items[1]))
        case "sigma":
            s.expect_len(2, "sigma")
            return Sigma(parse_ty(s.items[0]), parse_ty(s.items[1]))
        case "top":
            s.expect_len(0, "top")
            return Top()
        case "u":
            s.expect_len(1, "u")
            return Univ(_nat(s.items[0], "a universe level"))
        case "el":
            s.expect_len(1, "el")
            return El(parse_tm(s.items[0]))
        case "bool":
            s.expect_len(0, "bool")
            return Bool()
        case "idt":
            s.expect_len(3, "idt")
            return IdTy(parse_ty(s.items[0]), parse_tm(s.items[1]),
                        parse_tm(s.items[2]))
        case "arrow":
            s.expect_len(2, "arrow")
            return arrow(parse_ty(s.items[0]), parse_ty(s.items[1]))
    raise ParseError(f"unknown type keyword '{s.head}'", s.line, s.col)


def parse_tm(s: SExpr) -> TmExpr:
    if s.head is None:
        raise ParseError("expected a term", s.line, s.col)
    match s.head:
        case "tmsub":
            s.expect_len(2, "tmsub")
            return TmSub(parse_tm(s.items[0]), parse_sub(s.items[1]))
        case "q":
            s.expect_len(0, "q")
            return Var0()
        case "lam":
            s.expect_len(2, "lam")
            return Lam(parse_ty(s.items[0]), parse_tm(s.items[1]))
        case "app":
            s.expect_len(1, "app")
            return App(parse_tm(s.items[0]))
        case "pair":
            s.expect_len(4, "pair")
            return Pair(parse_ty(s.items[0]), parse_ty(s.items[1]),
                        parse_tm(s.items[2]), parse_tm(s.items[3]))
        case "fst":
            s.expect_len(1, "fst")
            return Fst(parse_tm(s.items[0]))
        case "snd":
            s.expect_len(1, "snd")
            return Snd(parse_tm(s.items[0]))
        case "tt":
            s.expect_len(0, "tt")
            return Tt()
        case "code":
            s.expect_len(1, "code")
            return Code(parse_ty(s.items[0]))
        case "true":
            s.expect_len(0, "true")
            return TrueLit()
        case "false":
            s.expect_len(0, "false")
            return FalseLit()
        case "if":
            s.expect_len(4, "if")
            return If(parse_ty(s.items[0]), parse_tm(s.items[1]),
                      parse_tm(s.items[2]), parse_tm(s.items[3]))
        case "refl":
            s.expect_len(1, "refl")
            return Refl(parse_tm(s.items[0]))
        case "j":
            s.expect_len(3, "j")
            return J(parse_ty(s.items[0]), parse_tm(s.items[1]),
                     parse_tm(s.items[2]))
        case "v":
            s.expect_len(1, "v")
            return v(_nat(s.items[0], "a de Bruijn index"))
        case "dollar":
            s.expect_len(2, "dollar")
            return apply1(parse_tm(s.items[0]), parse_tm(s.items[1]))
    raise ParseError(f"unknown term keyword '{s.head}'", s.line, s.col)


def parse_entity(s: SExpr):
    """Parse a context, type, term, or substitution; returns (sort, value)."""
    if s.head == "ctx":
        return "ctx", parse_ctx(s)
    if s.head in SUB_HEADS:
        return "sub", parse_sub(s)
    if s.head in TY_HEADS:
        return "ty", parse_ty(s)
    if s.head in TM_HEADS:
        return "tm", parse_tm(s)
    raise ParseError(f"unknown keyword '{s.head}'", s.line, s.col)


# ---------------------------------------------------------------------------
# Canonical printing
# ---------------------------------------------------------------------------

def print_sub(sub: SubExpr) -> str:
    match sub:
        case IdSub():
            return "(id)"
        case Comp(outer, inner):
            return f"(comp {print_sub(outer)} {print_sub(inner)})"
        case Eps():
            return "(eps)"
        case Ext(s, None, tm):
            return f"(ext {print_sub(s)} {print_tm(tm)})"
        case Ext(s, ann, tm):
            return f"(ext {print_sub(s)} {print_ty(ann)} {print_tm(tm)})"
        case Wk():
            return "(p)"
    raise ValueError(f"not a substitution: {sub!r}")


def print_ty(ty: TyExpr) -> str:
    match ty:
        case TySub(t, sub):
            return f"(tysub {print_ty(t)} {print_sub(sub)})"
        case Pi(dom, cod):
            return f"(pi {print_ty(dom)} {print_ty(cod)})"
        case Sigma(dom, cod):
            return f"(sigma {print_ty(dom)} {print_ty(cod)})"
        case Top():
            return "(top)"
        case Univ(level):
            return f"(u {level})"
        case El(code):
            return f"(el {print_tm(code)})"
        case Bool():
            return "(bool)"
        case IdTy(t, lhs, rhs):
            return f"(idt {print_ty(t)} {print_tm(lhs)} {print_tm(rhs)})"
    raise ValueError(f"not a type: {ty!r}")


def print_tm(tm: TmExpr) -> str:
    index = var_index(tm)
    if index is not None and index > 0:
        return f"(v {index})"
    match tm:
        case TmSub(t, sub):
            return f"(tmsub {print_tm(t)} {print_sub(sub)})"
        case Var0():
            return "(q)"
        case Lam(dom, body):
            return f"(lam {print_ty(dom)} {print_tm(body)})"
        case App(fn):
            return f"(app {print_tm(fn)})"
        case Pair(fst_ty, snd_ty, a, b):
            return (f"(pair {print_ty(fst_ty)} {print_ty(snd_ty)} "
                    f"{print_tm(a)} {print_tm(b)})")
        case Fst(p):
            return f"(fst {print_tm(p)})"
        case Snd(p):
            return f"(snd {print_tm(p)})"
        case Tt():
            return "(tt)"
        case Code(t):
            return f"(code {print_ty(t)})"
        case TrueLit():
            return "(true)"
        case FalseLit():
            return "(false)"
        case If(motive, on_true, on_false, scrut):
            return (f"(if {print_ty(motive)} {print_tm(on_true)} "
                    f"{print_tm(on_false)} {print_tm(scrut)})")
        case Refl(arg):
            return f"(refl {print_tm(arg)})"
        case J(motive, base, eq):
            return f"(j {print_ty(motive)} {print_tm(base)} {print_tm(eq)})"
    raise ValueError(f"not a term: {tm!r}")


def print_ctx(ctx: Ctx) -> str:
    if not ctx.entries:
        return "(ctx)"
    return "(ctx " + " ".join(print_ty(t) for t in ctx.entries) + ")"


def print_entity(sort: str, entity) -> str:
    match sort:
        case "ctx":
            return print_ctx(entity)
        case "ty":
            return print_ty(entity)
        case "tm":
            return print_tm(entity)
        case "sub":
            return print_sub(entity)
    raise ValueError(f"unknown sort {sort!r}")


# ---------------------------------------------------------------------------
# Directives
# ---------------------------------------------------------------------------

DIRECTIVE_HEADS = ("check-tm", "check-ty", "nf", "conv-tm", "conv-ty",
                   "conv-sub", "termify", "param", "canon", "inject")


@dataclass(frozen=True)
class Directive:
    kind: str
    args: tuple


def parse_directive(text: str) -> Directive:
    s = read_sexpr(text)
    match s.head:
        case "check-tm":
            s.expect_len(2, "check-tm")
            return Directive("check-tm",
                             (parse_ctx(s.items[0]), parse_tm(s.items[1])))
        case "check-ty":
            s.expect_len(2, "check-ty")
            return Directive("check-ty",
                             (parse_ctx(s.items[0]), parse_ty(s.items[1])))
        case "nf":
            s.expect_len(2, "nf")
            return Directive("nf", (parse_ctx(s.items[0]), parse_tm(s.items[1])))
        case "conv-tm":
            s.expect_len(4, "conv-tm")
            return Directive("conv-tm", (
                parse_ctx(s.items[0]), parse_ty(s.items[1]),
                parse_tm(s.items[2]), parse_tm(s.items[3])))
        case "conv-ty":
            s.expect_len(3, "conv-ty")
            return Directive("conv-ty", (
                parse_ctx(s.items[0]), parse_ty(s.items[1]), parse_ty(s.items[2])))
        case "conv-sub":
            s.expect_len(4, "conv-sub")
            return Directive("conv-sub", (
                parse_ctx(s.items[0]), parse_ctx(s.items[1]),
                parse_sub(s.items[2]), parse_sub(s.items[3])))
        case "termify" | "param" | "inject":
            if len(s.items) == 1:
                return Directive(s.head, ("ctx", parse_ctx(s.items[0]), None))
            s.expect_len(2, s.head)
            ctx = parse_ctx(s.items[0])
            sort, entity = parse_entity(s.items[1])
            if sort == "ctx":
                raise ParseError("entity argument cannot be a context",
                                 s.items[1].line, s.items[1].col)
            return Directive(s.head, (sort, ctx, entity))
        case "canon":
            s.expect_len(1, "canon")
            return Directive("canon", (parse_tm(s.items[0]),))
    raise ParseError(f"unknown directive '{s.head}'", s.line, s.col)
