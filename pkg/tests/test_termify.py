import pytest

from ttk.syntax import (
    App, Bool, Code, Comp, Ctx, EMPTY, El, Eps, Ext, FalseLit, IdSub,
    IdTy, If, J, Lam, Pair, Pi, Refl, Sigma, Snd, Top, TrueLit, Tt, TmSub,
    TySub, Univ, Var0, Wk, apply1,
)
from ttk.conversion import conv_tm
from ttk.equations import EqInstance
from ttk.generate import GenConfig, GenExhausted, InstanceGen, derive_seed
from ttk.termify import (
    TermifiedEntity, decoded, termify_entity, termify_sub, termify_ty,
    verify_termified_equation,
)
from ttk.typecheck import TypeCheckError


def test_empty_context_is_coded_unit():
    ent = termify_entity("ctx", EMPTY)
    assert ent.payload == Code(Top())
    assert ent.classifier == Univ(0)
    ent.verify()


def test_identity_substitution_clause():
    ent = termify_entity("sub", EMPTY, IdSub())
    assert ent.payload == Lam(El(Code(Top())), Var0())
    ent.verify()


def test_extended_context_clause():
    # hand-composed from the empty-context, boolean, and extension clauses
    ent = termify_entity("ctx", Ctx.of(Bool()))
    expected = Code(Sigma(
        El(Code(Top())),
        El(App(Lam(El(Code(Top())), Code(Bool()))))))
    assert ent.payload == expected
    assert ent.classifier == Univ(0)
    ent.verify()


def test_type_preservation_on_samples():
    made = {"ctx": 0, "ty": 0, "sub": 0, "tm": 0}
    seed = 0
    while min(made.values()) < 15 and seed < 300:
        gen = InstanceGen(GenConfig(seed=derive_seed(11, "tpres", seed), max_nodes=7))
        seed += 1
        try:
            ctx = gen.draw_ctx()
            ty = gen.draw_ty(ctx)
            tm = gen.draw_tm(ctx, ty)
            sub = gen.draw_sub(ctx, gen.draw_ctx())
        except GenExhausted:
            continue
        for sort, ent in (("ctx", None), ("ty", ty), ("tm", tm), ("sub", sub)):
            termify_entity(sort, ctx, ent).verify()
            made[sort] += 1
    assert min(made.values()) >= 15


def test_outputs_are_closed():
    ctx = Ctx.of(Bool(), TySub(Bool(), Wk()))
    ent = termify_entity("tm", ctx, Var0())
    ent.verify()  # typechecks in the empty context


def test_model_law_idl_on_weakening():
    ctx = Ctx.of(Bool())
    inst = EqInstance(ctx, "sub", EMPTY, Comp(IdSub(), Wk()), Wk())
    assert verify_termified_equation(inst)


def test_model_law_bool_sub_on_eps():
    inst = EqInstance(EMPTY, "ty", None, TySub(Bool(), Eps()), Bool())
    assert verify_termified_equation(inst)


def test_model_law_pi_eta_on_translated_function():
    fn = Lam(Bool(), Var0())
    inst = EqInstance(EMPTY, "tm", Pi(Bool(), TySub(Bool(), Wk())),
                      Lam(Bool(), App(fn)), fn)
    assert verify_termified_equation(inst)


def test_homomorphism_on_type_substitution():
    # translating A[sub] equals the substitution clause applied to the
    # translations of A and sub
    ctx = Ctx.of(Bool())
    sub = Ext(Eps(), Bool(), TrueLit())
    cod = Ctx.of(Bool())
    ty = IdTy(Bool(), Var0(), TrueLit())
    whole = termify_ty(ctx, TySub(ty, sub))
    assembled = Lam(decoded(ctx), TmSub(
        App(termify_ty(cod, ty)),
        Ext(Eps(), decoded(cod), App(TmSub(termify_sub(ctx, sub), Eps())))))
    from ttk.termify import ty_classifier
    assert conv_tm(EMPTY, ty_classifier(ctx, TySub(ty, sub)), whole, assembled)


def test_eliminator_clauses_verify():
    cases = [
        ("tm", EMPTY, If(Bool(), TrueLit(), FalseLit(), TrueLit())),
        ("tm", EMPTY, J(Bool(), FalseLit(), Refl(TrueLit()))),
        ("tm", EMPTY, Snd(Pair(Bool(), TySub(Top(), Wk()), TrueLit(), Tt()))),
        ("tm", Ctx.of(Pi(Bool(), Bool())), apply1(Var0(), TrueLit())),
        ("ty", Ctx.of(Univ(1)), El(Var0())),
        ("tm", Ctx.of(Univ(0)), Code(El(Var0()))),
    ]
    for sort, ctx, entity in cases:
        termify_entity(sort, ctx, entity).verify()


def test_verify_flags_translation_bugs():
    broken = TermifiedEntity("tm", TrueLit(), Top())
    with pytest.raises(TypeCheckError):
        broken.verify()
