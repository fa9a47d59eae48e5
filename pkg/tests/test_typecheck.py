import pytest

from ttk.syntax import (
    Bool, Code, Comp, Ctx, EMPTY, El, Eps, Ext, FalseLit, Fst, IdSub, IdTy,
    If, J, Lam, Pair, Pi, Refl, Sigma, Snd, Top, TrueLit, Tt, TmSub, TySub,
    Univ, Var0, Wk, apply1, arrow, lift, v, wk,
)
from ttk.typecheck import (
    IllFormedEntry, ProjectionOfEmpty, TypeCheckError, VarInEmptyContext,
    check_ctx, infer_ty, synth_sub, synth_tm,
)
from ttk.conversion import conv_sub, conv_ty, normalize_ty


BOOL_CTX = Ctx.of(Bool())


def test_check_ctx_levels():
    assert check_ctx(EMPTY) == 0
    assert check_ctx(Ctx.of(Bool())) == 0
    # levels fold with max: the universe entry dominates
    assert check_ctx(Ctx.of(Univ(0), El(Var0()))) == 1


def test_check_ctx_rejects_bad_entry():
    with pytest.raises(IllFormedEntry) as info:
        check_ctx(Ctx.of(Bool(), El(Var0())))
    assert info.value.index == 1


def test_infer_ty_base_formers():
    assert infer_ty(EMPTY, Bool()) == 0
    assert infer_ty(EMPTY, Top()) == 0
    assert infer_ty(EMPTY, Univ(0)) == 1
    assert infer_ty(EMPTY, Pi(Univ(0), El(Var0()))) == 1
    assert infer_ty(EMPTY, Sigma(Univ(1), Bool())) == 2


def test_infer_ty_id_requires_matching_endpoints():
    assert infer_ty(EMPTY, IdTy(Bool(), TrueLit(), FalseLit())) == 0
    with pytest.raises(TypeCheckError):
        infer_ty(EMPTY, IdTy(Bool(), TrueLit(), Tt()))


def test_synth_sub_examples():
    assert synth_sub(EMPTY, IdSub()) == EMPTY
    assert synth_sub(BOOL_CTX, Wk()) == EMPTY
    assert synth_sub(EMPTY, Ext(Eps(), Bool(), TrueLit())) == Ctx.of(Bool())


def test_synth_sub_errors():
    with pytest.raises(ProjectionOfEmpty):
        synth_sub(EMPTY, Wk())
    with pytest.raises(TypeCheckError):
        synth_sub(EMPTY, Ext(Eps(), Bool(), Tt()))


def test_synth_tm_literals_and_var():
    assert synth_tm(EMPTY, TrueLit()) == Bool()
    assert synth_tm(BOOL_CTX, Var0()) == TySub(Bool(), Wk())
    with pytest.raises(VarInEmptyContext):
        synth_tm(EMPTY, Var0())


def test_synth_tm_polymorphic_identity():
    idfun = Lam(Univ(0), Lam(El(Var0()), Var0()))
    expected = Pi(Univ(0), Pi(El(v(0)), El(v(1))))
    assert conv_ty(EMPTY, synth_tm(EMPTY, idfun), expected)


def test_derived_forms():
    assert v(0) == Var0()
    assert v(1) == TmSub(Var0(), Wk())
    assert v(2) == TmSub(Var0(), Comp(Wk(), Wk()))
    assert wk(0) == IdSub()
    # conventional application through a beta redex synthesizes the codomain
    applied = apply1(Lam(Bool(), Var0()), TrueLit())
    assert conv_ty(EMPTY, synth_tm(EMPTY, applied), Bool())
    # lifting the identity is the identity
    assert conv_sub(BOOL_CTX, BOOL_CTX, lift(IdSub(), Bool()), IdSub())


def test_lift_composes_with_extension():
    # (sub^) ∘ (delta, t) is the extension of the composite
    theta = Ctx.of(Bool())
    lifted = lift(Eps(), Bool())  # Sub (Θ ▷ Bool[ε]) (• ▷ Bool)
    delta = Ext(Eps(), Bool(), TrueLit())  # Sub • Θ
    lhs = Comp(lifted, Ext(delta, TySub(Bool(), Eps()), FalseLit()))
    rhs = Ext(Comp(Eps(), delta), Bool(), FalseLit())
    assert conv_sub(EMPTY, Ctx.of(Bool()), lhs, rhs)


def test_arrow_is_weakened_pi():
    assert arrow(Bool(), Top()) == Pi(Bool(), TySub(Top(), Wk()))
    assert infer_ty(EMPTY, arrow(Univ(0), Bool())) == 1


def test_app_checks_domain():
    # app of a Bool-to-Bool function in a Top-extended context is rejected
    fn = Lam(Bool(), Var0())
    from ttk.syntax import App
    assert conv_ty(BOOL_CTX, synth_tm(BOOL_CTX, App(fn)), Bool())
    with pytest.raises(TypeCheckError):
        synth_tm(Ctx.of(Top()), App(fn))


def test_pair_and_projections():
    pair = Pair(Bool(), TySub(Top(), Wk()), TrueLit(), Tt())
    assert synth_tm(EMPTY, pair) == Sigma(Bool(), TySub(Top(), Wk()))
    assert conv_ty(EMPTY, synth_tm(EMPTY, Fst(pair)), Bool())
    assert conv_ty(EMPTY, synth_tm(EMPTY, Snd(pair)), Top())


def test_if_motive_instantiation():
    # the motive is a constant family here; both branches check at Bool
    branchy = If(Bool(), TrueLit(), FalseLit(), TrueLit())
    assert conv_ty(EMPTY, synth_tm(EMPTY, branchy), Bool())
    with pytest.raises(TypeCheckError):
        synth_tm(EMPTY, If(Bool(), TrueLit(), Tt(), TrueLit()))


def test_j_rule():
    # eliminate refl true over a constant motive
    prf = J(Bool(), FalseLit(), Refl(TrueLit()))
    assert conv_ty(EMPTY, synth_tm(EMPTY, prf), Bool())


def test_code_el_roundtrip_types():
    assert synth_tm(EMPTY, Code(Bool())) == Univ(0)
    assert infer_ty(EMPTY, El(Code(Bool()))) == 0
    assert conv_ty(EMPTY, El(Code(Bool())), Bool())


def test_ext_annotation_inference_only_over_identity():
    # (id, t) recovers the annotation from t
    assert synth_sub(BOOL_CTX, Ext(IdSub(), None, Var0())) == \
        Ctx.of(Bool(), TySub(Bool(), Wk()))
    with pytest.raises(TypeCheckError):
        synth_sub(BOOL_CTX, Ext(Wk(), None, TrueLit()))


def test_determinism():
    tm = apply1(Lam(Bool(), Var0()), TrueLit())
    assert synth_tm(EMPTY, tm) == synth_tm(EMPTY, tm)
    assert normalize_ty(EMPTY, El(Code(Pi(Bool(), Bool())))) == \
        normalize_ty(EMPTY, El(Code(Pi(Bool(), Bool()))))


def test_subject_reduction_on_samples():
    # a term and its normal form synthesize convertible types
    from ttk.conversion import normalize_tm
    from ttk.generate import GenConfig, GenExhausted, InstanceGen, derive_seed
    checked = 0
    seed = 0
    while checked < 25 and seed < 150:
        gen = InstanceGen(GenConfig(seed=derive_seed(3, "sr", seed), max_nodes=8))
        seed += 1
        try:
            ctx = gen.draw_ctx()
            tm = gen.draw_tm(ctx, gen.draw_ty(ctx))
        except GenExhausted:
            continue
        reduced = normalize_tm(ctx, tm)
        assert conv_ty(ctx, synth_tm(ctx, reduced), synth_tm(ctx, tm))
        checked += 1
    assert checked >= 25
