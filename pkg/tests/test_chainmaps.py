"""The four chain maps, their splitting identities, and their gradings.

Frozen values are evaluated by hand from the defining formulas:

* awg peels group letters to the C side; a summand survives only when the
  peeled pairs have trivial polynomial part (the augmentation kills the
  rest), the remaining group letters are pushed into the C outer slot as a
  prefix product, and each surviving s-letter is twisted by the inverse of
  the product of the group letters originally standing to its right;
* ezg sums over (i,j)-shuffles of the C bar letters with the D letters,
  with the permutation sign, each s-letter twisted by the group letters
  shuffled to its right;
* iota_s antisymmetrizes a wedge over all orderings;
* pi_s is the unique S-bimodule chain-map splitting (computed via a linear
  solve), pinned here on 1 ⊗ x0² ⊗ 1.
"""

import itertools
import random

import pytest

from skewchain.chainmaps import (
    DegreeOutOfRange,
    PiSolver,
    _shuffles,
    awg,
    ezg,
    get_pi_solver,
    id_tensor_iota_s,
    id_tensor_pi_s,
    iota,
    iota_s,
    pi,
    pi_s,
    verify_chainmap,
)
from skewchain.complexes import (
    ChainElement,
    ChainVector,
    ShapeMismatch,
    as_vector,
    barskew_free_basis,
    bimodule_act,
    diff,
    random_barskew_slots,
    random_twisted_slots,
    term_s_degree,
    twisted_free_basis,
)
from skewchain.polynomials import var_exp

from helpers import (
    classical_aw,
    classical_ez,
    s3_perm_q,
    shuffle_signs_by_permutation,
    swap_q,
    trivial_group_q,
    v4_gf2,
    z3_unipotent_gf3,
)

Z, X0, X1 = (0, 0), (1, 0), (0, 1)
UNIT = (Z, 0)


class TestShuffles:
    def test_signs_match_permutation_parity(self):
        for i in range(5):
            for j in range(5):
                want = dict(
                    (pos, sign)
                    for sign, pos in shuffle_signs_by_permutation(i, j)
                )
                got = {}
                for sign, word, _ in _shuffles(i, j):
                    pos = tuple(
                        p for p, w in enumerate(word) if w[0] == "g"
                    )
                    got[pos] = sign
                assert got == want

    def test_count(self):
        import math

        for i in range(5):
            for j in range(5):
                assert len(_shuffles(i, j)) == math.comb(i + j, i)

    def test_twists_are_right_letters(self):
        for sign, word, twists in _shuffles(2, 2):
            for t, q in [(w[1], p) for p, w in enumerate(word)
                         if w[0] == "s"]:
                want = tuple(
                    w[1] for p, w in enumerate(word)
                    if w[0] == "g" and p > q
                )
                assert twists[t] == want


class TestFrozenValues:
    def test_awg_degree1(self):
        # awg(1 ⊗ (x0·g) ⊗ 1) over the swap action:
        #   l=0: g pushed into the C outer, x0 twisted by g^{-1} = g -> x1;
        #   l=1: dies on the C side? no - the pair has m = x0, so only the
        #        group letter survives there with the twisted x1 in the
        #        right D outer slot.
        A = swap_q()
        x = ChainElement.basis(A, ("barskew", 1), (UNIT, (X0, 1), UNIT))
        v = awg(x)
        assert v.component(("twisted", 0, 1, "bar")).terms == {
            (1, 0, Z, X1, Z): 1
        }
        assert v.component(("twisted", 1, 0, "bar")).terms == {
            (0, 1, 0, Z, X1): 1
        }
        assert len(v.parts) == 2

    def test_awg_degree2_augmentation_kills_mixed_summands(self):
        # 1 ⊗ (x0·g) ⊗ (x1·1) ⊗ 1: the (1,1) summand needs the first pair
        # to be a pure group letter (x0 dies under the augmentation) and
        # the (2,0) summand has 1 as its second bar letter; only (0,2)
        # survives, with x0 twisted by (g·1)^{-1} and x1 by 1.
        A = swap_q()
        x = ChainElement.basis(
            A, ("barskew", 2), (UNIT, (X0, 1), (X1, 0), UNIT)
        )
        v = awg(x)
        assert v.component(("twisted", 0, 2, "bar")).terms == {
            (1, 0, Z, X1, X1, Z): 1
        }
        assert len(v.parts) == 1

    def test_ezg_degree2(self):
        # ezg on the free (1,1) term with bar letter g and s-letter x0:
        # shuffle g before x0 (sign +, no twist on x0 from the left... the
        # twist collects letters to the *right*, so x0 is untouched) and
        # x0 before g (sign -, x0 twisted by g).
        A = swap_q()
        x = ChainElement.basis(
            A, ("twisted", 1, 1, "bar"), (0, 1, 0, Z, X0, Z)
        )
        v = ezg(x)
        el = v.component(("barskew", 2))
        assert el.terms == {
            (UNIT, (Z, 1), (X0, 0), UNIT): 1,
            (UNIT, (X1, 0), (Z, 1), UNIT): -1,
        }
        assert len(v.parts) == 1

    def test_awg_ezg_roundtrip_on_worked_instance(self):
        A = swap_q()
        x = ChainElement.basis(
            A, ("twisted", 1, 1, "bar"), (0, 1, 0, Z, X0, Z)
        )
        assert awg(ezg(x)) == as_vector(x)

    def test_iota_s_antisymmetrizes(self):
        A = swap_q()
        x = ChainElement.basis(A, ("koszul", 2), (Z, (0, 1), Z))
        v = iota_s(x)
        assert v.component(("bars", 2)).terms == {
            (Z, X0, X1, Z): 1,
            (Z, X1, X0, Z): -1,
        }

    def test_pi_s_on_square(self):
        # pi_s(1 ⊗ x0² ⊗ 1) = x0 ⊗ x0 ⊗ 1 + 1 ⊗ x0 ⊗ x0; both sides have
        # Koszul differential x0² ⊗ 1 − 1 ⊗ x0², matching the bar
        # differential of the input.
        A = swap_q()
        x = ChainElement.basis(A, ("bars", 1), (Z, (2, 0), Z))
        v = pi_s(x)
        assert v.component(("koszul", 1)).terms == {
            (X0, (0,), Z): 1,
            (Z, (0,), X0): 1,
        }
        # chain-map identity at this instance, after the degree-0
        # identification Koszul_0 = S ⊗ S = BarS_0
        kosz0 = diff(v).component(("koszul", 0)).terms
        bars0 = diff(x).component(("bars", 0)).terms
        assert {(m0, m1): c for (m0, _, m1), c in kosz0.items()} == bars0

    def test_pi_s_iota_s_identity_on_wedge(self):
        A = s3_perm_q()
        z3 = (0, 0, 0)
        x = ChainElement.basis(A, ("koszul", 2), (z3, (0, 2), z3))
        assert pi_s(iota_s(x)) == as_vector(x)


class TestChainMapProperty:
    @pytest.mark.parametrize("name", ["awg", "ezg", "iota_s", "pi_s",
                                      "iota", "pi"])
    def test_swap_q(self, name):
        rep = verify_chainmap(swap_q(), name, degrees=(0, 1, 2, 3),
                              max_poly_deg=2, samples=20, seed=1)
        assert rep["failures"] == [] and rep["checked"] > 0

    @pytest.mark.parametrize("name", ["awg", "ezg", "iota_s", "pi_s",
                                      "iota", "pi"])
    def test_z3_unipotent(self, name):
        rep = verify_chainmap(z3_unipotent_gf3(), name, degrees=(0, 1, 2),
                              max_poly_deg=1, samples=10, sample_degree=3,
                              seed=2)
        assert rep["failures"] == [] and rep["checked"] > 0

    @pytest.mark.parametrize("name", ["awg", "ezg", "iota", "pi"])
    def test_v4(self, name):
        rep = verify_chainmap(v4_gf2(), name, degrees=(0, 1, 2),
                              max_poly_deg=1)
        assert rep["failures"] == [] and rep["checked"] > 0

    def test_mutated_map_is_caught(self):
        # flipping the sign of the odd-column components anticommutes with
        # the horizontal differential, so the verifier must object
        def mutant(x):
            v = awg(x)
            out = ChainVector(v.alg)
            for tag, el in v.parts.items():
                out.add_element(el, -1 if tag[1] % 2 else 1)
            return out

        rep = verify_chainmap(swap_q(), "awg", degrees=(1, 2),
                              map_fn=mutant)
        assert rep["failures"] != []

    def test_wrong_domain_raises(self):
        A = swap_q()
        bars = ChainElement.basis(A, ("bars", 1), (Z, X0, Z))
        kosz = ChainElement.basis(A, ("koszul", 1), (Z, (0,), Z))
        skew = ChainElement.basis(A, ("barskew", 1), (UNIT, (X0, 1), UNIT))
        with pytest.raises(ShapeMismatch):
            awg(bars)
        with pytest.raises(ShapeMismatch):
            ezg(skew)
        with pytest.raises(ShapeMismatch):
            iota_s(bars)
        with pytest.raises(ShapeMismatch):
            pi_s(kosz)

    def test_pi_s_degree_cap(self):
        A = swap_q()
        small = PiSolver(A, 1)
        x = ChainElement.basis(A, ("bars", 2), (Z, X0, X1, Z))
        with pytest.raises(DegreeOutOfRange,
                           match=r"pi_s needs bar degree <= 1, got 2"):
            pi_s(x, small)


class TestBimoduleProperty:
    def test_awg(self):
        A = z3_unipotent_gf3()
        rng = random.Random(11)
        pool = A.pairs_up_to(1, include_unit=True)
        for _ in range(30):
            n = rng.randrange(1, 4)
            slots = random_barskew_slots(A, n, 1, rng, free=False)
            x = ChainElement.basis(A, ("barskew", n), slots)
            a = {rng.choice(pool): 1}
            b = {rng.choice(pool): 1}
            assert awg(bimodule_act(a, x, b)) == \
                bimodule_act(a, awg(x), b)

    def test_ezg(self):
        A = swap_q()
        rng = random.Random(12)
        pool = A.pairs_up_to(1, include_unit=True)
        for _ in range(30):
            n = rng.randrange(1, 4)
            j = rng.randrange(n + 1)
            slots = random_twisted_slots(A, n - j, j, "bar", 1, rng,
                                         free=False)
            x = ChainElement.basis(A, ("twisted", n - j, j, "bar"), slots)
            a = {rng.choice(pool): 1}
            b = {rng.choice(pool): 1}
            assert ezg(bimodule_act(a, x, b)) == \
                bimodule_act(a, ezg(x), b)


class TestSplittingIdentities:
    @pytest.mark.parametrize(
        "make,deg", [(swap_q, 2), (z3_unipotent_gf3, 1), (v4_gf2, 1)],
        ids=["swap_q", "z3_uni", "v4"],
    )
    def test_awg_ezg_identity(self, make, deg):
        A = make()
        for n in range(4):
            for i in range(n + 1):
                tag = ("twisted", i, n - i, "bar")
                for slots in twisted_free_basis(A, i, n - i, "bar", deg):
                    x = ChainElement.basis(A, tag, slots)
                    assert awg(ezg(x)) == as_vector(x)

    @pytest.mark.parametrize(
        "make,deg,top", [(swap_q, 2, 3), (z3_unipotent_gf3, 1, 3),
                         (v4_gf2, 1, 2)],
        ids=["swap_q", "z3_uni", "v4"],
    )
    def test_pi_iota_identity(self, make, deg, top):
        A = make()
        solver = get_pi_solver(A, 4)
        for n in range(top + 1):
            for i in range(n + 1):
                if n - i > A.nvars:
                    continue
                tag = ("twisted", i, n - i, "koszul")
                for slots in twisted_free_basis(A, i, n - i, "koszul", deg):
                    x = ChainElement.basis(A, tag, slots)
                    assert pi(iota(x, solver), solver) == as_vector(x)

    def test_pi_s_iota_s_identity_all_wedges(self):
        A = s3_perm_q()
        z3 = (0, 0, 0)
        solver = get_pi_solver(A, 4)
        for j in range(A.nvars + 1):
            for w in itertools.combinations(range(A.nvars), j):
                x = ChainElement.basis(A, ("koszul", j), (z3, w, z3))
                assert pi_s(iota_s(x), solver) == as_vector(x)

    def test_iota_preserves_s_degree(self):
        A = swap_q()
        rng = random.Random(13)
        for _ in range(25):
            j = rng.randrange(A.nvars + 1)
            i = rng.randrange(3)
            tag = ("twisted", i, j, "koszul")
            slots = random_twisted_slots(A, i, j, "koszul", 2, rng,
                                         free=False)
            x = ChainElement.basis(A, tag, slots)
            d = term_s_degree(A, tag, slots)
            for otag, el in iota(x).parts.items():
                for oslots in el.terms:
                    assert term_s_degree(A, otag, oslots) == d

    def test_pi_preserves_s_degree(self):
        # pi runs BarSkew -> twisted(koszul)
        A = swap_q()
        solver = get_pi_solver(A, 4)
        rng = random.Random(14)
        for _ in range(25):
            n = rng.randrange(4)
            tag = ("barskew", n)
            slots = random_barskew_slots(A, n, 2, rng, free=False)
            x = ChainElement.basis(A, tag, slots)
            d = term_s_degree(A, tag, slots)
            for otag, el in pi(x, solver).parts.items():
                for oslots in el.terms:
                    assert term_s_degree(A, otag, oslots) == d


class TestClassicalDegeneration:
    """With G = {1} the twisted maps collapse to the textbook AW/EZ."""

    def test_awg_is_classical(self):
        A = trivial_group_q()
        for n in range(4):
            for slots in barskew_free_basis(A, n, 2):
                inner = tuple(m for m, _ in slots[1:-1])
                x = ChainElement.basis(A, ("barskew", n), slots)
                v = awg(x)
                want = classical_aw(A.nvars, inner)
                assert set(v.parts) == {
                    ("twisted", i, j, "bar") for i, j in want
                }
                for (i, j), terms in want.items():
                    el = v.component(("twisted", i, j, "bar"))
                    z = A.zero_exp
                    expect = {}
                    for c, (cb, dm) in terms:
                        expect[(0,) + tuple(cb) + (0,) + (z,)
                               + tuple(dm) + (z,)] = c
                    assert el.terms == expect

    def test_ezg_is_classical(self):
        A = trivial_group_q()
        z = A.zero_exp
        for j in range(4):
            for slots in twisted_free_basis(A, 0, j, "bar", 2):
                dmid = slots[3:-1]
                x = ChainElement.basis(A, ("twisted", 0, j, "bar"), slots)
                v = ezg(x)
                expect = {}
                for c, mids in classical_ez((), dmid):
                    expect[((z, 0),) + tuple((m, 0) for m in mids)
                           + ((z, 0),)] = c
                assert v.component(("barskew", j)).terms == expect
                assert len(v.parts) == 1
