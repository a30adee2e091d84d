"""Chain maps between the bar and twisted-product resolutions.

The two directions of the comparison are:

* ``awg`` — the group-twisted Alexander-Whitney map from the bar resolution
  of A = S ⋊ G to the twisted product of the kG bar resolution with the S
  bar resolution.  On a free basis element with bar slots s_1 g_1, ...,
  s_n g_n the l-th summand (sign (-1)^{l(n-l)}) sends the first l group
  letters into the outer product, keeps g_{l+1}..g_n as group bar slots,
  and moves every s_i — twisted by the inverse of its tail product
  g_i g_{i+1} ... g_n — into the S bar slots (i <= l) or the right outer
  S slot (i > l).  Terms with a struck bar slot vanish.
* ``ezg`` — the group-twisted Eilenberg-Zilber map, a signed sum over
  (i,j)-shuffles of the group letters and the S letters; each S letter is
  twisted by the ordered product of the group letters standing to its
  right in the shuffled word.

``awg ∘ ezg = id`` degreewise (tested, not assumed), which makes the pair
split the twisted product off the bar resolution.

On top of these sit the Koszul comparison maps:

* ``iota_s`` — antisymmetrizer from the Koszul resolution of S into its bar
  resolution (a G-equivariant chain map);
* :class:`PiSolver` — the reverse direction, built degree by degree: the
  identity in degrees 0, the divided-difference formula in degree 1, and
  for j >= 2 a deterministic linear solve of d ∘ pi_j = pi_{j-1} ∘ d inside
  each polynomial grade (the per-grade differential matrix is factored once
  and reused).  pi_s ∘ iota_s = id then holds degreewise;
* ``iota = ezg ∘ (id ⊗ iota_s)`` and ``pi = (id ⊗ pi_s) ∘ awg``, the induced
  splitting between the bar resolution of A and the twisted product with
  the Koszul resolution.

All maps accept a ChainElement or ChainVector and return a ChainVector.
"""

from __future__ import annotations

import itertools
import random

from .complexes import (
    ChainElement,
    ChainVector,
    ShapeMismatch,
    as_vector,
    bimodule_act,
    diff,
    free_decompose,
    barskew_free_basis,
    random_barskew_slots,
    random_twisted_slots,
    twisted_free_basis,
)
from .linalg import FactoredSolver
from .polynomials import (
    monomials_of_degree,
    poly_mul,
    total_degree,
    var_exp,
)
from .skew import SkewAlgebra


class DegreeOutOfRange(ValueError):
    """Raised when a homological degree exceeds the configured bound."""


# -- the twisted Alexander-Whitney map -------------------------------------

def awg(x) -> ChainVector:
    """Twisted Alexander-Whitney map on bar-resolution elements."""
    if isinstance(x, ChainVector):
        out = ChainVector(x.alg)
        for el in x.parts.values():
            out.add_vector(awg(el))
        return out
    alg = x.alg
    if x.tag[0] != "barskew":
        raise ShapeMismatch(f"awg expects barskew elements, got {x.tag}")
    unit = alg.unit_pair
    out = ChainVector(alg)
    for slots, c in x.terms.items():
        part = _awg_free(alg, slots[1:-1])
        a = None if slots[0] == unit else {slots[0]: 1}
        b = None if slots[-1] == unit else {slots[-1]: 1}
        if a is not None or b is not None:
            part = bimodule_act(a, part, b)
        out.add_vector(part, c)
    return out


def _awg_free(alg: SkewAlgebra, inner) -> ChainVector:
    n = len(inner)
    field = alg.field
    zero = alg.zero_exp
    out = ChainVector(alg)
    if n == 0:
        out.add_term(("twisted", 0, 0, "bar"), (0, 0, zero, zero), 1)
        return out
    mlist = [p[0] for p in inner]
    glist = [p[1] for p in inner]
    mul = alg.group.mul
    inv = alg.group.inv
    # tails[k] = g_k g_{k+1} ... g_{n-1}; each s_k is twisted by its inverse
    tails = [0] * (n + 1)
    for k in range(n - 1, -1, -1):
        tails[k] = mul(glist[k], tails[k + 1])
    twisted = [
        alg.action.act_monomial(inv(tails[k]), mlist[k]) for k in range(n)
    ]
    # outer_sfx[k] = product of the twisted s_k ... s_{n-1}
    outer_sfx = [{zero: 1}] * (n + 1)
    for k in range(n - 1, -1, -1):
        outer_sfx[k] = poly_mul(field, twisted[k], outer_sfx[k + 1])
    prefix = 0
    for ell in range(n + 1):
        if ell > 0:
            prefix = mul(prefix, glist[ell - 1])
        if all(glist[k] != 0 for k in range(ell, n)) and all(
            mlist[k] != zero for k in range(ell)
        ):
            sign_neg = (ell * (n - ell)) % 2 == 1
            tag = ("twisted", n - ell, ell, "bar")
            cpart = (prefix,) + tuple(glist[ell:]) + (0,)
            combos = [((), 1)]
            for k in range(ell):
                combos = [
                    (mids + (m,), field.mul(cc, cm))
                    for mids, cc in combos
                    for m, cm in twisted[k].items()
                ]
            for mids, cc in combos:
                for mo, co in outer_sfx[ell].items():
                    v = field.mul(cc, co)
                    out.add_term(
                        tag,
                        cpart + (zero,) + mids + (mo,),
                        field.neg(v) if sign_neg else v,
                    )
    return out


# -- the twisted Eilenberg-Zilber map --------------------------------------

_SHUFFLE_MEMO: dict = {}


def _shuffles(i: int, j: int):
    """Shuffle data for i group letters and j S letters.

    Each entry is (sign, word, twists): ``word`` lists ("g", r) / ("s", t)
    by output position, ``twists[t]`` is the tuple of group-letter ranks
    standing strictly to the right of S letter t in the shuffled word, in
    their original order.
    """
    key = (i, j)
    hit = _SHUFFLE_MEMO.get(key)
    if hit is not None:
        return hit
    n = i + j
    table = []
    for gpos in itertools.combinations(range(n), i):
        spos = [q for q in range(n) if q not in gpos]
        inversions = sum(p - r for r, p in enumerate(gpos))
        word = [None] * n
        for r, p in enumerate(gpos):
            word[p] = ("g", r)
        twists = []
        for t, q in enumerate(spos):
            word[q] = ("s", t)
            twists.append(tuple(r for r, p in enumerate(gpos) if p > q))
        table.append((-1 if inversions % 2 else 1, tuple(word), tuple(twists)))
    _SHUFFLE_MEMO[key] = table
    return table


def ezg(x) -> ChainVector:
    """Twisted Eilenberg-Zilber map on twisted-product elements (D = bar)."""
    if isinstance(x, ChainVector):
        out = ChainVector(x.alg)
        for el in x.parts.values():
            out.add_vector(ezg(el))
        return out
    alg = x.alg
    if x.tag[0] != "twisted" or x.tag[3] != "bar":
        raise ShapeMismatch(f"ezg expects twisted(bar) elements, got {x.tag}")
    out = ChainVector(alg)
    unit = alg.unit()
    for slots, c in x.terms.items():
        a, items, b = free_decompose(alg, x.tag, slots)
        plain_a = a == unit
        plain_b = b == unit
        for c2, (cbars, dmid) in items:
            el = _ezg_free(alg, cbars, dmid)
            if not (plain_a and plain_b):
                el = bimodule_act(None if plain_a else a, el,
                                  None if plain_b else b)
            out.add_element(el, alg.field.mul(c, c2))
    return out


def _ezg_free(alg: SkewAlgebra, cbars, dmid) -> ChainElement:
    i, j = len(cbars), len(dmid)
    n = i + j
    field = alg.field
    unit = alg.unit_pair
    zero = alg.zero_exp
    out = ChainElement(alg, ("barskew", n))
    for sign, word, twists in _shuffles(i, j):
        acted = []
        for t in range(j):
            h = alg.group.prod(cbars[r] for r in twists[t])
            acted.append(alg.action.act_monomial(h, dmid[t]))
        combos = [((), 1 if sign == 1 else field.from_int(-1))]
        for poly in acted:
            combos = [
                (ms + (m,), field.mul(cc, cm))
                for ms, cc in combos
                for m, cm in poly.items()
            ]
        for ms, cc in combos:
            bar = tuple(
                (zero, cbars[rt]) if kind == "g" else (ms[rt], 0)
                for kind, rt in word
            )
            out.add_term((unit,) + bar + (unit,), cc)
    return out


# -- Koszul <-> bar comparison over S --------------------------------------

def _perm_sign(perm) -> int:
    inv = 0
    for a in range(len(perm)):
        for b in range(a + 1, len(perm)):
            if perm[a] > perm[b]:
                inv += 1
    return -1 if inv % 2 else 1


def iota_s(x) -> ChainVector:
    """Antisymmetrizer Koszul_j -> BarS_j (an S-bimodule chain map)."""
    if isinstance(x, ChainVector):
        out = ChainVector(x.alg)
        for el in x.parts.values():
            out.add_vector(iota_s(el))
        return out
    alg = x.alg
    if x.tag[0] != "koszul":
        raise ShapeMismatch(f"iota_s expects koszul elements, got {x.tag}")
    j = x.tag[1]
    field = alg.field
    out = ChainVector(alg)
    tag = ("bars", j)
    for (m0, w, m1), c in x.terms.items():
        for perm in itertools.permutations(w):
            sign = _perm_sign(perm)
            cc = c if sign == 1 else field.neg(c)
            out.add_term(
                tag,
                (m0,) + tuple(var_exp(alg.nvars, v) for v in perm) + (m1,),
                cc,
            )
    return out


class PiSolver:
    """Degreewise construction of pi_s : BarS_j -> Koszul_j.

    Free-basis values are produced on demand and memoized:

    * j = 0: identity;
    * j = 1: the divided-difference formula — for a monomial m with sorted
      variable word u_1..u_d, pi(1⊗m⊗1) = sum_t u_1..u_{t-1} ⊗ u_t ⊗
      u_{t+1}..u_d;
    * j >= 2: the unique-up-to-boundaries solution of
      d ∘ pi_j = pi_{j-1} ∘ d inside the polynomial grade of the input
      tuple, with free variables pinned to zero (deterministic).  The
      right-hand side lies in the image by Koszul exactness, and the grade's
      differential matrix is RREF-factored once and shared by all tuples.
    * j > N (the number of variables): zero, which still satisfies the
      chain-map equation because the degree-N Koszul differential is
      injective.
    """

    def __init__(self, alg: SkewAlgebra, j_max: int = 4):
        self.alg = alg
        self.j_max = j_max
        self._values: dict = {}
        self._basis: dict = {}
        self._solvers: dict = {}

    def koszul_basis(self, j: int, grade: int):
        """Basis slots of Koszul_j in one polynomial grade, fixed order."""
        key = (j, grade)
        hit = self._basis.get(key)
        if hit is None:
            nv = self.alg.nvars
            hit = [
                (m0, w, m1)
                for w in itertools.combinations(range(nv), j)
                for da in range(grade - j + 1)
                for m0 in monomials_of_degree(nv, da)
                for m1 in monomials_of_degree(nv, grade - j - da)
            ]
            self._basis[key] = hit
        return hit

    def _grade_solver(self, j: int, grade: int) -> FactoredSolver:
        key = (j, grade)
        hit = self._solvers.get(key)
        if hit is None:
            alg = self.alg
            cols = self.koszul_basis(j, grade)
            rows = self.koszul_basis(j - 1, grade)
            row_index = {s: r for r, s in enumerate(rows)}
            matrix = [[0] * len(cols) for _ in rows]
            for cidx, slots in enumerate(cols):
                img = _koszul_diff_term(alg, slots)
                for s2, v in img.items():
                    matrix[row_index[s2]][cidx] = v
            hit = FactoredSolver(alg.field, matrix)
            self._solvers[key] = hit
        return hit

    def pi_free(self, mbar: tuple) -> dict:
        """Value on the free basis tuple, as {koszul slots: scalar}."""
        j = len(mbar)
        if j > self.j_max:
            raise DegreeOutOfRange(
                f"pi_s needs bar degree <= {self.j_max}, got {j}"
            )
        alg = self.alg
        zero = alg.zero_exp
        if j == 0:
            return {(zero, (), zero): 1}
        if j > alg.nvars:
            return {}
        hit = self._values.get(mbar)
        if hit is not None:
            return hit
        if j == 1:
            word = [
                i for i, e in enumerate(mbar[0]) for _ in range(e)
            ]
            out: dict = {}
            f = alg.field
            for t in range(len(word)):
                left = [0] * alg.nvars
                for v in word[:t]:
                    left[v] += 1
                right = [0] * alg.nvars
                for v in word[t + 1:]:
                    right[v] += 1
                key = (tuple(left), (word[t],), tuple(right))
                s = f.add(out.get(key, 0), 1)
                if s == 0:
                    out.pop(key, None)
                else:
                    out[key] = s
            self._values[mbar] = out
            return out
        # j >= 2: solve within the grade of the input tuple
        f = alg.field
        free = ChainElement.basis(
            alg, ("bars", j), (zero,) + mbar + (zero,)
        )
        from .complexes import bar_diff

        rhs: dict = {}
        for slots2, c in bar_diff(free).terms.items():
            m0, mids, m1 = slots2[0], slots2[1:-1], slots2[-1]
            for (a, w, b), v in self.pi_free(mids).items():
                key = (
                    tuple(p + q for p, q in zip(m0, a)),
                    w,
                    tuple(p + q for p, q in zip(b, m1)),
                )
                s = f.add(rhs.get(key, 0), f.mul(c, v))
                if s == 0:
                    rhs.pop(key, None)
                else:
                    rhs[key] = s
        grade = sum(total_degree(m) for m in mbar)
        rows = self.koszul_basis(j - 1, grade)
        bvec = [rhs.get(s, 0) for s in rows]
        xvec = self._grade_solver(j, grade).solve(bvec)
        cols = self.koszul_basis(j, grade)
        out = {cols[c]: v for c, v in enumerate(xvec) if v != 0}
        self._values[mbar] = out
        return out


def _koszul_diff_term(alg: SkewAlgebra, slots) -> dict:
    """Koszul differential of one basis term, as a terms dict."""
    m0, w, m1 = slots
    f = alg.field
    out: dict = {}
    for t, idx in enumerate(w):
        sign = 1 if t % 2 == 0 else -1
        e = var_exp(alg.nvars, idx)
        rest = w[:t] + w[t + 1:]
        for key, v in (
            ((tuple(a + b for a, b in zip(m0, e)), rest, m1), sign),
            ((m0, rest, tuple(a + b for a, b in zip(m1, e))), -sign),
        ):
            s = f.add(out.get(key, 0), f.from_int(v))
            if s == 0:
                out.pop(key, None)
            else:
                out[key] = s
    return out


def get_pi_solver(alg: SkewAlgebra, j_max: int = 4) -> PiSolver:
    """The per-context PiSolver (created lazily, grown if j_max increases)."""
    solver = getattr(alg, "_pi_solver", None)
    if solver is None or solver.j_max < j_max:
        solver = PiSolver(alg, j_max)
        alg._pi_solver = solver
    return solver


def pi_s(x, solver: PiSolver | None = None) -> ChainVector:
    """The splitting BarS_j -> Koszul_j (an S-bimodule chain map)."""
    if isinstance(x, ChainVector):
        out = ChainVector(x.alg)
        for el in x.parts.values():
            out.add_vector(pi_s(el, solver))
        return out
    alg = x.alg
    if x.tag[0] != "bars":
        raise ShapeMismatch(f"pi_s expects bars elements, got {x.tag}")
    solver = solver or get_pi_solver(alg)
    j = x.tag[1]
    f = alg.field
    out = ChainVector(alg)
    tag = ("koszul", j)
    for slots, c in x.terms.items():
        m0, mids, m1 = slots[0], slots[1:-1], slots[-1]
        for (a, w, b), v in solver.pi_free(mids).items():
            out.add_term(
                tag,
                (
                    tuple(p + q for p, q in zip(m0, a)),
                    w,
                    tuple(p + q for p, q in zip(b, m1)),
                ),
                f.mul(c, v),
            )
    return out


# -- the induced maps on the twisted product -------------------------------

def id_tensor_iota_s(x) -> ChainVector:
    """Apply the antisymmetrizer to the D-part of twisted(koszul) terms."""
    if isinstance(x, ChainVector):
        out = ChainVector(x.alg)
        for el in x.parts.values():
            out.add_vector(id_tensor_iota_s(el))
        return out
    alg = x.alg
    kind, i, j, dkind = x.tag
    if kind != "twisted" or dkind != "koszul":
        raise ShapeMismatch(f"expected twisted(koszul), got {x.tag}")
    field = alg.field
    out = ChainVector(alg)
    tag = ("twisted", i, j, "bar")
    base = i + 2
    for slots, c in x.terms.items():
        m0, w, m1 = slots[base], slots[base + 1], slots[base + 2]
        for perm in itertools.permutations(w):
            sign = _perm_sign(perm)
            out.add_term(
                tag,
                slots[:base]
                + (m0,)
                + tuple(var_exp(alg.nvars, v) for v in perm)
                + (m1,),
                c if sign == 1 else field.neg(c),
            )
    return out


def id_tensor_pi_s(x, solver: PiSolver | None = None) -> ChainVector:
    """Apply pi_s to the D-part of twisted(bar) terms."""
    if isinstance(x, ChainVector):
        out = ChainVector(x.alg)
        for el in x.parts.values():
            out.add_vector(id_tensor_pi_s(el, solver))
        return out
    alg = x.alg
    kind, i, j, dkind = x.tag
    if kind != "twisted" or dkind != "bar":
        raise ShapeMismatch(f"expected twisted(bar), got {x.tag}")
    solver = solver or get_pi_solver(alg)
    field = alg.field
    out = ChainVector(alg)
    tag = ("twisted", i, j, "koszul")
    base = i + 2
    for slots, c in x.terms.items():
        m0, mids, m1 = slots[base], slots[base + 1: -1], slots[-1]
        for (a, w, b), v in solver.pi_free(mids).items():
            out.add_term(
                tag,
                slots[:base]
                + (
                    tuple(p + q for p, q in zip(m0, a)),
                    w,
                    tuple(p + q for p, q in zip(b, m1)),
                ),
                field.mul(c, v),
            )
    return out


def iota(x, solver: PiSolver | None = None) -> ChainVector:
    """The section X_{i,j} -> BarSkew_{i+j} (ezg after id ⊗ iota_s)."""
    return ezg(id_tensor_iota_s(x))


def pi(x, solver: PiSolver | None = None) -> ChainVector:
    """The retraction BarSkew_n -> sum of X_{i,j} (id ⊗ pi_s after awg)."""
    return id_tensor_pi_s(awg(x), solver)


# -- verification driver ---------------------------------------------------

def _domain_bases(alg, name, n, max_poly_deg):
    """Free-basis slot tuples of the domain of a named map in degree n."""
    if name in ("awg", "pi"):
        yield ("barskew", n), barskew_free_basis(alg, n, max_poly_deg)
    elif name == "ezg":
        for i in range(n + 1):
            yield (
                ("twisted", i, n - i, "bar"),
                twisted_free_basis(alg, i, n - i, "bar", max_poly_deg),
            )
    elif name == "iota":
        for i in range(n + 1):
            if n - i <= alg.nvars:
                yield (
                    ("twisted", i, n - i, "koszul"),
                    twisted_free_basis(alg, i, n - i, "koszul", max_poly_deg),
                )
    elif name == "iota_s":
        if n <= alg.nvars:
            z = alg.zero_exp
            yield ("koszul", n), [
                (z, w, z) for w in itertools.combinations(range(alg.nvars), n)
            ]
    elif name == "pi_s":
        z = alg.zero_exp
        mids = alg.monomials_up_to(max_poly_deg, include_unit=False)
        yield ("bars", n), [
            (z,) + combo + (z,)
            for combo in itertools.product(mids, repeat=n)
        ]
    else:
        raise ValueError(f"unknown map {name!r}")


def _random_domain_slots(alg, name, n, max_poly_deg, rng):
    if name in ("awg", "pi"):
        return ("barskew", n), random_barskew_slots(alg, n, max_poly_deg, rng)
    if name in ("ezg", "iota"):
        dkind = "bar" if name == "ezg" else "koszul"
        jmax = n if dkind == "bar" else min(n, alg.nvars)
        j = rng.randrange(0, jmax + 1)
        return (
            ("twisted", n - j, j, dkind),
            random_twisted_slots(alg, n - j, j, dkind, max_poly_deg, rng),
        )
    if name == "iota_s":
        j = min(n, alg.nvars)
        wedges = list(itertools.combinations(range(alg.nvars), j))
        outer = alg.monomials_up_to(max_poly_deg)
        return ("koszul", j), (
            rng.choice(outer), rng.choice(wedges), rng.choice(outer)
        )
    if name == "pi_s":
        mids = alg.monomials_up_to(max_poly_deg, include_unit=False)
        outer = alg.monomials_up_to(max_poly_deg)
        return ("bars", n), (
            (rng.choice(outer),)
            + tuple(rng.choice(mids) for _ in range(n))
            + (rng.choice(outer),)
        )
    raise ValueError(f"unknown map {name!r}")


def map_by_name(name: str, solver: PiSolver | None = None):
    fns = {
        "awg": awg,
        "ezg": ezg,
        "iota_s": iota_s,
        "pi_s": lambda x: pi_s(x, solver),
        "iota": lambda x: iota(x, solver),
        "pi": lambda x: pi(x, solver),
    }
    if name not in fns:
        raise ValueError(f"unknown map {name!r}")
    return fns[name]


def verify_chainmap(
    alg: SkewAlgebra,
    name: str,
    degrees=(0, 1, 2, 3),
    max_poly_deg: int = 2,
    samples: int = 0,
    sample_degree: int = 4,
    seed: int = 0,
    j_max: int = 4,
    map_fn=None,
    max_failures: int = 5,
):
    """Check d ∘ f = f ∘ d on enumerated free bases plus random samples.

    Returns a report dict with the number of inputs checked and up to
    ``max_failures`` recorded counterexamples.
    """
    solver = get_pi_solver(alg, max(j_max, sample_degree if samples else 0,
                                    *degrees) if degrees else j_max)
    fn = map_fn if map_fn is not None else map_by_name(name, solver)
    checked = 0
    failures = []

    def run_one(tag, slots):
        nonlocal checked
        x = ChainElement.basis(alg, tag, slots)
        lhs = diff(fn(x))
        rhs = fn(diff(x))
        checked += 1
        if lhs != rhs:
            if len(failures) < max_failures:
                defect = ChainVector(alg)
                defect.add_vector(lhs)
                defect.add_vector(rhs, alg.field.from_int(-1))
                failures.append(
                    {
                        "degree": homological_degree_of(tag),
                        "tag": list(tag),
                        "input": _slots_jsonable(slots),
                        "defect_terms": sum(
                            len(el.terms) for el in defect.parts.values()
                        ),
                    }
                )
            return False
        return True

    for n in degrees:
        for tag, basis in _domain_bases(alg, name, n, max_poly_deg):
            for slots in basis:
                run_one(tag, slots)
    if samples:
        rng = random.Random(seed)
        for _ in range(samples):
            tag, slots = _random_domain_slots(
                alg, name, sample_degree, max_poly_deg, rng
            )
            run_one(tag, slots)
    return {
        "map": name,
        "degrees": list(degrees),
        "checked": checked,
        "failures": failures,
    }


def homological_degree_of(tag) -> int:
    from .complexes import homological_degree

    return homological_degree(tag)


def _slots_jsonable(slots):
    def conv(v):
        if isinstance(v, tuple):
            return [conv(a) for a in v]
        return v

    return [conv(s) for s in slots]
