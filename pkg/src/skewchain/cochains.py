"""Hochschild cochains on the bar resolution and their transports.

A cochain here is a function on free-basis keys of one complex, extended
to arbitrary elements by the bimodule structure: on a term a . E . b with
E free, the value is a * f(E) * b inside the skew group algebra.  Values
are skew-algebra elements (dicts {(exponent, group): scalar}).

The operations implemented on bar-resolution cochains:

* ``coboundary`` — the Hochschild differential, computed as
  (d* f)(x) = f(d x) on the free basis element x; for a bimodule-valued
  f on the bar resolution this reproduces the usual alternating-sum
  formula a1 f(a2,..) - f(a1 a2, ..) + ... ± f(..) a_{n+1}.
* ``circle`` — the composition product: g is slotted into each argument
  position of f in turn with sign (-1)^{(n-1)(i-1)}, its value reduced to
  the basis of A first; insertions that produce the unit in a bar slot
  vanish.
* ``bracket`` — f∘g - (-1)^{(m-1)(n-1)} g∘f.
* ``cup`` — (f ⌣ g)(x_1..x_{m+n}) = f(x_1..x_m) * g(x_{m+1}..x_{m+n}).
* ``transport_up`` / ``transport_down`` — conjugation by the splitting
  maps pi and iota, moving cochains between the twisted-product complex
  and the bar resolution.

Evaluating a cochain on an element whose tag differs from the cochain's
domain gives zero (cochains are extended by zero to other degrees and
bidegrees), which is what makes evaluation against the mixed-degree
outputs of pi well defined.
"""

from __future__ import annotations

from .complexes import (
    ChainElement,
    ChainVector,
    ShapeMismatch,
    bar_diff,
    free_decompose,
    free_slots_barskew,
    free_slots_twisted,
)
from .skew import SkewAlgebra


class Cochain:
    """A free-basis function on one complex, bimodule-extended.

    ``fn`` maps a free key (the inner bar slots for "barskew"; a
    (cbars, dmid) pair for "twisted") to a skew-algebra element.
    """

    __slots__ = ("alg", "tag", "fn", "_memo")

    def __init__(self, alg: SkewAlgebra, tag, fn):
        self.alg = alg
        self.tag = tag
        self.fn = fn
        self._memo: dict = {}

    @classmethod
    def from_table(cls, alg, tag, table: dict) -> "Cochain":
        data = dict(table)
        return cls(alg, tag, lambda key: data.get(key, {}))

    def value(self, key) -> dict:
        hit = self._memo.get(key)
        if hit is None:
            hit = self.fn(key)
            self._memo[key] = hit
        return hit

    def eval_element(self, x) -> dict:
        """Value on a chain element or vector, extended by zero off-tag."""
        alg = self.alg
        if isinstance(x, ChainVector):
            out: dict = {}
            for tag, el in x.parts.items():
                if tag == self.tag:
                    out = alg.add(out, self.eval_element(el))
            return out
        if x.tag != self.tag:
            return {}
        f = alg.field
        unit = alg.unit_pair
        out = {}
        if self.tag[0] == "barskew":
            for slots, c in x.terms.items():
                v = self.value(slots[1:-1])
                if not v:
                    continue
                if slots[0] != unit:
                    v = alg.mul({slots[0]: 1}, v)
                if slots[-1] != unit:
                    v = alg.mul(v, {slots[-1]: 1})
                out = alg.add(out, alg.scale(c, v))
            return out
        if self.tag[0] == "twisted":
            for slots, c in x.terms.items():
                a, items, b = free_decompose(alg, self.tag, slots)
                acc: dict = {}
                for c2, key in items:
                    v = self.value(key)
                    if v:
                        acc = alg.add(acc, alg.scale(c2, v))
                if acc:
                    out = alg.add(
                        out, alg.scale(c, alg.mul(alg.mul(a, acc), b))
                    )
            return out
        raise ShapeMismatch(f"cannot evaluate cochains on {self.tag}")

    # pointwise vector-space structure (same domain required)
    def __add__(self, other: "Cochain") -> "Cochain":
        if self.tag != other.tag:
            raise ShapeMismatch("cochain degree mismatch in +")
        alg = self.alg
        return Cochain(
            alg, self.tag,
            lambda key: alg.add(self.value(key), other.value(key)),
        )

    def __sub__(self, other: "Cochain") -> "Cochain":
        if self.tag != other.tag:
            raise ShapeMismatch("cochain degree mismatch in -")
        alg = self.alg
        return Cochain(
            alg, self.tag,
            lambda key: alg.sub(self.value(key), other.value(key)),
        )

    def scaled(self, c) -> "Cochain":
        alg = self.alg
        return Cochain(alg, self.tag, lambda key: alg.scale(c, self.value(key)))


def coboundary(f: Cochain) -> Cochain:
    """The Hochschild differential of a bar-resolution cochain."""
    if f.tag[0] != "barskew":
        raise ShapeMismatch("coboundary needs a bar-resolution cochain")
    alg = f.alg
    n = f.tag[1]

    def fn(inner):
        x = ChainElement.basis(
            alg, ("barskew", n + 1), free_slots_barskew(alg, inner)
        )
        return f.eval_element(bar_diff(x))

    return Cochain(alg, ("barskew", n + 1), fn)


def circle(f: Cochain, g: Cochain) -> Cochain:
    """The composition f ∘ g of bar-resolution cochains (degrees m, n)."""
    if f.tag[0] != "barskew" or g.tag[0] != "barskew":
        raise ShapeMismatch("circle needs bar-resolution cochains")
    alg = f.alg
    m, n = f.tag[1], g.tag[1]
    fld = alg.field
    unit = alg.unit_pair

    def fn(inner):
        out: dict = {}
        for i in range(m):
            v = alg.reduce(g.value(inner[i: i + n]))
            sign_neg = ((n - 1) * i) % 2 == 1
            for pair, c in v.items():
                if pair == unit:
                    continue
                w = f.value(inner[:i] + (pair,) + inner[i + n:])
                if w:
                    cc = fld.neg(c) if sign_neg else c
                    out = alg.add(out, alg.scale(cc, w))
        return out

    return Cochain(alg, ("barskew", m + n - 1), fn)


def bracket(f: Cochain, g: Cochain) -> Cochain:
    """The graded commutator f∘g - (-1)^{(m-1)(n-1)} g∘f."""
    m, n = f.tag[1], g.tag[1]
    fg = circle(f, g)
    gf = circle(g, f)
    if ((m - 1) * (n - 1)) % 2 == 1:
        return fg + gf
    return fg - gf


def cup(f: Cochain, g: Cochain) -> Cochain:
    """The cup product on bar-resolution cochains."""
    if f.tag[0] != "barskew" or g.tag[0] != "barskew":
        raise ShapeMismatch("cup needs bar-resolution cochains")
    alg = f.alg
    m, n = f.tag[1], g.tag[1]

    def fn(inner):
        v = f.value(inner[:m])
        if not v:
            return {}
        w = g.value(inner[m:])
        if not w:
            return {}
        return alg.mul(v, w)

    return Cochain(alg, ("barskew", m + n), fn)


def transport_up(alpha: Cochain, pi_fn) -> Cochain:
    """Pull a twisted-product cochain back to the bar resolution along pi."""
    if alpha.tag[0] != "twisted":
        raise ShapeMismatch("transport_up starts from a twisted cochain")
    alg = alpha.alg
    n = alpha.tag[1] + alpha.tag[2]

    def fn(inner):
        x = ChainElement.basis(
            alg, ("barskew", n), free_slots_barskew(alg, inner)
        )
        return alpha.eval_element(pi_fn(x))

    return Cochain(alg, ("barskew", n), fn)


def transport_down(mu: Cochain, iota_fn, tag) -> Cochain:
    """Restrict a bar-resolution cochain to the twisted product along iota."""
    if mu.tag[0] != "barskew":
        raise ShapeMismatch("transport_down starts from a bar cochain")
    if tag[0] != "twisted" or tag[1] + tag[2] != mu.tag[1]:
        raise ShapeMismatch(f"bidegree {tag} does not match degree {mu.tag}")
    alg = mu.alg

    def fn(key):
        cbars, dmid = key
        x = ChainElement.basis(
            alg, tag, free_slots_twisted(alg, tag, cbars, dmid)
        )
        return mu.eval_element(iota_fn(x))

    return Cochain(alg, tag, fn)
