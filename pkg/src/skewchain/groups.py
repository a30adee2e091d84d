"""Finite groups as validated multiplication tables, and kG arithmetic.

A group element is its index into the element list; index 0 is always the
identity.  A group-algebra element over a field k is a dict mapping element
indices to nonzero scalars (the zero element is the empty dict), so
equality of dicts is equality in kG.
"""

from __future__ import annotations

import itertools

from .fields import Field


class NotAssociative(ValueError):
    """Raised when a multiplication table fails associativity."""


class NotLatinSquare(ValueError):
    """Raised when a multiplication table has a repeated row or column."""


class NoIdentity(ValueError):
    """Raised when index 0 does not act as a two-sided identity."""


class GroupMismatch(ValueError):
    """Raised when two structures built over different groups are combined."""


class FiniteGroup:
    """A finite group presented by its full multiplication table.

    ``table[a][b]`` is the index of the product a*b.  Construction validates
    the table: square shape with entries in range, identity at index 0,
    Latin-square rows and columns, and associativity (checked on all
    triples; the orders used here are small).
    """

    __slots__ = ("order", "table", "inverse", "labels")

    def __init__(self, table, labels=None):
        n = len(table)
        if any(len(row) != n for row in table):
            raise ValueError("multiplication table must be square")
        for row in table:
            for v in row:
                if not (isinstance(v, int) and 0 <= v < n):
                    raise ValueError(f"table entry {v!r} out of range")
        if any(table[0][a] != a or table[a][0] != a for a in range(n)):
            raise NoIdentity("index 0 must be a two-sided identity")
        full = set(range(n))
        for a in range(n):
            if set(table[a]) != full:
                raise NotLatinSquare(f"row {a} is not a permutation")
            if {table[b][a] for b in range(n)} != full:
                raise NotLatinSquare(f"column {a} is not a permutation")
        for a in range(n):
            for b in range(n):
                tab = table[a][b]
                rowa = table[a]
                for c in range(n):
                    if table[tab][c] != rowa[table[b][c]]:
                        raise NotAssociative(
                            f"({a}*{b})*{c} != {a}*({b}*{c})"
                        )
        self.order = n
        self.table = tuple(tuple(row) for row in table)
        inv = [None] * n
        for a in range(n):
            inv[a] = self.table[a].index(0)
        self.inverse = tuple(inv)
        if labels is None:
            labels = [f"g{a}" if a else "e" for a in range(n)]
        if len(labels) != n or len(set(labels)) != n:
            raise ValueError("labels must be distinct, one per element")
        self.labels = tuple(str(s) for s in labels)

    # -- basic operations -------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def prod(self, elems) -> int:
        """Ordered product of a sequence of elements (empty product = 0)."""
        acc = 0
        for a in elems:
            acc = self.table[acc][a]
        return acc

    @property
    def elements(self):
        return range(self.order)

    def label(self, a: int) -> str:
        return self.labels[a]

    def require_same(self, other: "FiniteGroup") -> None:
        if self is other:
            return
        if self.table != other.table:
            raise GroupMismatch("structures use different groups")

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):  # pragma: no cover - debugging aid
        return f"<FiniteGroup order={self.order}>"


# -- standard families ----------------------------------------------------

def cyclic_group(n: int) -> FiniteGroup:
    """Z/n with elements 0..n-1 under addition mod n."""
    if n < 1:
        raise ValueError("cyclic group order must be >= 1")
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    labels = ["e"] + [f"g{'^%d' % a if a > 1 else ''}" for a in range(1, n)]
    return FiniteGroup(table, labels)


def symmetric_group(n: int) -> FiniteGroup:
    """S_n on {0..n-1}; elements are one-line permutations in sorted order.

    The label of a permutation p is the string ``p(0)p(1)...p(n-1)``, so the
    identity ``01...`` sorts first.  Multiplication is composition,
    (p*q)(x) = p(q(x)).
    """
    perms = sorted(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = [
        [index[tuple(p[q[x]] for x in range(n))] for q in perms]
        for p in perms
    ]
    labels = ["".join(str(v) for v in p) for p in perms]
    return FiniteGroup(table, labels)


def product_of_cyclic_groups(orders) -> FiniteGroup:
    """Direct product Z/n1 x ... x Z/nk with componentwise addition."""
    orders = list(orders)
    if not orders or any(n < 1 for n in orders):
        raise ValueError("orders must be a nonempty list of positive ints")
    elems = list(itertools.product(*[range(n) for n in orders]))
    index = {e: i for i, e in enumerate(elems)}
    table = [
        [
            index[tuple((a[k] + b[k]) % orders[k] for k in range(len(orders)))]
            for b in elems
        ]
        for a in elems
    ]
    labels = [",".join(str(v) for v in e) for e in elems]
    return FiniteGroup(table, labels)


def perm_of_label(label: str):
    """Recover the one-line permutation from a symmetric_group label."""
    return tuple(int(ch) for ch in label)


def group_from_config(cfg: dict) -> FiniteGroup:
    """Build a group from its config block.

    Either ``{"family": "cyclic"|"symmetric", "n": k}``,
    ``{"family": "product_of_cyclics", "orders": [..]}``, or an explicit
    ``{"table": [[..]], "labels": [..]?}`` with 0-based indices and the
    identity at index 0.
    """
    if "table" in cfg:
        return FiniteGroup(cfg["table"], cfg.get("labels"))
    family = cfg.get("family")
    if family == "cyclic":
        return cyclic_group(int(cfg["n"]))
    if family == "symmetric":
        return symmetric_group(int(cfg["n"]))
    if family == "product_of_cyclics":
        return product_of_cyclic_groups(cfg["orders"])
    raise ValueError(f"unknown group config {cfg!r}")


# -- group-algebra arithmetic (dicts {element: scalar}) --------------------

def ga_add(field: Field, a: dict, b: dict) -> dict:
    out = dict(a)
    for g, c in b.items():
        s = field.add(out.get(g, 0), c)
        if s == 0:
            out.pop(g, None)
        else:
            out[g] = s
    return out


def ga_neg(field: Field, a: dict) -> dict:
    return {g: field.neg(c) for g, c in a.items()}


def ga_sub(field: Field, a: dict, b: dict) -> dict:
    return ga_add(field, a, ga_neg(field, b))


def ga_scale(field: Field, c, a: dict) -> dict:
    if c == 0:
        return {}
    return {g: field.mul(c, v) for g, v in a.items()}


def ga_mul(field: Field, group: FiniteGroup, a: dict, b: dict) -> dict:
    """Convolution product in kG."""
    out: dict = {}
    table = group.table
    for g, cg in a.items():
        row = table[g]
        for h, ch in b.items():
            k = row[h]
            s = field.add(out.get(k, 0), field.mul(cg, ch))
            if s == 0:
                out.pop(k, None)
            else:
                out[k] = s
    return out


def reduce_identity(a: dict) -> dict:
    """Drop the identity component (projection kG -> span of G - {1})."""
    if 0 not in a:
        return a
    out = dict(a)
    del out[0]
    return out
