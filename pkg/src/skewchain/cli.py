"""Command-line driver: verify invariants, decide PBW, apply maps, enumerate.

Exit codes form the machine contract:

* 0 - all requested checks passed / the deformation is PBW,
* 1 - a check failed / the deformation is not PBW,
* 2 - the run could not be set up (bad config, bad shapes, missing data),
* 3 - the three PBW deciders disagree (a bug, reported loudly).

Reports go to stdout as canonical JSON (and to ``--json PATH`` when given);
identical (config, seed) pairs produce byte-identical reports.
"""

from __future__ import annotations

import argparse
import itertools
import random
import sys

from .fields import NonPrimeModulus
from .groups import NoIdentity, NotAssociative, NotLatinSquare
from .polynomials import DimensionMismatch, var_exp
from .skew import ContextMismatch
from .complexes import (
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
from .chainmaps import (
    DegreeOutOfRange,
    awg,
    ezg,
    get_pi_solver,
    iota,
    iota_s,
    map_by_name,
    pi,
    pi_s,
    verify_chainmap,
)
from .pbw import (
    MissingParams,
    SearchSpaceTooLarge,
    check_all,
    check_cohomological,
    check_five,
    enumerate_pbw,
    oracle_pbw,
)
from .serialize import (
    ConfigParseError,
    RunConfig,
    _ga_from_wire,
    canonical_json,
    element_from_json,
    element_to_json,
    params_to_config,
    vector_to_json,
)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2
EXIT_DISAGREE = 3

#: Everything that means "the run could not even be set up".
CONFIG_ERRORS = (
    ConfigParseError,
    NotAssociative,
    NotLatinSquare,
    NoIdentity,
    NonPrimeModulus,
    DimensionMismatch,
    ContextMismatch,
    ShapeMismatch,
    MissingParams,
    DegreeOutOfRange,
    SearchSpaceTooLarge,
    OSError,
)

VERIFY_SUITES = ("complexes", "chainmaps", "splitting", "all")
PBW_METHODS = ("five", "cohomological", "oracle", "all")
MAP_NAMES = ("awg", "ezg", "iota_s", "pi_s", "iota", "pi", "diff")


# -- verify ----------------------------------------------------------------

class _Check:
    """One named pass/fail check accumulating a count and counterexamples."""

    def __init__(self, name: str, max_failures: int = 5):
        self.name = name
        self.checked = 0
        self.failures = []
        self.max_failures = max_failures

    def record(self, ok: bool, witness=None):
        self.checked += 1
        if not ok and len(self.failures) < self.max_failures:
            self.failures.append(witness if witness is not None else {})

    def report(self) -> dict:
        return {
            "name": self.name,
            "checked": self.checked,
            "passed": not self.failures,
            "failures": self.failures,
        }


def _jsonable_slots(slots):
    def conv(v):
        if isinstance(v, tuple):
            return [conv(x) for x in v]
        return v

    return [conv(v) for v in slots]


def _random_skew_pair(alg, rng, dmax=1):
    """A random basis element (monomial, group) of S x| G, degree <= dmax."""
    mono = rng.choice(alg.monomials_up_to(dmax))
    return {(mono, rng.randrange(alg.group.order)): 1}


def _free_slot_iter(alg, kind, budgets):
    """(tag, slots) pairs for exhaustive d^2 checks on one complex family."""
    max_bar = budgets["max_bar_degree"]
    dmax = budgets["max_poly_degree"]
    order = alg.group.order
    if kind == "barskew":
        for n in range(2, max_bar + 1):
            for slots in barskew_free_basis(alg, n, dmax):
                yield ("barskew", n), slots
    elif kind == "barg":
        nonid = [g for g in range(order) if g != 0]
        for i in range(2, max_bar + 1):
            for slots in itertools.product(
                range(order), *([nonid] * i), range(order)
            ):
                yield ("barg", i), tuple(slots)
    elif kind == "bars":
        mids = alg.monomials_up_to(dmax, include_unit=False)
        z = alg.zero_exp
        for j in range(2, max_bar + 1):
            for combo in itertools.product(mids, repeat=j):
                yield ("bars", j), (z,) + combo + (z,)
    elif kind == "koszul":
        outer = alg.monomials_up_to(dmax)
        for j in range(2, min(alg.nvars, max_bar) + 1):
            for w in itertools.combinations(range(alg.nvars), j):
                for m0 in outer:
                    for m1 in outer:
                        yield ("koszul", j), (m0, w, m1)
    else:  # twisted families
        dkind = kind.split("_")[1]
        for n in range(2, max_bar + 1):
            for i in range(n + 1):
                j = n - i
                if dkind == "koszul" and j > alg.nvars:
                    continue
                tag = ("twisted", i, j, dkind)
                for slots in twisted_free_basis(alg, i, j, dkind, dmax):
                    yield tag, slots


def _suite_complexes(cfg: RunConfig) -> list:
    alg = cfg.algebra
    budgets = cfg.budgets
    rng = random.Random(budgets["seed"])
    checks = []

    for kind in ("barskew", "barg", "bars", "koszul",
                 "twisted_bar", "twisted_koszul"):
        chk = _Check(f"d2_{kind}")
        for tag, slots in _free_slot_iter(alg, kind, budgets):
            x = ChainElement.basis(alg, tag, slots)
            ok = diff(diff(x)).is_zero()
            chk.record(ok, {"tag": list(tag),
                            "input": _jsonable_slots(slots)})
        checks.append(chk)

    # randomized degree-4 terms with nontrivial outer slots
    chk = _Check("d2_random_degree4")
    dmax = budgets["max_poly_degree"]
    for _ in range(budgets["degree4_samples"]):
        which = rng.randrange(3)
        if which == 0:
            tag = ("barskew", 4)
            slots = random_barskew_slots(alg, 4, dmax, rng)
        else:
            dkind = "bar" if which == 1 else "koszul"
            jtop = 4 if dkind == "bar" else min(4, alg.nvars)
            j = rng.randrange(0, jtop + 1)
            tag = ("twisted", 4 - j, j, dkind)
            slots = random_twisted_slots(alg, 4 - j, j, dkind, dmax, rng)
        x = ChainElement.basis(alg, tag, slots)
        chk.record(diff(diff(x)).is_zero(),
                   {"tag": list(tag), "input": _jsonable_slots(slots)})
    checks.append(chk)

    def random_twisted_element(max_total=2):
        n = rng.randrange(0, max_total + 1)
        dkind = rng.choice(("bar", "koszul"))
        jtop = n if dkind == "bar" else min(n, alg.nvars)
        j = rng.randrange(0, jtop + 1)
        slots = random_twisted_slots(alg, n - j, j, dkind, dmax, rng)
        return ChainElement.basis(alg, ("twisted", n - j, j, dkind), slots)

    chk = _Check("bimodule_axioms")
    for _ in range(budgets["samples"]):
        x = random_twisted_element()
        a1, a2 = _random_skew_pair(alg, rng), _random_skew_pair(alg, rng)
        b1, b2 = _random_skew_pair(alg, rng), _random_skew_pair(alg, rng)
        left_ok = bimodule_act(alg.mul(a1, a2), x, None) == \
            bimodule_act(a1, bimodule_act(a2, x, None), None)
        right_ok = bimodule_act(None, x, alg.mul(b1, b2)) == \
            bimodule_act(None, bimodule_act(None, x, b1), b2)
        two_ok = bimodule_act(None, bimodule_act(a1, x, None), b1) == \
            bimodule_act(a1, bimodule_act(None, x, b1), None)
        chk.record(left_ok and right_ok and two_ok,
                   {"tag": list(x.tag),
                    "input": _jsonable_slots(next(iter(x.terms)))})
    checks.append(chk)

    chk = _Check("diff_commutes_with_action")
    for _ in range(budgets["samples"]):
        x = random_twisted_element(max_total=3)
        a, b = _random_skew_pair(alg, rng), _random_skew_pair(alg, rng)
        lhs = diff(bimodule_act(a, x, b))
        rhs = bimodule_act(a, diff(x), b)
        chk.record(lhs == rhs,
                   {"tag": list(x.tag),
                    "input": _jsonable_slots(next(iter(x.terms)))})
    checks.append(chk)

    chk = _Check("group_scalar_compat")
    for _ in range(budgets["samples"]):
        x = random_twisted_element()
        g = rng.randrange(alg.group.order)
        mono = rng.choice(alg.monomials_up_to(dmax))
        s = {(mono, 0): 1}
        ge = {(alg.zero_exp, g): 1}
        lhs = bimodule_act(ge, bimodule_act(s, x, None), None)
        gs = {(m, 0): c
              for (m, _h), c in alg.mul(ge, s).items()}  # ^g s as an S elt
        rhs = bimodule_act(gs, bimodule_act(ge, x, None), None)
        chk.record(lhs == rhs,
                   {"tag": list(x.tag), "g": g,
                    "input": _jsonable_slots(next(iter(x.terms)))})
    checks.append(chk)

    return [c.report() for c in checks]


def _suite_chainmaps(cfg: RunConfig) -> list:
    alg = cfg.algebra
    budgets = cfg.budgets
    degrees = tuple(range(0, budgets["max_bar_degree"] + 1))
    out = []
    for name in ("awg", "ezg", "iota_s", "pi_s", "iota", "pi"):
        rep = verify_chainmap(
            alg,
            name,
            degrees=degrees,
            max_poly_deg=budgets["max_poly_degree"],
            samples=budgets["degree4_samples"],
            sample_degree=4,
            seed=budgets["seed"],
            j_max=budgets["j_max"],
        )
        out.append({
            "name": f"chainmap_{name}",
            "checked": rep["checked"],
            "passed": not rep["failures"],
            "failures": rep["failures"],
        })
    return out


def _suite_splitting(cfg: RunConfig) -> list:
    alg = cfg.algebra
    budgets = cfg.budgets
    dmax = budgets["max_poly_degree"]
    solver = get_pi_solver(alg, max(budgets["j_max"], 4))
    checks = []

    chk = _Check("awg_ezg_identity")
    for n in range(0, 5):
        for i in range(n + 1):
            tag = ("twisted", i, n - i, "bar")
            for slots in twisted_free_basis(alg, i, n - i, "bar", dmax):
                x = ChainElement.basis(alg, tag, slots)
                ok = awg(ezg(x)) == as_vector(x)
                chk.record(ok, {"tag": list(tag),
                                "input": _jsonable_slots(slots)})
    checks.append(chk)

    chk = _Check("splitting_worked_degree2")
    if alg.group.order > 1 and alg.nvars > 0:
        # awg(ezg((1 (x) g (x) 1) (x) (1 (x) x_0 (x) 1))) reproduces the input
        tag = ("twisted", 1, 1, "bar")
        slots = (0, 1, 0, alg.zero_exp, var_exp(alg.nvars, 0), alg.zero_exp)
        x = ChainElement.basis(alg, tag, slots)
        chk.record(awg(ezg(x)) == as_vector(x),
                   {"tag": list(tag), "input": _jsonable_slots(slots)})
    checks.append(chk)

    chk = _Check("pi_iota_identity")
    for n in range(0, min(3, budgets["max_bar_degree"]) + 1):
        for i in range(n + 1):
            j = n - i
            if j > alg.nvars:
                continue
            tag = ("twisted", i, j, "koszul")
            for slots in twisted_free_basis(alg, i, j, "koszul", dmax):
                x = ChainElement.basis(alg, tag, slots)
                ok = pi(iota(x, solver), solver) == as_vector(x)
                chk.record(ok, {"tag": list(tag),
                                "input": _jsonable_slots(slots)})
    checks.append(chk)

    chk = _Check("pi_s_iota_s_identity")
    z = alg.zero_exp
    for j in range(0, min(alg.nvars, budgets["max_bar_degree"]) + 1):
        for w in itertools.combinations(range(alg.nvars), j):
            x = ChainElement.basis(alg, ("koszul", j), (z, w, z))
            ok = pi_s(iota_s(x), solver) == as_vector(x)
            chk.record(ok, {"tag": ["koszul", j], "wedge": list(w)})
    checks.append(chk)

    chk = _Check("iota_graded")
    for n in range(0, min(3, budgets["max_bar_degree"]) + 1):
        for i in range(n + 1):
            j = n - i
            if j > alg.nvars:
                continue
            tag = ("twisted", i, j, "koszul")
            for slots in twisted_free_basis(alg, i, j, "koszul", dmax):
                want = term_s_degree(alg, tag, slots)
                image = iota(ChainElement.basis(alg, tag, slots), solver)
                ok = all(
                    term_s_degree(alg, el.tag, s) == want
                    for el in image.parts.values()
                    for s in el.terms
                )
                chk.record(ok, {"tag": list(tag),
                                "input": _jsonable_slots(slots)})
    checks.append(chk)

    chk = _Check("pi_graded")
    for n in range(0, budgets["max_bar_degree"] + 1):
        for slots in barskew_free_basis(alg, n, dmax):
            tag = ("barskew", n)
            want = term_s_degree(alg, tag, slots)
            image = pi(ChainElement.basis(alg, tag, slots), solver)
            ok = all(
                term_s_degree(alg, el.tag, s) == want
                for el in image.parts.values()
                for s in el.terms
            )
            chk.record(ok, {"tag": list(tag),
                            "input": _jsonable_slots(slots)})
    checks.append(chk)

    return [c.report() for c in checks]


def run_verify(cfg: RunConfig, suite: str):
    """Run one (or all) verification suites; returns (report, exit code)."""
    checks = []
    if suite in ("complexes", "all"):
        checks += _suite_complexes(cfg)
    if suite in ("chainmaps", "all"):
        checks += _suite_chainmaps(cfg)
    if suite in ("splitting", "all"):
        checks += _suite_splitting(cfg)
    passed = all(c["passed"] for c in checks)
    report = {
        "command": "verify",
        "suite": suite,
        "seed": cfg.budgets["seed"],
        "budgets": cfg.budgets,
        "checks": checks,
        "passed": passed,
    }
    return report, (EXIT_PASS if passed else EXIT_FAIL)


# -- pbw -------------------------------------------------------------------

def run_pbw(cfg: RunConfig, method: str):
    if cfg.params is None:
        raise MissingParams("config has no params block")
    alg = cfg.algebra
    params = cfg.params
    j_max = cfg.budgets["j_max"]
    reports = {}
    agree = True
    if method == "five":
        rep = check_five(alg, params)
        reports[rep.method] = rep.to_json_dict()
        verdict = rep.verdict
    elif method == "cohomological":
        rep = check_cohomological(alg, params, j_max=j_max)
        reports[rep.method] = rep.to_json_dict()
        verdict = rep.verdict
    elif method == "oracle":
        rep = oracle_pbw(alg, params)
        reports[rep.method] = rep.to_json_dict()
        verdict = rep.verdict
    else:
        three, agree = check_all(alg, params, j_max=j_max)
        reports = {k: r.to_json_dict() for k, r in three.items()}
        verdict = three["five_conditions"].verdict
    report = {
        "command": "pbw",
        "method": method,
        "seed": cfg.budgets["seed"],
        "params": params_to_config(params),
        "verdict": verdict,
        "agree": agree,
        "reports": reports,
    }
    if not agree:
        return report, EXIT_DISAGREE
    return report, (EXIT_PASS if verdict else EXIT_FAIL)


# -- apply -----------------------------------------------------------------

_MAP_DOMAINS = {
    "awg": ("barskew",),
    "ezg": ("twisted:bar",),
    "iota_s": ("koszul",),
    "pi_s": ("bars",),
    "iota": ("twisted:koszul",),
    "pi": ("barskew",),
    "diff": ("barskew", "barg", "bars", "koszul",
             "twisted:bar", "twisted:koszul"),
}


def _domain_key(tag):
    if tag[0] == "twisted":
        return f"twisted:{tag[3]}"
    return tag[0]


def run_apply(cfg: RunConfig, map_name: str, input_doc: dict):
    alg = cfg.algebra
    x = element_from_json(alg, input_doc)
    if _domain_key(x.tag) not in _MAP_DOMAINS[map_name]:
        raise ShapeMismatch(
            f"{map_name} is not defined on {x.tag}; "
            f"expected one of {_MAP_DOMAINS[map_name]}"
        )
    if map_name == "diff":
        image = diff(x)
    else:
        solver = get_pi_solver(alg, max(cfg.budgets["j_max"], 4))
        image = as_vector(map_by_name(map_name, solver)(x))
    report = {
        "command": "apply",
        "map": map_name,
        "seed": cfg.budgets["seed"],
        "input": element_to_json(x),
        "output": vector_to_json(image),
    }
    return report, EXIT_PASS


# -- enumerate -------------------------------------------------------------

def run_enumerate(cfg: RunConfig):
    spec = cfg.enumerate_spec
    if spec is None:
        raise ConfigParseError("config has no enumerate block")
    alg = cfg.algebra
    unknown = set(spec) - {"kappa_candidates", "lambda_candidates", "cap"}
    if unknown:
        raise ConfigParseError(f"unknown enumerate keys {sorted(unknown)}")
    kcands = [
        _ga_from_wire(alg.field, entry, f"kappa_candidates[{pos}]")
        for pos, entry in enumerate(spec.get("kappa_candidates", []))
    ]
    lcands = [
        _ga_from_wire(alg.field, entry, f"lambda_candidates[{pos}]")
        for pos, entry in enumerate(spec.get("lambda_candidates", []))
    ]
    kwargs = {}
    if "cap" in spec:
        kwargs["cap"] = int(spec["cap"])
    found = enumerate_pbw(alg, kcands, lcands, **kwargs)
    report = {
        "command": "enumerate",
        "seed": cfg.budgets["seed"],
        "count": len(found),
        "results": [params_to_config(p) for p in found],
    }
    return report, EXIT_PASS


# -- entry point -----------------------------------------------------------

def _read_input_doc(path: str) -> dict:
    import json as _json

    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    try:
        return _json.loads(text)
    except ValueError as e:
        raise ShapeMismatch(f"input element is not valid JSON: {e}") from e


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="skewchain",
        description="Exact verification of twisted-resolution chain maps "
                    "and PBW deformation checks for S(V) x| G.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", required=True, help="JSON run config")
        p.add_argument("--seed", type=int, default=None,
                       help="override the seed budget")
        p.add_argument("--max-degree", type=int, default=None,
                       help="override the max bar degree budget")
        p.add_argument("--json", default=None, metavar="PATH",
                       help="also write the report to this file")

    p = sub.add_parser("verify", help="run invariant suites")
    p.add_argument("suite", nargs="?", default="all", choices=VERIFY_SUITES)
    common(p)

    p = sub.add_parser("pbw", help="decide the PBW property")
    p.add_argument("method", nargs="?", default="all", choices=PBW_METHODS)
    common(p)

    p = sub.add_parser("apply", help="apply a chain map to an element")
    p.add_argument("map", choices=MAP_NAMES)
    common(p)
    p.add_argument("--input", default="-", metavar="PATH",
                   help="element JSON file ('-' = stdin)")

    p = sub.add_parser("enumerate", help="list parameters passing the "
                                         "five-condition check")
    common(p)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig.from_file(args.config)
        if args.seed is not None:
            if args.seed < 0:
                raise ConfigParseError("seed must be nonnegative")
            cfg.budgets["seed"] = args.seed
        if args.max_degree is not None:
            if args.max_degree <= 0:
                raise ConfigParseError("max degree must be positive")
            cfg.budgets["max_bar_degree"] = args.max_degree
        if args.command == "verify":
            report, code = run_verify(cfg, args.suite)
        elif args.command == "pbw":
            report, code = run_pbw(cfg, args.method)
        elif args.command == "apply":
            report, code = run_apply(cfg, args.map,
                                     _read_input_doc(args.input))
        else:
            report, code = run_enumerate(cfg)
    except CONFIG_ERRORS as e:
        report = {
            "command": args.command,
            "error": {"type": type(e).__name__, "detail": str(e)},
        }
        code = EXIT_CONFIG
    text = canonical_json(report)
    sys.stdout.write(text)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
