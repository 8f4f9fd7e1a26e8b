"""Command-line front end: subcommands dispatching to the library, one
deterministic JSON report per line.

Exit codes: 0 on success, 1 on a domain error, 2 on a usage error.  The env
var ARITHGENUS_PREC_BITS overrides the default working precision; display
output uses 50 significant digits.  ``--batch`` reads one command object
per line from stdin ({"argv": [...]}) and never lets one bad line abort the
stream.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from mpmath import mp

from . import brauer, genus, qforms, quadfield, spectrum, weakcomm
from .arith import Place, hilbert_symbol, is_squarefree

DISPLAY_DIGITS = 50
DEFAULT_PREC_BITS = 192


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # raise instead of exiting so parse() is testable
        raise UsageError(message)


@dataclass(frozen=True)
class Command:
    verb: str
    args: dict[str, Any]


@dataclass(frozen=True)
class Report:
    ok: bool
    result: Any = None
    error: str | None = None
    prec: int | None = None

    def to_json(self) -> str:
        payload: dict[str, Any] = {"ok": self.ok}
        if self.prec is not None:
            payload["prec"] = self.prec
        if self.ok:
            payload["result"] = self.result
        else:
            payload["error"] = self.error
        return json.dumps(payload, separators=(",", ":"))


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"malformed rational {text!r}: {exc}") from None


def _place(text: str) -> Place:
    try:
        return Place.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _class(text: str) -> brauer.BrauerClass:
    try:
        return brauer.parse_class(text)
    except ValueError as exc:
        raise UsageError(f"malformed class {text!r}: {exc}") from None


def _form(text: str) -> qforms.QuadraticForm:
    try:
        return qforms.QuadraticForm.of(*(Fraction(c) for c in text.split(",")))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"malformed form {text!r}: {exc}") from None


def _squarefree_d(value: int) -> int:
    if value <= 1 or not is_squarefree(value):
        raise UsageError(f"d must be a squarefree integer > 1, got {value}")
    return value


def _rational_set(text: str) -> weakcomm.RationalEigenvalues:
    values = [_rational(chunk) for chunk in text.split(",") if chunk.strip()]
    if not values:
        raise UsageError("eigenvalue set must be nonempty")
    if any(v == 0 for v in values):
        raise UsageError("eigenvalues must be nonzero")
    return weakcomm.RationalEigenvalues(tuple(values))


def _parse_triple(text: str) -> qforms.ArithmeticTriple:
    fields: dict[str, str] = {}
    for chunk in text.split(";"):
        if not chunk.strip():
            continue
        key, sep, value = chunk.partition("=")
        if not sep:
            raise UsageError(f"malformed triple component {chunk!r}")
        fields[key.strip()] = value.strip()
    tag = fields.get("K", "Q")
    s_text = fields.get("S", "")
    try:
        places = frozenset(int(p) for p in s_text.split(",") if p.strip())
    except ValueError:
        raise UsageError(f"malformed place set {s_text!r}") from None
    group: qforms.GroupDatum
    if tag != "Q":
        group = fields.get("form") or fields.get("algebra") or fields.get("group", "")
    elif "form" in fields:
        group = _form(fields["form"])
    elif "algebra" in fields:
        group = _class(fields["algebra"])
    elif "quat" in fields:
        a, _, b = fields["quat"].partition(",")
        group = brauer.class_from_quaternion(_rational(a), _rational(b))
    else:
        raise UsageError("triple needs form=, algebra= or quat=")
    try:
        return qforms.ArithmeticTriple(group, tag, places)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _decimal(value) -> str:
    return mp.nstr(value, DISPLAY_DIGITS)


def _build_parser() -> _Parser:
    parser = _Parser(prog="arithgenus", description=__doc__)
    parser.add_argument("--batch", action="store_true", help="read {'argv': [...]} JSON lines from stdin")
    sub = parser.add_subparsers(dest="verb")

    p = sub.add_parser("hilbert", help="Hilbert symbol (a,b) at a place")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("v")

    p = sub.add_parser("brauer", help="inspect or combine Brauer classes")
    p.add_argument("--algebra", help="class string, e.g. 2:1/3,3:1/3,5:1/3")
    p.add_argument("--quaternion", help="a,b for the quaternion class (a,b)")
    p.add_argument("--add", help="class string to add")
    p.add_argument("--neg", action="store_true", help="negate (opposite algebra)")

    p = sub.add_parser("genus", help="enumerate the genus of a class")
    p.add_argument("--algebra", required=True)

    p = sub.add_parser("family", help="cubic classes ramified at given primes")
    p.add_argument("--primes", required=True, help="comma-separated primes")

    p = sub.add_parser("unit", help="fundamental unit of Q(sqrt(d))")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--norm-one", action="store_true", help="smallest unit of norm +1")

    p = sub.add_parser("eta", help="sine-product unit eta(d)")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--prec", type=int)

    p = sub.add_parser("classnum", help="class number of Q(sqrt(d))")
    p.add_argument("--d", type=int, required=True)

    p = sub.add_parser("spectrum", help="rational length spectrum generators")
    p.add_argument("--algebra", required=True)
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--prec", type=int)

    p = sub.add_parser("lencomm", help="length-commensurability of two surfaces")
    p.add_argument("--algebra1", required=True)
    p.add_argument("--algebra2", required=True)
    p.add_argument("--bound", type=int)

    p = sub.add_parser("weakcomm", help="weak commensurability of eigenvalue sets")
    p.add_argument("--set1", required=True)
    p.add_argument("--set2", required=True)

    p = sub.add_parser("form", help="invariants and isotropy of a form")
    p.add_argument("--form", required=True, dest="form_text")
    p.add_argument("--place")

    p = sub.add_parser("twins", help="twins test for a B/C pair")
    p.add_argument("--form", required=True, dest="form_text")
    p.add_argument("--algebra", required=True)
    p.add_argument("--real-definite", action="store_true")

    p = sub.add_parser("triple", help="commensurability of arithmetic triples")
    p.add_argument("--triple1", required=True)
    p.add_argument("--triple2", required=True)

    p = sub.add_parser("weyl", help="Weyl-law main term")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--volume", type=float, required=True)
    p.add_argument("--lam", "--lambda", type=float, required=True, dest="lam")

    return parser


def parse(argv: list[str]) -> Command:
    """Validate argv into a Command; raises UsageError on any bad input."""
    ns = _build_parser().parse_args(argv)
    if ns.batch:
        return Command("batch", {})
    if ns.verb is None:
        raise UsageError("a subcommand is required (or --batch)")
    args: dict[str, Any] = {}
    if ns.verb == "hilbert":
        args = {"a": _rational(ns.a), "b": _rational(ns.b), "v": _place(ns.v)}
        if args["a"] == 0 or args["b"] == 0:
            raise UsageError("hilbert symbol arguments must be nonzero")
    elif ns.verb == "brauer":
        if (ns.algebra is None) == (ns.quaternion is None):
            raise UsageError("give exactly one of --algebra or --quaternion")
        if ns.quaternion is not None:
            a_text, sep, b_text = ns.quaternion.partition(",")
            if not sep:
                raise UsageError("--quaternion expects 'a,b'")
            args["base"] = brauer.class_from_quaternion(
                _rational(a_text), _rational(b_text)
            )
        else:
            args["base"] = _class(ns.algebra)
        args["add"] = _class(ns.add) if ns.add is not None else None
        args["neg"] = ns.neg
    elif ns.verb == "genus":
        args = {"algebra": _class(ns.algebra)}
    elif ns.verb == "family":
        try:
            args = {"primes": tuple(int(p) for p in ns.primes.split(","))}
        except ValueError:
            raise UsageError(f"malformed prime list {ns.primes!r}") from None
    elif ns.verb == "unit":
        args = {"d": _squarefree_d(ns.d), "norm_one": ns.norm_one}
    elif ns.verb == "eta":
        args = {"d": _squarefree_d(ns.d), "prec": _prec_bits(ns.prec)}
    elif ns.verb == "classnum":
        args = {"d": _squarefree_d(ns.d)}
    elif ns.verb == "spectrum":
        if ns.bound < 2:
            raise UsageError("bound must be at least 2")
        args = {
            "algebra": _class(ns.algebra),
            "bound": ns.bound,
            "prec": _prec_bits(ns.prec),
        }
    elif ns.verb == "lencomm":
        if ns.bound is not None and ns.bound < 2:
            raise UsageError("bound must be at least 2")
        args = {
            "a1": _class(ns.algebra1),
            "a2": _class(ns.algebra2),
            "bound": ns.bound,
        }
    elif ns.verb == "weakcomm":
        args = {"s1": _rational_set(ns.set1), "s2": _rational_set(ns.set2)}
    elif ns.verb == "form":
        args = {
            "form": _form(ns.form_text),
            "place": _place(ns.place) if ns.place else None,
        }
    elif ns.verb == "twins":
        form = _form(ns.form_text)
        if form.dim % 2 == 0 or form.dim < 5:
            raise UsageError("twins needs an odd-dimensional form of dim >= 5")
        args = {
            "b": qforms.GroupB(form),
            "algebra": _class(ns.algebra),
            "real_definite": ns.real_definite,
        }
    elif ns.verb == "triple":
        args = {"t1": _parse_triple(ns.triple1), "t2": _parse_triple(ns.triple2)}
    elif ns.verb == "weyl":
        if ns.dim < 1 or ns.volume <= 0 or ns.lam < 0:
            raise UsageError("weyl needs dim >= 1, volume > 0, lambda >= 0")
        args = {"query": spectrum.WeylQuery(ns.dim, ns.volume, ns.lam)}
    return Command(ns.verb, args)


def _prec_bits(flag_value: int | None) -> int:
    if flag_value is not None:
        if flag_value < 64:
            raise UsageError("precision must be at least 64 bits")
        return flag_value
    env = os.environ.get("ARITHGENUS_PREC_BITS")
    if env is not None:
        try:
            bits = int(env)
        except ValueError:
            raise UsageError(f"ARITHGENUS_PREC_BITS={env!r} is not an integer") from None
        if bits < 64:
            raise UsageError("ARITHGENUS_PREC_BITS must be at least 64")
        return bits
    return DEFAULT_PREC_BITS


def _class_report(c: brauer.BrauerClass) -> dict[str, Any]:
    local, glob = brauer.index_profile(c)
    return {
        "class": str(c),
        "local_index": {str(v): r for v, r in local.items()},
        "global_index": glob,
    }


def execute(cmd: Command) -> Report:
    """Run a validated command; library errors become Report errors."""
    try:
        return _dispatch(cmd)
    except (ValueError, RuntimeError, ZeroDivisionError) as exc:
        return Report(ok=False, error=str(exc))


def _dispatch(cmd: Command) -> Report:
    a = cmd.args
    if cmd.verb == "hilbert":
        return Report(True, hilbert_symbol(a["a"], a["b"], a["v"]))
    if cmd.verb == "brauer":
        cls = a["base"]
        if a["add"] is not None:
            cls = brauer.class_add(cls, a["add"])
        if a["neg"]:
            cls = brauer.class_neg(cls)
        return Report(True, _class_report(cls))
    if cmd.verb == "genus":
        return Report(True, genus.genus_report(genus.genus_enumerate(a["algebra"])))
    if cmd.verb == "family":
        members = genus.epsilon_family(a["primes"])
        return Report(
            True,
            {
                "primes": list(a["primes"]),
                "size": len(members),
                "members": [str(m) for m in members],
            },
        )
    if cmd.verb == "unit":
        u = (
            quadfield.norm_one_unit(a["d"])
            if a["norm_one"]
            else quadfield.fundamental_unit(a["d"])
        )
        return Report(
            True,
            {
                "d": a["d"],
                "x": str(u.x),
                "y": str(u.y),
                "norm": u.norm,
                "text": str(u),
            },
        )
    if cmd.verb == "eta":
        value = quadfield.eta_analytic(a["d"], a["prec"])
        return Report(
            True, {"d": a["d"], "eta": _decimal(value)}, prec=a["prec"]
        )
    if cmd.verb == "classnum":
        data = quadfield.class_number(a["d"])
        return Report(
            True,
            {
                "d": a["d"],
                "h": data.class_number,
                "narrow": data.narrow_class_number,
            },
        )
    if cmd.verb == "spectrum":
        gens = spectrum.spectrum_generators(a["algebra"], a["bound"], a["prec"])
        return Report(
            True,
            [{"d": g.d, "log_eta": _decimal(g.log_eta)} for g in gens],
            prec=a["prec"],
        )
    if cmd.verb == "lencomm":
        bound = a["bound"]
        if bound is None:
            bound = spectrum.default_commensurability_bound(a["a1"], a["a2"])
        verdict = spectrum.length_commensurable(a["a1"], a["a2"], bound)
        return Report(True, {"length_commensurable": verdict, "bound": bound})
    if cmd.verb == "weakcomm":
        verdict = weakcomm.weakly_commensurable(a["s1"], a["s2"])
        result = {"weakly_commensurable": verdict}
        witness = weakcomm.intersection_witness(a["s1"], a["s2"])
        if verdict and witness is not None:
            result["witness"] = str(witness)
        return Report(True, result)
    if cmd.verb == "form":
        f, place = a["form"], a["place"]
        if place is not None:
            return Report(
                True,
                {
                    "place": str(place),
                    "isotropic": qforms.is_isotropic_local(f, place),
                    "witt": qforms.witt_index_local(f, place),
                },
            )
        inv = qforms.form_invariants(f)
        return Report(
            True,
            {
                "dim": inv.dim,
                "disc": inv.disc,
                "signature": list(inv.signature),
                "hasse_minus_places": [str(v) for v in inv.hasse_minus],
                "isotropic_global": qforms.is_isotropic_global(f),
                "witt_global": qforms.witt_index_global(f),
            },
        )
    if cmd.verb == "twins":
        b: qforms.GroupB = a["b"]
        c = qforms.GroupC(a["algebra"], b.rank, a["real_definite"])
        return Report(True, {"twins": qforms.twins(b, c)})
    if cmd.verb == "triple":
        verdict, reason = qforms.triple_verdict(a["t1"], a["t2"])
        result: dict[str, Any] = {"commensurable": verdict}
        if reason is not None:
            result["reason"] = reason
        return Report(True, result)
    if cmd.verb == "weyl":
        return Report(True, spectrum.weyl_main_term(a["query"]))
    raise RuntimeError(f"unhandled verb {cmd.verb}")


def _run_batch(stream, out) -> int:
    for line in stream:
        line = line.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
            argv = obj["argv"]
            if not isinstance(argv, list) or not all(isinstance(x, str) for x in argv):
                raise UsageError("'argv' must be a list of strings")
            report = execute(parse(argv))
        except UsageError as exc:
            report = Report(ok=False, error=f"usage: {exc}")
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            report = Report(ok=False, error=f"bad batch line: {exc}")
        print(report.to_json(), file=out)
    return 0


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:]) if argv is None else argv
    try:
        cmd = parse(argv)
    except UsageError as exc:
        print(Report(ok=False, error=f"usage: {exc}").to_json(), file=sys.stderr)
        return 2
    if cmd.verb == "batch":
        return _run_batch(sys.stdin, sys.stdout)
    report = execute(cmd)
    print(report.to_json())
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
