"""Command-line front end.

Exit codes: 0 true / witness found, 1 false / no witness, 2 input error,
3 unmet precondition (for instance Dehn's algorithm on an uncertified
presentation).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import monoid_shift as ms
from . import subset_qo as sq
from . import trees as tr
from .cancellation import builders as cb
from .cancellation.dehn import UncertifiedError, dehn_is_identity, dehn_trace, word_order_bounded
from .cancellation.presentation import (
    Presentation,
    check_cprime,
    format_lambda,
    parse_lambda,
    symmetrize,
)
from .qo_core import PreconditionError
from .suites import run_suite, suite_names
from .words import Word

SCHEMA = "borel-qo/report/v1"
LEQ_VARIANTS = ("tree", "prefix", "suffix", "translate", "mbt", "conj-K")


class InputError(Exception):
    """Bad file, bad JSON or a malformed object; exit code 2."""


def _read_json(path: str | None, flag: str = "--input"):
    if path is None:
        raise InputError(f"{flag} is required")
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None
    try:
        return json.loads(text), hashlib.sha256(text.encode()).hexdigest()[:16]
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: invalid JSON ({e.msg} at line {e.lineno})") from None


def _tree_from(data, alphabet: str | None = None) -> tr.FiniteTree:
    if isinstance(data, dict):
        alphabet = data.get("alphabet", alphabet)
        data = data.get("nodes")
    if not isinstance(data, list):
        raise InputError("a tree is a JSON list of node strings ('-' for the root)")
    nodes = ["" if s == "-" else str(s) for s in data]
    if alphabet is None:
        letters = sorted(set("".join(nodes)))
        alphabet = "ab" if set(letters) <= set("ab") and letters else "01"
        if not set(letters) <= set(alphabet):
            alphabet = "".join(letters)
    return tr.FiniteTree(frozenset(nodes), alphabet)


def _string_set(data) -> list[str]:
    if isinstance(data, dict):
        data = data.get("words", data.get("marks"))
    if not isinstance(data, list) or not all(isinstance(s, str) for s in data):
        raise InputError("expected a JSON list of word strings")
    return ["" if s == "-" else s for s in data]


def _presentation(path: str | None) -> tuple[Presentation, str]:
    data, digest = _read_json(path)
    try:
        return Presentation.from_json(data), digest
    except (KeyError, TypeError) as e:
        raise InputError(f"not a presentation: missing {e}") from None


def _report(args, outcome, **fields) -> dict:
    rep = {"schema": SCHEMA, "command": args.command, "outcome": outcome}
    rep.update({k: v for k, v in fields.items() if v is not None})
    return rep


def _emit(args, rep: dict) -> None:
    if getattr(args, "timing", False):
        rep["timing"] = {"seconds": round(time.perf_counter() - args._start, 3)}
    if args.json:
        print(json.dumps(rep, sort_keys=True, indent=2))
        return
    for k in sorted(rep):
        v = rep[k]
        print(f"{k}: {json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v}")


# ---- commands ------------------------------------------------------------------


def cmd_build(args) -> int:
    data, digest = _read_json(args.input)
    if args.kind == "tree-group":
        T = _tree_from(data, "01")
        if args.depth is None:
            raise InputError("--depth is required for tree-group")
        P = cb.build_tree_group(T, args.depth)
    else:
        if not isinstance(data, dict):
            raise InputError('a graph is {"vertices": n, "edges": [[i, j], ...]}')
        try:
            P = cb.build_graph_group(cb.Graph.from_json(data))
        except KeyError as e:
            raise InputError(f"graph is missing {e}") from None
    R = symmetrize(P)
    status = None
    for lam in (Fraction(1, 8), Fraction(1, 6)):
        if check_cprime(R, lam, args.jobs)[0]:
            status = lam
            break
    P = cb.record_certificate(P, status) if status else P
    out = json.dumps(P.to_json(), sort_keys=True)
    if args.output:
        Path(args.output).write_text(out + "\n")
    else:
        print(out)
        return 0
    _emit(args, _report(args, True, kind=args.kind, input_hash=digest, output=args.output,
                        relators=len(P.relators), cprime=P.metadata.get("cprime")))
    return 0


def cmd_check_cprime(args) -> int:
    P, digest = _presentation(args.input)
    lam = parse_lambda(args.lam)
    R = symmetrize(P)
    ok, cert = check_cprime(R, lam, args.jobs)
    cert_json = {"max_ratio": format_lambda(cert.ratio), "piece_length": cert.length}
    if cert.witness is not None:
        u, v = cert.witness
        # re-verify: both are elements and share exactly the claimed prefix
        assert R.contains_string(u) and R.contains_string(v) and u != v
        k = 0
        while k < min(len(u), len(v)) and u[k] == v[k]:
            k += 1
        assert k == cert.length
        cert_json["piece"] = str(R.codec.decode(u[:k]))
        cert_json["relator_lengths"] = [len(u), len(v)]
    _emit(args, _report(args, ok, input_hash=digest, **{"lambda": format_lambda(lam)}, certificate=cert_json))
    return 0 if ok else 1


def _word_arg(text: str | None) -> Word:
    if text is None:
        raise InputError("--word is required")
    try:
        return Word.parse(text)
    except ValueError as e:
        raise InputError(str(e)) from None


def cmd_dehn(args) -> int:
    P, digest = _presentation(args.input)
    w = _word_arg(args.word)
    R = cb.certified_set(P)
    ok = dehn_is_identity(w, R)
    trace = dehn_trace(w, R)
    _emit(args, _report(args, ok, input_hash=digest, word=str(w), steps=len(trace) - 1, reduced=str(trace[-1])))
    return 0 if ok else 1


def cmd_order(args) -> int:
    P, digest = _presentation(args.input)
    w = _word_arg(args.word)
    R = cb.certified_set(P)
    n = word_order_bounded(w, R, args.max if args.max is not None else 100)
    if n is not None:
        assert dehn_is_identity(w ** n, R)
    _emit(args, _report(args, n is not None, input_hash=digest, word=str(w), order=n))
    return 0 if n is not None else 1


def _leq(variant: str, left, right, order: int | None):
    """Witness (JSON-ready) or None, re-verified by the definitional check."""
    if variant == "tree":
        T, T2 = _tree_from(left), _tree_from(right)
        if T.alphabet != T2.alphabet:
            T2 = tr.FiniteTree(T2.nodes, "".join(sorted(set(T.alphabet) | set(T2.alphabet))))
            T = tr.FiniteTree(T.nodes, T2.alphabet)
        u = tr.tree_leq(T, T2)
        if u is not None:
            assert tr.subtree(T2, u).nodes == T.nodes
        return None if u is None else (u or "-")
    if variant in ("prefix", "suffix"):
        A, B = _string_set(left), _string_set(right)
        m = (ms.prefix_qo_leq if variant == "prefix" else ms.suffix_qo_leq)(A, B)
        if m is not None:
            if variant == "prefix":
                assert {m + a for a in A} == {b for b in B if b.startswith(m)}
            else:
                assert {a + m for a in A} == {b for b in B if b.endswith(m)}
        return None if m is None else (m or "-")
    if variant == "mbt":
        M, M2 = tr.encode_t(_string_set(left)), tr.encode_t(_string_set(right))
        u = tr.mbt_leq(M, M2)
        if u is not None:
            assert tr.mbt_subtree(M2, u).marks == M.marks
        return None if u is None else (u or "-")
    A = frozenset(Word.parse(s or "-") for s in _string_set(left))
    B = frozenset(Word.parse(s or "-") for s in _string_set(right))
    if variant == "translate":
        gs = sq.translate_qo_leq(A, B)
        if gs is not None:
            assert frozenset.intersection(*(sq.translate_set(g, B) for g in gs)) == A
        return None if gs is None else [str(g) for g in gs]
    res = sq.conj_qo_leq_K(A, B, order)
    if res.witness is None:
        return None
    return [str(g) for g in res.witness]


def cmd_leq(args) -> int:
    left, h1 = _read_json(args.input)
    right, h2 = _read_json(args.right, "--right")
    witness = _leq(args.variant, left, right, args.order)
    _emit(args, _report(args, witness is not None, variant=args.variant, input_hash=h1, right_hash=h2,
                        witness=witness if witness is not None else "no witness"))
    return 0 if witness is not None else 1


def cmd_suite(args) -> int:
    res = run_suite(args.name, size=args.size, seed=args.seed, jobs=args.jobs, corrupt=args.corrupt)
    rep = _report(args, res.passed, **res.to_json())
    _emit(args, rep)
    return 0 if res.passed else 1


# ---- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="borel-qo", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    common.add_argument("--timing", action="store_true", help="add wall-clock timing to the report")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", parents=[common], help="build a tree-group or graph-group presentation")
    b.add_argument("kind", choices=("tree-group", "graph-group"))
    b.add_argument("--input", required=True)
    b.add_argument("--depth", type=int)
    b.add_argument("--output", help="write the presentation here instead of stdout")
    b.set_defaults(func=cmd_build)

    c = sub.add_parser("check-cprime", parents=[common], help="check the C'(lambda) condition")
    c.add_argument("--input", required=True)
    c.add_argument("--lambda", dest="lam", default="1/6", help="P/Q, default 1/6")
    c.set_defaults(func=cmd_check_cprime)

    d = sub.add_parser("dehn", parents=[common], help="decide whether a word is trivial")
    d.add_argument("--input", required=True)
    d.add_argument("--word", required=True)
    d.set_defaults(func=cmd_dehn)

    o = sub.add_parser("order", parents=[common], help="least n <= --max with w^n trivial")
    o.add_argument("--input", required=True)
    o.add_argument("--word", required=True)
    o.add_argument("--max", type=int, default=100)
    o.set_defaults(func=cmd_order)

    l = sub.add_parser("leq", parents=[common], help="compare two objects under a quasi-order")
    l.add_argument("variant", choices=LEQ_VARIANTS)
    l.add_argument("--input", required=True)
    l.add_argument("--right", required=True)
    l.add_argument("--order", type=int, default=None, help="order of h for conj-K (default infinite)")
    l.set_defaults(func=cmd_leq)

    s = sub.add_parser("suite", parents=[common], help="run a named property suite")
    s.add_argument("name", choices=suite_names())
    s.add_argument("--size", type=float, default=1.0, help="scale factor for randomized portions")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--corrupt", action="store_true", help="use a deliberately wrong oracle (harness self-test)")
    s.set_defaults(func=cmd_suite)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args._start = time.perf_counter()
    try:
        return args.func(args)
    except UncertifiedError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except PreconditionError as e:
        print(f"error: precondition failed: {e}", file=sys.stderr)
        return 3
    except (InputError, ValueError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
