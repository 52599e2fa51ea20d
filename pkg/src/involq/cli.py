"""Command-line interface.

Subcommands: ``enum`` (enumerate a presentation file), ``montesinos``
(generate, enumerate and optionally cross-check one parameter triple),
``sweep`` (batch over a parameter range, one JSON record per line),
``geodesics`` and ``aut`` (structural reports).

Exit codes: 0 ok, 1 check mismatch, 2 input error, 3 budget exceeded, so
scripted sweeps can tell a disproof from a resource limit.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import analysis, montesinos
from .winker import (
    BudgetExceeded,
    DEFAULT_MAX_VERTICES,
    FiniteQuandle,
    Generator,
    Presentation,
    Relation,
    components,
    enumerate_quandle,
    isomorphic,
)
from .words import apply_word

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


class PresentationParseError(Exception):
    """Parse failure with 1-based line and column of the offending token."""

    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.message = message


_TERM_RE = re.compile(r"^\s*(?P<base>[^\s^()]+)\s*(?:\^\(\s*(?P<word>[^)]*)\)\s*)?$")


def parse_presentation(text: str) -> Presentation:
    """Parse the presentation file format.

    One ``gens:`` line declaring generator tokens, followed by ``rel:``
    lines of the form ``a^(W) = b^(V)`` where W and V are whitespace
    separated generator tokens and either exponent may be absent.  Blank
    lines and ``#`` comments are ignored.
    """
    gens: list[str] = []
    ids: dict[str, int] = {}
    relations: list[Relation] = []
    saw_gens = False

    def resolve(token: str, lineno: int, line: str) -> int:
        if token not in ids:
            col = line.find(token) + 1
            raise PresentationParseError(lineno, col, f"undeclared generator {token!r}")
        return ids[token]

    def parse_term(term: str, lineno: int, line: str) -> tuple[int, tuple[int, ...]]:
        m = _TERM_RE.match(term)
        if not m or not m.group("base"):
            col = line.find(term.strip()) + 1 if term.strip() else 1
            raise PresentationParseError(lineno, max(col, 1), f"malformed term {term.strip()!r}")
        base = resolve(m.group("base"), lineno, line)
        word_src = m.group("word")
        letters: tuple[int, ...] = ()
        if word_src is not None:
            letters = tuple(resolve(tok, lineno, line) for tok in word_src.split())
        return base, letters

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        stripped = line.strip()
        if stripped.startswith("gens:"):
            if saw_gens:
                raise PresentationParseError(lineno, 1, "duplicate gens: line")
            saw_gens = True
            tokens = stripped[len("gens:"):].split()
            if not tokens:
                raise PresentationParseError(lineno, 1, "gens: line declares no generators")
            for tok in tokens:
                if tok in ids:
                    col = line.find(tok) + 1
                    raise PresentationParseError(lineno, col, f"duplicate generator {tok!r}")
                ids[tok] = len(gens) + 1
                gens.append(tok)
        elif stripped.startswith("rel:"):
            if not saw_gens:
                raise PresentationParseError(lineno, 1, "rel: before gens:")
            body = stripped[len("rel:"):]
            if body.count("=") != 1:
                raise PresentationParseError(lineno, 1, "relation needs exactly one '='")
            lhs_src, rhs_src = body.split("=")
            lhs = parse_term(lhs_src, lineno, line)
            rhs = parse_term(rhs_src, lineno, line)
            relations.append(Relation(lhs, rhs))
        else:
            raise PresentationParseError(lineno, 1, f"unrecognized line {stripped!r}")
    if not saw_gens:
        raise PresentationParseError(1, 1, "missing gens: line")
    generators = tuple(Generator(i + 1, name) for i, name in enumerate(gens))
    return Presentation(generators, tuple(relations))


def write_dot(q: FiniteQuandle, stream) -> None:
    """Undirected DOT export: one node per element, one edge per unordered
    (element, generator) pair including loops, labeled by generator name."""
    stream.write("graph quandle {\n")
    for v in range(q.n):
        stream.write(f'  {v} [label="{v}"];\n')
    rows = q.table.tolist()
    for gi, name in enumerate(q.gen_names):
        e = q.gen_elements[gi]
        for v in range(q.n):
            u = rows[v][e]
            if u >= v:
                stream.write(f'  {v} -- {u} [label="{name}"];\n')
    stream.write("}\n")


def _dump_json(record: dict) -> str:
    return json.dumps(record, sort_keys=True, separators=(",", ":"))


def _component_sizes(q: FiniteQuandle) -> list[int]:
    return sorted((len(c) for c in components(q)), reverse=True)


def _write_output(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _presentation_digest(pres: Presentation) -> str:
    canon = repr((pres.names, tuple((r.lhs, r.rhs) for r in pres.relations)))
    return hashlib.sha256(canon.encode()).hexdigest()


# ---------------------------------------------------------------------------
# subcommands

def cmd_enum(args) -> int:
    try:
        with open(args.file, encoding="utf-8") as fh:
            pres = parse_presentation(fh.read())
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PresentationParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        result = enumerate_quandle(pres, args.max_vertices)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if isinstance(result, BudgetExceeded):
        print("budget exceeded", file=sys.stderr)
        return EXIT_BUDGET
    sizes = _component_sizes(result)
    print(f"order: {result.n}")
    print(f"components: {len(sizes)} (sizes {' '.join(map(str, sizes))})")
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            write_dot(result, fh)
    if args.json:
        record = {
            "presentation": _presentation_digest(pres),
            "order": result.n,
            "components": sizes,
            "generators": {name: int(e) for name, e in zip(result.gen_names, result.gen_elements)},
            "budget": "ok",
        }
        _write_output(args.json, _dump_json(record) + "\n")
    return EXIT_OK


def _montesinos_params(args) -> montesinos.MontesinosParams:
    return montesinos.MontesinosParams(args.p, args.q, args.e)


def _run_checks(params, q: FiniteQuandle, max_vertices: int) -> list[tuple[str, bool]]:
    """The full verification battery behind ``montesinos --check``."""
    checks: list[tuple[str, bool]] = []
    checks.append(("order", q.n == montesinos.predicted_order(params)))
    checks.append(
        ("components", tuple(_component_sizes(q)) == montesinos.predicted_component_sizes(params))
    )
    model = montesinos.build_model(params)
    checks.append(("model-isomorphism", isomorphic(q, model) is not None))
    rewritten = enumerate_quandle(montesinos.rewritten_presentation(params), max_vertices)
    ok = isinstance(rewritten, FiniteQuandle) and isomorphic(q, rewritten) is not None
    checks.append(("rewritten-presentation", ok))
    left, right = montesinos.commuting_identity_words(params.e)
    identity = all(
        apply_word(q, x, left) == apply_word(q, x, right) for x in range(q.n)
    )
    checks.append(("commuting-identity", identity))
    alpha, beta = montesinos.relation_exponents(params)
    exp_alpha, exp_beta = montesinos.relation_displacement_table(params)
    disp_ok = (
        montesinos.displacement(alpha, "01") == exp_alpha
        and montesinos.displacement(beta, "01") == exp_beta
    )
    table = montesinos.word_displacement_table(params.e)
    a, b = montesinos.words_AB(params.e)
    block_a, block_b = montesinos._blocks(params.e)
    for name, w in (("A", a), ("B", b), ("232A1A", block_a), ("232B1B", block_b)):
        sig, disp = table[name]
        disp_ok = disp_ok and montesinos.sigma(w) == sig and montesinos.displacement(w, "01") == disp
    checks.append(("displacements", disp_ok))
    return checks


def cmd_montesinos(args) -> int:
    try:
        params = _montesinos_params(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    started = time.perf_counter()
    result = enumerate_quandle(montesinos.presentation(params), args.max_vertices)
    if isinstance(result, BudgetExceeded):
        print("budget exceeded", file=sys.stderr)
        return EXIT_BUDGET
    elapsed = time.perf_counter() - started
    sizes = _component_sizes(result)
    print(f"params: p={params.p} q={params.q} e={params.e} (w={params.w})")
    print(f"order: {result.n} (predicted {montesinos.predicted_order(params)})")
    predicted = " ".join(map(str, montesinos.predicted_component_sizes(params)))
    print(
        f"components: {len(sizes)} (sizes {' '.join(map(str, sizes))}; predicted {predicted})"
    )
    record = {
        "p": params.p,
        "q": params.q,
        "e": params.e,
        "w": params.w,
        "order": result.n,
        "components": sizes,
        "predicted_order": montesinos.predicted_order(params),
        "predicted_components": list(montesinos.predicted_component_sizes(params)),
        "budget": "ok",
        "seconds": round(elapsed, 6),
    }
    status = EXIT_OK
    if args.check:
        checks = _run_checks(params, result, args.max_vertices)
        for name, ok in checks:
            print(f"check {name}: {'ok' if ok else 'MISMATCH'}")
            record[f"{name.replace('-', '_')}_match"] = ok
        if not all(ok for _, ok in checks):
            status = EXIT_MISMATCH
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            write_dot(result, fh)
    if args.json:
        _write_output(args.json, _dump_json(record) + "\n")
    return status


def sweep_instances(q_max: int, e_min: int, e_max: int):
    """All valid (p, q, e) in deterministic (q, p, e) order."""
    for q in range(2, q_max + 1):
        for p in range(1, q):
            if math.gcd(p, q) != 1:
                continue
            for e in range(e_min, e_max + 1):
                yield montesinos.MontesinosParams(p, q, e)


def _sweep_record(task: tuple[int, int, int, int]) -> dict:
    p, q, e, max_vertices = task
    params = montesinos.MontesinosParams(p, q, e)
    result = enumerate_quandle(montesinos.presentation(params), max_vertices)
    record = {"p": p, "q": q, "e": e, "w": params.w}
    if isinstance(result, BudgetExceeded):
        record["budget"] = "exceeded"
        record["max_vertices"] = max_vertices
        return record
    sizes = _component_sizes(result)
    record.update(
        {
            "budget": "ok",
            "order": result.n,
            "components": sizes,
            "predicted_order": montesinos.predicted_order(params),
            "predicted_components": list(montesinos.predicted_component_sizes(params)),
        }
    )
    record["order_match"] = record["order"] == record["predicted_order"]
    record["components_match"] = sizes == record["predicted_components"]
    return record


def cmd_sweep(args) -> int:
    if args.e_min > args.e_max:
        print("error: --e-min must not exceed --e-max", file=sys.stderr)
        return EXIT_INPUT
    tasks = [
        (params.p, params.q, params.e, args.max_vertices)
        for params in sweep_instances(args.q_max, args.e_min, args.e_max)
    ]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            records = list(pool.map(_sweep_record, tasks))
    else:
        records = [_sweep_record(t) for t in tasks]
    lines = "".join(_dump_json(r) + "\n" for r in records)
    if args.json:
        _write_output(args.json, lines)
    else:
        sys.stdout.write(lines)
    if any(
        r.get("order_match") is False or r.get("components_match") is False for r in records
    ):
        return EXIT_MISMATCH
    if any(r["budget"] == "exceeded" for r in records):
        return EXIT_BUDGET
    return EXIT_OK


def cmd_geodesics(args) -> int:
    try:
        params = _montesinos_params(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    result = enumerate_quandle(montesinos.presentation(params), args.max_vertices)
    if isinstance(result, BudgetExceeded):
        print("budget exceeded", file=sys.stderr)
        return EXIT_BUDGET
    maximal = analysis.maximal_geodesics(result)
    counts: dict[int, int] = {}
    for g in maximal:
        counts[len(g.elements)] = counts.get(len(g.elements), 0) + 1
    parts = ", ".join(f"{counts[s]}×{s}" for s in sorted(counts, reverse=True))
    print(f"{len(maximal)} maximal: {parts}")
    return EXIT_OK


def cmd_aut(args) -> int:
    try:
        params = _montesinos_params(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    result = enumerate_quandle(montesinos.presentation(params), args.max_vertices)
    if isinstance(result, BudgetExceeded):
        print("budget exceeded", file=sys.stderr)
        return EXIT_BUDGET
    bound = analysis.aut_upper_bound(params)
    report = analysis.automorphism_count(result, bound)
    flag = "attained" if report.attained else "not attained"
    print(f"automorphisms: {report.count} (bound {report.upper_bound}, {flag})")
    if report.count > bound:
        return EXIT_MISMATCH
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing

def _add_params(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--p", type=int, required=True)
    parser.add_argument("--q", type=int, required=True)
    parser.add_argument("--e", type=int, required=True)


def _add_budget(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--max-vertices",
        type=int,
        default=DEFAULT_MAX_VERTICES,
        help="vertex budget for the enumeration (default %(default)s)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="involq",
        description="Enumerate and analyze finite involutory quandles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_enum = sub.add_parser("enum", help="enumerate a presentation file")
    p_enum.add_argument("file")
    _add_budget(p_enum)
    p_enum.add_argument("--dot", metavar="PATH", help="write DOT graph")
    p_enum.add_argument("--json", metavar="PATH", help="write JSON record")
    p_enum.set_defaults(func=cmd_enum)

    p_mont = sub.add_parser("montesinos", help="enumerate one (p, q, e) instance")
    _add_params(p_mont)
    _add_budget(p_mont)
    p_mont.add_argument("--check", action="store_true", help="run the full verification battery")
    p_mont.add_argument("--dot", metavar="PATH")
    p_mont.add_argument("--json", metavar="PATH")
    p_mont.set_defaults(func=cmd_montesinos)

    p_sweep = sub.add_parser("sweep", help="batch-enumerate a parameter range")
    p_sweep.add_argument("--q-max", type=int, required=True)
    p_sweep.add_argument("--e-min", type=int, default=0)
    p_sweep.add_argument("--e-max", type=int, default=3)
    _add_budget(p_sweep)
    p_sweep.add_argument("--json", metavar="PATH", help="write records here instead of stdout")
    p_sweep.add_argument("--jobs", type=int, default=1, help="parallel workers")
    p_sweep.set_defaults(func=cmd_sweep)

    p_geo = sub.add_parser("geodesics", help="maximal geodesics of one instance")
    _add_params(p_geo)
    _add_budget(p_geo)
    p_geo.set_defaults(func=cmd_geodesics)

    p_aut = sub.add_parser("aut", help="automorphism count and bound")
    _add_params(p_aut)
    _add_budget(p_aut)
    p_aut.set_defaults(func=cmd_aut)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
