"""Command-line front end: chordality, criteria, classification, products,
the corpus runner and graph export.

Exit codes: 0 chordal, 1 non-chordal, 2 error, 3 undetermined (``criteria``
when nothing fires) and, for ``corpus``, 1 on any mismatch.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .chordal import DEFAULT_PATH_BUDGET, bounded_longest_induced_path, is_chordal
from .classify import (
    ClassifyError,
    SimpleGroupId,
    Verdict,
    classify_simple,
    decide_direct_product,
    decide_generalized_dihedral,
    decide_quaternion,
    nilpotent_predicate,
    nilpotent_shape,
)
from .criteria import all_reports
from .groups import DEFAULT_CAP, GroupError, build, parse_spec
from .powergraph import commuting_graph, directed_power_graph, power_graph
from .reduction import classify_in_out

SCHEMA = "powerchordal/1"
EXIT_CHORDAL, EXIT_NON_CHORDAL, EXIT_ERROR, EXIT_UNDETERMINED = 0, 1, 2, 3
EXPECTATIONS = ("chordal", "non-chordal")
CORPUS_BASES = ("brute-force", "criterion", "predicate")
MODES = ("", "deep-only", "deep-else-criterion")


def _emit(doc: dict, as_json: bool, text: str, out=None) -> None:
    out = out or sys.stdout
    if as_json:
        out.write(json.dumps({"schema": SCHEMA, **doc}, sort_keys=True) + "\n")
    else:
        out.write(text + "\n")


def _word(chordal: bool) -> str:
    return "chordal" if chordal else "non-chordal"


# ---------------------------------------------------------------- single commands

def chordal_report(spec: str, cap: int, longest_path: bool = False,
                   budget: int = DEFAULT_PATH_BUDGET) -> dict:
    G = build(spec, cap)
    g = power_graph(G)
    v = is_chordal(g)
    doc = {"command": "chordal", "spec": spec, "order": G.order, "verdict": _word(v.chordal)}
    if v.hole is not None:
        hole = classify_in_out(G, v.hole)
        doc["hole"] = hole.to_dict(G.labels())
    if longest_path and v.chordal:
        res = bounded_longest_induced_path(g, limit=20, budget=budget)
        doc["longest_induced_path"] = {"length": res.length, "exact": res.exact,
                                       "witness": list(res.witness.vertices)}
    return doc


def cmd_chordal(args) -> int:
    t0 = time.perf_counter()
    doc = chordal_report(args.spec, args.cap, args.longest_path, args.seed_limit)
    if args.timing:
        doc["seconds"] = round(time.perf_counter() - t0, 3)
    text = f"{args.spec}: {doc['verdict']} (|G| = {doc['order']})"
    if "hole" in doc:
        text += f"\nhole of length {doc['hole']['length']}: " + " ".join(doc["hole"]["labels"])
    if "longest_induced_path" in doc:
        lp = doc["longest_induced_path"]
        text += f"\nlongest induced path: {lp['length']}" + ("" if lp["exact"] else " (budget hit)")
    _emit(doc, args.json, text)
    return EXIT_CHORDAL if doc["verdict"] == "chordal" else EXIT_NON_CHORDAL


def criteria_doc(spec: str, cap: int) -> dict:
    G = build(spec, cap)
    reports = all_reports(G)
    implied = {r.implies for r in reports if r.fires}
    if len(implied) > 1:  # pragma: no cover - would contradict the criteria
        raise RuntimeError(f"criteria disagree on {spec}")
    return {"command": "criteria", "spec": spec, "order": G.order,
            "implied": implied.pop() if implied else None,
            "reports": [r.to_dict(G) for r in reports]}


def cmd_criteria(args) -> int:
    doc = criteria_doc(args.spec, args.cap)
    lines = [f"{args.spec}:"]
    for r in doc["reports"]:
        mark = "fires" if r["fires"] else "-"
        lines.append(f"  {r['criterion']:<24} {mark:<6} {r['note']}")
    lines.append(f"  implied: {doc['implied'] or 'undetermined'}")
    _emit(doc, args.json, "\n".join(lines))
    if doc["implied"] is None:
        return EXIT_UNDETERMINED
    return EXIT_CHORDAL if doc["implied"] == "chordal" else EXIT_NON_CHORDAL


def cmd_classify(args) -> int:
    sid = SimpleGroupId.parse(args.id)
    v = classify_simple(sid)
    doc = {"command": "classify", "id": str(sid), **v.to_dict()}
    _emit(doc, args.json, f"{sid}: {'yes' if v.chordal else 'no'} ({v.certificate['rule']})")
    return EXIT_CHORDAL if v.chordal else EXIT_NON_CHORDAL


def cmd_product(args) -> int:
    H, K = build(args.h, args.cap), build(args.k, args.cap)
    v = decide_direct_product(H, K)
    doc = {"command": "product", "h": args.h, "k": args.k, **v.to_dict()}
    _emit(doc, args.json, f"{args.h} x {args.k}: {_word(v.chordal)} (case {v.label})")
    return EXIT_CHORDAL if v.chordal else EXIT_NON_CHORDAL


GRAPHS = {"power": power_graph, "dpower": directed_power_graph, "commuting": commuting_graph}


def cmd_export(args) -> int:
    G = build(args.spec, args.cap)
    g = GRAPHS[args.graph](G)
    labels = G.labels()
    body = g.to_dot(labels, name=args.spec) if args.format == "dot" else g.to_json(labels) + "\n"
    if args.out:
        Path(args.out).write_text(body)
    else:
        sys.stdout.write(body)
    return 0


# ---------------------------------------------------------------- corpus

@dataclass(frozen=True)
class CorpusEntry:
    spec: str
    expected: str
    basis: str
    anchor: str
    mode: str = ""

    def __post_init__(self):
        if self.expected not in EXPECTATIONS:
            raise ValueError(f"expectation must be one of {EXPECTATIONS}, got {self.expected!r}")
        if self.basis not in CORPUS_BASES:
            raise ValueError(f"basis must be one of {CORPUS_BASES}, got {self.basis!r}")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES[1:]}, got {self.mode!r}")
        if self.basis == "predicate":
            predicate_verdict(self.spec, check=False)
        else:
            parse_spec(self.spec)


def parse_corpus(text: str) -> list[CorpusEntry]:
    """One entry per line: ``spec | expectation | basis | anchor [| mode]``."""
    out = []
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f.strip() for f in line.split("|")]
        if len(fields) not in (4, 5):
            raise ValueError(f"corpus line {n}: expected 4 or 5 '|'-separated fields")
        try:
            out.append(CorpusEntry(*fields))
        except (ValueError, GroupError) as exc:
            raise ValueError(f"corpus line {n}: {exc}") from None
    return out


def default_corpus_text() -> str:
    return resources.files("powerchordal").joinpath("data/paper_corpus.txt").read_text()


def predicate_verdict(spec: str, cap: int = DEFAULT_CAP, check: bool = True) -> Verdict:
    """Dispatch a spec to the matching closed-form predicate.

    Quaternion, generalized dihedral, direct product and abelian specs go to
    their lemmas; anything else is read as a simple group id. With
    ``check=False`` only the dispatch is validated.
    """
    s = spec.strip()
    if s.startswith("q:"):
        n = int(s[2:])
        return decide_quaternion(n) if check else None
    if s.startswith("prod("):
        node = parse_spec(s)
        if not check:
            return None
        H, K = build(node.children[0], cap), build(node.children[1], cap)
        return decide_direct_product(H, K)
    if s.startswith("dih:"):
        node = parse_spec(s)
        return decide_generalized_dihedral(build(node.children[0], cap)) if check else None
    if s.startswith("ab:"):
        node = parse_spec(s)
        if not check:
            return None
        ok = nilpotent_predicate(nilpotent_shape(build(node, cap)))
        return Verdict(ok, "predicate", {"spec": s}, "nilpotent")
    sid = SimpleGroupId.parse(s)
    return classify_simple(sid) if check else None


def run_entry(entry: CorpusEntry, deep: bool, cap: int) -> dict:
    basis = entry.basis
    if entry.mode and not deep:
        if entry.mode == "deep-only":
            return {"status": "skipped", "basis": basis, "got": None}
        basis = "criterion"
    t0 = time.perf_counter()
    if basis == "predicate":
        got = _word(predicate_verdict(entry.spec, cap).chordal)
        detail = ""
    elif basis == "brute-force":
        got = _word(is_chordal(power_graph(build(entry.spec, cap))).chordal)
        detail = ""
    else:
        doc = criteria_doc(entry.spec, cap)
        got = doc["implied"]
        detail = ",".join(r["criterion"] for r in doc["reports"] if r["fires"])
    status = "ok" if got == entry.expected else "MISMATCH"
    return {"status": status, "basis": basis, "got": got, "detail": detail,
            "seconds": round(time.perf_counter() - t0, 2)}


def run_corpus(entries, deep: bool = False, cap: int = DEFAULT_CAP, jobs: int = 1) -> list[dict]:
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(jobs) as pool:
            results = list(pool.map(run_entry, entries, [deep] * len(entries), [cap] * len(entries)))
    else:
        results = [run_entry(e, deep, cap) for e in entries]
    return [{"index": i, "spec": e.spec, "expected": e.expected, "anchor": e.anchor, **r}
            for i, (e, r) in enumerate(zip(entries, results))]


def cmd_corpus(args) -> int:
    text = Path(args.config).read_text() if args.config else default_corpus_text()
    rows = run_corpus(parse_corpus(text), args.deep, args.cap, args.jobs)
    if not args.timing:
        for r in rows:
            r.pop("seconds", None)
    bad = [r for r in rows if r["status"] == "MISMATCH"]
    if args.json:
        _emit({"command": "corpus", "rows": rows, "mismatches": len(bad)}, True, "")
    else:
        for r in rows:
            got = r["got"] or "-"
            print(f"{r['index']:>3} {r['status']:<8} {r['spec']:<28} expected {r['expected']:<12} "
                  f"got {got:<12} [{r['basis']}] {r['anchor']}")
        print(f"{len(rows)} entries, {len(bad)} mismatches, "
              f"{sum(r['status'] == 'skipped' for r in rows)} skipped")
    return 1 if bad else 0


# ---------------------------------------------------------------- entry point

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="largest group order to enumerate")
    common.add_argument("--json", action="store_true", help="emit one JSON document")
    common.add_argument("--timing", action="store_true", help="include wall-clock timings")

    p = argparse.ArgumentParser(prog="powerchordal", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("chordal", parents=[common], help="decide chordality of Pow(G) by brute force")
    c.add_argument("spec")
    c.add_argument("--longest-path", action="store_true",
                   help="also run the bounded longest induced path search (limit 20)")
    c.add_argument("--seed-limit", type=int, default=DEFAULT_PATH_BUDGET,
                   help="node budget for the induced path search")
    c.set_defaults(func=cmd_chordal)

    c = sub.add_parser("criteria", parents=[common], help="run the centralizer criteria")
    c.add_argument("spec")
    c.set_defaults(func=cmd_criteria)

    c = sub.add_parser("classify", parents=[common], help="classify a finite simple group by name")
    c.add_argument("id")
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("product", parents=[common], help="decide H x K by the direct-product theorem")
    c.add_argument("h")
    c.add_argument("k")
    c.set_defaults(func=cmd_product)

    c = sub.add_parser("corpus", parents=[common], help="run a corpus of expected verdicts")
    c.add_argument("config", nargs="?", help="corpus file (default: the shipped corpus)")
    c.add_argument("--deep", action="store_true", help="run long entries by brute force")
    c.add_argument("--jobs", type=int, default=1)
    c.set_defaults(func=cmd_corpus)

    c = sub.add_parser("export", parents=[common], help="write a graph as DOT or JSON")
    c.add_argument("spec")
    c.add_argument("--format", choices=("dot", "json"), default="dot")
    c.add_argument("--graph", choices=tuple(GRAPHS), default="power")
    c.add_argument("--out", help="output file (default: stdout)")
    c.set_defaults(func=cmd_export)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GroupError, ClassifyError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
