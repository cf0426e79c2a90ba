"""Command-line front end.

Exit codes: 0 success, 2 input error, 3 not second class, 4 sampling
failure, 5 non-polynomial closure input, 1 internal error.  Standard
output carries only the report; all diagnostics go to stderr so JSON
can be piped directly.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction

from . import __version__
from .analysis import classify_constraints, trace_identity
from .brackets import dirac_bracket, make_context, poisson_bracket
from .closure import closure_analysis, finite_dim_obstruction, lemma_verdict
from .errors import (
    DiracKitError,
    NoOnShellPointError,
    NonPolynomialInputError,
    NotSecondClassError,
    ValidationError,
)
from .parser import parse_expression
from .sysfile import SystemSpec, load_system

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_INPUT = 2
EXIT_NOT_SECOND_CLASS = 3
EXIT_SAMPLING = 4
EXIT_NON_POLYNOMIAL = 5

# Reported timing resolution.  Coarse on purpose: reports must be
# byte-identical across runs for fixed input and seed; precise timings
# go to stderr.
TIMING_RESOLUTION_MS = 100


def _digest(path: str) -> str:
    with open(path, "rb") as fh:
        return "sha256:" + hashlib.sha256(fh.read()).hexdigest()


def _frac(x: Fraction) -> str:
    return str(x)


class _Timings:
    def __init__(self):
        self.raw: dict[str, float] = {}

    def time(self, stage: str):
        timings = self

        class _Timer:
            def __enter__(self):
                self.t0 = time.perf_counter()

            def __exit__(self, *exc):
                timings.raw[stage] = (time.perf_counter() - self.t0) * 1000.0
                return False

        return _Timer()

    def rounded(self) -> dict[str, int]:
        return {k: int(round(v / TIMING_RESOLUTION_MS)) * TIMING_RESOLUTION_MS
                for k, v in self.raw.items()}

    def report_stderr(self):
        for stage, ms in self.raw.items():
            print(f"[timing] {stage}: {ms:.2f} ms", file=sys.stderr)


def _classification_dict(c) -> dict:
    return {
        "verdict": c.verdict,
        "symbolic_det_nonzero": c.symbolic_det_nonzero,
        "on_shell_rank": c.on_shell_rank,
        "dof_pairs": c.dof_pairs,
    }


def _trace_dict(t) -> dict:
    return {"value": str(t.value), "expected": t.expected, "holds": t.holds}


def _residual_key(key, names) -> str:
    a, b = key
    left = names[a] if isinstance(a, int) else a
    right = names[b] if isinstance(b, int) else b
    return f"{left},{right}"


def _closure_dict(report) -> dict:
    out = {
        "mode": report.mode,
        "closed": report.closed,
        "names": list(report.names),
        "c": [[[_frac(v) for v in row] for row in plane] for plane in report.c],
        "z": [[_frac(v) for v in row] for row in report.z],
        "h": ([[_frac(v) for v in row] for row in report.h]
              if report.h is not None else None),
        "h_const": ([_frac(v) for v in report.h_const]
                    if report.h_const is not None else None),
        "residuals": {k: str(v) for k, v in sorted(
            ((_residual_key(key, report.names), expr)
             for key, expr in report.residuals.items()))},
    }
    if report.notes:
        out["notes"] = list(report.notes)
    return out


def _verdict_dict(v) -> dict:
    witness = v.witness
    if witness is not None:
        witness = {k: (_frac(val) if isinstance(val, Fraction)
                       else list(val) if isinstance(val, tuple) else val)
                   for k, val in witness.items()}
    return {"kind": v.kind, "witness": witness, "explanation": v.explanation}


def emit_report(report: dict, fmt: str):
    """Write the report to stdout; JSON is byte-stable for fixed inputs."""
    if fmt == "json":
        sys.stdout.write(json.dumps(report, indent=2))
        sys.stdout.write("\n")
        return
    lines = [f"dirackit report (version {report['version']})",
             f"input_digest: {report['input_digest']}"]
    system = report["system"]
    params = ",".join(system["parameters"]) or "-"
    lines.append(f"system: n={system['n']} m={system['m']} parameters={params}")
    if "classification" in report:
        c = report["classification"]
        lines.append(
            f"classification: {c['verdict']} "
            f"(symbolic_det_nonzero={str(c['symbolic_det_nonzero']).lower()}, "
            f"on_shell_rank={c['on_shell_rank']}, dof_pairs={c['dof_pairs']})")
    if "trace_identity" in report:
        t = report["trace_identity"]
        lines.append(f"trace_identity: value={t['value']} expected={t['expected']} "
                     f"holds={str(t['holds']).lower()}")
    if "closure" in report and report["closure"] is not None:
        cl = report["closure"]
        lines.append(f"closure: mode={cl['mode']} closed={str(cl['closed']).lower()}")
        names = cl["names"]
        k = len(names)
        for a in range(k):
            for b in range(a + 1, k):
                terms = [f"{cl['c'][a][b][i]}*{names[i]}"
                         for i in range(k) if cl["c"][a][b][i] != "0"]
                if cl["z"][a][b] != "0":
                    terms.append(cl["z"][a][b])
                rhs = " + ".join(terms) if terms else "0"
                lines.append(f"  {{{names[a]},{names[b]}}} = {rhs}")
        for key, expr in cl["residuals"].items():
            lines.append(f"  residual {{{key}}} = {expr}")
        if cl["h"] is not None:
            for a in range(k):
                terms = [f"{cl['h'][a][i]}*{names[i]}"
                         for i in range(k) if cl["h"][a][i] != "0"]
                if cl["h_const"][a] != "0":
                    terms.append(cl["h_const"][a])
                rhs = " + ".join(terms) if terms else "0"
                lines.append(f"  {{{names[a]},H}} = {rhs}")
    if "verdict" in report and report["verdict"] is not None:
        v = report["verdict"]
        lines.append(f"verdict: {v['kind']}")
        if v["witness"]:
            lines.append(f"witness: {json.dumps(v['witness'])}")
        lines.append(f"explanation: {v['explanation']}")
    timings = report.get("timings_ms", {})
    lines.append("timings_ms: " + " ".join(f"{k}={v}" for k, v in timings.items()))
    sys.stdout.write("\n".join(lines) + "\n")


def _base_report(spec: SystemSpec, path: str) -> dict:
    return {
        "version": __version__,
        "input_digest": _digest(path),
        "system": {
            "n": spec.ps.n,
            "m": len(spec.constraints) // 2,
            "parameters": list(spec.ps.parameters),
        },
    }


def cmd_analyze(spec: SystemSpec, path: str, fmt: str) -> int:
    timings = _Timings()
    report = _base_report(spec, path)
    with timings.time("classify"):
        classification = classify_constraints(spec.ps, spec.constraints, spec.sampler)
    report["classification"] = _classification_dict(classification)
    if classification.verdict != "second_class":
        print("error: constraint set is not second class", file=sys.stderr)
        return EXIT_NOT_SECOND_CLASS
    ctx = make_context(spec.ps, spec.constraints)
    with timings.time("trace"):
        report["trace_identity"] = _trace_dict(trace_identity(ctx))
    if spec.primaries is not None:
        with timings.time("closure"):
            closure = closure_analysis(spec.primaries, ctx, "dirac",
                                       on_shell_rules=spec.on_shell_rules())
        report["closure"] = _closure_dict(closure)
    with timings.time("verdict"):
        verdict = lemma_verdict(spec.ps, spec.constraints, spec.sampler)
    report["verdict"] = _verdict_dict(verdict)
    report["timings_ms"] = timings.rounded()
    timings.report_stderr()
    emit_report(report, fmt)
    return EXIT_OK


def cmd_bracket(spec: SystemSpec, f_text: str, g_text: str, mode: str) -> int:
    f = parse_expression(f_text, spec.ps)
    g = parse_expression(g_text, spec.ps)
    if mode == "dirac":
        ctx = make_context(spec.ps, spec.constraints)
        result = dirac_bracket(f, g, ctx)
    else:
        result = poisson_bracket(f, g, spec.ps)
    sys.stdout.write(str(result) + "\n")
    return EXIT_OK


def cmd_classify(spec: SystemSpec, path: str, fmt: str) -> int:
    timings = _Timings()
    report = _base_report(spec, path)
    with timings.time("classify"):
        classification = classify_constraints(spec.ps, spec.constraints, spec.sampler)
    report["classification"] = _classification_dict(classification)
    report["timings_ms"] = timings.rounded()
    emit_report(report, fmt)
    return EXIT_OK


def cmd_trace(spec: SystemSpec) -> int:
    ctx = make_context(spec.ps, spec.constraints)
    t = trace_identity(ctx)
    sys.stdout.write(
        f"value={t.value} expected={t.expected} holds={str(t.holds).lower()}\n")
    return EXIT_OK


def cmd_closure(spec: SystemSpec, path: str, mode: str, fmt: str) -> int:
    if spec.primaries is None:
        print("error: the system file declares no [primaries]", file=sys.stderr)
        return EXIT_INPUT
    timings = _Timings()
    report = _base_report(spec, path)
    if mode == "dirac":
        ctx_or_ps = make_context(spec.ps, spec.constraints)
    else:
        ctx_or_ps = spec.ps
    with timings.time("closure"):
        closure = closure_analysis(spec.primaries, ctx_or_ps, mode,
                                   on_shell_rules=spec.on_shell_rules())
    report["closure"] = _closure_dict(closure)
    if closure.closed:
        report["verdict"] = _verdict_dict(finite_dim_obstruction(closure))
    else:
        report["verdict"] = None
        print("note: algebra is not closed; no obstruction verdict", file=sys.stderr)
    report["timings_ms"] = timings.rounded()
    emit_report(report, fmt)
    return EXIT_OK


def cmd_verdict(spec: SystemSpec) -> int:
    verdict = lemma_verdict(spec.ps, spec.constraints, spec.sampler)
    sys.stdout.write(f"{verdict.kind}\n")
    if verdict.witness:
        sys.stdout.write(f"witness: {json.dumps(_verdict_dict(verdict)['witness'])}\n")
    sys.stdout.write(f"{verdict.explanation}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dirackit",
        description="Exact Poisson/Dirac bracket analysis of constrained "
                    "Hamiltonian systems")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, with_format=True):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file", help="system definition file")
        if with_format:
            p.add_argument("--format", choices=("text", "json"), default="text")
        return p

    add("analyze", "full report: classification, trace identity, closure, verdict")
    p = add("bracket", "compute one bracket", with_format=False)
    p.add_argument("--f", required=True, help="first expression")
    p.add_argument("--g", required=True, help="second expression")
    p.add_argument("--mode", choices=("poisson", "dirac"), default="poisson")
    add("classify", "constraint classification only")
    add("trace", "trace identity only", with_format=False)
    p = add("closure", "primary-quantity closure analysis")
    p.add_argument("--mode", choices=("poisson", "dirac"), default="dirac")
    add("verdict", "finite-dimensionality verdict only", with_format=False)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        try:
            spec = load_system(args.file)
        except OSError as exc:
            print(f"error: cannot read {args.file}: {exc}", file=sys.stderr)
            return EXIT_INPUT
        except (ValidationError, DiracKitError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INPUT

        if args.command == "analyze":
            return cmd_analyze(spec, args.file, args.format)
        if args.command == "bracket":
            return cmd_bracket(spec, args.f, args.g, args.mode)
        if args.command == "classify":
            return cmd_classify(spec, args.file, args.format)
        if args.command == "trace":
            return cmd_trace(spec)
        if args.command == "closure":
            return cmd_closure(spec, args.file, args.mode, args.format)
        if args.command == "verdict":
            return cmd_verdict(spec)
        return EXIT_INTERNAL
    except NotSecondClassError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_SECOND_CLASS
    except NoOnShellPointError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SAMPLING
    except NonPolynomialInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print("hint: add [onshell] rules so brackets reduce to polynomials",
              file=sys.stderr)
        return EXIT_NON_POLYNOMIAL
    except DiracKitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # pragma: no cover
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
