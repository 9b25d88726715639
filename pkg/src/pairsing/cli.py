"""Command-line front end: ``pairsing VERB INPUT [options]``.

INPUT is a model document (JSON path) or ``family SPEC`` with SPEC one of
``fermat:n,d``, ``cone:n,d[,branches]``, ``node``, ``a-surface:m``,
``kollar``, ``smooth``.  ``pairsing family table`` prints the Fermat
consistency grid; ``pairsing verify-numeric TARGET`` runs a Monte-Carlo
check (``lemma``, ``extension``, ``fermat:n,d``, ``tube:n,d``).

Exit codes: 0 success, 1 invalid input, 2 numeric failure, 3 the Fermat
table disagrees with itself.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import asdict, dataclass
from typing import Any, Iterable, Sequence

from . import numeric
from .adjoint import is_trivial, vanishing_orders
from .adjunction import different, inversion_check, klt_of_different
from .ohsawa import is_locally_integrable, setup_for
from .resolution import InvalidModel, SncModel, fermat_model, load_model, model_to_json, parse_family, validate
from .singularities import Verdict, classify_pair

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC, EXIT_VIOLATION = 0, 1, 2, 3

VERBS = ("validate", "classify", "different", "ohsawa", "adjoint", "inversion", "verify-numeric", "family")


class UsageError(Exception):
    pass


class NumericFailure(Exception):
    pass


# ---------------------------------------------------------------- reports


def classify_report(m: SncModel) -> dict[str, Any]:
    pair = classify_pair(m)
    klt = klt_of_different(m)
    ohsawa = is_locally_integrable(setup_for(m))
    trivial = is_trivial(m)
    inv = inversion_check(m)
    return {
        "pair_class": pair.to_json(),
        "different": different(m).to_json(),
        "klt_of_different": klt.to_json(),
        "ohsawa": ohsawa.to_json(),
        "adjoint_trivial": trivial,
        "inversion": inv.to_json(),
        "integrable_iff_klt": ohsawa.integrable == (klt.verdict is Verdict.KLT),
        "trivial_iff_plt": trivial == (pair.verdict is Verdict.PLT),
    }


def model_report(verb: str, m: SncModel) -> dict[str, Any]:
    if verb == "classify":
        return classify_report(m)
    if verb == "different":
        return {"different": different(m).to_json()}
    if verb == "ohsawa":
        return is_locally_integrable(setup_for(m)).to_json()
    if verb == "adjoint":
        return {"trivial": is_trivial(m), "required_orders": dict(sorted(vanishing_orders(m).required_orders.items()))}
    if verb == "inversion":
        return inversion_check(m).to_json()
    raise UsageError(f"unknown verb {verb!r}")


@dataclass(frozen=True)
class FermatRow:
    n: int
    d: int
    klt_of_different: bool
    plt: bool
    ohsawa_integrable: bool
    adjoint_trivial: bool

    @property
    def consistent(self) -> bool:
        return len({self.klt_of_different, self.plt, self.ohsawa_integrable, self.adjoint_trivial}) == 1

    @property
    def expected(self) -> bool:
        return self.d <= self.n - 1


def emit_fermat_table(n_range: Iterable[int] = range(2, 7), d_range: Iterable[int] = range(1, 10)) -> list[FermatRow]:
    """All four predicates for the Fermat cones ``z_1^d + ... + z_n^d``."""
    ns, ds = list(n_range), list(d_range)
    if not ns or not ds or min(ns) < 2 or max(ns) > 6 or min(ds) < 1 or max(ds) > 9:
        raise ValueError("table ranges must lie within n in 2..6, d in 1..9")
    rows = []
    for n in ns:
        for d in ds:
            m = fermat_model(n, d)
            rows.append(
                FermatRow(
                    n,
                    d,
                    klt_of_different(m).verdict is Verdict.KLT,
                    classify_pair(m).verdict is Verdict.PLT,
                    is_locally_integrable(setup_for(m)).integrable,
                    is_trivial(m),
                )
            )
    return rows


def _numeric_report(target: str, opts: argparse.Namespace) -> tuple[dict[str, Any], list[tuple[float, float]]]:
    seed, samples = opts.seed, opts.samples
    name, _, args = target.partition(":")
    t_grid = opts.t_grid
    if name == "lemma":
        w, g = numeric.weight(2, "1/2"), numeric.BumpFunction.annulus(1)
        rep = numeric.limit_convergence_check(w, g, t_grid or numeric.DEFAULT_T_GRID, samples, seed)
        if not rep.fit_ok or not math.isfinite(rep.limit):
            raise NumericFailure(rep.message or "non-finite fit")
        trend = numeric.Trend.CONVERGENT if rep.relative_error < 0.02 else numeric.Trend.INCONCLUSIVE
        estimates = [
            {"t": t, "estimate": v, "std_error": e, "samples": samples, "seed": seed}
            for t, v, e in zip(rep.t_grid, rep.values, rep.std_errors)
        ]
        extra = {"limit": rep.limit, "reference": rep.reference, "relative_error": rep.relative_error, "exponent": rep.exponent}
    elif name == "extension":
        w, g = numeric.weight(2, "1/2"), numeric.BumpFunction.annulus(1)
        rep = numeric.extension_independence_check(w, g, t_grid or (-10.0, -16.0), samples, seed)
        trend = numeric.Trend.CONVERGENT if rep.shrinks else numeric.Trend.INCONCLUSIVE
        estimates = [
            {"t": t, "estimate": dv, "std_error": None, "samples": samples, "seed": seed}
            for t, dv in zip(rep.t_values, rep.differences)
        ]
        extra = {"extensions": list(rep.extensions)}
    elif name in ("fermat", "tube"):
        try:
            n, d = (int(x) for x in args.split(","))
        except ValueError:
            raise UsageError(f"expected {name}:n,d") from None
        if name == "fermat":
            probe = numeric.fermat_probe(n, d, t_grid or numeric.DEFAULT_T_GRID, samples, seed)
            estimates = [e.to_json() for e in probe.estimates]
            extra = {"n": n, "d": d}
        else:
            probe = numeric.df_density_probe(n, d, numeric.DEFAULT_EPS_GRID, samples, seed)
            estimates = [{"t": e.epsilon, "estimate": e.value, "std_error": e.std_error, "samples": e.samples, "seed": e.seed} for e in probe.estimates]
            extra = {"n": n, "d": d, "expected_convergent": probe.expected_convergent}
        trend = probe.trend
    else:
        raise UsageError(f"unknown numeric target {target!r}")
    values = [e["estimate"] for e in estimates]
    if not all(math.isfinite(v) for v in values):
        raise NumericFailure("non-finite estimate")
    last = estimates[-1]
    report = {
        "target": target,
        "estimate": last["estimate"],
        "std_error": last["std_error"],
        "samples": samples,
        "seed": seed,
        "t": last["t"],
        "trend": trend.value,
        "estimates": estimates,
        **extra,
    }
    return report, [(e["t"], e["estimate"]) for e in estimates]


# ---------------------------------------------------------------- rendering


def _render_value(v: Any) -> str:
    if isinstance(v, dict):
        if not v:
            return "0"
        return ", ".join(f"{k}={_render_value(x)}" for k, x in v.items())
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "-"
    return str(v)


def _flatten(report: dict[str, Any], prefix: str = "") -> list[tuple[str, Any]]:
    out: list[tuple[str, Any]] = []
    for key, value in report.items():
        name = f"{prefix}{key}"
        # Divisors map names to coefficient strings and stay on one line.
        if isinstance(value, dict) and any(isinstance(v, dict) for v in value.values()):
            out.extend(_flatten(value, name + "."))
        else:
            out.append((name, value))
    return out


def render_text(report: dict[str, Any]) -> str:
    flat = _flatten(report)
    width = max((len(k) for k, _ in flat), default=0)
    lines = []
    for key, value in flat:
        if isinstance(value, list):
            lines.append(f"{key}:")
            lines.extend(f"  {_render_value(item)}" for item in value)
        else:
            lines.append(f"{key.ljust(width)}  {_render_value(value)}")
    return "\n".join(lines)


def render_table(rows: Sequence[FermatRow]) -> str:
    head = f"{'n':>2} {'d':>2}  {'klt-diff':>8} {'plt':>5} {'ohsawa':>6} {'adj-triv':>8}  {'ok':>3}"
    out = [head]
    for r in rows:
        flags = [r.klt_of_different, r.plt, r.ohsawa_integrable, r.adjoint_trivial]
        cells = " ".join(f"{'T' if f else 'F':>{w}}" for f, w in zip(flags, (8, 5, 6, 8)))
        ok = r.consistent and r.klt_of_different == r.expected
        out.append(f"{r.n:>2} {r.d:>2}  {cells}  {'yes' if ok else 'NO':>3}")
    return "\n".join(out)


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _dump(report: dict[str, Any], fmt: str) -> str:
    return json.dumps(report, indent=2, sort_keys=True) if fmt == "json" else render_text(report)


# ---------------------------------------------------------------- driver


def _float_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad number list {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pairsing", description="Exact singularity checks for pairs (X, Y + B) on log resolutions.")
    p.add_argument("verb", choices=VERBS)
    p.add_argument("input", nargs="*", help="model JSON path, or 'family SPEC'")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--samples", type=int, default=numeric.DEFAULT_SAMPLES)
    p.add_argument("--t-grid", type=_float_list, default=None)
    p.add_argument("--out", default=None)
    return p


def _resolve_seed(opt: int | None) -> int:
    if opt is not None:
        return opt
    env = os.environ.get("PAIRSING_SEED")
    if env is None or env == "":
        return numeric.DEFAULT_SEED
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"PAIRSING_SEED must be an integer, got {env!r}") from None


def _load_input(items: Sequence[str]) -> SncModel:
    if not items:
        raise UsageError("missing input")
    if items[0] == "family":
        if len(items) != 2:
            raise UsageError("usage: family SPEC")
        return parse_family(items[1])
    if len(items) != 1:
        raise UsageError("expected a single input path")
    try:
        return load_model(items[0])
    except OSError as exc:
        raise UsageError(str(exc)) from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid JSON: {exc}") from None


def _violation_lines(m: SncModel) -> list[str]:
    return [f"{v.severity}: {v.record}: {v.rule}" for v in validate(m, include_warnings=True)]


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        opts = parser.parse_intermixed_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        opts.seed = _resolve_seed(opts.seed)
        return _dispatch(opts)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NumericFailure as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


def _dispatch(opts: argparse.Namespace) -> int:
    verb, items = opts.verb, opts.input

    if verb == "family" and items == ["table"]:
        rows = emit_fermat_table()
        bad = [r for r in rows if not r.consistent or r.klt_of_different != r.expected]
        if opts.format == "json":
            text = json.dumps([asdict(r) | {"consistent": r.consistent} for r in rows], indent=2)
        else:
            text = render_table(rows)
        if bad:
            print(render_table(bad))
            return EXIT_VIOLATION
        _emit(text, opts.out)
        return EXIT_OK

    if verb == "verify-numeric":
        if len(items) == 2 and items[0] == "family":
            items = items[1:]
        if len(items) != 1:
            raise UsageError("usage: verify-numeric TARGET")
        if opts.samples < 10_000:
            raise UsageError("--samples must be at least 10000")
        try:
            report, rows = _numeric_report(items[0], opts)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        print(_dump(report, opts.format))
        if opts.out:
            numeric.write_csv(opts.out, rows)
        return EXIT_OK

    try:
        m = _load_input(items if verb != "family" else ["family", *items])
    except ValueError as exc:
        raise UsageError(str(exc)) from None

    violations = _violation_lines(m)
    errors = [v for v in violations if v.startswith("error")]
    if verb == "validate":
        report = {"valid": not errors, "violations": violations}
        if errors:
            print(_dump(report, opts.format))
            return EXIT_INPUT
        _emit(_dump(report, opts.format), opts.out)
        return EXIT_OK
    if errors:
        print("\n".join(errors), file=sys.stderr)
        return EXIT_INPUT
    if verb == "family":
        _emit(json.dumps(model_to_json(m), indent=2), opts.out)
        return EXIT_OK
    try:
        report = model_report(verb, m)
    except (InvalidModel, ValueError, KeyError) as exc:
        raise UsageError(str(exc)) from None
    _emit(_dump(report, opts.format), opts.out)
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
