"""Command-line front end writing deterministic CSV or JSON reports.

Subcommands
-----------
simulate     distribution ``n,re,im,prob`` after ``--steps`` steps
absorb       absorption series ``t,p_abs,p_survive`` with the wall at n = 0
asymptotics  smoothed density curve ``n,density,mass,region``
compare      two walks/engines side by side with deviation statistics

Exit codes: 0 success, 2 configuration error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
import time
from dataclasses import asdict, dataclass

import numpy as np

from . import asymptotics
from .evolution import ClassicalDistribution, WalkKind, evolve, evolve_classical
from .kernels import DEFAULT_BACKEND
from .spectral import evolve_spectral
from .state import (
    AmplitudeField,
    Boundary,
    Circle,
    InitialState,
    Line,
    WalkError,
    distribution_moments,
    make_initial,
)
from .wall import estimate_asymptote, run_absorption

EXIT_CONFIG = 2
EXIT_IO = 3


class ConfigError(Exception):
    pass


def fmt(x) -> str:
    if x is None:
        return ""
    return format(float(x), ".17g")


@dataclass
class WalkConfig:
    walk: str = "coinless"
    init: str = "origin"
    init_file: str | None = None
    steps: int = 32
    boundary: str = "line"
    wall: bool = False
    engine: str = "direct"
    output: str = "-"
    format: str = "csv"

    def validate(self) -> None:
        if self.walk not in ("coinless", "coined", "classical"):
            raise ConfigError(f"unknown walk {self.walk!r}")
        if self.init not in ("origin", "symmetric", "custom"):
            raise ConfigError(f"unknown init {self.init!r}")
        if self.engine not in ("direct", "spectral", "asymptotic"):
            raise ConfigError(f"unknown engine {self.engine!r}")
        if self.format not in ("csv", "json"):
            raise ConfigError(f"unknown format {self.format!r}")
        if self.steps < 0:
            raise ConfigError("steps must be non-negative")
        if self.init == "custom" and not self.init_file:
            raise ConfigError("--init custom requires --init-file")
        boundary = self.boundary_obj()
        circle = isinstance(boundary, Circle)
        if self.wall:
            if circle:
                raise ConfigError("the absorbing wall requires a line boundary")
            if self.walk != "coinless" or self.engine != "direct":
                raise ConfigError("the absorbing wall requires the coinless walk with the direct engine")
        if self.walk == "classical":
            if circle or self.init != "origin" or self.engine != "direct":
                raise ConfigError("the classical walk supports only --init origin, a line and the direct engine")
        if self.engine == "spectral" and self.walk != "coinless":
            raise ConfigError("the spectral engine evolves the coinless walk")
        if self.engine == "asymptotic":
            if self.walk != "coinless" or self.init == "custom" or circle:
                raise ConfigError("the asymptotic engine needs the coinless walk, origin/symmetric init and a line")
            if self.steps < 1:
                raise ConfigError("the asymptotic engine needs steps >= 1")

    def boundary_obj(self) -> Boundary:
        return parse_boundary(self.boundary)

    def initial_state(self) -> InitialState:
        if self.init == "custom":
            return load_custom(self.init_file)
        return InitialState(self.init)

    def echo(self) -> dict:
        return asdict(self)


def parse_boundary(text: str) -> Boundary:
    if text == "line":
        return Line()
    if text.startswith("circle:"):
        try:
            size = int(text.split(":", 1)[1])
        except ValueError:
            raise ConfigError(f"bad circle size in {text!r}") from None
        try:
            return Circle(size)
        except WalkError as exc:
            raise ConfigError(str(exc)) from None
    raise ConfigError(f"boundary must be 'line' or 'circle:N', got {text!r}")


def load_custom(path: str) -> InitialState:
    """Read ``n re im`` triples (blank lines and ``#`` comments ignored)."""
    pairs = []
    try:
        with open(path) as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                parts = line.split()
                if len(parts) != 3:
                    raise ConfigError(f"{path}:{lineno}: expected 'n re im'")
                try:
                    pairs.append((int(parts[0]), complex(float(parts[1]), float(parts[2]))))
                except ValueError:
                    raise ConfigError(f"{path}:{lineno}: cannot parse {line!r}") from None
    except OSError as exc:
        raise OSError(f"cannot read initial state: {exc}") from exc
    return InitialState.custom(pairs)


def _report_rows(sites, amps, probs) -> list[list]:
    rows = []
    for i, n in enumerate(sites):
        a = None if amps is None else amps[i]
        rows.append([int(n), None if a is None else a.real, None if a is None else a.imag, float(probs[i])])
    return rows


def _amplitude_rows(f: AmplitudeField, lo: int | None = None, hi: int | None = None) -> list[list]:
    if f.periodic or lo is None:
        sites = f.sites
    else:
        sites = np.arange(lo, hi + 1)
    amps = np.array([f.amplitude(int(n)) for n in sites])
    return _report_rows(sites, amps, np.abs(amps) ** 2)


def _light_cone(state: InitialState, steps: int) -> tuple[int, int]:
    sites = [n for n, _ in state.site_amplitudes()]
    return min(sites) - 2 * steps, max(sites) + 2 * steps


def _moments_dict(rows, center: float) -> dict:
    sites = np.array([r[0] for r in rows])
    probs = np.array([r[3] for r in rows])
    return asdict(distribution_moments(sites, probs, center))


def run_simulation(cfg: WalkConfig) -> dict:
    """Execute ``cfg`` and return the report as a plain dict."""
    cfg.validate()
    state = cfg.initial_state()
    boundary = cfg.boundary_obj()
    steps = cfg.steps
    meta = {"engine": cfg.engine, "backend": DEFAULT_BACKEND}
    absorption = None
    started = time.perf_counter()
    try:
        if cfg.walk == "classical":
            dist = evolve_classical(ClassicalDistribution.origin(steps), steps)
            rows = _report_rows(dist.sites[dist.probs > 0], None, dist.probs[dist.probs > 0])
            center = 0.0
        else:
            center = state.center
            lo, hi = _light_cone(state, steps)
            if cfg.wall:
                series = run_absorption(state, steps)
                rows = _amplitude_rows(series.final, lo, hi)
                absorption = [[t, p, 1 - p] for t, p in enumerate(series.values.tolist())]
            elif cfg.engine == "direct":
                kind = WalkKind.COINED if cfg.walk == "coined" else WalkKind.COINLESS
                f = evolve(make_initial(state, boundary, steps), steps, kind)
                rows = _amplitude_rows(f, lo, hi)
            elif cfg.engine == "spectral":
                f = evolve_spectral(state, steps, boundary=boundary)
                meta["grid_size"] = f.amplitudes.size // 2
                rows = _amplitude_rows(f, lo, hi)
            else:
                rows = _asymptotic_rows(state, steps, lo, hi)
    except WalkError as exc:
        raise ConfigError(str(exc)) from exc
    meta["seconds"] = time.perf_counter() - started
    return {
        "config": cfg.echo(),
        "distribution": rows,
        "moments": _moments_dict(rows, center),
        "absorption": absorption,
        "engine": meta,
    }


def _asymptotic_rows(state: InitialState, steps: int, lo: int, hi: int) -> list[list]:
    rows = []
    center = state.center
    for n in range(lo, hi + 1):
        edge = asymptotics.SQRT2 * steps
        x = n - center
        prob = asymptotics.smoothed_pdf(x, steps) if abs(x) < edge else 0.0
        # the stationary-phase amplitude is indexed by the unshifted site
        amp = None
        if state.kind == "symmetric" and abs(n) < edge:
            amp = asymptotics.interior_site_amplitude(n, steps)
        rows.append([n, None if amp is None else amp.real, None if amp is None else amp.imag, prob])
    return rows


# ---------------------------------------------------------------- writers


def _comment_block(report: dict) -> list[str]:
    lines = [f"# {k}={v}" for k, v in report["config"].items()]
    for k, v in report.get("moments", {}).items():
        lines.append(f"# {k}={fmt(v)}")
    for k, v in report.get("summary", {}).items():
        lines.append(f"# {k}={fmt(v) if isinstance(v, float) else v}")
    for k, v in report.get("engine", {}).items():
        lines.append(f"# {k}={fmt(v) if isinstance(v, float) else v}")
    return lines


TABLE_COLUMNS = {
    "distribution": ("n", "re", "im", "prob"),
    "absorption": ("t", "p_abs", "p_survive"),
    "curve": ("n", "density", "mass", "region"),
    "joined": ("n", "prob_left", "prob_right", "abs_diff"),
}


def render(report: dict, table: str, fmt_name: str) -> str:
    """Serialise ``report[table]`` as CSV (with ``#`` comment header) or the whole report as JSON."""
    if fmt_name == "json":
        doc = dict(report)
        for key, cols in TABLE_COLUMNS.items():
            if doc.get(key) is not None:
                doc[key] = [dict(zip(cols, row)) for row in doc[key]]
        return json.dumps(_jsonable(doc), indent=1, sort_keys=True, allow_nan=False) + "\n"
    lines = _comment_block(report)
    lines.append(",".join(TABLE_COLUMNS[table]))
    for row in report[table]:
        lines.append(",".join(c if isinstance(c, str) else (str(c) if isinstance(c, int) else fmt(c)) for c in row))
    return "\n".join(lines) + "\n"


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    return obj


def write_atomic(text: str, path: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# ---------------------------------------------------------------- commands


def cmd_simulate(args) -> tuple[dict, str]:
    cfg = _config_from(args)
    report = run_simulation(cfg)
    if not args.timing:
        report["engine"].pop("seconds")
    if report["absorption"] is not None:
        report["summary"] = {"p_abs": report["absorption"][-1][1]}
    return report, "distribution"


def cmd_absorb(args) -> tuple[dict, str]:
    cfg = _config_from(args)
    cfg.wall = True
    cfg.validate()
    if cfg.boundary != "line":
        raise ConfigError("absorption needs a line")
    try:
        series = run_absorption(cfg.initial_state(), cfg.steps)
    except WalkError as exc:
        raise ConfigError(str(exc)) from exc
    rows = [[t, p, 1 - p] for t, p in enumerate(series.values.tolist())]
    summary = {"p_abs_final": rows[-1][1]}
    if len(rows) >= 16:
        est = estimate_asymptote(series)
        summary["asymptote"] = est.value
        summary["converged"] = est.converged
    return {"config": cfg.echo(), "absorption": rows, "summary": summary, "engine": {"backend": DEFAULT_BACKEND}}, "absorption"


def cmd_asymptotics(args) -> tuple[dict, str]:
    t = args.steps
    if t < 1:
        raise ConfigError("steps must be >= 1")
    if args.step <= 0:
        raise ConfigError("--step must be positive")
    center = InitialState(args.init).center
    edge = asymptotics.SQRT2 * t
    reach = edge if args.range is None else min(args.range, edge)
    h = args.step
    count = int(math.floor(reach / h))
    xs = [j * h for j in range(-count, count + 1) if abs(j * h) < edge]
    rows = []
    for i, x in enumerate(xs):
        # outermost bins run to the light cone so the masses telescope to 1
        lo = 0.0 if i == 0 and args.range is None else asymptotics.smoothed_cdf(x - h / 2, t)
        hi = 1.0 if i == len(xs) - 1 and args.range is None else asymptotics.smoothed_cdf(x + h / 2, t)
        region = asymptotics.classify(x, t, args.band).value
        rows.append([x + center, asymptotics.smoothed_pdf(x, t), hi - lo, region])
    band = asymptotics.peak_band(t, args.band)
    summary = {
        "peak_marker_left": center - edge,
        "peak_marker_right": center + edge,
        "peak_band_halfwidth": band,
        "peak_constant": asymptotics.PEAK_CONSTANT,
    }
    config = {"command": "asymptotics", "steps": t, "init": args.init, "step": h, "range": args.range, "band": args.band}
    return {"config": config, "curve": rows, "summary": summary}, "curve"


def _side(text: str, init: str, steps: int, boundary: str) -> WalkConfig:
    walk, _, engine = text.partition(":")
    return WalkConfig(walk=walk, init=init, steps=steps, boundary=boundary, engine=engine or "direct")


def cmd_compare(args) -> tuple[dict, str]:
    left = _side(args.left, args.init, args.steps, args.boundary)
    right = _side(args.right, args.init, args.steps, args.boundary)
    for cfg in (left, right):
        cfg.init_file = args.init_file
    a, b = run_simulation(left), run_simulation(right)
    pa = {r[0]: r for r in a["distribution"]}
    pb = {r[0]: r for r in b["distribution"]}
    rows, amp_dev = [], []
    for n in sorted(set(pa) | set(pb)):
        ra, rb = pa.get(n), pb.get(n)
        p1 = ra[3] if ra else 0.0
        p2 = rb[3] if rb else 0.0
        rows.append([n, p1, p2, abs(p1 - p2)])
        if ra and rb and ra[1] is not None and rb[1] is not None:
            amp_dev.append(abs(complex(ra[1], ra[2]) - complex(rb[1], rb[2])))
    diffs = np.array([r[3] for r in rows])
    m2a, m2b = a["moments"]["second_moment"], b["moments"]["second_moment"]
    summary = {
        "max_prob_deviation": float(diffs.max()),
        "mean_prob_deviation": float(diffs.mean()),
        "left_second_moment": m2a,
        "right_second_moment": m2b,
        "second_moment_ratio": m2a / m2b if m2b else None,
    }
    if amp_dev:
        summary["max_amplitude_deviation"] = float(max(amp_dev))
    config = {"command": "compare", "left": args.left, "right": args.right, "init": args.init,
              "steps": args.steps, "boundary": args.boundary}
    return {"config": config, "joined": rows, "summary": summary}, "joined"


def _config_from(args) -> WalkConfig:
    return WalkConfig(
        walk=getattr(args, "walk", "coinless"),
        init=args.init,
        init_file=args.init_file,
        steps=args.steps,
        boundary=getattr(args, "boundary", "line"),
        wall=getattr(args, "wall", False),
        engine=getattr(args, "engine", "direct"),
        output=args.output,
        format=args.format,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="staggered-walk", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, init_choices=("origin", "symmetric", "custom")):
        p.add_argument("--init", choices=init_choices, default="origin")
        p.add_argument("--init-file", help="text file of 'n re im' triples for --init custom")
        p.add_argument("--steps", type=int, default=32)
        p.add_argument("--output", "-o", default="-", help="output path ('-' for stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("simulate", help="distribution after a number of steps")
    common(p)
    p.add_argument("--walk", choices=("coinless", "coined", "classical"), default="coinless")
    p.add_argument("--boundary", default="line", help="'line' or 'circle:N' (N even, >= 4)")
    p.add_argument("--wall", action="store_true", help="absorbing wall between n=-1 and n=0")
    p.add_argument("--engine", choices=("direct", "spectral", "asymptotic"), default="direct")
    p.add_argument("--timing", action="store_true", help="record wall-clock time (output is then not reproducible)")
    p.set_defaults(handler=cmd_simulate)

    p = sub.add_parser("absorb", help="absorption probability series with the wall at n=0")
    common(p)
    p.set_defaults(handler=cmd_absorb)

    p = sub.add_parser("asymptotics", help="smoothed density curve and peak markers")
    common(p, ("origin", "symmetric"))
    p.set_defaults(init="symmetric")
    p.add_argument("--step", type=float, default=0.1, help="sample spacing in n")
    p.add_argument("--range", type=float, default=None, help="half-width around the centre (default: light cone)")
    p.add_argument("--band", type=float, default=1.0, help="peak band coefficient C in C * t^(1/3)")
    p.set_defaults(handler=cmd_asymptotics)

    p = sub.add_parser("compare", help="two walks or engines side by side")
    common(p)
    p.add_argument("--left", default="coinless:direct", help="walk[:engine]")
    p.add_argument("--right", default="coinless:spectral", help="walk[:engine]")
    p.add_argument("--boundary", default="line")
    p.set_defaults(handler=cmd_compare)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report, table = args.handler(args)
        text = render(report, table, args.format)
    except ConfigError as exc:
        print(f"staggered-walk: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"staggered-walk: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        write_atomic(text, args.output)
    except OSError as exc:
        print(f"staggered-walk: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return 0


if __name__ == "__main__":
    sys.exit(main())
