"""Command-line front end: solve, plot, converge.

``solve`` runs a filter and writes a trajectory CSV, ``plot`` renders such a
CSV as a static SVG line chart, ``converge`` runs a step-size study against
the Runge-Kutta reference. All defaults reproduce the benchmark oscillator
runs, so ``odefilter solve --problem vdp --method hybrid`` works as-is.

Everything here is deterministic: identical inputs give byte-identical
outputs. The environment variable ODEFILTER_SEEDLESS is reserved; no
computation in this package uses randomness.

CSV schema: header ``t,mean_0,...,mean_{d-1},std_0,...,std_{d-1},phase``
with floats printed to 17 significant digits, comma separated, newline
terminated. With ``--reference``, columns ``ref_0,...,ref_{d-1}`` are
inserted between the stds and the phase.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

import numpy as np

from . import problems
from .errors import ContractViolation, CsvFormatError, DivergedSolveError, SingularUpdateError
from .fourier import FourierParams
from .hybrid import HybridConfig, TrainNoise, TrainPolicy, hybrid_solve
from .solver import Trajectory, solve, taylor_state_space
from .taylor import TaylorParams

EXACT_ORDER_THRESHOLD = 1e-10


@dataclass(frozen=True)
class RunConfig:
    """Everything a solve run needs, assembled from CLI flags."""

    problem: str
    method: str
    h: float
    T: float | None
    T_p: float | None
    q: int
    sigma2_taylor: float
    J: int
    w0: float
    l: float
    sigma2_fourier: float
    R: float
    train_policy: TrainPolicy
    train_noise: TrainNoise
    output: str | None
    mu: float
    fhn_I: float
    fhn_a: float
    fhn_b: float
    fhn_tau: float
    fhn_standard: bool
    reference: bool
    h_ref: float | None


def _fmt(x: float) -> str:
    return format(x, ".17g")


def _build_problem(cfg: RunConfig):
    params = {}
    if cfg.problem == "vdp":
        params["mu"] = cfg.mu
    elif cfg.problem == "fhn":
        params.update(
            I=cfg.fhn_I, a=cfg.fhn_a, b=cfg.fhn_b, tau=cfg.fhn_tau, standard=cfg.fhn_standard
        )
    return problems.by_name(cfg.problem, T=cfg.T, **params)


def run_solve(cfg: RunConfig) -> tuple[Trajectory, Trajectory | None]:
    """Execute the configured solve; returns (trajectory, optional reference)."""
    ivp = _build_problem(cfg)
    if cfg.method == "taylor":
        traj = solve(taylor_state_space(TaylorParams(cfg.q, cfg.sigma2_taylor)), ivp, cfg.h, cfg.R)
    else:
        t_p = cfg.T_p if cfg.T_p is not None else 0.75 * ivp.T
        config = HybridConfig(
            taylor=TaylorParams(cfg.q, cfg.sigma2_taylor),
            fourier=FourierParams(cfg.J, cfg.w0, cfg.l, cfg.sigma2_fourier),
            T_p=t_p,
            h=cfg.h,
            R=cfg.R,
            train_policy=cfg.train_policy,
            train_noise=cfg.train_noise,
        )
        traj = hybrid_solve(config, ivp)
    reference = None
    if cfg.reference:
        h_ref = cfg.h_ref if cfg.h_ref is not None else cfg.h / 10.0
        reference = problems.rk4_reference(ivp, h_ref, h_out=cfg.h)
    return traj, reference


def trajectory_csv(traj: Trajectory, reference: Trajectory | None = None) -> str:
    """Render a trajectory (plus optional reference values) as CSV text."""
    d = traj.dim
    header = ["t"] + [f"mean_{i}" for i in range(d)] + [f"std_{i}" for i in range(d)]
    ref_values = None
    if reference is not None:
        if len(reference) != len(traj):
            raise ContractViolation(
                f"reference has {len(reference)} records, trajectory has {len(traj)}"
            )
        ref_values = reference.value_means()
        header += [f"ref_{i}" for i in range(d)]
    header.append("phase")

    means = traj.value_means()
    stds = traj.value_stds()
    lines = [",".join(header)]
    for k, rec in enumerate(traj.records):
        cells = [_fmt(rec.t)]
        cells += [_fmt(v) for v in means[k]]
        cells += [_fmt(v) for v in stds[k]]
        if ref_values is not None:
            cells += [_fmt(v) for v in ref_values[k]]
        cells.append(rec.phase)
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class CsvData:
    """Parsed trajectory CSV: times, per-coordinate means/stds/refs, phases."""

    t: np.ndarray
    means: np.ndarray
    stds: np.ndarray
    refs: np.ndarray | None
    phases: list[str]

    @property
    def dim(self) -> int:
        return self.means.shape[1]


def parse_trajectory_csv(text: str) -> CsvData:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines = lines[:-1]
    if not lines:
        raise CsvFormatError("empty file", line=1)
    header = lines[0].split(",")
    if header[0] != "t" or header[-1] != "phase":
        raise CsvFormatError("header must start with 't' and end with 'phase'", line=1)
    body = header[1:-1]
    d = sum(1 for name in body if name.startswith("mean_"))
    if d == 0:
        raise CsvFormatError("no mean_i columns in header", line=1)
    has_ref = any(name.startswith("ref_") for name in body)
    expected = (
        [f"mean_{i}" for i in range(d)]
        + [f"std_{i}" for i in range(d)]
        + ([f"ref_{i}" for i in range(d)] if has_ref else [])
    )
    if body != expected:
        raise CsvFormatError(f"unexpected column layout {header!r}", line=1)

    n_cols = len(header)
    rows = []
    phases = []
    for lineno, line in enumerate(lines[1:], start=2):
        cells = line.split(",")
        if len(cells) != n_cols:
            raise CsvFormatError(f"expected {n_cols} columns, got {len(cells)}", line=lineno)
        try:
            rows.append([float(c) for c in cells[:-1]])
        except ValueError as err:
            raise CsvFormatError(str(err), line=lineno) from None
        phases.append(cells[-1])

    data = np.array(rows) if rows else np.empty((0, n_cols - 1))
    return CsvData(
        t=data[:, 0],
        means=data[:, 1 : 1 + d],
        stds=data[:, 1 + d : 1 + 2 * d],
        refs=data[:, 1 + 2 * d : 1 + 3 * d] if has_ref else None,
        phases=phases,
    )


MEAN_COLORS = ["#d62728", "#2ca02c", "#9467bd", "#8c564b"]  # filter means: red, green, ...
REF_COLORS = ["#1f77b4", "#e6b417", "#17becf", "#7f7f7f"]  # true curves: blue, yellow, ...

_SVG_W, _SVG_H = 840, 480
_ML, _MR, _MT, _MB = 64, 16, 20, 44


def render_svg(data: CsvData) -> str:
    """Static line chart: one polyline per mean (and per reference) column.

    A dashed vertical rule marks the phase boundary when the trajectory
    switches phase. Output is a pure function of the parsed data.
    """
    pw = _SVG_W - _ML - _MR
    ph = _SVG_H - _MT - _MB
    n = data.t.size

    if n > 0:
        tmin, tmax = float(data.t.min()), float(data.t.max())
        series = [data.means[:, i] for i in range(data.dim)]
        if data.refs is not None:
            series += [data.refs[:, i] for i in range(data.dim)]
        ymin = min(float(s.min()) for s in series)
        ymax = max(float(s.max()) for s in series)
    else:
        tmin, tmax, ymin, ymax = 0.0, 1.0, 0.0, 1.0
    if tmax == tmin:
        tmax = tmin + 1.0
    if ymax == ymin:
        ymin, ymax = ymin - 1.0, ymax + 1.0
    pad = 0.05 * (ymax - ymin)
    ymin -= pad
    ymax += pad

    def sx(t: float) -> float:
        return _ML + (t - tmin) / (tmax - tmin) * pw

    def sy(v: float) -> float:
        return _MT + (ymax - v) / (ymax - ymin) * ph

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SVG_W}" height="{_SVG_H}" '
        f'viewBox="0 0 {_SVG_W} {_SVG_H}" font-family="sans-serif" font-size="12">',
        f'<rect width="{_SVG_W}" height="{_SVG_H}" fill="white"/>',
        f'<rect x="{_ML}" y="{_MT}" width="{pw}" height="{ph}" fill="none" stroke="#333"/>',
    ]

    for i in range(6):
        frac = i / 5
        tx = tmin + frac * (tmax - tmin)
        x = sx(tx)
        parts.append(
            f'<line x1="{x:.2f}" y1="{_MT + ph}" x2="{x:.2f}" y2="{_MT + ph + 5}" stroke="#333"/>'
        )
        parts.append(
            f'<text x="{x:.2f}" y="{_MT + ph + 18}" text-anchor="middle">{tx:.6g}</text>'
        )
        vy = ymin + frac * (ymax - ymin)
        y = sy(vy)
        parts.append(f'<line x1="{_ML - 5}" y1="{y:.2f}" x2="{_ML}" y2="{y:.2f}" stroke="#333"/>')
        parts.append(
            f'<text x="{_ML - 8}" y="{y + 4:.2f}" text-anchor="end">{vy:.6g}</text>'
        )

    rule_t = None
    if n > 0:
        first = data.phases[0]
        for k, phase in enumerate(data.phases):
            if phase != first:
                rule_t = data.t[k - 1]
                break
    if rule_t is not None:
        x = sx(rule_t)
        parts.append(
            f'<line x1="{x:.2f}" y1="{_MT}" x2="{x:.2f}" y2="{_MT + ph}" '
            f'stroke="#666" stroke-dasharray="5,4"/>'
        )
        parts.append(f'<text x="{x + 4:.2f}" y="{_MT + 14}" fill="#666">t={rule_t:.6g}</text>')

    def polyline(values: np.ndarray, color: str):
        points = " ".join(f"{sx(t):.2f},{sy(v):.2f}" for t, v in zip(data.t, values))
        parts.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{points}"/>')

    legend = []
    if n > 0:
        if data.refs is not None:
            for i in range(data.dim):
                polyline(data.refs[:, i], REF_COLORS[i % len(REF_COLORS)])
                legend.append((f"ref_{i}", REF_COLORS[i % len(REF_COLORS)]))
        for i in range(data.dim):
            polyline(data.means[:, i], MEAN_COLORS[i % len(MEAN_COLORS)])
            legend.append((f"mean_{i}", MEAN_COLORS[i % len(MEAN_COLORS)]))

    lx = _ML + 8
    for label, color in legend:
        parts.append(f'<text x="{lx}" y="{_MT + ph - 8}" fill="{color}">{label}</text>')
        lx += 8 * len(label) + 16

    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def run_converge(
    problem: str, q: float, hs: list[float], T: float | None, sigma2: float
) -> tuple[str, list[float], float | str]:
    """Step-size study of the Taylor filter against the RK4 reference.

    Returns the printed table, the per-h max errors, and the fitted order
    (least-squares slope in log-log, or "exact" when errors vanish).
    """
    ivp = problems.by_name(problem, T=T)
    params = TaylorParams(int(q), sigma2)
    errors = []
    for h in hs:
        traj = solve(taylor_state_space(params), ivp, h, R=0.0)
        ref = problems.rk4_reference(ivp, h / 20.0, h_out=h)
        err = float(np.max(np.abs(traj.value_means() - ref.value_means())))
        errors.append(err)

    if max(errors) <= EXACT_ORDER_THRESHOLD:
        order: float | str = "exact"
    else:
        logs_h = np.log([float(h) for h in hs])
        logs_e = np.log(np.maximum(errors, 1e-300))
        order = float(np.polyfit(logs_h, logs_e, 1)[0])

    lines = [f"{'h':>12}  {'max_error':>14}"]
    for h, err in zip(hs, errors):
        lines.append(f"{h:>12.6g}  {err:>14.6e}")
    lines.append(f"fitted order: {order if order == 'exact' else format(order, '.3f')}")
    return "\n".join(lines), errors, order


def _add_solve_args(p: argparse.ArgumentParser):
    p.add_argument("--problem", required=True, choices=sorted(problems.REGISTRY))
    p.add_argument("--method", required=True, choices=["taylor", "hybrid"])
    p.add_argument("--h", type=float, default=0.01, help="step size (default 0.01)")
    p.add_argument("--T", type=float, default=None, help="time horizon (default: problem's)")
    p.add_argument("--Tp", type=float, default=None, help="prediction time (default 0.75*T)")
    p.add_argument("--q", type=int, default=1, help="Taylor derivatives (default 1)")
    p.add_argument("--sigma2-taylor", type=float, default=1.0)
    p.add_argument("--J", type=int, default=3, help="Fourier truncation order (default 3)")
    p.add_argument("--w0", type=float, default=1.0, help="angular velocity (default 1)")
    p.add_argument("--l", type=float, default=3.0, help="periodic-kernel lengthscale (default 3)")
    p.add_argument("--sigma2-fourier", type=float, default=1.0)
    p.add_argument("--R", type=float, default=0.0, help="measurement noise (default 0)")
    p.add_argument(
        "--train-policy",
        choices=["values_all", "values_stride", "values_and_derivatives"],
        default="values_all",
    )
    p.add_argument("--train-stride", type=int, default=1)
    p.add_argument(
        "--train-noise", choices=["fixed_jitter", "taylor_variance"], default="fixed_jitter"
    )
    p.add_argument("--train-jitter", type=float, default=1e-10)
    p.add_argument("--mu", type=float, default=5.0, help="vdp parameter")
    p.add_argument("--fhn-I", type=float, default=0.5)
    p.add_argument("--fhn-a", type=float, default=0.7)
    p.add_argument("--fhn-b", type=float, default=0.8)
    p.add_argument("--fhn-tau", type=float, default=10.0)
    p.add_argument(
        "--fhn-standard",
        action="store_true",
        help="use the recovery form with the b*x2 term",
    )
    p.add_argument("--reference", action="store_true", help="add RK4 reference columns")
    p.add_argument("--h-ref", type=float, default=None, help="reference step (default h/10)")
    p.add_argument("-o", "--output", default=None, help="CSV path (default <problem>_<method>.csv)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="odefilter",
        description="Gaussian ODE filtering with Taylor, Fourier, and hybrid priors.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="run a filter and write a trajectory CSV")
    _add_solve_args(p_solve)

    p_plot = sub.add_parser("plot", help="render a trajectory CSV as an SVG line chart")
    p_plot.add_argument("csv", help="input CSV produced by solve")
    p_plot.add_argument("-o", "--output", default=None, help="SVG path (default <csv>.svg)")

    p_conv = sub.add_parser("converge", help="step-size study against the RK4 reference")
    p_conv.add_argument("--problem", required=True, choices=sorted(problems.REGISTRY))
    p_conv.add_argument("--q", type=int, default=1)
    p_conv.add_argument("--sigma2-taylor", type=float, default=1.0)
    p_conv.add_argument("--T", type=float, default=None)
    p_conv.add_argument(
        "--h", type=float, nargs="+", required=True, help="step sizes, strictly decreasing"
    )
    return parser


def _cmd_solve(args, parser) -> int:
    if args.method == "hybrid":
        horizon = args.T if args.T is not None else problems.by_name(args.problem).T
        t_p = args.Tp if args.Tp is not None else 0.75 * horizon
        if not 0 < t_p < horizon:
            parser.error(f"--Tp must lie strictly inside (0, T={horizon:g}), got {t_p:g}")
    cfg = RunConfig(
        problem=args.problem,
        method=args.method,
        h=args.h,
        T=args.T,
        T_p=args.Tp,
        q=args.q,
        sigma2_taylor=args.sigma2_taylor,
        J=args.J,
        w0=args.w0,
        l=args.l,
        sigma2_fourier=args.sigma2_fourier,
        R=args.R,
        train_policy=TrainPolicy(args.train_policy, args.train_stride),
        train_noise=TrainNoise(args.train_noise, args.train_jitter),
        output=args.output,
        mu=args.mu,
        fhn_I=args.fhn_I,
        fhn_a=args.fhn_a,
        fhn_b=args.fhn_b,
        fhn_tau=args.fhn_tau,
        fhn_standard=args.fhn_standard,
        reference=args.reference,
        h_ref=args.h_ref,
    )
    traj, reference = run_solve(cfg)
    out = cfg.output or f"{cfg.problem}_{cfg.method}.csv"
    with open(out, "w", newline="") as fh:
        fh.write(trajectory_csv(traj, reference))
    print(f"wrote {out} ({len(traj)} rows)")
    return 0


def _cmd_plot(args) -> int:
    with open(args.csv) as fh:
        data = parse_trajectory_csv(fh.read())
    out = args.output or (args.csv[:-4] if args.csv.endswith(".csv") else args.csv) + ".svg"
    with open(out, "w", newline="") as fh:
        fh.write(render_svg(data))
    print(f"wrote {out}")
    return 0


def _cmd_converge(args, parser) -> int:
    hs = args.h
    if len(hs) < 3:
        parser.error("--h needs at least 3 step sizes")
    if any(b >= a for a, b in zip(hs, hs[1:])):
        parser.error("--h step sizes must be strictly decreasing")
    table, _, _ = run_converge(args.problem, args.q, hs, args.T, args.sigma2_taylor)
    print(table)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "solve":
            return _cmd_solve(args, parser)
        if args.command == "plot":
            return _cmd_plot(args)
        return _cmd_converge(args, parser)
    except (ContractViolation, CsvFormatError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except (SingularUpdateError, DivergedSolveError) as err:
        print(f"solver error: {err}", file=sys.stderr)
        return 1
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
