"""Benchmark initial value problems and a classical reference oracle.

The two oscillator benchmarks (Van der Pol, FitzHugh-Nagumo) are joined by
three synthetic problems (linear decay, constant, cosine forcing) used for
convergence and Fourier-training checks. ``rk4_reference`` provides the
ground-truth trajectories the filters are judged against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .errors import ContractViolation, DivergedSolveError
from .filtering import GaussianBelief, ProjectionPair
from .solver import IVProblem, Trajectory, TrajectoryRecord, _n_steps

REFERENCE_PHASE = "reference"


def vdp(mu: float = 5.0) -> IVProblem:
    """Van der Pol oscillator in Lienard form, d(x1)/dt = mu(x1 - x1^3/3 - x2)."""
    if mu == 0:
        raise ContractViolation("vdp requires mu != 0")

    def field(x: np.ndarray, t: float) -> np.ndarray:
        x1, x2 = x
        return np.array([mu * (x1 - x1**3 / 3.0 - x2), x1 / mu])

    return IVProblem(field=field, x0=np.array([1.0, -1.0]), T=50.0, name="vdp")


def fhn(
    I: float = 0.5,
    a: float = 0.7,
    b: float = 0.8,
    tau: float = 10.0,
    standard: bool = False,
) -> IVProblem:
    """FitzHugh-Nagumo model.

    The recovery equation is (x1 + a - x2)/tau, which leaves b unused;
    ``standard=True`` switches to the textbook (x1 + a - b*x2)/tau form.
    """
    if tau == 0:
        raise ContractViolation("fhn requires tau != 0")
    b_eff = b if standard else 1.0

    def field(x: np.ndarray, t: float) -> np.ndarray:
        x1, x2 = x
        return np.array([x1 - x1**3 / 3.0 - x2 + I, (x1 + a - b_eff * x2) / tau])

    return IVProblem(field=field, x0=np.array([1.0, 0.1]), T=50.0, name="fhn")


def linear(x0: float = 1.0, T: float = 2.0) -> IVProblem:
    """Linear decay dx/dt = -x; exact solution x0 * exp(-t)."""

    def field(x: np.ndarray, t: float) -> np.ndarray:
        return -x

    return IVProblem(field=field, x0=np.array([x0]), T=T, name="linear")


def constant(c: float = 1.0, T: float = 2.0) -> IVProblem:
    """Zero field; the solution stays at c."""

    def field(x: np.ndarray, t: float) -> np.ndarray:
        return np.zeros(1)

    return IVProblem(field=field, x0=np.array([c]), T=T, name="constant")


def cosine(T: float = 6 * math.pi) -> IVProblem:
    """Time-forced problem dx/dt = -sin(t), x(0) = 1; exact solution cos(t)."""

    def field(x: np.ndarray, t: float) -> np.ndarray:
        return np.array([-math.sin(t)])

    return IVProblem(field=field, x0=np.array([1.0]), T=T, name="cosine")


@dataclass(frozen=True)
class ProblemSpec:
    """Registry entry: factory plus the default parameters it accepts."""

    name: str
    factory: Callable[..., IVProblem]
    defaults: dict


REGISTRY = {
    "vdp": ProblemSpec("vdp", vdp, {"mu": 5.0}),
    "fhn": ProblemSpec(
        "fhn", fhn, {"I": 0.5, "a": 0.7, "b": 0.8, "tau": 10.0, "standard": False}
    ),
    "linear": ProblemSpec("linear", linear, {"x0": 1.0, "T": 2.0}),
    "constant": ProblemSpec("constant", constant, {"c": 1.0, "T": 2.0}),
    "cosine": ProblemSpec("cosine", cosine, {"T": 6 * math.pi}),
}


def by_name(name: str, T: float | None = None, **params) -> IVProblem:
    """Look up and build a registered problem; unknown names fail loudly."""
    if name not in REGISTRY:
        raise ContractViolation(
            f"unknown problem {name!r}; known: {', '.join(sorted(REGISTRY))}"
        )
    spec = REGISTRY[name]
    unknown = set(params) - set(spec.defaults)
    if unknown:
        raise ContractViolation(f"problem {name!r} does not accept {sorted(unknown)}")
    ivp = spec.factory(**params)
    if T is not None:
        ivp = replace(ivp, T=float(T))
    return ivp


def rk4_reference(ivp: IVProblem, h_ref: float, h_out: float | None = None) -> Trajectory:
    """Classical fixed-step 4th-order Runge-Kutta trajectory on a uniform grid.

    Integrates with internal step h_ref but records only every h_out (default
    h_ref), which keeps long high-resolution references affordable. Callers
    judging a filter run at step h should use h_ref <= h/10. Records carry
    [value, derivative] means with zero covariance under the phase tag
    ``reference``.
    """
    if h_ref <= 0:
        raise ContractViolation(f"h_ref must be > 0, got {h_ref}")
    if h_out is None:
        h_out = h_ref
    substeps = h_out / h_ref
    substeps_round = round(substeps)
    if substeps_round < 1 or abs(substeps - substeps_round) > 1e-9 * max(1.0, substeps):
        raise ContractViolation(f"h_out={h_out} must be an integer multiple of h_ref={h_ref}")
    n_out = _n_steps(ivp.T, h_out)

    f = ivp.field
    d = ivp.dim
    zero_cov = np.zeros((2, 2))

    def make_record(t: float, x: np.ndarray) -> TrajectoryRecord:
        if not np.all(np.isfinite(x)):
            raise DivergedSolveError(f"reference state non-finite at t={t:g}", t=t)
        dx = f(x, t)
        beliefs = tuple(
            GaussianBelief(np.array([x[i], dx[i]]), zero_cov) for i in range(d)
        )
        return TrajectoryRecord(t, beliefs, REFERENCE_PHASE)

    x = ivp.x0.copy()
    records = [make_record(0.0, x)]
    half = 0.5 * h_ref
    sixth = h_ref / 6.0
    for k in range(1, n_out + 1):
        base = (k - 1) * substeps_round
        for s in range(substeps_round):
            t = (base + s) * h_ref
            k1 = f(x, t)
            k2 = f(x + half * k1, t + half)
            k3 = f(x + half * k2, t + half)
            k4 = f(x + h_ref * k3, t + h_ref)
            x = x + sixth * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        records.append(make_record(k * h_out, x))

    projections = ProjectionPair(np.array([1.0, 0.0]), np.array([0.0, 1.0]))
    return Trajectory(
        records=tuple(records),
        h=h_out,
        problem=ivp.name,
        projections={REFERENCE_PHASE: projections},
    )
