"""Gaussian ODE filter loop.

Treats an IVP as a state estimation problem: at every grid point the state
is predicted along the prior dynamics, the vector field is evaluated once at
the assembled predicted mean, and each coordinate's belief is updated with
its component of that evaluation as a derivative measurement.

Multivariate ODEs run one independent scalar-measurement filter per
coordinate; only the vector-field evaluation couples them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

import numpy as np

from .errors import ContractViolation, DivergedSolveError, SingularUpdateError
from .filtering import (
    GaussianBelief,
    MeasurementModel,
    ProjectionPair,
    TransitionModel,
    predict,
    update,
)
from .fourier import FourierParams, fourier_init, fourier_projections, fourier_transition
from .taylor import TaylorParams, ibm_transition, taylor_init, taylor_projections

# Tolerance for "t_end/h is an integer" grid checks.
GRID_TOL = 1e-9

VectorField = Callable[[np.ndarray, float], np.ndarray]


@dataclass(frozen=True)
class StateSpaceModel:
    """Pluggable prior: transition builder, projections, initial-belief builder."""

    transition_builder: Callable[[float], TransitionModel]
    projections: ProjectionPair
    init_builder: Callable[[float, float], GaussianBelief]
    label: str


def taylor_state_space(params: TaylorParams) -> StateSpaceModel:
    return StateSpaceModel(
        transition_builder=lambda h: ibm_transition(h, params),
        projections=taylor_projections(params.q),
        init_builder=lambda x0, dx0: taylor_init(x0, dx0, params.q),
        label="taylor",
    )


def fourier_state_space(params: FourierParams) -> StateSpaceModel:
    # The Fourier prior is zero-mean; the initial values enter only through
    # the measurements, so the init builder ignores them.
    return StateSpaceModel(
        transition_builder=lambda h: fourier_transition(h, params),
        projections=fourier_projections(params),
        init_builder=lambda x0, dx0: fourier_init(params),
        label="fourier",
    )


@dataclass(frozen=True)
class IVProblem:
    """Initial value problem dx/dt = field(x, t), x(0) = x0, on [0, T]."""

    field: VectorField
    x0: np.ndarray
    T: float
    name: str

    def __post_init__(self):
        object.__setattr__(self, "x0", np.asarray(self.x0, dtype=float).reshape(-1))
        if self.T <= 0:
            raise ContractViolation(f"time horizon T must be > 0, got {self.T}")

    @property
    def dim(self) -> int:
        return self.x0.size


@dataclass(frozen=True)
class TrajectoryRecord:
    """One grid point: time, per-coordinate beliefs, and the phase that produced it."""

    t: float
    beliefs: tuple[GaussianBelief, ...]
    phase: str


@dataclass(frozen=True)
class Trajectory:
    """Time-ordered solver output on a uniform grid of step h.

    ``projections`` maps each phase label occurring in the records to the
    projection pair of the state space model that produced those records,
    which is what turns state beliefs back into values of x.
    """

    records: tuple[TrajectoryRecord, ...]
    h: float
    problem: str
    projections: Mapping[str, ProjectionPair]

    def __post_init__(self):
        object.__setattr__(self, "records", tuple(self.records))
        ts = np.array([r.t for r in self.records])
        if len(ts) > 1 and not np.all(np.abs(np.diff(ts) - self.h) <= 1e-9):
            raise ContractViolation("record times must increase uniformly by h")

    def __len__(self) -> int:
        return len(self.records)

    @property
    def dim(self) -> int:
        return len(self.records[0].beliefs)

    def times(self) -> np.ndarray:
        return np.array([r.t for r in self.records])

    def phases(self) -> list[str]:
        return [r.phase for r in self.records]

    def value_means(self) -> np.ndarray:
        """H0-projected means, shape (n_records, dim)."""
        out = np.empty((len(self.records), self.dim))
        for k, rec in enumerate(self.records):
            H0 = self.projections[rec.phase].H0
            out[k] = [float(H0 @ b.mean) for b in rec.beliefs]
        return out

    def value_stds(self) -> np.ndarray:
        """sqrt(H0 P H0^T) per coordinate, shape (n_records, dim)."""
        out = np.empty((len(self.records), self.dim))
        for k, rec in enumerate(self.records):
            H0 = self.projections[rec.phase].H0
            out[k] = [np.sqrt(max(float(H0 @ b.cov @ H0), 0.0)) for b in rec.beliefs]
        return out


def _field_at(field: VectorField, m: np.ndarray, t: float) -> np.ndarray:
    z = np.asarray(field(m, t), dtype=float).reshape(-1)
    if z.size != m.size:
        raise ContractViolation(
            f"vector field returned {z.size} components for a {m.size}-dimensional state"
        )
    if not np.all(np.isfinite(z)):
        raise DivergedSolveError(f"vector field returned non-finite value at t={t:g}", t=t)
    return z


def evaluate_measurement(
    beliefs: Sequence[GaussianBelief],
    field: VectorField,
    H0: np.ndarray,
    t: float,
) -> np.ndarray:
    """Evaluate the vector field at the assembled projected means.

    Raises DivergedSolveError if the field output is not finite.
    """
    m = np.array([float(H0 @ b.mean) for b in beliefs])
    return _field_at(field, m, t)


def _n_steps(t_end: float, h: float) -> int:
    n = t_end / h
    n_round = round(n)
    if n_round < 1 or abs(n - n_round) > GRID_TOL * max(1.0, abs(n)):
        raise ContractViolation(f"t_end/h = {n!r} is not an integer number of steps")
    return n_round


def solve(
    ssm: StateSpaceModel,
    ivp: IVProblem,
    h: float,
    R: float,
    t_end: float | None = None,
) -> Trajectory:
    """Run the Gaussian ODE filter on a uniform grid over [0, t_end].

    Per step, every coordinate is predicted along the prior dynamics, the
    field is evaluated once at the assembled predicted means, and every
    coordinate is updated with its component of that evaluation through the
    derivative row H with measurement noise R. Returns all round(t_end/h)+1
    records, including t = 0.
    """
    if h <= 0:
        raise ContractViolation(f"step size h must be > 0, got {h}")
    if R < 0:
        raise ContractViolation(f"measurement noise R must be >= 0, got {R}")
    if t_end is None:
        t_end = ivp.T
    if t_end > ivp.T + GRID_TOL:
        raise ContractViolation(f"t_end={t_end} exceeds problem horizon T={ivp.T}")
    n = _n_steps(t_end, h)

    trans = ssm.transition_builder(h)
    meas = MeasurementModel(ssm.projections.H, R)
    H0 = ssm.projections.H0

    dx0 = _field_at(ivp.field, ivp.x0, 0.0)
    beliefs = tuple(ssm.init_builder(ivp.x0[i], dx0[i]) for i in range(ivp.dim))
    records = [TrajectoryRecord(0.0, beliefs, ssm.label)]

    for k in range(1, n + 1):
        t = k * h
        predicted = tuple(predict(b, trans) for b in beliefs)
        z = evaluate_measurement(predicted, ivp.field, H0, t)
        try:
            beliefs = tuple(update(predicted[i], meas, z[i]) for i in range(ivp.dim))
        except SingularUpdateError as err:
            raise SingularUpdateError(f"{err} at step {k} (t={t:g})", step=k, t=t) from err
        records.append(TrajectoryRecord(t, beliefs, ssm.label))

    return Trajectory(
        records=tuple(records),
        h=h,
        problem=ivp.name,
        projections={ssm.label: ssm.projections},
    )
