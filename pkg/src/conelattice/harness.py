"""Seeded randomized and exact verification suites.

These suites operationalize the lattice-norm/projection equivalence at desk
scale: an instance whose transformed Gram matrix is diagonal (a "lattice
instance") must have an isotone, subadditive cone projection equal to the
positive part, and its positive pairs must have nonnegative inner products;
a non-lattice instance must be refutable, either by a lattice-norm violation
or by the positive part failing to be the metric projection.

Every suite is deterministic: the inputs of trial ``i`` come from a counter
based generator keyed by ``(seed, i)``, so reports (including witnesses) do
not depend on execution order or parallelism.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

import numpy as np

from .order import OrderedSpace, pos_part_rows
from .projection import DEFAULT_MAX_ITER, DEFAULT_TOL, project_dykstra_rows
from .spaces import inner_rows, norm_rows

# Off-diagonal tolerance (relative to the largest diagonal entry) below which
# the transformed Gram matrix counts as diagonal.
OFFDIAG_RTOL = 1e-10

VERDICT_PASS = "pass"
VERDICT_FAIL = "fail"
VERDICT_INCONCLUSIVE = "inconclusive"

SUITE_NAMES = (
    "lattice-norm",
    "isotone",
    "subadditive",
    "positive-pairs",
    "identities",
    "moreau",
    "oracle-agreement",
)


def round12(value: float) -> float:
    """Round to 12 significant digits (the fixed formatting of all reports)."""
    return float(format(float(value) + 0.0, ".12g"))


def format12(value: float) -> str:
    """Format with 12 significant digits; negative zero prints as 0."""
    return format(float(value) + 0.0, ".12g")


def _round_tree(obj):
    if isinstance(obj, float):
        return round12(obj)
    if isinstance(obj, dict):
        return {k: _round_tree(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_tree(v) for v in obj]
    return obj


def instance_digest(ospace: OrderedSpace) -> str:
    """Digest of the mathematical instance (dimension, gram, order basis)."""
    payload = {
        "dimension": ospace.space.dim,
        "gram": np.asarray(ospace.space.gram).tolist(),
        "order_basis": np.asarray(ospace.order.basis).tolist(),
    }
    canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("ascii")).hexdigest()[:16]


@dataclass(frozen=True)
class TrialConfig:
    """Knobs for a randomized suite.

    ``sample_radius`` is the half-width of the uniform coordinate box; the
    checked inequalities are homogeneous, so a fixed box loses no generality.
    """

    trials: int = 10_000
    seed: int = 0
    tol: float = 1e-7
    sample_radius: float = 10.0

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError(f"trials must be at least 1, got {self.trials}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in an unsigned 64-bit integer")
        if self.tol <= 0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if self.sample_radius <= 0:
            raise ValueError(f"sample_radius must be positive, got {self.sample_radius}")


@dataclass(frozen=True)
class Witness:
    """The first violating inputs found by a suite."""

    inputs: dict
    defect: float
    trial: int

    def to_dict(self):
        return {"inputs": self.inputs, "defect": self.defect, "trial": self.trial}


@dataclass(frozen=True)
class Report:
    """Outcome of one suite run on one instance."""

    suite: str
    instance_digest: str
    trials_run: int
    violations: int
    first_witness: Witness | None
    seed: int
    tol: float
    verdict: str

    def to_dict(self):
        witness = None if self.first_witness is None else self.first_witness.to_dict()
        return _round_tree(
            {
                "suite": self.suite,
                "instance_digest": self.instance_digest,
                "trials_run": self.trials_run,
                "violations": self.violations,
                "first_witness": witness,
                "seed": self.seed,
                "tol": self.tol,
                "verdict": self.verdict,
            }
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    @classmethod
    def from_dict(cls, data) -> "Report":
        witness = data.get("first_witness")
        if witness is not None:
            witness = Witness(
                inputs=witness["inputs"],
                defect=witness["defect"],
                trial=witness["trial"],
            )
        return cls(
            suite=data["suite"],
            instance_digest=data["instance_digest"],
            trials_run=data["trials_run"],
            violations=data["violations"],
            first_witness=witness,
            seed=data["seed"],
            tol=data["tol"],
            verdict=data["verdict"],
        )

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))


def trial_rng(seed: int, index: int) -> np.random.Generator:
    """The deterministic generator for one trial, keyed by (seed, index)."""
    key = np.array([seed, index], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def _vector_list(v) -> list:
    return [float(c) for c in np.asarray(v, dtype=float)]


def _reduce(suite, ospace, cfg, defects, witnesses, inconclusive) -> Report:
    """Fold per-trial defects into a Report; defect > tol-slack means violation.

    ``defects`` holds the already-scaled per-trial excess (violation iff
    > cfg.tol); ``witnesses`` maps trial index -> inputs dict; rows flagged
    ``inconclusive`` never count as violations.
    """
    defects = np.asarray(defects, dtype=float)
    conclusive = ~np.asarray(inconclusive, dtype=bool)
    violating = conclusive & (defects > cfg.tol)
    violations = int(violating.sum())
    first = None
    if violations:
        first_idx = int(np.where(violating)[0][0])
        first = Witness(
            inputs=witnesses[first_idx],
            defect=float(defects[first_idx]),
            trial=first_idx,
        )
        verdict = VERDICT_FAIL
    elif not conclusive.all():
        verdict = VERDICT_INCONCLUSIVE
    else:
        verdict = VERDICT_PASS
    return Report(
        suite=suite,
        instance_digest=instance_digest(ospace),
        trials_run=len(defects),
        violations=violations,
        first_witness=first,
        seed=cfg.seed,
        tol=cfg.tol,
        verdict=verdict,
    )


@dataclass(frozen=True, eq=False)
class LatticeNormExactness:
    """Exact lattice-norm decision with metric and witness.

    ``order_gram`` is M = B^-T G B^-1, the Gram matrix expressed in the cone
    coordinates.  The induced norm is a lattice norm for the cone order iff
    M is diagonal (within ``OFFDIAG_RTOL`` of its largest diagonal entry)
    with a positive diagonal.  When it is not, ``witness`` holds a pair
    (x, y) with |x| = |y| but ||x|| > ||y||, built from the worst
    off-diagonal entry (i, j): the coordinates e_i + e_j and e_i - e_j
    mapped back through B^-1, ordered so the larger norm comes first.
    """

    is_lattice_norm: bool
    order_gram: np.ndarray
    max_offdiag: float
    indices: tuple[int, int] | None
    witness: tuple[np.ndarray, np.ndarray] | None

    def __bool__(self) -> bool:
        return self.is_lattice_norm


def is_lattice_norm_exact(ospace: OrderedSpace) -> LatticeNormExactness:
    """Decide exactly whether the induced norm is a lattice norm."""
    inverse = ospace.order.inverse
    metric = inverse.T @ ospace.space.gram @ inverse
    metric = 0.5 * (metric + metric.T)
    diag = np.diagonal(metric)
    off = metric - np.diag(diag)
    max_off = float(np.abs(off).max()) if metric.shape[0] > 1 else 0.0
    threshold = OFFDIAG_RTOL * float(diag.max())
    if max_off <= threshold and diag.min() > 0.0:
        return LatticeNormExactness(
            is_lattice_norm=True,
            order_gram=metric,
            max_offdiag=max_off,
            indices=None,
            witness=None,
        )
    flat = int(np.abs(off).argmax())
    i, j = divmod(flat, metric.shape[0])
    coords_sum = np.zeros(ospace.order.dim)
    coords_sum[i] = 1.0
    coords_sum[j] = 1.0
    coords_diff = np.zeros(ospace.order.dim)
    coords_diff[i] = 1.0
    coords_diff[j] = -1.0
    u = inverse @ coords_sum
    v = inverse @ coords_diff
    # |u| = |v| in the lattice; their norms differ by 4 M_ij, larger first.
    if metric[i, j] < 0:
        u, v = v, u
    return LatticeNormExactness(
        is_lattice_norm=False,
        order_gram=metric,
        max_offdiag=max_off,
        indices=(int(i), int(j)),
        witness=(u, v),
    )


def check_lattice_norm_sampled(ospace: OrderedSpace, cfg: TrialConfig) -> Report:
    """Hunt for pairs with |x| <= |y| but ||x|| > ||y|| (tolerance-scaled).

    Trial i draws the coordinates of y uniformly from the sample box and
    shrinks an independent uniform vector into the componentwise envelope of
    |By|, guaranteeing |x| <= |y|.  When the exact criterion already refutes
    the instance, its deterministic witness pair is injected as trial 0.
    """
    dim = ospace.order.dim
    inverse = ospace.order.inverse
    exact = is_lattice_norm_exact(ospace)
    xs = np.empty((cfg.trials, dim))
    ys = np.empty((cfg.trials, dim))
    for i in range(cfg.trials):
        if i == 0 and not exact.is_lattice_norm:
            xs[0] = exact.witness[0]
            ys[0] = exact.witness[1]
            continue
        rng = trial_rng(cfg.seed, i)
        y_coords = rng.uniform(-cfg.sample_radius, cfg.sample_radius, dim)
        shrink = rng.uniform(-1.0, 1.0, dim)
        xs[i] = inverse @ (shrink * np.abs(y_coords))
        ys[i] = inverse @ y_coords
    norms_x = norm_rows(ospace.space, xs)
    norms_y = norm_rows(ospace.space, ys)
    defects = (norms_x - norms_y) / (1.0 + norms_y)
    witnesses = {
        i: {"x": _vector_list(xs[i]), "y": _vector_list(ys[i])}
        for i in np.where(defects > cfg.tol)[0]
    }
    return _reduce(
        "lattice-norm", ospace, cfg, defects, witnesses, np.zeros(cfg.trials, bool)
    )


def _project_rows(ospace, rows, projector):
    if projector == "closed_form":
        points = pos_part_rows(ospace.order, rows)
        return points, np.ones(len(rows), dtype=bool)
    if projector == "dykstra":
        batch = project_dykstra_rows(
            ospace, rows, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER
        )
        return batch.points, batch.converged
    raise ValueError(f"unknown projector {projector!r}")


def check_isotone(ospace: OrderedSpace, projector: str, cfg: TrialConfig) -> Report:
    """Check that x <= y implies P(x) <= P(y).

    Trial i draws x from the sample box and y = x + z for a cone element z
    (nonnegative coordinates through B^-1).  Non-convergent projections make
    a trial inconclusive, not a violation.
    """
    dim = ospace.order.dim
    xs = np.empty((cfg.trials, dim))
    ys = np.empty((cfg.trials, dim))
    for i in range(cfg.trials):
        rng = trial_rng(cfg.seed, i)
        xs[i] = rng.uniform(-cfg.sample_radius, cfg.sample_radius, dim)
        cone_coords = rng.uniform(0.0, cfg.sample_radius, dim)
        ys[i] = xs[i] + ospace.order.inverse @ cone_coords
    px, okx = _project_rows(ospace, xs, projector)
    py, oky = _project_rows(ospace, ys, projector)
    gaps = (py - px) @ ospace.order.basis.T
    defects = -gaps.min(axis=1)
    inconclusive = ~(okx & oky)
    witnesses = {
        i: {"x": _vector_list(xs[i]), "y": _vector_list(ys[i])}
        for i in np.where((defects > cfg.tol) & ~inconclusive)[0]
    }
    return _reduce("isotone", ospace, cfg, defects, witnesses, inconclusive)


def check_subadditive(ospace: OrderedSpace, projector: str, cfg: TrialConfig) -> Report:
    """Check that P(x + y) <= P(x) + P(y) for box-sampled x and y."""
    dim = ospace.order.dim
    xs = np.empty((cfg.trials, dim))
    ys = np.empty((cfg.trials, dim))
    for i in range(cfg.trials):
        rng = trial_rng(cfg.seed, i)
        xs[i] = rng.uniform(-cfg.sample_radius, cfg.sample_radius, dim)
        ys[i] = rng.uniform(-cfg.sample_radius, cfg.sample_radius, dim)
    px, okx = _project_rows(ospace, xs, projector)
    py, oky = _project_rows(ospace, ys, projector)
    psum, oks = _project_rows(ospace, xs + ys, projector)
    gaps = (px + py - psum) @ ospace.order.basis.T
    defects = -gaps.min(axis=1)
    inconclusive = ~(okx & oky & oks)
    witnesses = {
        i: {"x": _vector_list(xs[i]), "y": _vector_list(ys[i])}
        for i in np.where((defects > cfg.tol) & ~inconclusive)[0]
    }
    return _reduce("subadditive", ospace, cfg, defects, witnesses, inconclusive)


def check_positive_pairs(ospace: OrderedSpace, cfg: TrialConfig) -> Report:
    """Check that <x, y> >= -tol for cone-sampled x and y.

    On lattice instances this must pass; a failure is a certificate that the
    norm is not a lattice norm (the witness defect is -<x, y>).
    """
    dim = ospace.order.dim
    xs = np.empty((cfg.trials, dim))
    ys = np.empty((cfg.trials, dim))
    for i in range(cfg.trials):
        rng = trial_rng(cfg.seed, i)
        xs[i] = ospace.order.inverse @ rng.uniform(0.0, cfg.sample_radius, dim)
        ys[i] = ospace.order.inverse @ rng.uniform(0.0, cfg.sample_radius, dim)
    defects = -inner_rows(ospace.space, xs, ys)
    witnesses = {
        i: {"x": _vector_list(xs[i]), "y": _vector_list(ys[i])}
        for i in np.where(defects > cfg.tol)[0]
    }
    return _reduce(
        "positive-pairs", ospace, cfg, defects, witnesses, np.zeros(cfg.trials, bool)
    )


def check_identities(ospace: OrderedSpace, cfg: TrialConfig) -> Report:
    """Check <x+, x-> = 0 and || |x| || = ||x|| with size-scaled slack.

    The orthogonality defect is scaled by 1 + ||x||^2 and the norm defect by
    1 + ||x|| (degree-2 versus degree-1 homogeneity).  Meaningful on lattice
    instances; elsewhere failures simply report that the identities do not
    hold for the cone order under the given metric.
    """
    dim = ospace.order.dim
    xs = np.empty((cfg.trials, dim))
    for i in range(cfg.trials):
        rng = trial_rng(cfg.seed, i)
        xs[i] = rng.uniform(-cfg.sample_radius, cfg.sample_radius, dim)
    pos = pos_part_rows(ospace.order, xs)
    neg = pos_part_rows(ospace.order, -xs)
    sizes = norm_rows(ospace.space, xs)
    ortho = np.abs(inner_rows(ospace.space, pos, neg)) / (1.0 + sizes**2)
    norm_gap = np.abs(norm_rows(ospace.space, pos + neg) - sizes) / (1.0 + sizes)
    defects = np.maximum(ortho, norm_gap)
    witnesses = {
        i: {"x": _vector_list(xs[i])} for i in np.where(defects > cfg.tol)[0]
    }
    return _reduce(
        "identities", ospace, cfg, defects, witnesses, np.zeros(cfg.trials, bool)
    )


def check_moreau(ospace: OrderedSpace, cfg: TrialConfig) -> Report:
    """Check the Moreau split x = p + q: <p, q> = 0 and q in the polar cone.

    p is the Dykstra projection and q = x - p; orthogonality is scaled by
    1 + ||x||^2, polarity (generator angles of q) by 1 + ||x||.
    """
    dim = ospace.order.dim
    xs = np.empty((cfg.trials, dim))
    for i in range(cfg.trials):
        rng = trial_rng(cfg.seed, i)
        xs[i] = rng.uniform(-cfg.sample_radius, cfg.sample_radius, dim)
    batch = project_dykstra_rows(ospace, xs, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER)
    qs = xs - batch.points
    sizes = norm_rows(ospace.space, xs)
    ortho = np.abs(inner_rows(ospace.space, batch.points, qs)) / (1.0 + sizes**2)
    angles = (qs @ ospace.space.gram) @ ospace.order.inverse
    polar = angles.max(axis=1) / (1.0 + sizes)
    defects = np.maximum(ortho, polar)
    inconclusive = ~batch.converged
    witnesses = {
        i: {"x": _vector_list(xs[i])}
        for i in np.where((defects > cfg.tol) & ~inconclusive)[0]
    }
    return _reduce("moreau", ospace, cfg, defects, witnesses, inconclusive)


def check_oracle_agreement(ospace: OrderedSpace, cfg: TrialConfig) -> Report:
    """Compare the closed form against Dykstra in the G-norm.

    On lattice instances the two must agree within tol; on refuted instances
    a deterministic probe along the worst off-diagonal pair is injected as
    trial 0, where the positive part provably differs from the projection.
    """
    dim = ospace.order.dim
    exact = is_lattice_norm_exact(ospace)
    xs = np.empty((cfg.trials, dim))
    for i in range(cfg.trials):
        if i == 0 and not exact.is_lattice_norm:
            coords = np.zeros(dim)
            coords[exact.indices[0]] = cfg.sample_radius
            coords[exact.indices[1]] = -cfg.sample_radius
            xs[0] = ospace.order.inverse @ coords
            continue
        rng = trial_rng(cfg.seed, i)
        xs[i] = rng.uniform(-cfg.sample_radius, cfg.sample_radius, dim)
    closed = pos_part_rows(ospace.order, xs)
    batch = project_dykstra_rows(ospace, xs, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER)
    defects = norm_rows(ospace.space, closed - batch.points)
    inconclusive = ~batch.converged
    witnesses = {
        i: {"x": _vector_list(xs[i])}
        for i in np.where((defects > cfg.tol) & ~inconclusive)[0]
    }
    return _reduce("oracle-agreement", ospace, cfg, defects, witnesses, inconclusive)


CONSISTENT = "CONSISTENT"
INCONSISTENT = "INCONSISTENT"


@dataclass(frozen=True)
class Classification:
    """Outcome of the instance-level consistency check.

    An instance is CONSISTENT when the exact lattice-norm decision and the
    sampled suites tell the same story: on the lattice side everything must
    pass including closed-form/Dykstra agreement; on the non-lattice side at
    least one of the lattice-norm suite or the oracle agreement must fail.
    Anything else is INCONSISTENT, which indicates a defect in this artifact
    rather than in the instance.
    """

    verdict: str
    side: str
    exact_lattice: bool
    instance_digest: str
    seed: int
    tol: float
    trials: int
    witness: dict | None
    reports: dict

    def to_dict(self):
        return _round_tree(
            {
                "suite": "classify",
                "verdict": self.verdict,
                "side": self.side,
                "exact_lattice": self.exact_lattice,
                "instance_digest": self.instance_digest,
                "seed": self.seed,
                "tol": self.tol,
                "trials": self.trials,
                "witness": self.witness,
                "reports": {name: r.to_dict() for name, r in self.reports.items()},
            }
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


def classify_instance(ospace: OrderedSpace, cfg: TrialConfig) -> Classification:
    """Run the suite battery and check it against the exact criterion."""
    exact = is_lattice_norm_exact(ospace)
    reports = {
        "lattice-norm": check_lattice_norm_sampled(ospace, cfg),
        "isotone": check_isotone(ospace, "dykstra", cfg),
        "subadditive": check_subadditive(ospace, "dykstra", cfg),
        "positive-pairs": check_positive_pairs(ospace, cfg),
        "oracle-agreement": check_oracle_agreement(ospace, cfg),
    }
    if exact.is_lattice_norm:
        consistent = all(r.verdict == VERDICT_PASS for r in reports.values())
        side = "lattice"
    else:
        consistent = (
            reports["lattice-norm"].verdict == VERDICT_FAIL
            or reports["oracle-agreement"].verdict == VERDICT_FAIL
        )
        side = "non_lattice"
    witness = None
    if exact.witness is not None:
        witness = {
            "x": _vector_list(exact.witness[0]),
            "y": _vector_list(exact.witness[1]),
            "indices": list(exact.indices),
        }
    return Classification(
        verdict=CONSISTENT if consistent else INCONSISTENT,
        side=side,
        exact_lattice=exact.is_lattice_norm,
        instance_digest=instance_digest(ospace),
        seed=cfg.seed,
        tol=cfg.tol,
        trials=cfg.trials,
        witness=witness,
        reports=reports,
    )


def run_suite(ospace: OrderedSpace, suite: str, cfg: TrialConfig,
              projector: str = "dykstra"):
    """Dispatch a named suite; returns a Report (or Classification for classify)."""
    if suite == "lattice-norm":
        return check_lattice_norm_sampled(ospace, cfg)
    if suite == "isotone":
        return check_isotone(ospace, projector, cfg)
    if suite == "subadditive":
        return check_subadditive(ospace, projector, cfg)
    if suite == "positive-pairs":
        return check_positive_pairs(ospace, cfg)
    if suite == "identities":
        return check_identities(ospace, cfg)
    if suite == "moreau":
        return check_moreau(ospace, cfg)
    if suite == "oracle-agreement":
        return check_oracle_agreement(ospace, cfg)
    if suite == "classify":
        return classify_instance(ospace, cfg)
    raise ValueError(f"unknown suite {suite!r}")
