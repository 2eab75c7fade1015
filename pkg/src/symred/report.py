"""Spec ingestion, verification suites and machine-readable reports.

Spec documents are JSON trees: integers as numbers, rationals as [num, den]
pairs, complex numbers (in reports) as [re, im].  A document looks like

    {
      "name": "gr2c4xcp2",
      "toric": {
        "conormals": [[1, 0], [0, 1], [-1, -1]],
        "offsets": [[1, 2], [1, 2], [1, 2]],
        "interior_point": [[0, 1], [0, 1]]          # optional
      },
      "factors": [[4, 2]]
    }

with one conormal vector per facet and factors (n_i, k_i) standing for the
Grassmannian of k_i-planes in C^{n_i}.  ``load_spec`` validates invariants
(primitive conormals, positive interior slacks, well-formed factors) and
assembles the full reduction data.

``run_suites`` executes the selected verification suites and aggregates a
Report.  All randomness flows from the single config seed through per-suite,
per-trial seed tuples, so reports are deterministic and every failure record
carries the seed that replays it in isolation.  Serializations omit wall
times unless asked, because timings are the one nondeterministic field.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from . import contact, quatgrass
from .errors import (
    EmptyInterior,
    InvariantViolation,
    ParseError,
    RankDeficient,
    SymredError,
)
from .moment import (
    GrassmannFactor,
    ReductionSpec,
    in_level_set,
    moment_S1,
    reduction_spec,
    sample_level,
)
from .toric import InteriorPoint, PolytopeSpec, polytope_spec

SUITE_NAMES = (
    "lattice",
    "level",
    "coisotropy",
    "quaternionic",
    "legendrian",
    "flow-oracle",
)

BUILTIN_SPECS: dict[str, dict] = {
    "cp1": {
        "name": "cp1",
        "toric": {"conormals": [[1], [-1]], "offsets": [[1, 2], [1, 2]]},
    },
    "cp2": {
        "name": "cp2",
        "toric": {
            "conormals": [[1, 0], [0, 1], [-1, -1]],
            "offsets": [[1, 2], [1, 2], [1, 2]],
        },
    },
    "cp1xcp1": {
        "name": "cp1xcp1",
        "toric": {
            "conormals": [[1, 0], [-1, 0], [0, 1], [0, -1]],
            "offsets": [[1, 2], [1, 2], [1, 2], [1, 2]],
        },
    },
    "hirzebruch1": {
        "name": "hirzebruch1",
        "toric": {
            "conormals": [[1, 0], [0, 1], [-1, 1], [0, -1]],
            "offsets": [[1, 2], [1, 2], [1, 2], [1, 2]],
        },
    },
    "gr2c4": {"name": "gr2c4", "factors": [[4, 2]]},
    "gr2c4xcp2": {
        "name": "gr2c4xcp2",
        "toric": {
            "conormals": [[1, 0], [0, 1], [-1, -1]],
            "offsets": [[1, 2], [1, 2], [1, 2]],
        },
        "factors": [[4, 2]],
    },
}


# ---------------------------------------------------------------------------
# document parsing

def _as_fraction(value, where: str) -> Fraction:
    if isinstance(value, bool):
        raise ParseError(f"{where}: expected a rational, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if (
        isinstance(value, (list, tuple))
        and len(value) == 2
        and all(isinstance(v, int) and not isinstance(v, bool) for v in value)
    ):
        num, den = value
        if den == 0:
            raise ParseError(f"{where}: zero denominator")
        return Fraction(num, den)
    raise ParseError(f"{where}: expected an integer or a [num, den] pair, got {value!r}")


def _as_int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{where}: expected an integer, got {value!r}")
    return value


def load_spec(document) -> ReductionSpec:
    """Parse and validate a spec document (dict, JSON text or bytes).

    Raises :class:`ParseError` on malformed documents and
    :class:`InvariantViolation` when the parsed data violates a structural
    invariant (non-primitive conormal, non-interior witness point, ...).
    """
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(document, dict):
        raise ParseError(f"spec document must be an object, got {type(document)}")
    unknown = set(document) - {"name", "toric", "factors"}
    if unknown:
        raise ParseError(f"unknown top-level fields {sorted(unknown)}")
    name = document.get("name", "")
    if not isinstance(name, str):
        raise ParseError("name: expected a string")

    toric = document.get("toric", {})
    if not isinstance(toric, dict):
        raise ParseError("toric: expected an object")
    unknown = set(toric) - {"conormals", "offsets", "interior_point"}
    if unknown:
        raise ParseError(f"toric: unknown fields {sorted(unknown)}")
    conormals = toric.get("conormals", [])
    if not isinstance(conormals, list):
        raise ParseError("toric.conormals: expected a list of integer vectors")
    for j, col in enumerate(conormals):
        if not isinstance(col, list) or not col:
            raise ParseError(f"toric.conormals[{j}]: expected a nonempty list")
        for x in col:
            _as_int(x, f"toric.conormals[{j}]")
    if conormals and "offsets" not in toric:
        raise ParseError("toric.offsets: missing")
    offsets = [
        _as_fraction(a, f"toric.offsets[{j}]")
        for j, a in enumerate(toric.get("offsets", []))
    ]
    if len(offsets) != len(conormals):
        raise ParseError(
            f"{len(offsets)} offsets for {len(conormals)} conormals"
        )

    factors = document.get("factors", [])
    if not isinstance(factors, list):
        raise ParseError("factors: expected a list of [n, k] pairs")
    parsed_factors = []
    for i, f in enumerate(factors):
        if not isinstance(f, list) or len(f) != 2:
            raise ParseError(f"factors[{i}]: expected an [n, k] pair")
        n = _as_int(f[0], f"factors[{i}].n")
        k = _as_int(f[1], f"factors[{i}].k")
        parsed_factors.append((n, k))

    try:
        pspec = polytope_spec(conormals, offsets)
        interior = None
        if "interior_point" in toric:
            x = tuple(
                _as_fraction(v, f"toric.interior_point[{i}]")
                for i, v in enumerate(toric["interior_point"])
            )
            if len(x) != pspec.dim:
                raise ParseError(
                    f"interior point has length {len(x)}, expected {pspec.dim}"
                )
            try:
                interior = InteriorPoint(x=x, slacks=pspec.slacks(x))
            except EmptyInterior as exc:
                raise InvariantViolation(f"interior_point: {exc}") from None
        return reduction_spec(pspec, parsed_factors, name=name, interior=interior)
    except ParseError:
        raise
    except (SymredError, ValueError) as exc:
        raise InvariantViolation(str(exc)) from None


def builtin_spec(name: str) -> ReductionSpec:
    if name not in BUILTIN_SPECS:
        raise ParseError(
            f"unknown built-in spec {name!r}; choose from {sorted(BUILTIN_SPECS)}"
        )
    return load_spec(BUILTIN_SPECS[name])


# ---------------------------------------------------------------------------
# configuration and report types

@dataclass(frozen=True)
class Tolerances:
    level: float = 1e-10
    contact: float = 1e-8
    legendrian: float = 1e-9
    unitary: float = 1e-12
    flow: float = 1e-6

    def __post_init__(self):
        for name, value in vars(self).items():
            if value <= 0:
                raise ValueError(f"tolerance {name} must be positive")


@dataclass(frozen=True)
class RunConfig:
    spec: ReductionSpec
    seed: int = 0
    suites: tuple[str, ...] = SUITE_NAMES
    tolerances: Tolerances = Tolerances()
    level_samples: int = 1000
    coisotropy_samples: int = 100
    legendrian_samples: int = 100
    membership_trials: int = 1000
    quaternionic_trials: int = 1000
    flow_count: int = 20
    flow_step: float = 1e-3
    reeb_period_step: float = 1e-2

    def __post_init__(self):
        for name in (
            "level_samples",
            "coisotropy_samples",
            "legendrian_samples",
            "membership_trials",
            "quaternionic_trials",
            "flow_count",
        ):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")
        for s in self.suites:
            if s not in SUITE_NAMES:
                raise ValueError(f"unknown suite {s!r}; choose from {SUITE_NAMES}")


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    max_residual: float
    samples: int
    seconds: float
    details: dict = field(default_factory=dict)
    failures: tuple[dict, ...] = ()

    def to_dict(self, timing: bool = True) -> dict:
        out = {
            "name": self.name,
            "passed": self.passed,
            "max_residual": self.max_residual,
            "samples": self.samples,
            "details": self.details,
            "failures": list(self.failures),
        }
        if timing:
            out["seconds"] = round(self.seconds, 3)
        return out


@dataclass(frozen=True)
class Report:
    spec_name: str
    seed: int
    derived: dict
    suites: tuple[SuiteResult, ...]

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.suites)

    def to_dict(self, timing: bool = True) -> dict:
        return {
            "spec": self.spec_name,
            "seed": self.seed,
            "passed": self.passed,
            "derived": self.derived,
            "suites": [s.to_dict(timing=timing) for s in self.suites],
        }

    def to_json(self, timing: bool = True, indent: int | None = 2) -> str:
        """Serialize; with timing=False the output is bit-deterministic for
        a fixed (spec, config, seed)."""
        return json.dumps(self.to_dict(timing=timing), indent=indent, sort_keys=True)


def _frac_pair(x: Fraction) -> list[int]:
    return [x.numerator, x.denominator]


def derived_data(spec: ReductionSpec) -> dict:
    """Echo of everything the construction derives from the document."""
    dz = spec.delzant
    factors = []
    for f in spec.factors:
        entry = {
            "n": f.n,
            "k": f.k,
            "level_coefficient": _frac_pair(Fraction(f.n, 2)),
            "minimal_chern_number": f.n,
        }
        if dz.lam is not None or not spec.d:
            lam = dz.lam if dz.lam is not None else Fraction(2)
            entry["kn_over_lambda"] = _frac_pair(Fraction(f.n * f.k, 1) / lam)
        factors.append(entry)
    return {
        "d": spec.d,
        "D": spec.D,
        "kernel_rank": dz.kernel.rank,
        "kernel_basis": [list(row) for row in dz.kernel.basis],
        "gamma": list(dz.gamma),
        "Gamma": [int(g) for g in spec.Gamma],
        "c": [_frac_pair(x) for x in dz.c],
        "c_tilde": [_frac_pair(x) for x in spec.c_tilde],
        "even": dz.even,
        "lambda": None if dz.lam is None else _frac_pair(dz.lam),
        "sphere_level": spec.sphere_level,
        "factors": factors,
    }


# ---------------------------------------------------------------------------
# individual suites

def _legendrian_factor_sizes(spec: ReductionSpec) -> list[int]:
    """Half-ambient sizes n for factors of shape Gr_2(C^{2n}), n >= 2."""
    return sorted(
        {
            f.n // 2
            for f in spec.factors
            if f.k == 2 and f.n % 2 == 0 and f.n >= 4
        }
    )


def _suite_lattice(config: RunConfig) -> SuiteResult:
    from .lattice import (
        minus_identity_in_torus,
        monotone_level_check,
        smith_normal_form,
    )
    from .errors import NotProportional

    spec = config.spec
    t0 = time.perf_counter()
    dz = spec.delzant
    failures = []
    details: dict = {}

    kernel_defect = 0
    for row in dz.kernel.basis:
        for i in range(spec.polytope.dim):
            kernel_defect = max(
                kernel_defect,
                abs(sum(spec.polytope.nu[i][j] * row[j] for j in range(spec.d))),
            )
    if kernel_defect:
        failures.append({"what": "kernel relation", "defect": kernel_defect})
    if dz.kernel.rank:
        _, S, _ = smith_normal_form(dz.kernel.basis)
        divisors = [S[i][i] for i in range(dz.kernel.rank)]
        details["kernel_elementary_divisors"] = divisors
        if any(x != 1 for x in divisors):
            failures.append({"what": "kernel saturation", "divisors": divisors})
        gamma_defect = 0
        for i in range(spec.polytope.dim):
            gamma_defect = max(
                gamma_defect,
                abs(sum(spec.polytope.nu[i][j] * dz.gamma[j] for j in range(spec.d))),
            )
        if gamma_defect or any(g < 1 for g in dz.gamma):
            failures.append({"what": "weight vector", "defect": gamma_defect})

    minus_id = minus_identity_in_torus(dz.kernel)
    details["even"] = dz.even
    details["minus_identity_in_torus"] = minus_id
    if dz.even != minus_id:
        failures.append(
            {"what": "evenness characterizations disagree", "even": dz.even,
             "minus_identity": minus_id}
        )
    if not dz.even:
        sums = [
            sum(spec.polytope.nu[i][j] for j in range(spec.d))
            for i in range(spec.polytope.dim)
        ]
        failures.append(
            {
                "what": "polytope is not even",
                "conormal_sum": sums,
                "odd_coordinates": [i for i, s in enumerate(sums) if s % 2],
            }
        )
    if spec.d:
        if dz.lam is None:
            try:
                monotone_level_check(dz.kernel, spec.polytope.offsets)
                lam_msg = "unexpected"
            except NotProportional as exc:
                lam_msg = str(exc)
            failures.append({"what": "level not monotone", "reason": lam_msg})
        else:
            details["lambda"] = _frac_pair(dz.lam)
            normalized = all(a == Fraction(1, 2) for a in spec.polytope.offsets)
            if normalized and dz.lam != 2:
                failures.append(
                    {"what": "normalized level with lambda != 2",
                     "lambda": _frac_pair(dz.lam)}
                )
    return SuiteResult(
        name="lattice",
        passed=not failures,
        max_residual=0.0,
        samples=1,
        seconds=time.perf_counter() - t0,
        details=details,
        failures=tuple(failures),
    )


def _suite_level(config: RunConfig) -> SuiteResult:
    spec = config.spec
    tol = config.tolerances.level
    t0 = time.perf_counter()
    worst = 0.0
    failures = []
    target_s1 = spec.sphere_level / 2.0
    for trial in range(config.level_samples):
        seed = (config.seed, 1, trial)
        pt = sample_level(spec, seed=seed)
        ok, residual = in_level_set(pt, spec, tol)
        s1_err = abs(moment_S1(pt, spec) - target_s1)
        worst = max(worst, residual, s1_err)
        if not ok or s1_err >= tol:
            failures.append(
                {"seed": list(seed), "residual": residual, "s1_error": s1_err}
            )
    return SuiteResult(
        name="level",
        passed=not failures,
        max_residual=worst,
        samples=config.level_samples,
        seconds=time.perf_counter() - t0,
        details={"tolerance": tol, "sphere_level": spec.sphere_level},
        failures=tuple(failures[:10]),
    )


def _suite_coisotropy(config: RunConfig) -> SuiteResult:
    spec = config.spec
    tol = config.tolerances.contact
    t0 = time.perf_counter()
    worst = 0.0
    failures = []
    dims = set()
    for trial in range(config.coisotropy_samples):
        seed = (config.seed, 2, trial)
        pt = sample_level(spec, seed=seed)
        try:
            rep = contact.strictly_coisotropic_check(pt, spec)
        except RankDeficient as exc:
            failures.append({"seed": list(seed), "what": str(exc)})
            continue
        dims.add(rep.tangent_dimension)
        worst = max(worst, rep.max_violation)
        if rep.max_violation >= tol:
            failures.append(
                {"seed": list(seed), "max_violation": rep.max_violation}
            )
    return SuiteResult(
        name="coisotropy",
        passed=not failures,
        max_residual=worst,
        samples=config.coisotropy_samples,
        seconds=time.perf_counter() - t0,
        details={
            "tolerance": tol,
            "tangent_dimensions": sorted(dims),
            "expected_dimension": 2 * spec.D - contact.group_dimension(spec),
        },
        failures=tuple(failures[:10]),
    )


def _suite_quaternionic(config: RunConfig) -> SuiteResult:
    tol = config.tolerances.unitary
    t0 = time.perf_counter()
    worst = 0.0
    failures = []
    details: dict = {}

    unitarity = {}
    for n in (1, 2, 3, 4):
        B = quatgrass.bC_matrix(n)
        err = float(np.abs(B.conj().T @ B - np.eye(4 * n)).max())
        unitarity[n] = err
        worst = max(worst, err)
        if err >= tol:
            failures.append({"what": f"bC unitarity n={n}", "residual": err})
    details["bc_unitarity"] = {str(k): v for k, v in unitarity.items()}

    rng = np.random.default_rng((config.seed, 3, 0))
    gram_worst = equiv_worst = 0.0
    for trial in range(config.quaternionic_trials):
        q = quatgrass.random_unit_quaternions(2, rng)
        Z = quatgrass.quat_to_frame_b(q)
        gram_worst = max(gram_worst, quatgrass.stiefel_residual(Z))
        u = quatgrass.random_unit_quaternions(1, rng)[0]
        uq = quatgrass.quat_mul(np.broadcast_to(u, q.shape), q)
        err = float(
            np.abs(
                quatgrass.quat_to_frame_b(uq) - Z @ quatgrass.su2_matrix(u)
            ).max()
        )
        equiv_worst = max(equiv_worst, err)
    details["b_gram_residual"] = gram_worst
    details["b_equivariance_residual"] = equiv_worst
    worst = max(worst, gram_worst, equiv_worst)
    if gram_worst >= tol:
        failures.append({"what": "b image Gram", "residual": gram_worst})
    if equiv_worst >= tol:
        failures.append({"what": "b equivariance", "residual": equiv_worst})

    sizes = _legendrian_factor_sizes(config.spec) or [2, 3]
    inclusion = {}
    for n in sizes:
        rep = quatgrass.projective_inclusion_check(
            n, count=config.quaternionic_trials, tol=tol, seed=(config.seed, 3, 1, n)
        )
        inclusion[str(n)] = rep.max_residual
        worst = max(worst, rep.max_residual)
        if not rep.passed:
            failures.append(
                {"what": f"projective inclusion n={n}", "residual": rep.max_residual}
            )
    details["projective_inclusion"] = inclusion
    return SuiteResult(
        name="quaternionic",
        passed=not failures,
        max_residual=worst,
        samples=config.quaternionic_trials,
        seconds=time.perf_counter() - t0,
        details=details,
        failures=tuple(failures),
    )


def _suite_legendrian(config: RunConfig) -> SuiteResult:
    tol = config.tolerances.legendrian
    t0 = time.perf_counter()
    worst = 0.0
    failures = []
    details: dict = {}
    sizes = _legendrian_factor_sizes(config.spec)
    if not sizes:
        return SuiteResult(
            name="legendrian",
            passed=True,
            max_residual=0.0,
            samples=0,
            seconds=time.perf_counter() - t0,
            details={"skipped": "no Gr_2(C^{2n}) factor with 2n >= 4"},
        )
    for n in sizes:
        for kind in ("L1", "L2"):
            rep = quatgrass.legendrian_check(
                kind,
                n,
                count=config.legendrian_samples,
                tol=tol,
                seed=(config.seed, 4, n, 0 if kind == "L1" else 1),
            )
            worst = max(worst, rep.max_alpha)
            details[f"{kind}_n{n}"] = {
                "dimensions": list(rep.dimensions),
                "expected_dimension": rep.expected_dimension,
                "max_alpha": rep.max_alpha,
            }
            if not rep.passed:
                failures.append(
                    {"what": f"{kind} legendrian n={n}",
                     "dimensions": list(rep.dimensions),
                     "max_alpha": rep.max_alpha}
                )
        cover = quatgrass.double_cover_witness(n, seed=(config.seed, 4, n, 2))
        details[f"double_cover_n{n}"] = {
            "wedge_negation_error": cover.wedge_negation_error,
            "projector_error": cover.projector_error,
        }
        if not cover.passed:
            failures.append({"what": f"double cover witness n={n}"})

        k1_on_l1 = k2_on_l2 = k1_on_l2 = k2_on_l1 = 0
        trials = config.membership_trials
        for trial in range(trials):
            P1 = quatgrass.projector(
                quatgrass.sample_L1(n, (config.seed, 4, n, 3, trial))
            )
            P2 = quatgrass.projector(
                quatgrass.sample_L2(n, (config.seed, 4, n, 4, trial))
            )
            k1_on_l1 += quatgrass.k1_membership(P1, 1e-8)
            k2_on_l2 += quatgrass.k2_membership(P2, 1e-8)
            k1_on_l2 += quatgrass.k1_membership(P2, 1e-6)
            k2_on_l1 += quatgrass.k2_membership(P1, 1e-6)
        details[f"membership_n{n}"] = {
            "k1_true_on_L1": k1_on_l1,
            "k2_true_on_L2": k2_on_l2,
            "k1_false_rate_on_L2": 1.0 - k1_on_l2 / trials,
            "k2_false_rate_on_L1": 1.0 - k2_on_l1 / trials,
        }
        if k1_on_l1 != trials or k2_on_l2 != trials:
            failures.append({"what": f"membership positives n={n}"})
        if k1_on_l2 > 0.01 * trials or k2_on_l1 > 0.01 * trials:
            failures.append({"what": f"membership cross-negatives n={n}"})
    return SuiteResult(
        name="legendrian",
        passed=not failures,
        max_residual=worst,
        samples=config.legendrian_samples,
        seconds=time.perf_counter() - t0,
        details=details,
        failures=tuple(failures),
    )


def _spectral_exponential(A: np.ndarray) -> np.ndarray:
    """exp(A) of a skew-Hermitian matrix via the eigendecomposition of the
    Hermitian matrix -iA; the flow oracle, independent of the integrator."""
    H = -1j * A
    vals, vecs = np.linalg.eigh(H)
    return (vecs * np.exp(1j * vals)) @ vecs.conj().T


def random_sphere_preserving_generator(
    spec: ReductionSpec, rng: np.random.Generator
) -> np.ndarray:
    """Random skew-Hermitian matrix commuting with the weight matrix, so the
    one-parameter unitary group it generates preserves the weighted sphere."""
    D = spec.D
    M = rng.standard_normal((D, D)) + 1j * rng.standard_normal((D, D))
    A = 0.5 * (M - M.conj().T)
    gamma = spec.Gamma
    return A * np.equal.outer(gamma, gamma)


def _suite_flow_oracle(config: RunConfig) -> SuiteResult:
    spec = config.spec
    tol = config.tolerances.flow
    t0 = time.perf_counter()
    worst = 0.0
    failures = []
    for trial in range(config.flow_count):
        seed = (config.seed, 5, trial)
        rng = np.random.default_rng(seed)
        A = random_sphere_preserving_generator(spec, rng)
        pt = sample_level(spec, seed=(config.seed, 5, trial, 1))
        state = contact.flow(
            contact.LinearHamiltonian(A), pt, spec, t_final=1.0, step=config.flow_step
        )
        oracle = _spectral_exponential(A) @ pt.flatten()
        err = float(np.abs(state.point.flatten() - oracle).max())
        worst = max(worst, err)
        if err >= tol:
            failures.append({"seed": list(seed), "deviation": err})
    period = contact.reeb_period(spec)
    pt = sample_level(spec, seed=(config.seed, 6, 0))
    state = contact.flow(
        contact.ConstantHamiltonian(1.0),
        pt,
        spec,
        t_final=period,
        step=config.reeb_period_step,
    )
    period_err = float(np.abs(state.point.flatten() - pt.flatten()).max())
    if period_err >= 1e-9:
        failures.append({"what": "reeb period closure", "deviation": period_err})
    return SuiteResult(
        name="flow-oracle",
        passed=not failures,
        max_residual=worst,
        samples=config.flow_count,
        seconds=time.perf_counter() - t0,
        details={
            "tolerance": tol,
            "reeb_period": period,
            "reeb_period_closure": period_err,
            "step": config.flow_step,
        },
        failures=tuple(failures),
    )


_SUITE_RUNNERS: dict[str, Callable[[RunConfig], SuiteResult]] = {
    "lattice": _suite_lattice,
    "level": _suite_level,
    "coisotropy": _suite_coisotropy,
    "quaternionic": _suite_quaternionic,
    "legendrian": _suite_legendrian,
    "flow-oracle": _suite_flow_oracle,
}


def run_suites(config: RunConfig) -> Report:
    """Execute the selected suites; failures are reported, not thrown."""
    suites = tuple(_SUITE_RUNNERS[name](config) for name in config.suites)
    return Report(
        spec_name=config.spec.name,
        seed=config.seed,
        derived=derived_data(config.spec),
        suites=suites,
    )


def scaled_config(config: RunConfig, samples: int) -> RunConfig:
    """Uniformly override the per-suite sample counts (CLI --samples)."""
    return replace(
        config,
        level_samples=samples,
        coisotropy_samples=samples,
        legendrian_samples=samples,
        membership_trials=samples,
        quaternionic_trials=samples,
    )
