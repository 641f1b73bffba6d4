"""Spectral certificate for optimal search of arbitrary marked states, with
closed-form certifications for the structured graph families."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DisconnectedGraphError, InvalidParameterError
from .graphs import SrgParams
from .linalg import ZERO_EIGENVALUE_TOL, SpectralDecomposition
from .search import MarkedState, search_params, uniform_state

# A ratio of extreme nonzero Laplacian eigenvalues at or below this threshold
# guarantees envelope >= 1/sqrt(2) for every admissible marked state.
OPTIMALITY_THRESHOLD = 1.0 + 1.0 / math.sqrt(2.0)

CERTIFIED = "certified"
NOT_CERTIFIED = "not-certified"


@dataclass(frozen=True)
class OptimalityReport:
    """Extreme nonzero Laplacian eigenvalues and the certificate verdict."""

    lambda_max: float
    lambda_min_nonzero: float
    theta: float
    ratio: float
    threshold: float
    verdict: str

    @property
    def certified(self) -> bool:
        return self.verdict == CERTIFIED


def _report(lambda_max: float, lambda_min_nonzero: float) -> OptimalityReport:
    ratio = lambda_max / lambda_min_nonzero
    return OptimalityReport(
        lambda_max=lambda_max,
        lambda_min_nonzero=lambda_min_nonzero,
        theta=1.0 / lambda_min_nonzero - 1.0 / lambda_max,
        ratio=ratio,
        threshold=OPTIMALITY_THRESHOLD,
        verdict=CERTIFIED if ratio <= OPTIMALITY_THRESHOLD else NOT_CERTIFIED,
    )


def certify(decomp: SpectralDecomposition) -> OptimalityReport:
    """Certificate from a computed Laplacian spectrum."""
    lam = decomp.eigenvalues
    if lam.size < 2:
        raise InvalidParameterError("certificate needs at least two vertices")
    if abs(lam[-1]) > ZERO_EIGENVALUE_TOL:
        raise InvalidParameterError("spectrum has no zero eigenvalue: not a Laplacian")
    if lam[-2] <= ZERO_EIGENVALUE_TOL:
        raise DisconnectedGraphError("repeated zero eigenvalue")
    return _report(float(lam[0]), float(lam[-2]))


def certify_induced_complete(n: int, l: int) -> OptimalityReport:
    """Closed form for the complete graph with l disjoint edges deleted.

    Spectrum {n, n-2, 0}, so the ratio is n/(n-2) for l >= 1 and the verdict
    flips to certified at n = 5.  l = 0 is the plain complete graph.
    """
    if l < 0 or 2 * l > n:
        raise InvalidParameterError(f"need 0 <= 2l <= n, got n={n}, l={l}")
    if n < 2:
        raise InvalidParameterError(f"need n >= 2 vertices, got {n}")
    if l == 0:
        return _report(float(n), float(n))
    if n == 2:
        raise DisconnectedGraphError("deleting the only edge of K_2 disconnects it")
    return _report(float(n), float(n - 2))


def certify_srg(params: SrgParams) -> OptimalityReport:
    """Closed form from strongly-regular-graph parameters.

    Laplacian eigenvalues are k - (a-c +- sqrt(delta))/2 and 0.
    """
    root = math.sqrt(params.delta)
    lam_max = params.k - 0.5 * (params.a - params.c - root)
    lam_min = params.k - 0.5 * (params.a - params.c + root)
    if lam_min <= ZERO_EIGENVALUE_TOL:
        raise DisconnectedGraphError(
            "SRG parameters describe a disconnected graph (zero eigenvalue repeats)"
        )
    return _report(lam_max, lam_min)


def certify_multipartite(m: int, k: int) -> OptimalityReport:
    """Closed form for the regular complete m-partite graph with block size k.

    For k >= 2 the spectrum is {mk, (m-1)k, 0}: ratio m/(m-1), certified
    exactly when m >= 3.  Singleton blocks (k = 1) collapse to the complete
    graph: the (m-1)k eigenvalue has multiplicity m(k-1) = 0, so the ratio
    is 1.
    """
    if m < 2:
        raise InvalidParameterError(f"multipartite graph needs m >= 2, got {m}")
    if k < 1:
        raise InvalidParameterError(f"block size must be >= 1, got {k}")
    if k == 1:
        return _report(float(m), float(m))
    return _report(float(m * k), float((m - 1) * k))


@dataclass(frozen=True)
class StressStatistics:
    """Envelope statistics over random marked states with uniform overlap
    at least 1/sqrt(N).

    ``min_reduced_envelope`` is the certificate-bound quantity
    gamma_c/(beta*sqrt(1 - p_n**2)); the raw envelope gamma_c/beta is reported
    alongside because it decays as p_n -> 1 for every graph.  The variance
    margins record how far the spread of reciprocal eigenvalues stays below
    its bound: the exact form is a theorem (margin <= 0 always), the
    approximate form drops the (1 - p_n**2) mass factor and may go positive.
    """

    trials: int
    min_envelope: float
    mean_envelope: float
    min_reduced_envelope: float
    mean_reduced_envelope: float
    histogram_counts: np.ndarray
    histogram_edges: np.ndarray
    variance_margin_exact_max: float
    variance_margin_approx_max: float
    theta: float

    def __post_init__(self):
        self.histogram_counts.setflags(write=False)
        self.histogram_edges.setflags(write=False)


def stress_random_states(decomp: SpectralDecomposition, trials: int,
                         seed: int) -> StressStatistics:
    """Sample random marked states and collect envelope statistics.

    Each state mixes a normalized Gaussian vector orthogonal to the uniform
    state with the uniform state itself, the mixing coefficient drawn uniform
    in [1/sqrt(N), 1] so the uniform overlap meets the search admissibility
    floor.  Deterministic for a fixed seed.
    """
    if trials < 1:
        raise InvalidParameterError(f"need at least one trial, got {trials}")
    n = decomp.n
    rng = np.random.default_rng(seed)
    s = uniform_state(n)
    report = certify(decomp)
    theta = report.theta

    envelopes = np.empty(trials)
    reduced = np.empty(trials)
    margin_exact = np.empty(trials)
    margin_approx = np.empty(trials)
    for i in range(trials):
        g = rng.standard_normal(n)
        g -= (s @ g) * s
        norm = np.linalg.norm(g)
        while norm < 1e-12:
            g = rng.standard_normal(n)
            g -= (s @ g) * s
            norm = np.linalg.norm(g)
        g /= norm
        c = rng.uniform(1.0 / math.sqrt(n), 1.0)
        state = MarkedState(math.sqrt(1.0 - c * c) * g + c * s)
        params = search_params(decomp, state)
        envelopes[i] = params.envelope
        reduced[i] = params.reduced_envelope
        a = params.a_k
        lam = params.eigenvalues
        rest = np.ones(n, dtype=bool)
        rest[params.zero_index] = False
        mass = float(a[rest].sum())
        spread = float(np.sum(a[rest] * (1.0 / lam[rest] - params.gamma_c / mass) ** 2))
        margin_exact[i] = spread - theta**2 * mass
        margin_approx[i] = (params.beta**2 - params.gamma_c**2) - theta**2
    counts, edges = np.histogram(np.clip(reduced, 0.0, 1.0), bins=20, range=(0.0, 1.0))
    return StressStatistics(
        trials=trials,
        min_envelope=float(envelopes.min()),
        mean_envelope=float(envelopes.mean()),
        min_reduced_envelope=float(reduced.min()),
        mean_reduced_envelope=float(reduced.mean()),
        histogram_counts=counts,
        histogram_edges=edges,
        variance_margin_exact_max=float(margin_exact.max()),
        variance_margin_approx_max=float(margin_approx.max()),
        theta=theta,
    )
