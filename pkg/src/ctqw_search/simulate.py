"""Exact search dynamics: Hamiltonian assembly, time evolution of the uniform
state, peak location, and deviation against the sinusoidal approximation."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError, InvalidParameterError
from .graphs import Graph, laplacian, validate
from .closed_forms import krawtchouk
from .linalg import eig_sym, hypercube_eigenbasis, laplacian_decomposition
from .search import MarkedState, SearchParameters, search_params, uniform_state

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class EvolutionTrace:
    """Detection amplitude |<w|psi(t)>| on a uniform time grid.

    ``peak_time`` refines the grid argmax by golden-section search, so the
    peak need not coincide with a grid point.
    """

    times: np.ndarray
    amplitudes: np.ndarray
    peak_time: float
    peak_probability: float
    jump_rate: float
    state_digest: str

    def __post_init__(self):
        self.times.setflags(write=False)
        self.amplitudes.setflags(write=False)

    def to_csv(self) -> str:
        lines = ["t,amplitude,probability"]
        for t, amp in zip(self.times, self.amplitudes):
            lines.append(f"{t:.12g},{amp:.12g},{amp * amp:.12g}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class DeviationReport:
    """Grid deviations between an exact trace and the sinusoidal approximation."""

    max_abs_deviation: float
    rms_deviation: float
    peak_time_rel_dev: float
    peak_value_rel_dev: float


def hamiltonian(g: Graph, jump_rate: float, w: MarkedState) -> np.ndarray:
    """Search Hamiltonian: jump_rate * Laplacian minus the marked projector."""
    if jump_rate <= 0.0:
        raise InvalidParameterError(f"jump rate must be positive, got {jump_rate}")
    if w.n != g.n_vertices:
        raise InvalidInputError(
            f"marked state has dimension {w.n}, graph has {g.n_vertices} vertices"
        )
    return jump_rate * laplacian(g) - np.outer(w.weights, w.weights)


def run(g: Graph, w: MarkedState, jump_rate: float | str = "critical",
        t_max: float | None = None, steps: int = 1024) -> EvolutionTrace:
    """Evolve the uniform state under the search Hamiltonian and trace the
    marked-state amplitude.

    ``jump_rate="critical"`` resolves to the critical rate of the instance;
    ``t_max`` defaults to twice the optimal time.  ``t_max=0`` produces the
    single-point trace at t = 0.
    """
    diagnostics = validate(g)
    if diagnostics:
        raise InvalidInputError("invalid graph: " + "; ".join(diagnostics))
    q = laplacian(g)
    params = search_params(laplacian_decomposition(q), w)
    rate = _resolve_rate(jump_rate, params)
    decomp_h = eig_sym(rate * q - np.outer(w.weights, w.weights))
    u = decomp_h.overlaps(w.weights) * decomp_h.overlaps(uniform_state(g.n_vertices))
    return _trace_from_modes(decomp_h.eigenvalues, u, rate, params, w.digest(),
                             t_max, steps)


def run_hypercube(n_bits: int, w: MarkedState,
                  jump_rate: float | str = "critical",
                  t_max: float | None = None, steps: int = 1024) -> EvolutionTrace:
    """Exact hypercube dynamics without dense diagonalization.

    For a marked state on r vertices the span of its eigenspace components
    together with the uniform state is invariant under the Hamiltonian and has
    dimension at most (n+1)*r, so the evolution reduces to an exact small
    eigenproblem.  Eigenspace inner products are Krawtchouk sums over pairwise
    Hamming distances.
    """
    basis = hypercube_eigenbasis(n_bits)
    if w.n != basis.n:
        raise InvalidInputError(
            f"marked state has dimension {w.n}, hypercube needs {basis.n}"
        )
    params = search_params(basis, w)
    rate = _resolve_rate(jump_rate, params)

    size = basis.n
    support = list(w.support)
    r = len(support)
    wv = w.weights[support]
    dist = np.empty((r, r), dtype=int)
    for i, u_vert in enumerate(support):
        for j, v_vert in enumerate(support):
            dist[i, j] = int(u_vert ^ v_vert).bit_count()

    diag: list[float] = []
    omega: list[float] = []
    sigma: list[float] = []
    s_component = np.full(r, 1.0 / math.sqrt(size))
    for j in range(n_bits + 1):
        gram = np.empty((r, r))
        for row in range(r):
            for col in range(r):
                gram[row, col] = krawtchouk(n_bits, j, dist[row, col]) / size
        gram_eigs, gram_vecs = np.linalg.eigh(gram)
        keep = gram_eigs > 1e-12 * max(float(gram_eigs.max()), 1e-300)
        if not keep.any():
            continue
        coeff = gram @ wv
        for alpha in np.nonzero(keep)[0]:
            column = gram_vecs[:, alpha]
            root = math.sqrt(gram_eigs[alpha])
            diag.append(rate * 2.0 * j)
            omega.append(float(column @ coeff) / root)
            sigma.append((float(column @ s_component) / root) if j == 0 else 0.0)

    omega_vec = np.array(omega)
    sigma_vec = np.array(sigma)
    h_small = np.diag(diag) - np.outer(omega_vec, omega_vec)
    decomp_small = eig_sym(h_small)
    u = decomp_small.overlaps(omega_vec) * decomp_small.overlaps(sigma_vec)
    return _trace_from_modes(decomp_small.eigenvalues, u, rate, params,
                             w.digest(), t_max, steps)


def compare(trace: EvolutionTrace, params: SearchParameters) -> DeviationReport:
    """Deviations of an exact trace from the sinusoidal approximation.

    The trace must come from the same marked state at the critical jump rate,
    where the approximation is defined.
    """
    if trace.state_digest != params.state_digest:
        raise InvalidInputError("trace and parameters describe different marked states")
    if abs(trace.jump_rate - params.gamma_c) > 1e-9 * max(params.gamma_c, 1e-300):
        raise InvalidInputError(
            f"trace ran at jump rate {trace.jump_rate}, parameters require the "
            f"critical rate {params.gamma_c}"
        )
    if trace.times.size < 2:
        raise InvalidInputError("trace has fewer than two grid points")
    rate = params.gamma_c * params.p_n / params.beta
    approx = params.envelope * np.abs(np.sin(rate * trace.times))
    dev = np.abs(trace.amplitudes - approx)
    peak_amp = math.sqrt(trace.peak_probability)
    return DeviationReport(
        max_abs_deviation=float(dev.max()),
        rms_deviation=float(math.sqrt(np.mean(dev**2))),
        peak_time_rel_dev=abs(trace.peak_time - params.t_opt) / params.t_opt,
        peak_value_rel_dev=abs(peak_amp - params.envelope) / params.envelope,
    )


def _resolve_rate(jump_rate: float | str, params: SearchParameters) -> float:
    if isinstance(jump_rate, str):
        if jump_rate != "critical":
            raise InvalidParameterError(
                f"jump rate must be a positive number or 'critical', got {jump_rate!r}"
            )
        return params.gamma_c
    rate = float(jump_rate)
    if rate <= 0.0:
        raise InvalidParameterError(f"jump rate must be positive, got {rate}")
    return rate


def _trace_from_modes(mu: np.ndarray, u: np.ndarray, rate: float,
                      params: SearchParameters, digest: str,
                      t_max: float | None, steps: int) -> EvolutionTrace:
    if t_max is None:
        t_max = 2.0 * params.t_opt
    if t_max < 0.0:
        raise InvalidParameterError(f"t_max must be non-negative, got {t_max}")

    def amplitude(t: float) -> float:
        return abs(complex(np.exp(-1j * mu * t) @ u))

    if t_max == 0.0:
        amp0 = amplitude(0.0)
        return EvolutionTrace(
            times=np.zeros(1),
            amplitudes=np.array([amp0]),
            peak_time=0.0,
            peak_probability=amp0 * amp0,
            jump_rate=rate,
            state_digest=digest,
        )
    if steps < 2:
        raise InvalidParameterError(f"need at least 2 grid points, got {steps}")
    times = np.linspace(0.0, t_max, steps)
    amps = np.abs(np.exp(-1j * np.outer(times, mu)) @ u)
    peak_index = int(np.argmax(amps))
    lo = times[max(peak_index - 1, 0)]
    hi = times[min(peak_index + 1, steps - 1)]
    peak_time = _golden_max(amplitude, lo, hi, tol=1e-9 * params.t_opt)
    peak_amp = amplitude(peak_time)
    # the refined peak can only improve on the grid argmax
    if peak_amp < amps[peak_index]:
        peak_time = float(times[peak_index])
        peak_amp = float(amps[peak_index])
    return EvolutionTrace(
        times=times,
        amplitudes=amps,
        peak_time=peak_time,
        peak_probability=peak_amp * peak_amp,
        jump_rate=rate,
        state_digest=digest,
    )


def _golden_max(func, lo: float, hi: float, tol: float) -> float:
    """Golden-section maximization of a unimodal function on [lo, hi]."""
    x1 = hi - GOLDEN * (hi - lo)
    x2 = lo + GOLDEN * (hi - lo)
    f1 = func(x1)
    f2 = func(x2)
    while hi - lo > tol:
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + GOLDEN * (hi - lo)
            f2 = func(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - GOLDEN * (hi - lo)
            f1 = func(x1)
    return 0.5 * (lo + hi)
